use serde_json::json;

use super::{Ctx, ExtractError, ExtractionReport, Trace};
use crate::geom::CurveFamily;
use crate::graph::VertexSet;

/// Core of [`mcguinness`] on a vertex subset of `ctx`.
pub(crate) fn mcguinness_in(
    ctx: &Ctx,
    within: &VertexSet,
    alpha: u64,
    beta: u64,
    trace: &mut Trace,
) -> Result<VertexSet, ExtractError> {
    let chi_f = ctx.chi(within);
    let need = 2 * alpha as u128 * (beta as u128 + 1);
    if chi_f as u128 <= need {
        return Err(ExtractError::PreconditionFailure {
            reason: format!("χ(F) > 2α(β+1) = {need}"),
            measured: chi_f as u64,
        });
    }
    let target = beta as usize + 1;

    // F₀ ≺ … ≺ Fₙ, each closed as soon as its χ reaches β+1
    let mut blocks: Vec<VertexSet> = Vec::new();
    let mut cur = VertexSet::new(ctx.g.len());
    for v in within.iter() {
        cur.insert(v);
        if ctx.chi(&cur) == target {
            blocks.push(std::mem::replace(&mut cur, VertexSet::new(ctx.g.len())));
        }
    }
    if !cur.is_empty() {
        blocks.push(cur);
    }
    let last = blocks.len() - 1;
    for (i, b) in blocks.iter().enumerate() {
        let c = ctx.chi(b);
        if (i < last && c != target) || c > target {
            return Err(ExtractError::InternalContradiction(format!("block {i} has χ = {c}")));
        }
    }
    let block_chis: Vec<(String, u64)> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (format!("F_{i}"), ctx.chi(b) as u64))
        .collect();
    let named: Vec<(&str, u64)> = block_chis.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    trace.step("blocks", &named, vec![]);

    let parity = |p: usize| {
        let mut s = VertexSet::new(ctx.g.len());
        for b in blocks.iter().skip(p).step_by(2) {
            s = s.union(b);
        }
        s
    };
    let (f0, f1) = (parity(0), parity(1));
    let (c0, c1) = (ctx.chi(&f0), ctx.chi(&f1));
    let half = alpha as u128 * (beta as u128 + 1);
    let (p, _) = if c0 as u128 > half {
        (0, f0)
    } else if c1 as u128 > half {
        (1, f1)
    } else {
        return Err(ExtractError::InternalContradiction(format!(
            "neither parity class has χ > α(β+1) = {half}"
        )));
    };
    trace.step(
        "parity-class",
        &[("F^0", c0 as u64), ("F^1", c1 as u64), ("chosen", p as u64)],
        vec![],
    );

    // one proper (β+1)-coloring per block of the chosen class, shared palette
    let mut classes = vec![VertexSet::new(ctx.g.len()); target];
    for b in blocks.iter().skip(p).step_by(2) {
        let (_, w) = ctx.g.coloring(b);
        for (v, c) in w.colors {
            classes[c].insert(v);
        }
    }
    let chis: Vec<usize> = classes.iter().map(|h| ctx.chi(h)).collect();
    let best = (0..target).max_by_key(|&j| (chis[j], std::cmp::Reverse(j))).expect("β+1 ≥ 1 classes");
    let h = classes.swap_remove(best);
    let class_chis: Vec<(String, u64)> = chis.iter().enumerate().map(|(j, c)| (format!("H_{j}"), *c as u64)).collect();
    let named: Vec<(&str, u64)> = class_chis.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    trace.step("color-classes", &named, ctx.ids(&h));

    let chi_h = ctx.chi(&h);
    if chi_h as u64 <= alpha {
        return Err(ExtractError::InternalContradiction(format!("χ(H) = {chi_h} ≤ α = {alpha}")));
    }
    let mut min_gap = usize::MAX;
    for u in h.iter() {
        for v in h.iter().filter(|&v| v > u && ctx.g.adjacent(u, v)) {
            let gap = ctx.chi(&ctx.between(within, u, v));
            min_gap = min_gap.min(gap);
            if gap as u64 <= beta {
                return Err(ExtractError::InternalContradiction(format!(
                    "χ(F({}, {})) = {gap} ≤ β = {beta}",
                    ctx.id(u),
                    ctx.id(v)
                )));
            }
        }
    }
    let mut verified = vec![("H", chi_h as u64)];
    if min_gap != usize::MAX {
        verified.push(("min gap", min_gap as u64));
    }
    trace.step("verify", &verified, vec![]);
    Ok(h)
}

/// Partition argument: returns `H` with `χ(H) > α` and `χ(F(u, v)) > β` for
/// every intersecting `u, v ∈ H`, both verified.
pub fn mcguinness(family: &CurveFamily, alpha: u64, beta: u64) -> Result<(Vec<String>, ExtractionReport), ExtractError> {
    let ctx = Ctx::new(family);
    let mut trace = Trace::default();
    let h = mcguinness_in(&ctx, &ctx.g.all(), alpha, beta, &mut trace)?;
    let ids = ctx.ids(&h);
    Ok((ids.clone(), trace.found(json!({ "H": ids }))))
}

/// The first intersecting pair of the `α = 1` partition class, with `χ(F(u, v)) > β`.
pub(crate) fn gap_pair_in(
    ctx: &Ctx,
    within: &VertexSet,
    beta: u64,
    trace: &mut Trace,
) -> Result<(usize, usize), ExtractError> {
    let h = mcguinness_in(ctx, within, 1, beta, trace)?;
    for u in h.iter() {
        if let Some(v) = h.iter().find(|&v| v > u && ctx.g.adjacent(u, v)) {
            let gap = ctx.chi(&ctx.between(within, u, v));
            if gap as u64 <= beta {
                return Err(ExtractError::InternalContradiction(format!("χ(F(u, v)) = {gap} ≤ β")));
            }
            trace.step("gap-pair", &[("F(u,v)", gap as u64)], vec![ctx.id(u), ctx.id(v)]);
            return Ok((u, v));
        }
    }
    Err(ExtractError::InternalContradiction("χ(H) > 1 but H is independent".into()))
}

pub fn intersecting_gap_pair(family: &CurveFamily, beta: u64) -> Result<(String, String), ExtractError> {
    let ctx = Ctx::new(family);
    let (u, v) = gap_pair_in(&ctx, &ctx.g.all(), beta, &mut Trace::default())?;
    Ok((ctx.id(u), ctx.id(v)))
}
