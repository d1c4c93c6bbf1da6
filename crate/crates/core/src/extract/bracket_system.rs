use num_bigint::BigInt;
use serde_json::json;

use super::bfs::{bfs_in, exterior_reachers};
use super::mcguinness::gap_pair_in;
use super::skeleton::{skeletons_from, touching_uv};
use super::{big, exceeds, fail, unsigned, BoundParams, Ctx, ExtractError, ExtractionReport, StepFailure, Trace};
use crate::bounds::{f_betas, f_bound};
use crate::geom::{first_hit_curves, CurveFamily, GroundedCurve};
use crate::graph::VertexSet;
use crate::structures::{
    build_bracket, extract_clique, interior_classify, validate_bracket_system, Bracket, Classification,
};

fn contradiction(step: &str, claim: impl Into<String>, measured: usize) -> StepFailure {
    fail(step, claim, measured)
}

pub(crate) fn require(ok: bool, step: &str, threshold: impl FnOnce() -> String, measured: usize) -> Result<(), StepFailure> {
    if ok {
        Ok(())
    } else {
        Err(fail(step, threshold(), measured))
    }
}

struct Thresholds {
    betas: Vec<BigInt>,
    gamma: BigInt,
}

fn thresholds(params: &BoundParams) -> Thresholds {
    let (a, k, xi) = (
        num_bigint::BigUint::from(params.alpha),
        params.k,
        num_bigint::BigUint::from(params.xi),
    );
    let betas = match &params.betas {
        Some(b) => b.iter().map(|&x| big(x)).collect(),
        None => f_betas(&a, k, &xi).iter().map(unsigned).collect(),
    };
    let gamma = match params.gamma {
        Some(g) => big(g),
        None => unsigned(&f_bound(&a, k, &xi)),
    };
    Thresholds { betas, gamma }
}

/// Runs the bracket-system construction, logging every inequality.
///
/// Ends with `structure-found` either when a skeleton-supported subfamily
/// with `χ > α` turns up (the lemma's hypothesis fails) or when a full
/// `(k+1)`-bracket system is built, validated and its clique extracted.
pub fn attempt_bracket_system(family: &CurveFamily, params: &BoundParams) -> ExtractionReport {
    let mut trace = Trace::default();
    if let Err(e) = params.validate() {
        return trace.failed(fail("params", e.to_string(), 0));
    }
    match run(family, params, &mut trace) {
        Ok(found) => trace.found(found),
        Err(f) => trace.failed(f),
    }
}

fn run(family: &CurveFamily, params: &BoundParams, trace: &mut Trace) -> Result<serde_json::Value, StepFailure> {
    let ctx = Ctx::new(family);
    let th = thresholds(params);
    let (k, xi, alpha) = (params.k as usize, params.xi, params.alpha);
    let kxi = k as u64 * xi;

    let all = ctx.g.all();
    let omega = ctx.g.omega(&all);
    trace.step("clique-bound", &[("omega", omega as u64)], vec![]);
    require(omega <= k, "clique-bound", || format!("ω(F) ≤ {k}"), omega)?;

    // (1) F = F₀ ⊃ … ⊃ F_{k+1}, each externally supported in the previous one
    let mut fam: Vec<VertexSet> = vec![all.clone()];
    let chi0 = ctx.chi(&all);
    trace.step("F_0", &[("F_0", chi0 as u64)], vec![]);
    require(exceeds(chi0, &th.gamma), "F_0", || format!("χ(F_0) > γ = {}", th.gamma), chi0)?;
    for i in 0..=k {
        let mut sub = Trace::default();
        let res = bfs_in(&ctx, &fam[i], &mut sub);
        trace.extend(&format!("bfs-{}/", i + 1), sub);
        let (g, _, _) = res.map_err(|e| match e {
            ExtractError::PreconditionFailure { reason, measured } => {
                fail(format!("F_{}", i + 1), reason, measured as usize)
            }
            other => contradiction(&format!("F_{}", i + 1), other.to_string(), 0),
        })?;
        let c = ctx.chi(&g);
        // χ(F_{i+1}) > γ/2^{i+1}, compared exactly
        let scaled = BigInt::from(c) << (i + 1);
        trace.step(format!("F_{}", i + 1), &[(&format!("F_{}", i + 1), c as u64)], ctx.ids(&g));
        require(
            scaled > th.gamma,
            &format!("F_{}", i + 1),
            || format!("χ(F_{}) > γ/2^{} = {}/{}", i + 1, i + 1, th.gamma, 1u128 << (i + 1)),
            c,
        )?;
        fam.push(g);
    }

    // (2) intersecting u, v ∈ F_{k+1} with χ(F_{k+1}(u, v)) > β_{k+1} + 2ξ
    let last = &fam[k + 1];
    let gap = &th.betas[k + 1] + big(2 * xi);
    let gap_u64: u64 = gap.clone().try_into().map_err(|_| contradiction("gap-pair", "β_{k+1} fits in 64 bits", 0))?;
    let mut sub = Trace::default();
    let res = gap_pair_in(&ctx, last, gap_u64, &mut sub);
    trace.extend("gap-pair/", sub);
    let (u, v) = res.map_err(|e| match e {
        ExtractError::PreconditionFailure { reason, measured } => fail("gap-pair", reason, measured as usize),
        other => contradiction("gap-pair", other.to_string(), 0),
    })?;

    // (3) drop the curves meeting u or v
    let touching = touching_uv(&ctx, last, u, v);
    let chi_t = ctx.chi(&touching);
    let inner = ctx.between(last, u, v);
    let mut g_next = inner.difference(&touching);
    let chi_g = ctx.chi(&g_next);
    trace.step(
        "G",
        &[("F_{k+1}(u,v)", ctx.chi(&inner) as u64), ("meeting u or v", chi_t as u64), ("G", chi_g as u64)],
        vec![ctx.id(u), ctx.id(v)],
    );
    require(chi_t as u64 <= 2 * xi, "hypothesis", || format!("χ(curves meeting u or v) ≤ 2ξ = {}", 2 * xi), chi_t)?;
    require(exceeds(chi_g, &th.betas[k + 1]), "G", || format!("χ(G) > β_{} = {}", k + 1, th.betas[k + 1]), chi_g)?;

    // (4) reverse loop
    let mut brackets: Vec<Option<Bracket>> = vec![None; k + 1];
    for i in (0..=k).rev() {
        let step = format!("bracket-{i}");
        let q = touching_uv(&ctx, &fam[i], u, v);
        let chi_q = ctx.chi(&q);
        require(chi_q as u64 <= 2 * xi, "hypothesis", || format!("χ(Q_{i}) ≤ 2ξ = {}", 2 * xi), chi_q)?;
        let skeletons = skeletons_from(&ctx, &all, &q, u, v);
        let mut supported = VertexSet::new(ctx.g.len());
        for sk in &skeletons {
            let c = ctx.chi(&sk.supported);
            if c as u64 > alpha {
                trace.step(
                    format!("{step}/skeleton-supported"),
                    &[("P", c as u64)],
                    ctx.ids(&sk.supported),
                );
                return Ok(json!({
                    "kind": "skeleton-supported",
                    "skeleton": sk.skeleton,
                    "P": ctx.ids(&sk.supported),
                    "chi": c,
                }));
            }
            supported = supported.union(&sk.supported);
        }
        let h = g_next.difference(&supported);
        let chi_h = ctx.chi(&h);
        let need_h = &th.betas[i + 1] - big(2 * alpha * xi);
        trace.step(
            format!("{step}/H"),
            &[("Q", chi_q as u64), ("H", chi_h as u64), ("skeletons", skeletons.len() as u64)],
            ctx.ids(&h),
        );
        require(exceeds(chi_h, &need_h), &step, || format!("χ(H_{i}) > β_{} − 2αξ = {need_h}", i + 1), chi_h)?;

        // s(p): first curve of F_i meeting p and ext(F_{i+1}), along p
        let reach = exterior_reachers(&ctx, &fam[i], &fam[i + 1]).map_err(|e| contradiction(&step, e.to_string(), 0))?;
        let mut s_of = std::collections::BTreeMap::new();
        for p in h.iter() {
            let cands: Vec<usize> = ctx.g.neighbors(p).intersection(&reach).to_vec();
            let curves: Vec<&GroundedCurve> = cands.iter().map(|&c| ctx.family.curve(c)).collect();
            let hit = first_hit_curves(ctx.family.curve(p), &curves)
                .ok_or_else(|| contradiction(&step, format!("{} is externally supported in F_{i}", ctx.id(p)), 0))?;
            s_of.insert(p, cands[hit.obstacle]);
        }
        let hl = ctx.g.set(h.iter().filter(|p| s_of[p] < *p));
        let hr = h.difference(&hl);
        let (cl, cr) = (ctx.chi(&hl), ctx.chi(&hr));
        let left = 2 * cl >= chi_h;
        let (side, chi_side) = if left { (hl, cl) } else { (hr, cr) };
        let need_side = &th.betas[i] + big(3 * kxi + 1);
        trace.step(
            format!("{step}/split"),
            &[("H^L", cl as u64), ("H^R", cr as u64), ("left", left as u64)],
            vec![],
        );
        require(2 * chi_side >= chi_h, &step, || "χ(chosen side) ≥ χ(H)/2".into(), chi_side)?;
        require(
            exceeds(chi_side, &need_side),
            &step,
            || format!("χ(H_{i}^{}) > β_{i} + 3kξ + 1 = {need_side}", if left { "L" } else { "R" }),
            chi_side,
        )?;

        let comp = ctx
            .g
            .components(&side)
            .into_iter()
            .max_by_key(|c| (ctx.chi(c), std::cmp::Reverse(c.first())))
            .expect("nonempty side");
        let (lo, hi) = (comp.first().unwrap(), comp.last().unwrap());
        for p in comp.iter() {
            let s = s_of[&p];
            if (left && s >= lo) || (!left && s <= hi) {
                return Err(contradiction(
                    &step,
                    format!("s({}) lies beyond C_{i}", ctx.id(p)),
                    ctx.chi(&comp),
                ));
            }
        }

        // P_i: the outermost curves of C_i, away from the supports, until χ = kξ+1
        let order: Vec<usize> = if left { comp.iter().collect::<Vec<_>>().into_iter().rev().collect() } else { comp.to_vec() };
        let mut p_set = VertexSet::new(ctx.g.len());
        for x in order {
            if ctx.chi(&p_set) as u64 == kxi + 1 {
                break;
            }
            p_set.insert(x);
        }
        let chi_p = ctx.chi(&p_set);
        require(chi_p as u64 == kxi + 1, &step, || format!("χ(P_{i}) = kξ + 1 = {}", kxi + 1), chi_p)?;
        let s_set = ctx.g.set(p_set.iter().map(|p| s_of[&p]));
        let br = build_bracket(&ctx.ids(&p_set), &ctx.ids(&s_set), family)
            .map_err(|e| contradiction(&step, format!("(P_{i}, S_{i}) is a bracket: {e}"), 0))?;
        for p in p_set.iter() {
            if br.s_of(&ctx.id(p)) != Some(ctx.id(s_of[&p]).as_str()) {
                return Err(contradiction(&step, format!("s({}) agrees with the bracket", ctx.id(p)), 0));
            }
        }

        let rest = comp.difference(&p_set);
        let mut inside = VertexSet::new(ctx.g.len());
        let mut boundary = VertexSet::new(ctx.g.len());
        for c in rest.iter() {
            match interior_classify(&br, ctx.family.curve(c)) {
                Classification::Contained => inside.insert(c),
                Classification::CrossesBoundaryOffBaseline => boundary.insert(c),
                Classification::Outside => {}
            }
        }
        let (chi_in, chi_bd) = (ctx.chi(&inside), ctx.chi(&boundary));
        trace.step(
            step.clone(),
            &[
                ("C", ctx.chi(&comp) as u64),
                ("P", chi_p as u64),
                ("boundary", chi_bd as u64),
                ("G", chi_in as u64),
            ],
            ctx.ids(&p_set).into_iter().chain(ctx.ids(&s_set)).collect(),
        );
        require(chi_bd as u64 <= 2 * kxi, "hypothesis", || format!("χ(curves crossing ∂I_{i}) ≤ 2kξ = {}", 2 * kxi), chi_bd)?;
        require(exceeds(chi_in, &th.betas[i]), &step, || format!("χ(G_{i}) > β_{i} = {}", th.betas[i]), chi_in)?;
        brackets[i] = Some(br);
        g_next = inside;
    }

    // (5) validate and extract the (k+1)-clique
    let bs: Vec<Bracket> = brackets.into_iter().map(|b| b.expect("every index filled")).collect();
    validate_bracket_system(&bs, family).map_err(|e| contradiction("bracket-system", e.to_string(), 0))?;
    let clique = extract_clique(&bs, xi as usize, family).map_err(|e| contradiction("extract-clique", e.to_string(), 0))?;
    trace.step("extract-clique", &[("size", clique.len() as u64)], clique.clone());
    Ok(json!({
        "kind": "bracket-system",
        "brackets": bs.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
        "clique": clique,
    }))
}
