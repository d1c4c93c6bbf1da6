use serde_json::json;

use super::{Ctx, ExtractError, ExtractionReport, Trace};
use crate::geom::{CurveFamily, Exterior, GroundedCurve};
use crate::graph::VertexSet;

#[derive(Clone, Debug)]
pub struct BfsResult {
    /// The layer `F_d`, in basepoint order.
    pub g: Vec<String>,
    pub d: usize,
    /// `(p, s)`: a curve of `F` meeting `p` and `ext(G)`, one per member.
    pub supports: Vec<(String, String)>,
    pub report: ExtractionReport,
}

/// Curves of `within` that meet `ext(g)`.
pub(crate) fn exterior_reachers(ctx: &Ctx, within: &VertexSet, g: &VertexSet) -> Result<VertexSet, ExtractError> {
    let curves: Vec<GroundedCurve> = g.iter().map(|v| ctx.family.curve(v).clone()).collect();
    let ext = Exterior::new(&curves);
    let mut out = VertexSet::new(ctx.g.len());
    for s in within.difference(g).iter() {
        if ext
            .meets_curve(ctx.family.curve(s))
            .map_err(|e| ExtractError::InternalContradiction(e.to_string()))?
        {
            out.insert(s);
        }
    }
    Ok(out)
}

/// Core of [`bfs_supported`]: the layer, its index and one support per member.
pub(crate) fn bfs_in(
    ctx: &Ctx,
    within: &VertexSet,
    trace: &mut Trace,
) -> Result<(VertexSet, usize, Vec<(usize, usize)>), ExtractError> {
    let omega = ctx.g.omega(within);
    if omega < 2 {
        return Err(ExtractError::PreconditionFailure {
            reason: "ω(F) ≥ 2".into(),
            measured: omega as u64,
        });
    }
    let chi_f = ctx.chi(within);
    let comp = ctx
        .g
        .components(within)
        .into_iter()
        .max_by_key(|c| (ctx.chi(c), std::cmp::Reverse(c.first())))
        .expect("nonempty family");
    let root = comp.first().expect("nonempty component");
    let layers = ctx.g.bfs_layers(&comp, root);
    trace.step(
        "component",
        &[("F", chi_f as u64), ("component", ctx.chi(&comp) as u64)],
        vec![ctx.id(root)],
    );

    let mut union = VertexSet::new(ctx.g.len());
    for (i, li) in layers.iter().enumerate() {
        if union.intersection_len(li) != 0 {
            return Err(ExtractError::InternalContradiction(format!("layer {i} overlaps an earlier one")));
        }
        union = union.union(li);
        for lj in layers.iter().skip(i + 2) {
            for a in li.iter() {
                if ctx.g.neighbors(a).intersection_len(lj) != 0 {
                    return Err(ExtractError::InternalContradiction(format!(
                        "layer {i} meets a layer two or more steps away"
                    )));
                }
            }
        }
    }
    if union != comp {
        return Err(ExtractError::InternalContradiction("layers do not cover the component".into()));
    }
    let layer_chis: Vec<(String, u64)> = layers
        .iter()
        .enumerate()
        .map(|(i, l)| (format!("F_{i}"), ctx.chi(l) as u64))
        .collect();
    let named: Vec<(&str, u64)> = layer_chis.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    trace.step("layers", &named, vec![]);

    // χ(F_d) ≥ χ(F)/2, compared as 2χ(F_d) ≥ χ(F)
    let d = (1..layers.len())
        .find(|&d| 2 * ctx.chi(&layers[d]) >= chi_f)
        .ok_or_else(|| ExtractError::InternalContradiction("no layer d ≥ 1 with χ(F_d) ≥ χ(F)/2".into()))?;
    let g = layers[d].clone();

    let reach = exterior_reachers(ctx, within, &g)?;
    let mut supports = Vec::new();
    for p in g.iter() {
        let s = ctx
            .g
            .neighbors(p)
            .intersection(&reach)
            .first()
            .ok_or_else(|| ExtractError::InternalContradiction(format!("{} is not externally supported", ctx.id(p))))?;
        supports.push((p, s));
    }
    let mut chosen: Vec<usize> = supports.iter().map(|x| x.1).collect();
    chosen.sort_unstable();
    chosen.dedup();
    trace.step(
        format!("layer-{d}"),
        &[("G", ctx.chi(&g) as u64), ("F", chi_f as u64)],
        ctx.ids(&g),
    );
    trace.step("external-support", &[], chosen.iter().map(|&s| ctx.id(s)).collect());
    Ok((g, d, supports))
}

/// BFS layering from the leftmost curve of the max-χ component; returns the
/// first layer `F_d`, `d ≥ 1`, with `χ(F_d) ≥ χ(F)/2`, with its external
/// support verified.
pub fn bfs_supported(family: &CurveFamily) -> Result<BfsResult, ExtractError> {
    let ctx = Ctx::new(family);
    let mut trace = Trace::default();
    let (g, d, supports) = bfs_in(&ctx, &ctx.g.all(), &mut trace)?;
    let ids = ctx.ids(&g);
    let supports: Vec<(String, String)> = supports.into_iter().map(|(p, s)| (ctx.id(p), ctx.id(s))).collect();
    let report = trace.found(json!({ "G": ids, "d": d, "supports": supports }));
    Ok(BfsResult {
        g: ids,
        d,
        supports,
        report,
    })
}
