use super::Ctx;
use crate::geom::CurveFamily;
use crate::graph::VertexSet;
use crate::structures::{is_supported, supported_subfamily, Skeleton};

/// A skeleton `(u, v, Q)` in `within` together with the vertices it supports.
#[derive(Clone, Debug)]
pub(crate) struct FoundSkeleton {
    pub skeleton: Skeleton,
    pub supported: VertexSet,
}

/// Vertices of `within` strictly between `u` and `v` that meet `u` or `v`.
pub(crate) fn touching_uv(ctx: &Ctx, within: &VertexSet, u: usize, v: usize) -> VertexSet {
    ctx.g.touching(&ctx.between(within, u, v), &[u, v])
}

/// Skeletons `(u, v, Qʲ)` for the color classes `Qʲ` of an exact coloring of
/// the curves in `within(u, v)` meeting `u` or `v`.
pub(crate) fn class_skeletons(ctx: &Ctx, within: &VertexSet, u: usize, v: usize) -> Vec<FoundSkeleton> {
    let q = touching_uv(ctx, within, u, v);
    skeletons_from(ctx, within, &q, u, v)
}

/// Skeletons `(u, v, Qʲ)` for the color classes of `q`, with supported curves
/// taken from `ambient`.
pub(crate) fn skeletons_from(ctx: &Ctx, ambient: &VertexSet, q: &VertexSet, u: usize, v: usize) -> Vec<FoundSkeleton> {
    let (_, w) = ctx.g.coloring(q);
    let sub = ctx.subfamily(ambient);
    let mut out = Vec::new();
    for class in w.classes() {
        let ids: Vec<String> = class.iter().map(|&x| ctx.id(x)).collect();
        let sk = Skeleton::new(&sub, &ctx.id(u), &ctx.id(v), &ids).expect("color classes of F(u,v) form skeletons");
        let supported = supported_subfamily(&sub, &sk).expect("validated skeleton");
        out.push(FoundSkeleton {
            supported: ctx.set_of(&supported),
            skeleton: sk,
        });
    }
    out
}

pub(crate) fn find_in(ctx: &Ctx, within: &VertexSet, alpha: u64) -> Option<FoundSkeleton> {
    if alpha >= within.len() as u64 {
        return None;
    }
    for u in within.iter() {
        for v in within.iter().filter(|&v| v > u && ctx.g.adjacent(u, v)) {
            for found in class_skeletons(ctx, within, u, v) {
                if ctx.chi(&found.supported) as u64 > alpha {
                    return Some(found);
                }
            }
        }
    }
    None
}

/// First skeleton, over intersecting pairs `u ≺ v` in order and the color
/// classes of the curves between them meeting `u` or `v`, whose supported
/// subfamily has `χ > α`. The result is re-validated before returning.
pub fn find_skeleton_supported(family: &CurveFamily, alpha: u64) -> Option<(Skeleton, Vec<String>)> {
    let ctx = Ctx::new(family);
    let found = find_in(&ctx, &ctx.g.all(), alpha)?;
    found.skeleton.validate(family).expect("found skeleton is valid");
    let ids = ctx.ids(&found.supported);
    for p in &ids {
        assert!(is_supported(p, &found.skeleton, family).expect("p lies between u and v"));
    }
    Some((found.skeleton, ids))
}
