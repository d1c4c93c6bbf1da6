use std::cmp::Ordering;

use super::curve::{CurvePoint, GroundedCurve, Subcurve};
use super::point::{intersect_segments, SegmentHit};

/// All common points of two distinct curves, as positions on each, sorted along `c1`.
///
/// Collinear overlaps (excluded by general position) contribute their two ends.
pub fn curve_intersections(c1: &GroundedCurve, c2: &GroundedCurve) -> Vec<(CurvePoint, CurvePoint)> {
    let mut out = Vec::new();
    for i in 0..c1.segment_count() {
        let (p0, p1) = c1.segment(i);
        for j in 0..c2.segment_count() {
            let (q0, q1) = c2.segment(j);
            match intersect_segments(p0, p1, q0, q1) {
                SegmentHit::None => {}
                SegmentHit::Point { t, u, .. } => {
                    out.push((c1.point_at(i, t), c2.point_at(j, u)));
                }
                SegmentHit::Overlap { t0, t1, u0, u1 } => {
                    out.push((c1.point_at(i, t0), c2.point_at(j, u0)));
                    out.push((c1.point_at(i, t1), c2.point_at(j, u1)));
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    out.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
    out
}

pub fn curves_intersect(c1: &GroundedCurve, c2: &GroundedCurve) -> bool {
    for (p0, p1) in c1.segments() {
        for (q0, q1) in c2.segments() {
            if intersect_segments(p0, p1, q0, q1) != SegmentHit::None {
                return true;
            }
        }
    }
    false
}

/// Pairs of distinct positions on `c` that coincide in the plane, each pair ordered.
pub fn self_intersections(c: &GroundedCurve) -> Vec<(CurvePoint, CurvePoint)> {
    let mut out = Vec::new();
    let n = c.segment_count();
    for i in 0..n {
        let (p0, p1) = c.segment(i);
        for j in i + 1..n {
            let (q0, q1) = c.segment(j);
            match intersect_segments(p0, p1, q0, q1) {
                SegmentHit::None => {}
                SegmentHit::Point { t, u, .. } => {
                    let a = c.point_at(i, t);
                    let b = c.point_at(j, u);
                    if a != b {
                        out.push((a, b));
                    }
                }
                SegmentHit::Overlap { t0, t1, u0, u1 } => {
                    for (t, u) in [(t0, u0), (t1, u1)] {
                        let a = c.point_at(i, t);
                        let b = c.point_at(j, u);
                        if a != b {
                            out.push((a, b));
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The earliest point of `c` (from its basepoint) lying on one of `obstacles`.
#[derive(Clone, Debug)]
pub struct FirstHit {
    pub at: CurvePoint,
    /// Index into the obstacle slice.
    pub obstacle: usize,
    pub on_obstacle: CurvePoint,
}

pub fn first_hit(c: &GroundedCurve, obstacles: &[Subcurve]) -> Option<FirstHit> {
    let mut best: Option<FirstHit> = None;
    for (k, obs) in obstacles.iter().enumerate() {
        if obs.is_empty() {
            continue;
        }
        for (on_c, on_obs) in curve_intersections(c, &obs.curve) {
            if !obs.contains(&on_obs) {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => on_c.cmp(&b.at) == Ordering::Less,
            };
            if better {
                best = Some(FirstHit {
                    at: on_c,
                    obstacle: k,
                    on_obstacle: on_obs,
                });
            }
            // later intersections with this obstacle come later along c
            break;
        }
    }
    best
}

/// First point of `c` on a whole curve among `obstacles`.
pub fn first_hit_curves(c: &GroundedCurve, obstacles: &[&GroundedCurve]) -> Option<FirstHit> {
    let subs: Vec<Subcurve> = obstacles.iter().map(|o| Subcurve::whole(o)).collect();
    first_hit(c, &subs)
}

/// Whether two subcurves share a point, honoring open ends.
pub fn subcurves_intersect(s1: &Subcurve, s2: &Subcurve) -> bool {
    if s1.is_empty() || s2.is_empty() {
        return false;
    }
    if s1.curve.id() != s2.curve.id() {
        return curve_intersections(&s1.curve, &s2.curve)
            .iter()
            .any(|(a, b)| s1.contains(a) && s2.contains(b));
    }
    // Same underlying curve: overlapping ranges, or a self-crossing linking the two.
    let lo = if s1.start > s2.start { s1 } else { s2 };
    let hi = if s1.end < s2.end { s1 } else { s2 };
    let overlap = match lo.start.cmp(&hi.end) {
        Ordering::Less => true,
        Ordering::Equal => {
            s1.contains(&lo.start) && s2.contains(&lo.start)
        }
        Ordering::Greater => false,
    };
    if overlap {
        return true;
    }
    self_intersections(&s1.curve).iter().any(|(a, b)| {
        (s1.contains(a) && s2.contains(b)) || (s1.contains(b) && s2.contains(a))
    })
}
