//! Exterior of a grounded family: the unbounded component of the closed
//! upper halfplane with the union of the curves removed.
//!
//! The union of a grounded family together with the baseline is connected,
//! so every face of the arrangement (curves + baseline + a bounding box)
//! is bounded by a single closed walk. The exterior is the face adjacent to
//! the top of the box. A point lies in it iff a ray cast in direction
//! (1, ε) crosses that walk an odd number of times; edges the walk traverses
//! twice cancel out.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::curve::{CurvePoint, GroundedCurve};
use super::family::{probe_violations, Violation};
use super::intersect::curve_intersections;
use super::point::{compare_directions, int, intersect_segments, on_segment, ray_crosses, Point, Rational, SegmentHit};

#[derive(Clone, Debug, thiserror::Error)]
pub enum ExteriorError {
    #[error("probe violates general position: {0:?}")]
    DegenerateProbe(Vec<Violation>),
}

/// Point-location structure answering exterior membership for one family.
#[derive(Clone, Debug)]
pub struct Exterior {
    curves: Vec<GroundedCurve>,
    segments: Vec<(Point, Point)>,
    /// Boundary walk of the exterior face (curve edges only; box edges dropped).
    walk: Vec<(Point, Point)>,
    /// Open baseline intervals whose upper side belongs to the exterior.
    baseline: Vec<(Rational, Rational)>,
    lo_x: Rational,
    hi_x: Rational,
    hi_y: Rational,
}

impl Exterior {
    pub fn new(curves: &[GroundedCurve]) -> Self {
        let segments: Vec<(Point, Point)> = curves
            .iter()
            .flat_map(|c| c.segments().map(|(a, b)| (a.clone(), b.clone())))
            .collect();
        let (lo_x, hi_x, hi_y) = if curves.is_empty() {
            (int(-1), int(1), int(1))
        } else {
            let mut lo_x = curves[0].basepoint().x.clone();
            let mut hi_x = lo_x.clone();
            let mut hi_y = Rational::zero();
            for c in curves {
                for v in c.vertices() {
                    if v.x < lo_x {
                        lo_x = v.x.clone();
                    }
                    if v.x > hi_x {
                        hi_x = v.x.clone();
                    }
                    if v.y > hi_y {
                        hi_y = v.y.clone();
                    }
                }
            }
            (lo_x - int(1), hi_x + int(1), hi_y + int(1))
        };
        let left = Point::new(lo_x.clone(), Rational::zero());
        let right = Point::new(hi_x.clone(), Rational::zero());
        let top_left = Point::new(lo_x.clone(), hi_y.clone());
        let top_right = Point::new(hi_x.clone(), hi_y.clone());

        let mut all = segments.clone();
        all.push((left.clone(), right.clone()));
        all.push((left.clone(), top_left.clone()));
        all.push((top_left.clone(), top_right.clone()));
        all.push((top_right.clone(), right.clone()));

        let (vertices, edges) = split_segments(&all);
        let walk_all = face_walk(&vertices, &edges, &top_right, &top_left);

        let is_box = |a: &Point, b: &Point| {
            let on_frame = |p: &Point| p.x == lo_x || p.x == hi_x || p.y == hi_y;
            on_frame(a) && on_frame(b) && (a.x == b.x || a.y == b.y) && !(a.y.is_zero() && b.y.is_zero())
        };
        let mut walk = Vec::new();
        let mut baseline = Vec::new();
        for (a, b) in walk_all {
            if a.y.is_zero() && b.y.is_zero() {
                if a.x < b.x {
                    baseline.push((a.x.clone(), b.x.clone()));
                }
                continue;
            }
            if is_box(&a, &b) {
                continue;
            }
            walk.push((a, b));
        }
        Exterior {
            curves: curves.to_vec(),
            segments,
            walk,
            baseline,
            lo_x,
            hi_x,
            hi_y,
        }
    }

    pub fn curves(&self) -> &[GroundedCurve] {
        &self.curves
    }

    pub fn on_union(&self, q: &Point) -> bool {
        self.segments.iter().any(|(a, b)| on_segment(a, b, q))
    }

    /// Membership of a single point of the closed upper halfplane.
    pub fn contains_point(&self, q: &Point) -> bool {
        if q.y < Rational::zero() {
            return false;
        }
        if self.on_union(q) {
            return false;
        }
        if q.x <= self.lo_x || q.x >= self.hi_x || q.y >= self.hi_y {
            return true;
        }
        if q.y.is_zero() {
            return self
                .baseline
                .iter()
                .any(|(a, b)| a < &q.x && &q.x < b);
        }
        // The box's right side is dropped from the walk; it would add one crossing.
        let crossings = self.walk.iter().filter(|(a, b)| ray_crosses(q, a, b)).count();
        crossings % 2 == 0
    }

    /// Whether some point of `probe` lies in the exterior.
    pub fn meets_curve(&self, probe: &GroundedCurve) -> Result<bool, ExteriorError> {
        let violations = probe_violations(probe, &self.curves);
        if !violations.is_empty() {
            return Err(ExteriorError::DegenerateProbe(violations));
        }
        Ok(sample_points(probe, &self.curves)
            .iter()
            .any(|p| self.contains_point(p)))
    }
}

/// One point from each open piece of `probe` left after cutting it at every
/// intersection with `obstacles`.
pub fn sample_points(probe: &GroundedCurve, obstacles: &[GroundedCurve]) -> Vec<Point> {
    let mut cuts: BTreeSet<CurvePoint> = BTreeSet::new();
    cuts.insert(probe.start());
    cuts.insert(probe.end());
    for c in obstacles {
        if c.id() == probe.id() {
            continue;
        }
        for (on_probe, _) in curve_intersections(probe, c) {
            cuts.insert(on_probe);
        }
    }
    let cuts: Vec<CurvePoint> = cuts.into_iter().collect();
    cuts.windows(2)
        .map(|w| probe.point_between(&w[0], &w[1]))
        .collect()
}

/// Whether `probe` has a point lying in every one of `exteriors` at once.
pub fn meets_all(probe: &GroundedCurve, exteriors: &[&Exterior]) -> bool {
    let obstacles: Vec<GroundedCurve> = exteriors
        .iter()
        .flat_map(|e| e.curves().iter().cloned())
        .collect();
    sample_points(probe, &obstacles)
        .iter()
        .any(|p| exteriors.iter().all(|e| e.contains_point(p)))
}

/// Splits every segment at all its contacts with the others.
fn split_segments(segs: &[(Point, Point)]) -> (Vec<Point>, BTreeSet<(usize, usize)>) {
    let mut params: Vec<Vec<Rational>> = vec![vec![Rational::zero(), Rational::one()]; segs.len()];
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (p0, p1) = &segs[i];
            let (q0, q1) = &segs[j];
            match intersect_segments(p0, p1, q0, q1) {
                SegmentHit::None => {}
                SegmentHit::Point { t, u, .. } => {
                    params[i].push(t);
                    params[j].push(u);
                }
                SegmentHit::Overlap { t0, t1, u0, u1 } => {
                    params[i].push(t0);
                    params[i].push(t1);
                    params[j].push(u0);
                    params[j].push(u1);
                }
            }
        }
    }
    let mut index: BTreeMap<Point, usize> = BTreeMap::new();
    let mut vertices = Vec::new();
    let mut id_of = |p: Point, vertices: &mut Vec<Point>| -> usize {
        *index.entry(p.clone()).or_insert_with(|| {
            vertices.push(p);
            vertices.len() - 1
        })
    };
    let mut edges = BTreeSet::new();
    for (k, (a, b)) in segs.iter().enumerate() {
        let ps = &mut params[k];
        ps.sort();
        ps.dedup();
        let ids: Vec<usize> = ps.iter().map(|t| id_of(a.lerp(b, t), &mut vertices)).collect();
        for w in ids.windows(2) {
            if w[0] != w[1] {
                edges.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
    }
    (vertices, edges)
}

/// Closed walk of the face to the left of the half-edge `from -> to`.
fn face_walk(
    vertices: &[Point],
    edges: &BTreeSet<(usize, usize)>,
    from: &Point,
    to: &Point,
) -> Vec<(Point, Point)> {
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for &(a, b) in edges {
        around[a].push(b);
        around[b].push(a);
    }
    for (v, nbrs) in around.iter_mut().enumerate() {
        let base = &vertices[v];
        nbrs.sort_by(|&p, &q| compare_directions(&vertices[p].sub(base), &vertices[q].sub(base)));
    }
    let start_a = vertices.iter().position(|p| p == from).expect("frame vertex");
    let start_b = vertices.iter().position(|p| p == to).expect("frame vertex");
    let mut walk = Vec::new();
    let (mut a, mut b) = (start_a, start_b);
    loop {
        walk.push((vertices[a].clone(), vertices[b].clone()));
        // next edge: the one just clockwise of b -> a around b
        let nbrs = &around[b];
        let k = nbrs.iter().position(|&x| x == a).expect("twin edge");
        let next = nbrs[(k + nbrs.len() - 1) % nbrs.len()];
        a = b;
        b = next;
        if a == start_a && b == start_b {
            break;
        }
        assert!(walk.len() <= 2 * edges.len() + 2, "face walk did not close");
    }
    walk
}

/// Exterior membership of a point probe.
pub fn exterior_contains_point(family: &[GroundedCurve], q: &Point) -> bool {
    Exterior::new(family).contains_point(q)
}

/// Exterior membership of a curve probe.
pub fn exterior_meets_curve(family: &[GroundedCurve], probe: &GroundedCurve) -> Result<bool, ExteriorError> {
    Exterior::new(family).meets_curve(probe)
}
