use super::curve::GroundedCurve;
use super::point::{intersect_segments, on_segment, ray_crosses, Point, SegmentHit};

/// Closed region bounded by a closed polygonal curve, boundary included.
///
/// Membership off the boundary uses the even-odd rule, so a self-crossing
/// boundary still yields a well-defined region.
#[derive(Clone, Debug)]
pub struct JordanRegion {
    boundary: Vec<Point>,
}

impl JordanRegion {
    /// `boundary` lists the vertices once; the closing edge is implicit.
    pub fn new(mut boundary: Vec<Point>) -> Self {
        boundary.dedup();
        if boundary.len() > 1 && boundary[0] == boundary[boundary.len() - 1] {
            boundary.pop();
        }
        JordanRegion { boundary }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.boundary
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        let n = self.boundary.len();
        (0..n).map(move |i| (&self.boundary[i], &self.boundary[(i + 1) % n]))
    }

    pub fn on_boundary(&self, q: &Point) -> bool {
        self.edges().any(|(a, b)| on_segment(a, b, q))
    }

    pub fn contains(&self, q: &Point) -> bool {
        if self.boundary.len() < 3 {
            return self.on_boundary(q);
        }
        if self.on_boundary(q) {
            return true;
        }
        self.edges().filter(|(a, b)| ray_crosses(q, a, b)).count() % 2 == 1
    }

    /// Every point where `c` touches the boundary; collinear contacts
    /// contribute both ends and their midpoint.
    pub fn boundary_contacts(&self, c: &GroundedCurve) -> Vec<Point> {
        let mut out = Vec::new();
        for (p0, p1) in c.segments() {
            for (q0, q1) in self.edges() {
                match intersect_segments(p0, p1, q0, q1) {
                    SegmentHit::None => {}
                    SegmentHit::Point { at, .. } => out.push(at),
                    SegmentHit::Overlap { t0, t1, .. } => {
                        let a = p0.lerp(p1, &t0);
                        let b = p0.lerp(p1, &t1);
                        out.push(a.midpoint(&b));
                        out.push(a);
                        out.push(b);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}
