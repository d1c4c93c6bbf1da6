use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::point::{Point, Rational};

/// A polyline in the closed upper halfplane whose first vertex lies on the baseline.
///
/// Construction does not check the grounding invariants; [`super::validate_family`]
/// does, and reports every violation it finds. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundedCurve {
    id: Arc<str>,
    vertices: Arc<[Point]>,
}

impl GroundedCurve {
    pub fn new(id: impl Into<String>, vertices: Vec<Point>) -> Self {
        let id: String = id.into();
        GroundedCurve {
            id: Arc::from(id.as_str()),
            vertices: Arc::from(vertices),
        }
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_ints(id: impl Into<String>, vertices: &[(i64, i64)]) -> Self {
        GroundedCurve::new(
            id,
            vertices.iter().map(|&(x, y)| Point::from_ints(x, y)).collect(),
        )
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn basepoint(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn segment(&self, i: usize) -> (&Point, &Point) {
        (&self.vertices[i], &self.vertices[i + 1])
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn start(&self) -> CurvePoint {
        CurvePoint {
            segment: 0,
            t: Rational::zero(),
            at: self.vertices[0].clone(),
        }
    }

    pub fn end(&self) -> CurvePoint {
        let last = self.segment_count() - 1;
        CurvePoint {
            segment: last,
            t: Rational::one(),
            at: self.vertices[last + 1].clone(),
        }
    }

    /// Canonical position for parameter `t` on segment `segment`.
    pub fn point_at(&self, segment: usize, t: Rational) -> CurvePoint {
        if t.is_one() && segment + 1 < self.segment_count() {
            return CurvePoint {
                segment: segment + 1,
                t: Rational::zero(),
                at: self.vertices[segment + 1].clone(),
            };
        }
        let (a, b) = self.segment(segment);
        let at = if t.is_zero() {
            a.clone()
        } else if t.is_one() {
            b.clone()
        } else {
            a.lerp(b, &t)
        };
        CurvePoint { segment, t, at }
    }

    /// A point strictly between two positions along the curve.
    pub fn point_between(&self, a: &CurvePoint, b: &CurvePoint) -> Point {
        debug_assert!(a < b);
        if a.segment == b.segment {
            let t = (&a.t + &b.t) / Rational::from_integer(2.into());
            return self.segment(a.segment).0.lerp(self.segment(a.segment).1, &t);
        }
        // some vertex lies strictly inside (a, b) unless b sits at the start of the next segment
        if b.segment == a.segment + 1 && b.t.is_zero() {
            let t = (&a.t + Rational::one()) / Rational::from_integer(2.into());
            return self.segment(a.segment).0.lerp(self.segment(a.segment).1, &t);
        }
        self.vertices[a.segment + 1].clone()
    }

    /// The polyline from the basepoint up to `end`, as a vertex list.
    pub fn prefix_vertices(&self, end: &CurvePoint) -> Vec<Point> {
        let mut out: Vec<Point> = self.vertices[..=end.segment].to_vec();
        if !end.t.is_zero() {
            out.push(end.at.clone());
        }
        out
    }

    pub fn bbox(&self) -> (Point, Point) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in self.vertices.iter() {
            if v.x < lo.x {
                lo.x = v.x.clone();
            }
            if v.y < lo.y {
                lo.y = v.y.clone();
            }
            if v.x > hi.x {
                hi.x = v.x.clone();
            }
            if v.y > hi.y {
                hi.y = v.y.clone();
            }
        }
        (lo, hi)
    }
}

impl fmt::Debug for GroundedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.id)?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A position along a curve: segment index and parameter within that segment.
///
/// Canonical form keeps `t < 1` except on the final segment, so that
/// lexicographic order on `(segment, t)` is the order along the curve.
#[derive(Clone, Debug)]
pub struct CurvePoint {
    pub segment: usize,
    pub t: Rational,
    pub at: Point,
}

impl PartialEq for CurvePoint {
    fn eq(&self, other: &Self) -> bool {
        self.segment == other.segment && self.t == other.t
    }
}

impl Eq for CurvePoint {}

impl PartialOrd for CurvePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CurvePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.segment
            .cmp(&other.segment)
            .then_with(|| self.t.cmp(&other.t))
    }
}

/// A connected piece of a curve between two positions, each end open or closed.
#[derive(Clone, Debug)]
pub struct Subcurve {
    pub curve: GroundedCurve,
    pub start: CurvePoint,
    pub end: CurvePoint,
    pub start_closed: bool,
    pub end_closed: bool,
}

impl Subcurve {
    pub fn whole(curve: &GroundedCurve) -> Self {
        Subcurve {
            start: curve.start(),
            end: curve.end(),
            curve: curve.clone(),
            start_closed: true,
            end_closed: true,
        }
    }

    /// The initial part of `curve` from its basepoint (closed) up to `end`.
    pub fn prefix(curve: &GroundedCurve, end: CurvePoint, end_closed: bool) -> Self {
        Subcurve {
            start: curve.start(),
            end,
            curve: curve.clone(),
            start_closed: true,
            end_closed,
        }
    }

    pub fn id(&self) -> &str {
        self.curve.id()
    }

    pub fn contains(&self, pos: &CurvePoint) -> bool {
        let after_start = match pos.cmp(&self.start) {
            Ordering::Greater => true,
            Ordering::Equal => self.start_closed,
            Ordering::Less => false,
        };
        let before_end = match pos.cmp(&self.end) {
            Ordering::Less => true,
            Ordering::Equal => self.end_closed,
            Ordering::Greater => false,
        };
        after_start && before_end
    }

    pub fn is_empty(&self) -> bool {
        match self.start.cmp(&self.end) {
            Ordering::Less => false,
            Ordering::Equal => !(self.start_closed && self.end_closed),
            Ordering::Greater => true,
        }
    }

    /// Vertex list of the closed version of this piece.
    pub fn vertices(&self) -> Vec<Point> {
        let mut out = vec![self.start.at.clone()];
        for v in self.curve.vertices()[self.start.segment + 1..=self.end.segment].iter() {
            if *v != out[out.len() - 1] {
                out.push(v.clone());
            }
        }
        if self.end.at != out[out.len() - 1] {
            out.push(self.end.at.clone());
        }
        out
    }
}
