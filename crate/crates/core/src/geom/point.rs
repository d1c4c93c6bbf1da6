use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used by every predicate in the kernel.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// A point of the plane with exact coordinates. Ordered lexicographically by (x, y).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn sub(&self, other: &Point) -> (Rational, Rational) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        Point::new(
            &self.x + (&other.x - &self.x) * t,
            &self.y + (&other.y - &self.y) * t,
        )
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = rat(1, 2);
        self.lerp(other, &half)
    }

    /// Lossy conversion, used for rendering only.
    pub fn to_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.x), rational_to_f64(&self.y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn cross(ax: &Rational, ay: &Rational, bx: &Rational, by: &Rational) -> Rational {
    ax * by - ay * bx
}

/// Sign of the turn a -> b -> c: `Greater` for a counter-clockwise turn.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Ordering {
    let (abx, aby) = b.sub(a);
    let (acx, acy) = c.sub(a);
    cross(&abx, &aby, &acx, &acy).cmp(&Rational::zero())
}

/// True iff `q` lies on the closed segment `a b`.
pub fn on_segment(a: &Point, b: &Point, q: &Point) -> bool {
    if orientation(a, b, q) != Ordering::Equal {
        return false;
    }
    within(&a.x, &b.x, &q.x) && within(&a.y, &b.y, &q.y)
}

fn within(a: &Rational, b: &Rational, v: &Rational) -> bool {
    if a <= b {
        a <= v && v <= b
    } else {
        b <= v && v <= a
    }
}

fn boxes_overlap(p0: &Point, p1: &Point, q0: &Point, q1: &Point) -> bool {
    let (pxl, pxh) = minmax(&p0.x, &p1.x);
    let (qxl, qxh) = minmax(&q0.x, &q1.x);
    if pxh < qxl || qxh < pxl {
        return false;
    }
    let (pyl, pyh) = minmax(&p0.y, &p1.y);
    let (qyl, qyh) = minmax(&q0.y, &q1.y);
    !(pyh < qyl || qyh < pyl)
}

fn minmax<'a>(a: &'a Rational, b: &'a Rational) -> (&'a Rational, &'a Rational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Intersection of two closed segments `p0 p1` and `q0 q1`.
#[derive(Clone, Debug, PartialEq)]
pub enum SegmentHit {
    None,
    /// Single common point at parameter `t` on the first segment and `u` on the second.
    Point { t: Rational, u: Rational, at: Point },
    /// Collinear overlap; parameters of the overlap's ends on the first segment
    /// (`t0 < t1`) and the matching parameters on the second.
    Overlap {
        t0: Rational,
        t1: Rational,
        u0: Rational,
        u1: Rational,
    },
}

pub fn intersect_segments(p0: &Point, p1: &Point, q0: &Point, q1: &Point) -> SegmentHit {
    if !boxes_overlap(p0, p1, q0, q1) {
        return SegmentHit::None;
    }
    let (rx, ry) = p1.sub(p0);
    let (sx, sy) = q1.sub(q0);
    let (wx, wy) = q0.sub(p0);
    let denom = cross(&rx, &ry, &sx, &sy);
    let zero = Rational::zero();
    let one = Rational::one();
    if !denom.is_zero() {
        let t = cross(&wx, &wy, &sx, &sy) / &denom;
        let u = cross(&wx, &wy, &rx, &ry) / &denom;
        if t < zero || t > one || u < zero || u > one {
            return SegmentHit::None;
        }
        let at = p0.lerp(p1, &t);
        return SegmentHit::Point { t, u, at };
    }
    if !cross(&wx, &wy, &rx, &ry).is_zero() {
        return SegmentHit::None;
    }
    // Collinear: project q's endpoints onto p.
    let rr = &rx * &rx + &ry * &ry;
    if rr.is_zero() || (sx.is_zero() && sy.is_zero()) {
        // zero-length segments never occur in validated input
        return SegmentHit::None;
    }
    let ta = (&wx * &rx + &wy * &ry) / &rr;
    let (vx, vy) = q1.sub(p0);
    let tb = (&vx * &rx + &vy * &ry) / &rr;
    let (lo, hi) = if ta <= tb { (ta.clone(), tb.clone()) } else { (tb.clone(), ta.clone()) };
    let t0 = if lo > zero { lo } else { zero.clone() };
    let t1 = if hi < one { hi } else { one.clone() };
    if t0 > t1 {
        return SegmentHit::None;
    }
    // Map a parameter on p back onto q.
    let to_u = |t: &Rational| -> Rational {
        let d = &tb - &ta;
        (t - &ta) / d
    };
    if t0 == t1 {
        let u = to_u(&t0);
        let at = p0.lerp(p1, &t0);
        return SegmentHit::Point { t: t0, u, at };
    }
    let u0 = to_u(&t0);
    let u1 = to_u(&t1);
    SegmentHit::Overlap { t0, t1, u0, u1 }
}

/// Counter-clockwise comparison of direction vectors, starting from the positive x axis.
pub fn compare_directions(a: &(Rational, Rational), b: &(Rational, Rational)) -> Ordering {
    let half = |d: &(Rational, Rational)| -> u8 {
        if d.1.is_positive() || (d.1.is_zero() && d.0.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(&a.0, &a.1, &b.0, &b.1);
        Rational::zero().cmp(&c)
    })
}

/// Crossing test for the ray from `q` in direction (1, ε), ε infinitesimal.
///
/// Vertices at the ray's height count as lying below it, which is the
/// half-open rule that the infinitesimal tilt induces.
pub fn ray_crosses(q: &Point, a: &Point, b: &Point) -> bool {
    let a_above = a.y > q.y;
    let b_above = b.y > q.y;
    if a_above == b_above {
        return false;
    }
    // x coordinate of the segment at height q.y
    let t = (&q.y - &a.y) / (&b.y - &a.y);
    let x = &a.x + (&b.x - &a.x) * t;
    x > q.x
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom() == &BigInt::one()
}
