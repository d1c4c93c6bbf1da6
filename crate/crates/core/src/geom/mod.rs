//! Exact geometric kernel: grounded polylines, their intersections, subcurves
//! with open or closed ends, and exterior-region membership.

mod curve;
mod exterior;
mod family;
mod intersect;
pub mod io;
mod point;
mod region;

pub use curve::{CurvePoint, GroundedCurve, Subcurve};
pub use exterior::{exterior_contains_point, exterior_meets_curve, meets_all, sample_points, Exterior, ExteriorError};
pub use family::{curve_violations, probe_violations, validate_family, CurveFamily, DegeneracyKind, Violation};
pub use intersect::{
    curve_intersections, curves_intersect, first_hit, first_hit_curves, self_intersections, subcurves_intersect,
    FirstHit,
};
pub use point::{
    int, intersect_segments, on_segment, orientation, rat, rational_to_f64, Point, Rational, SegmentHit,
};
pub use region::JordanRegion;
pub use point::{compare_directions, cross, is_integer, ray_crosses};

/// A probe for [`exterior_membership`]: a curve or a single point.
#[derive(Clone, Debug)]
pub enum Probe<'a> {
    Point(&'a Point),
    Curve(&'a GroundedCurve),
}

/// True iff some point of the probe lies in the exterior of `family`.
pub fn exterior_membership(family: &[GroundedCurve], probe: Probe<'_>) -> Result<bool, ExteriorError> {
    let ext = Exterior::new(family);
    match probe {
        Probe::Point(p) => Ok(ext.contains_point(p)),
        Probe::Curve(c) => ext.meets_curve(c),
    }
}
