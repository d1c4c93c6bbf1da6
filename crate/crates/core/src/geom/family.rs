use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::curve::GroundedCurve;
use super::point::{intersect_segments, Point, SegmentHit};

/// Which general-position rule a contact breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegeneracyKind {
    /// Two segments of different curves share a collinear piece.
    CollinearOverlap,
    /// Two curves meet at a point that is a vertex of both.
    SharedVertex,
    /// An intersection point is a vertex of one of the two curves.
    VertexIncidence,
    /// A point lies on three or more curves.
    TriplePoint,
    /// A curve runs back over itself.
    SelfOverlap,
}

impl fmt::Display for DegeneracyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DegeneracyKind::CollinearOverlap => "collinear overlap",
            DegeneracyKind::SharedVertex => "shared vertex",
            DegeneracyKind::VertexIncidence => "intersection at a vertex",
            DegeneracyKind::TriplePoint => "triple point",
            DegeneracyKind::SelfOverlap => "self overlap",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Violation {
    #[error("curve {id}: {count} vertices, at least 2 required")]
    TooFewVertices { id: String, count: usize },
    #[error("duplicate curve id {id}")]
    DuplicateId { id: String },
    #[error("curve {id}: basepoint {point} is not on the baseline")]
    BasepointOffBaseline { id: String, point: Point },
    #[error("curve {id}: vertex {index} at {point} is not strictly above the baseline")]
    BaselineViolation { id: String, index: usize, point: Point },
    #[error("curve {id}: vertices {index} and {next} coincide at {point}", next = .index + 1)]
    RepeatedVertex { id: String, index: usize, point: Point },
    #[error("curves {a} and {b} share the basepoint {point}")]
    DuplicateBasepoint { a: String, b: String, point: Point },
    #[error("{kind} involving {ids:?} at {point}")]
    DegenerateIntersection {
        kind: DegeneracyKind,
        ids: Vec<String>,
        point: Point,
    },
}

impl Violation {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Violation::TooFewVertices { .. } => "TooFewVertices",
            Violation::DuplicateId { .. } => "DuplicateId",
            Violation::BasepointOffBaseline { .. } => "BasepointOffBaseline",
            Violation::BaselineViolation { .. } => "BaselineViolation",
            Violation::RepeatedVertex { .. } => "RepeatedVertex",
            Violation::DuplicateBasepoint { .. } => "DuplicateBasepoint",
            Violation::DegenerateIntersection { .. } => "DegenerateIntersection",
        }
    }
}

/// A validated grounded family, sorted left to right by basepoint.
///
/// Index order is the basepoint order: `c1 ≺ c2` iff `index(c1) < index(c2)`.
#[derive(Clone, Debug)]
pub struct CurveFamily {
    curves: Vec<GroundedCurve>,
    index: HashMap<String, usize>,
}

impl CurveFamily {
    /// Builds a family from curves already known to satisfy every invariant.
    pub(crate) fn from_sorted_unchecked(curves: Vec<GroundedCurve>) -> Self {
        let index = curves
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id().to_string(), i))
            .collect();
        CurveFamily { curves, index }
    }

    pub fn empty() -> Self {
        CurveFamily::from_sorted_unchecked(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curves(&self) -> &[GroundedCurve] {
        &self.curves
    }

    pub fn curve(&self, i: usize) -> &GroundedCurve {
        &self.curves[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn get(&self, id: &str) -> Option<&GroundedCurve> {
        self.index_of(id).map(|i| &self.curves[i])
    }

    pub fn ids(&self) -> Vec<String> {
        self.curves.iter().map(|c| c.id().to_string()).collect()
    }

    /// The subfamily at the given indices (any order; result is sorted).
    pub fn subfamily(&self, indices: &[usize]) -> CurveFamily {
        let set: BTreeSet<usize> = indices.iter().copied().collect();
        CurveFamily::from_sorted_unchecked(set.into_iter().map(|i| self.curves[i].clone()).collect())
    }

    pub fn subfamily_by_ids<S: AsRef<str>>(&self, ids: &[S]) -> Option<CurveFamily> {
        let idx: Option<Vec<usize>> = ids.iter().map(|s| self.index_of(s.as_ref())).collect();
        idx.map(|v| self.subfamily(&v))
    }

    /// Indices strictly between `u` and `v` in basepoint order.
    pub fn between_indices(&self, u: usize, v: usize) -> Vec<usize> {
        if u >= v {
            return Vec::new();
        }
        (u + 1..v).collect()
    }
}

/// Checks every grounding and general-position invariant and sorts by basepoint.
pub fn validate_family(raw: Vec<GroundedCurve>) -> Result<CurveFamily, Vec<Violation>> {
    let mut violations = Vec::new();
    let mut seen_ids = BTreeSet::new();
    for c in &raw {
        if !seen_ids.insert(c.id().to_string()) {
            violations.push(Violation::DuplicateId { id: c.id().to_string() });
        }
        violations.extend(curve_violations(c));
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    let mut curves = raw;
    curves.sort_by(|a, b| a.basepoint().x.cmp(&b.basepoint().x));
    for w in curves.windows(2) {
        if w[0].basepoint().x == w[1].basepoint().x {
            violations.push(Violation::DuplicateBasepoint {
                a: w[0].id().to_string(),
                b: w[1].id().to_string(),
                point: w[0].basepoint().clone(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    let mut incidence: BTreeMap<Point, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            for (v, p) in pair_contacts(&curves[i], &curves[j]) {
                match v {
                    Some(v) => violations.push(v),
                    None => {
                        let e = incidence.entry(p).or_default();
                        e.insert(i);
                        e.insert(j);
                    }
                }
            }
        }
    }
    for (p, set) in incidence {
        if set.len() >= 3 {
            violations.push(Violation::DegenerateIntersection {
                kind: DegeneracyKind::TriplePoint,
                ids: set.iter().map(|&i| curves[i].id().to_string()).collect(),
                point: p,
            });
        }
    }
    if violations.is_empty() {
        Ok(CurveFamily::from_sorted_unchecked(curves))
    } else {
        Err(violations)
    }
}

/// Grounding invariants of a single curve.
pub fn curve_violations(c: &GroundedCurve) -> Vec<Violation> {
    let mut out = Vec::new();
    let vs = c.vertices();
    if vs.len() < 2 {
        out.push(Violation::TooFewVertices {
            id: c.id().to_string(),
            count: vs.len(),
        });
        return out;
    }
    if !vs[0].y.is_zero() {
        out.push(Violation::BasepointOffBaseline {
            id: c.id().to_string(),
            point: vs[0].clone(),
        });
    }
    for (i, v) in vs.iter().enumerate().skip(1) {
        if !v.y.is_positive() {
            out.push(Violation::BaselineViolation {
                id: c.id().to_string(),
                index: i,
                point: v.clone(),
            });
        }
    }
    for i in 0..vs.len() - 1 {
        if vs[i] == vs[i + 1] {
            out.push(Violation::RepeatedVertex {
                id: c.id().to_string(),
                index: i,
                point: vs[i].clone(),
            });
        }
    }
    if out.is_empty() {
        // self-crossings are allowed, retracing is not
        let n = c.segment_count();
        for i in 0..n {
            let (p0, p1) = c.segment(i);
            for j in i + 1..n {
                let (q0, q1) = c.segment(j);
                if let SegmentHit::Overlap { t0, t1, .. } = intersect_segments(p0, p1, q0, q1) {
                    let mid = p0.lerp(p1, &((t0 + t1) / super::point::int(2)));
                    out.push(Violation::DegenerateIntersection {
                        kind: DegeneracyKind::SelfOverlap,
                        ids: vec![c.id().to_string()],
                        point: mid,
                    });
                }
            }
        }
    }
    out
}

/// Contacts between two distinct curves: `(None, p)` for a clean transversal
/// crossing at `p`, `(Some(violation), p)` for a degenerate contact.
pub(crate) fn pair_contacts(a: &GroundedCurve, b: &GroundedCurve) -> Vec<(Option<Violation>, Point)> {
    let mut out = Vec::new();
    let ids = || vec![a.id().to_string(), b.id().to_string()];
    for i in 0..a.segment_count() {
        let (p0, p1) = a.segment(i);
        for j in 0..b.segment_count() {
            let (q0, q1) = b.segment(j);
            match intersect_segments(p0, p1, q0, q1) {
                SegmentHit::None => {}
                SegmentHit::Overlap { t0, t1, .. } => {
                    let mid = p0.lerp(p1, &((t0 + t1) / super::point::int(2)));
                    out.push((
                        Some(Violation::DegenerateIntersection {
                            kind: DegeneracyKind::CollinearOverlap,
                            ids: ids(),
                            point: mid,
                        }),
                        p0.clone(),
                    ));
                }
                SegmentHit::Point { t, u, at } => {
                    let on_a_vertex = t.is_zero() || t == num_traits::One::one();
                    let on_b_vertex = u.is_zero() || u == num_traits::One::one();
                    let v = match (on_a_vertex, on_b_vertex) {
                        (false, false) => None,
                        (true, true) => Some(DegeneracyKind::SharedVertex),
                        _ => Some(DegeneracyKind::VertexIncidence),
                    };
                    out.push((
                        v.map(|kind| Violation::DegenerateIntersection {
                            kind,
                            ids: ids(),
                            point: at.clone(),
                        }),
                        at,
                    ));
                }
            }
        }
    }
    // a vertex contact shows up once per incident segment
    out.sort_by(|x, y| x.1.cmp(&y.1));
    out.dedup_by(|x, y| x.1 == y.1 && x.0.is_some() == y.0.is_some());
    out
}

/// General-position violations between a probe curve and a family.
pub fn probe_violations(probe: &GroundedCurve, family: &[GroundedCurve]) -> Vec<Violation> {
    let mut out = curve_violations(probe);
    let mut incidence: BTreeMap<Point, BTreeSet<String>> = BTreeMap::new();
    for c in family {
        for (v, p) in pair_contacts(probe, c) {
            match v {
                Some(v) => out.push(v),
                None => {
                    incidence.entry(p).or_default().insert(c.id().to_string());
                }
            }
        }
    }
    // the probe crossing an existing crossing of two family curves
    for (p, ids) in incidence {
        if ids.len() >= 2 {
            let mut all: Vec<String> = vec![probe.id().to_string()];
            all.extend(ids);
            out.push(Violation::DegenerateIntersection {
                kind: DegeneracyKind::TriplePoint,
                ids: all,
                point: p,
            });
        }
    }
    out
}
