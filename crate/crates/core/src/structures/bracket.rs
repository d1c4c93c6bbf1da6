use serde::{Deserialize, Serialize};

use super::{lookup, sorted_ids, StructureError};
use crate::geom::{
    curves_intersect, first_hit_curves, meets_all, CurveFamily, CurvePoint, Exterior, GroundedCurve, JordanRegion,
    Point, Rational, Subcurve,
};
use crate::graph::chi_of_ids;

/// Which side of `P` the supports lie on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SupportSide {
    /// `S ≺ P`
    Left,
    /// `P ≺ S`
    Right,
}

/// Derived data of one curve `p ∈ P`.
#[derive(Clone, Debug)]
pub struct BracketEntry {
    pub p: String,
    /// `s(p)`, the first curve of `S` met by `p`.
    pub s: String,
    /// The hit, as a position on `p` and on `s(p)`.
    pub hit: CurvePoint,
    pub hit_on_s: CurvePoint,
    /// `p′`: `p` up to the hit, which is excluded.
    pub p_prime: Subcurve,
    /// `I(p)`: closed region bounded by `p′`, `s(p)` and the baseline between their basepoints.
    pub region: JordanRegion,
}

#[derive(Clone, Debug)]
pub struct Bracket {
    /// Members of `P`, in basepoint order.
    pub p: Vec<String>,
    /// Members of `S`, in basepoint order.
    pub s: Vec<String>,
    pub side: SupportSide,
    /// One entry per member of `P`, same order.
    pub entries: Vec<BracketEntry>,
    exterior: Exterior,
}

/// Serialized form; geometry lives in the family file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    #[serde(rename = "P")]
    pub p: Vec<String>,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(default)]
    pub s_of: Vec<(String, String)>,
}

impl Bracket {
    /// `E`, the exterior of `P ∪ S`.
    pub fn exterior(&self) -> &Exterior {
        &self.exterior
    }

    pub fn s_of(&self, p: &str) -> Option<&str> {
        self.entries.iter().find(|e| e.p == p).map(|e| e.s.as_str())
    }

    /// Whether `q` lies in the interior `I = ∩ I(p)`.
    pub fn interior_contains(&self, q: &Point) -> bool {
        self.entries.iter().all(|e| e.region.contains(q))
    }

    pub fn to_json(&self) -> BracketJson {
        BracketJson {
            p: self.p.clone(),
            s: self.s.clone(),
            s_of: self.entries.iter().map(|e| (e.p.clone(), e.s.clone())).collect(),
        }
    }

    /// Rebuilds a bracket from its serialized form, checking any recorded `s(p)` values.
    pub fn from_json(json: &BracketJson, family: &CurveFamily) -> Result<Bracket, StructureError> {
        let br = build_bracket(&json.p, &json.s, family)?;
        for (p, s) in &json.s_of {
            if br.s_of(p) != Some(s.as_str()) {
                return Err(StructureError::InvalidBracketSystem {
                    index: 0,
                    reason: format!("recorded s({p}) = {s} disagrees with the geometry"),
                });
            }
        }
        Ok(br)
    }
}

pub fn build_bracket<S: AsRef<str>>(p: &[S], s: &[S], family: &CurveFamily) -> Result<Bracket, StructureError> {
    let p = sorted_ids(family, p)?;
    let s = sorted_ids(family, s)?;
    if let Some(shared) = p.iter().find(|x| s.contains(x)) {
        return Err(StructureError::Overlapping(shared.clone()));
    }
    let idx = |ids: &[String]| -> Vec<usize> { ids.iter().map(|x| family.index_of(x).expect("looked up")).collect() };
    let (pi, si) = (idx(&p), idx(&s));
    let side = match (pi.first(), pi.last(), si.first(), si.last()) {
        (Some(&p_lo), _, _, Some(&s_hi)) if s_hi < p_lo => SupportSide::Left,
        (_, Some(&p_hi), Some(&s_lo), _) if p_hi < s_lo => SupportSide::Right,
        _ => return Err(StructureError::SideOrderViolation),
    };
    let s_curves: Vec<&GroundedCurve> = si.iter().map(|&i| family.curve(i)).collect();
    let mut entries = Vec::with_capacity(p.len());
    for &i in &pi {
        let pc = family.curve(i);
        let hit = first_hit_curves(pc, &s_curves).ok_or_else(|| StructureError::UnhitCurve(pc.id().to_string()))?;
        let sc = s_curves[hit.obstacle];
        let mut boundary = pc.prefix_vertices(&hit.at);
        let mut back = sc.prefix_vertices(&hit.on_obstacle);
        back.reverse();
        boundary.extend(back);
        entries.push(BracketEntry {
            p: pc.id().to_string(),
            s: sc.id().to_string(),
            p_prime: Subcurve::prefix(pc, hit.at.clone(), false),
            hit: hit.at,
            hit_on_s: hit.on_obstacle,
            region: JordanRegion::new(boundary),
        });
    }
    if let Some(unused) = s.iter().find(|x| !entries.iter().any(|e| &e.s == *x)) {
        return Err(StructureError::UnusedSupport(unused.clone()));
    }
    let members: Vec<GroundedCurve> = pi.iter().chain(&si).map(|&i| family.curve(i).clone()).collect();
    Ok(Bracket {
        p,
        s,
        side,
        entries,
        exterior: Exterior::new(&members),
    })
}

/// Position of a probe relative to the interior `I` of a bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// Every point of the probe lies in `I`.
    Contained,
    /// The probe meets the boundary of `I` above the baseline.
    CrossesBoundaryOffBaseline,
    /// The probe misses `I`.
    Outside,
}

pub fn interior_classify(br: &Bracket, c: &GroundedCurve) -> Classification {
    let zero = Rational::from_integer(0.into());
    for e in &br.entries {
        for q in e.region.boundary_contacts(c) {
            if q.y > zero && br.interior_contains(&q) {
                return Classification::CrossesBoundaryOffBaseline;
            }
        }
    }
    // the part of c above the baseline is connected and misses the boundary of I
    let (a, b) = c.segment(0);
    if br.interior_contains(&a.midpoint(b)) {
        Classification::Contained
    } else {
        Classification::Outside
    }
}

/// Whether the implication "c meets `I` and `E` ⟹ c meets `p` or `s(p)` for every `p`" holds for `c`.
pub fn verify_bracket_crossing(br: &Bracket, c: &GroundedCurve, family: &CurveFamily) -> Result<bool, StructureError> {
    if interior_classify(br, c) == Classification::Outside || !br.exterior.meets_curve(c)? {
        return Ok(true);
    }
    for e in &br.entries {
        let p = lookup(family, &e.p)?.1;
        let s = lookup(family, &e.s)?.1;
        if !curves_intersect(c, p) && !curves_intersect(c, s) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the two nesting conditions of a bracket system: each `Pᵢ` lies in
/// `Iᵢ₊₁ ∩ … ∩ Iₙ`, and each curve of `Sᵢ` meets `Eᵢ₊₁ ∩ … ∩ Eₙ` at a common point.
pub fn validate_bracket_system(bs: &[Bracket], family: &CurveFamily) -> Result<(), StructureError> {
    for (i, br) in bs.iter().enumerate() {
        let later = &bs[i + 1..];
        for p in &br.p {
            let c = lookup(family, p)?.1;
            for (j, other) in later.iter().enumerate() {
                let class = interior_classify(other, c);
                if class != Classification::Contained {
                    return Err(StructureError::InvalidBracketSystem {
                        index: i + 1,
                        reason: format!("{p} is not contained in the interior of bracket {} ({class:?})", i + j + 2),
                    });
                }
            }
        }
        let exteriors: Vec<&Exterior> = later.iter().map(|b| &b.exterior).collect();
        for s in &br.s {
            let c = lookup(family, s)?.1;
            if !exteriors.is_empty() && !meets_all(c, &exteriors) {
                return Err(StructureError::InvalidBracketSystem {
                    index: i + 1,
                    reason: format!("support {s} misses the common exterior of the later brackets"),
                });
            }
        }
    }
    Ok(())
}

/// One support per bracket, pairwise intersecting, following the inductive proof:
/// take the leftmost support of the first bracket, drop from every later `Pᵢ`
/// the curves meeting it, rebuild `Sᵢ`, recurse.
pub fn extract_clique(bs: &[Bracket], xi: usize, family: &CurveFamily) -> Result<Vec<String>, StructureError> {
    validate_bracket_system(bs, family).map_err(|e| match e {
        StructureError::InvalidBracketSystem { index, reason } => StructureError::PreconditionFailure {
            index,
            reason,
            measured: None,
        },
        other => other,
    })?;
    let n = bs.len();
    for (i, br) in bs.iter().enumerate() {
        let chi = chi_of_ids(family, &br.p);
        if chi <= (n - 1) * xi {
            return Err(StructureError::PreconditionFailure {
                index: i + 1,
                reason: format!("χ(P{}) = {chi} is not greater than (n−1)ξ = {}", i + 1, (n - 1) * xi),
                measured: Some(chi),
            });
        }
    }
    let out = extract_rec(bs.to_vec(), xi, family)?;
    for (k, a) in out.iter().enumerate() {
        for b in &out[k + 1..] {
            if !curves_intersect(lookup(family, a)?.1, lookup(family, b)?.1) {
                return Err(StructureError::InternalContradiction(format!("supports {a} and {b} are disjoint")));
            }
        }
    }
    Ok(out)
}

fn extract_rec(bs: Vec<Bracket>, xi: usize, family: &CurveFamily) -> Result<Vec<String>, StructureError> {
    let Some(first) = bs.first() else {
        return Ok(Vec::new());
    };
    let n = bs.len();
    let s1 = first.s[0].clone();
    let s1_curve = lookup(family, &s1)?.1;
    let mut rest = Vec::with_capacity(n - 1);
    for br in &bs[1..] {
        let kept: Vec<String> = br
            .p
            .iter()
            .filter(|p| !curves_intersect(lookup(family, p).expect("member").1, s1_curve))
            .cloned()
            .collect();
        let chi = chi_of_ids(family, &kept);
        if chi <= (n - 2) * xi {
            return Err(StructureError::InternalContradiction(format!(
                "after removing curves meeting {s1}, χ(P′) = {chi} ≤ {}",
                (n - 2) * xi
            )));
        }
        let supports: Vec<String> = kept
            .iter()
            .map(|p| br.s_of(p).expect("entry").to_string())
            .collect();
        rest.push(build_bracket(&kept, &supports, family)?);
    }
    let mut out = vec![s1];
    out.extend(extract_rec(rest, xi, family)?);
    Ok(out)
}
