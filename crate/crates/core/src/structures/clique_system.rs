use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{lookup, sorted_ids, Side, StructureError};
use crate::geom::{
    curve_intersections, curves_intersect, first_hit, first_hit_curves, CurveFamily, Exterior, GroundedCurve, Point,
    Subcurve,
};

/// `ℓ`, `r` and the connecting arc `ℓ′ ∪ r′` of a clique.
#[derive(Clone, Debug)]
pub struct CliqueAnchors {
    /// Members in basepoint order.
    pub clique: Vec<String>,
    pub l: String,
    pub r: String,
    /// `ℓ` from its basepoint to its first point on `r`, end included.
    pub l_prime: Subcurve,
    /// `r` from its basepoint to the end of `ℓ′`, end excluded.
    pub r_prime: Subcurve,
    /// Where `ℓ′` and `r′` meet.
    pub meet: Point,
}

pub fn clique_anchors<S: AsRef<str>>(clique: &[S], family: &CurveFamily) -> Result<CliqueAnchors, StructureError> {
    let ids = sorted_ids(family, clique)?;
    if ids.len() < 2 {
        return Err(StructureError::NotAClique(format!("{} curve(s), at least 2 required", ids.len())));
    }
    let curves: Vec<&GroundedCurve> = ids.iter().map(|x| lookup(family, x).map(|p| p.1)).collect::<Result<_, _>>()?;
    for (k, a) in curves.iter().enumerate() {
        for b in &curves[k + 1..] {
            if !curves_intersect(a, b) {
                return Err(StructureError::NotAClique(format!("{} and {} are disjoint", a.id(), b.id())));
            }
        }
    }
    let (l, r) = (curves[0], curves[1]);
    let hit = first_hit_curves(l, &[r]).expect("clique members intersect");
    let l_prime = Subcurve::prefix(l, hit.at.clone(), true);
    let r_prime = Subcurve::prefix(r, hit.on_obstacle.clone(), false);
    let contacts = curve_intersections(l, r)
        .into_iter()
        .filter(|(on_l, _)| l_prime.contains(on_l))
        .count();
    if contacts != 1 {
        return Err(StructureError::InternalContradiction(format!(
            "ℓ′ meets r in {contacts} points instead of one"
        )));
    }
    Ok(CliqueAnchors {
        clique: ids.clone(),
        l: l.id().to_string(),
        r: r.id().to_string(),
        meet: hit.at.at.clone(),
        l_prime,
        r_prime,
    })
}

fn check_between(s: &str, l: &str, r: &str, family: &CurveFamily) -> Result<(), StructureError> {
    let (i, _) = lookup(family, s)?;
    let (il, _) = lookup(family, l)?;
    let (ir, _) = lookup(family, r)?;
    if il < i && i < ir {
        Ok(())
    } else {
        Err(StructureError::NotBetween {
            curve: s.to_string(),
            l: l.to_string(),
            r: r.to_string(),
        })
    }
}

/// Left if `s` reaches `ℓ′` before `r′` along `s`, right if the other way round.
pub fn side_for_clique(s: &str, anchors: &CliqueAnchors, family: &CurveFamily) -> Result<Side, StructureError> {
    check_between(s, &anchors.l, &anchors.r, family)?;
    let c = lookup(family, s)?.1;
    let hl = first_hit(c, std::slice::from_ref(&anchors.l_prime));
    let hr = first_hit(c, std::slice::from_ref(&anchors.r_prime));
    match (hl, hr) {
        (None, None) => Ok(Side::Neither),
        (Some(_), None) => Ok(Side::Left),
        (None, Some(_)) => Ok(Side::Right),
        (Some(a), Some(b)) => match a.at.cmp(&b.at) {
            Ordering::Less => Ok(Side::Left),
            Ordering::Greater => Ok(Side::Right),
            Ordering::Equal => Err(StructureError::InconsistentSide {
                curve: s.to_string(),
                l: anchors.l.clone(),
            }),
        },
    }
}

/// Left/right bits, one per clique.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Signature(pub Vec<u8>);

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// A validated clique system.
#[derive(Clone, Debug)]
pub struct CliqueSystem {
    pub anchors: Vec<CliqueAnchors>,
    /// `sides[j][i]`: the common side of clique `j` for clique `i < j`.
    pub sides: Vec<Vec<Side>>,
    exterior: Exterior,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueSystemJson {
    pub cliques: Vec<Vec<String>>,
    #[serde(default)]
    pub sides: Vec<Vec<Side>>,
}

impl CliqueSystem {
    pub fn len(&self) -> usize {
        self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchors.is_empty()
    }

    pub fn cliques(&self) -> Vec<Vec<String>> {
        self.anchors.iter().map(|a| a.clique.clone()).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.anchors.iter().map(|a| a.clique.len()).collect()
    }

    /// Exterior of the union of all cliques.
    pub fn exterior(&self) -> &Exterior {
        &self.exterior
    }

    pub fn to_json(&self) -> CliqueSystemJson {
        CliqueSystemJson {
            cliques: self.cliques(),
            sides: self.sides.clone(),
        }
    }

    pub fn from_json(json: &CliqueSystemJson, family: &CurveFamily) -> Result<CliqueSystem, StructureError> {
        let cs = validate_clique_system(&json.cliques, family)?;
        if !json.sides.is_empty() && json.sides != cs.sides {
            return Err(StructureError::InvalidCliqueSystem {
                index: 0,
                reason: "recorded sides disagree with the geometry".into(),
            });
        }
        Ok(cs)
    }
}

pub fn validate_clique_system<S: AsRef<str>>(cliques: &[Vec<S>], family: &CurveFamily) -> Result<CliqueSystem, StructureError> {
    let invalid = |index: usize, reason: String| StructureError::InvalidCliqueSystem { index, reason };
    let mut anchors = Vec::with_capacity(cliques.len());
    for (j, k) in cliques.iter().enumerate() {
        let a = clique_anchors(k, family).map_err(|e| invalid(j + 1, e.to_string()))?;
        anchors.push(a);
    }
    let mut sides = vec![Vec::new(); anchors.len()];
    for j in 0..anchors.len() {
        for i in 0..j {
            let mut common: Option<Side> = None;
            for c in &anchors[j].clique {
                let side = side_for_clique(c, &anchors[i], family).map_err(|e| invalid(j + 1, e.to_string()))?;
                if side == Side::Neither {
                    return Err(invalid(j + 1, format!("{c} misses ℓ′ ∪ r′ of clique {}", i + 1)));
                }
                match common {
                    None => common = Some(side),
                    Some(prev) if prev != side => {
                        return Err(invalid(j + 1, format!("members lie on both sides of clique {}", i + 1)));
                    }
                    Some(_) => {}
                }
            }
            sides[j].push(common.expect("cliques are nonempty"));
        }
    }
    // ℓ(K₁) ≺ … ≺ ℓ(Kₙ) ≺ r(Kₙ) ≺ … ≺ r(K₁)
    let pos = |id: &str| family.index_of(id).expect("validated");
    let mut chain: Vec<usize> = anchors.iter().map(|a| pos(&a.l)).collect();
    chain.extend(anchors.iter().rev().map(|a| pos(&a.r)));
    if chain.windows(2).any(|w| w[0] >= w[1]) {
        return Err(StructureError::InternalContradiction("anchor order is not nested".into()));
    }
    let members: Vec<GroundedCurve> = anchors
        .iter()
        .flat_map(|a| a.clique.iter())
        .map(|id| family.curve(pos(id)).clone())
        .collect();
    Ok(CliqueSystem {
        anchors,
        sides,
        exterior: Exterior::new(&members),
    })
}

/// Whether `s ∈ F(ℓ(Kₙ), r(Kₙ))` meets the exterior of `K₁ ∪ … ∪ Kₙ`.
pub fn crosses_system(s: &str, cs: &CliqueSystem, family: &CurveFamily) -> Result<bool, StructureError> {
    let c = lookup(family, s)?.1;
    let Some(last) = cs.anchors.last() else {
        return Ok(true);
    };
    check_between(s, &last.l, &last.r, family)?;
    Ok(cs.exterior.meets_curve(c)?)
}

/// Sides of `s` for each of `anchors`; `None` if some clique is missed.
pub fn signature_in(s: &str, anchors: &[CliqueAnchors], family: &CurveFamily) -> Result<Option<Signature>, StructureError> {
    let mut bits = Vec::with_capacity(anchors.len());
    for a in anchors {
        match side_for_clique(s, a, family)?.bit() {
            Some(b) => bits.push(b),
            None => return Ok(None),
        }
    }
    Ok(Some(Signature(bits)))
}

pub fn signature(s: &str, cs: &CliqueSystem, family: &CurveFamily) -> Result<Signature, StructureError> {
    if !crosses_system(s, cs, family)? {
        return Err(StructureError::NotCrossing(s.to_string()));
    }
    signature_in(s, &cs.anchors, family)?.ok_or_else(|| StructureError::NotCrossing(s.to_string()))
}

/// Whether `Σ(s₂)` equals the common signature of `s₁` and `s₃`.
pub fn check_signature_betweenness(
    cs: &CliqueSystem,
    s1: &str,
    s2: &str,
    s3: &str,
    family: &CurveFamily,
) -> Result<bool, StructureError> {
    let fail = |index: usize, reason: String| StructureError::PreconditionFailure {
        index,
        reason,
        measured: None,
    };
    let ids = [s1, s2, s3];
    let mut pos = [0; 3];
    let mut curves = Vec::new();
    for (k, id) in ids.iter().enumerate() {
        let (i, c) = lookup(family, id)?;
        pos[k] = i;
        curves.push(c);
    }
    if !(pos[0] < pos[1] && pos[1] < pos[2]) {
        return Err(fail(0, "curves are not in basepoint order".into()));
    }
    for a in 0..3 {
        for b in a + 1..3 {
            if curves_intersect(curves[a], curves[b]) {
                return Err(fail(a + 1, format!("{} and {} intersect", ids[a], ids[b])));
            }
        }
    }
    let mut sigs = Vec::with_capacity(3);
    for (k, id) in ids.iter().enumerate() {
        match signature(id, cs, family) {
            Ok(sig) => sigs.push(sig),
            Err(e) => return Err(fail(k + 1, e.to_string())),
        }
    }
    if sigs[0] != sigs[2] {
        return Err(fail(3, format!("Σ({s1}) = {} differs from Σ({s3}) = {}", sigs[0], sigs[2])));
    }
    Ok(sigs[1] == sigs[0])
}
