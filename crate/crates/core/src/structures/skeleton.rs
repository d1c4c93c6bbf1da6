use serde::{Deserialize, Serialize};

use super::{lookup, sorted_ids, StructureError};
use crate::geom::{curves_intersect, first_hit_curves, subcurves_intersect, CurveFamily, GroundedCurve, Subcurve};

/// Two intersecting curves `u ≺ v` and pairwise disjoint supports strictly between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skeleton {
    pub u: String,
    pub v: String,
    pub supports: Vec<String>,
}

impl Skeleton {
    pub fn new<S: AsRef<str>>(family: &CurveFamily, u: &str, v: &str, supports: &[S]) -> Result<Self, StructureError> {
        let sk = Skeleton {
            u: u.to_string(),
            v: v.to_string(),
            supports: sorted_ids(family, supports)?,
        };
        sk.validate(family)?;
        Ok(sk)
    }

    pub fn validate(&self, family: &CurveFamily) -> Result<(), StructureError> {
        let bad = |m: String| Err(StructureError::InvalidSkeleton(m));
        let (iu, u) = lookup(family, &self.u)?;
        let (iv, v) = lookup(family, &self.v)?;
        if iu >= iv {
            return bad(format!("{} must precede {}", self.u, self.v));
        }
        if !curves_intersect(u, v) {
            return bad(format!("{} and {} do not intersect", self.u, self.v));
        }
        let mut curves = Vec::new();
        for s in &self.supports {
            let (i, c) = lookup(family, s)?;
            if i <= iu || i >= iv {
                return bad(format!("support {s} is not between {} and {}", self.u, self.v));
            }
            curves.push(c);
        }
        for (k, a) in curves.iter().enumerate() {
            for b in &curves[k + 1..] {
                if curves_intersect(a, b) {
                    return bad(format!("supports {} and {} intersect", a.id(), b.id()));
                }
            }
        }
        Ok(())
    }
}

/// The part of support `s` from its basepoint up to (excluding) its first
/// point on `u ∪ v`; the whole curve when it never meets them.
pub fn support_window(s: &GroundedCurve, u: &GroundedCurve, v: &GroundedCurve) -> Subcurve {
    match first_hit_curves(s, &[u, v]) {
        Some(hit) => Subcurve::prefix(s, hit.at, false),
        None => Subcurve::whole(s),
    }
}

fn windows(sk: &Skeleton, family: &CurveFamily) -> Result<Vec<Subcurve>, StructureError> {
    let (_, u) = lookup(family, &sk.u)?;
    let (_, v) = lookup(family, &sk.v)?;
    sk.supports
        .iter()
        .map(|s| Ok(support_window(lookup(family, s)?.1, u, v)))
        .collect()
}

fn supported_by(p: &GroundedCurve, u: &GroundedCurve, v: &GroundedCurve, windows: &[Subcurve]) -> bool {
    if curves_intersect(p, u) || curves_intersect(p, v) {
        return false;
    }
    let whole = Subcurve::whole(p);
    windows
        .iter()
        .any(|w| w.id() != p.id() && subcurves_intersect(&whole, w))
}

/// Whether `p` avoids `u` and `v` and meets the initial window of some other support.
pub fn is_supported(p: &str, sk: &Skeleton, family: &CurveFamily) -> Result<bool, StructureError> {
    let (ip, pc) = lookup(family, p)?;
    let (iu, u) = lookup(family, &sk.u)?;
    let (iv, v) = lookup(family, &sk.v)?;
    if ip <= iu || ip >= iv {
        return Err(StructureError::NotBetween {
            curve: p.to_string(),
            l: sk.u.clone(),
            r: sk.v.clone(),
        });
    }
    Ok(supported_by(pc, u, v, &windows(sk, family)?))
}

/// Every curve of `F(u, v)` supported by the skeleton, in basepoint order.
///
/// Supports never qualify: they are pairwise disjoint, so a support meets no
/// other support's window.
pub fn supported_subfamily(family: &CurveFamily, sk: &Skeleton) -> Result<Vec<String>, StructureError> {
    let (iu, u) = lookup(family, &sk.u)?;
    let (iv, v) = lookup(family, &sk.v)?;
    let ws = windows(sk, family)?;
    Ok(family
        .between_indices(iu, iv)
        .into_iter()
        .map(|i| family.curve(i))
        .filter(|p| supported_by(p, u, v, &ws))
        .map(|p| p.id().to_string())
        .collect())
}
