//! Polyline transcriptions of the four illustrated configurations, with the
//! relations their captions state.

use std::collections::BTreeSet;

use crate::geom::io::{parse_family, FamilyFileError};
use crate::geom::{curves_intersect, rat, CurveFamily, Exterior, GroundedCurve, Point};
use crate::structures::{
    build_bracket, clique_anchors, interior_classify, is_supported, side_for_clique, signature, supported_subfamily,
    validate_clique_system, verify_bracket_crossing, Classification, Side, Signature, Skeleton,
};

const FIG1: &str = include_str!("../../fixtures/fig1.json");
const FIG2: &str = include_str!("../../fixtures/fig2.json");
const FIG3: &str = include_str!("../../fixtures/fig3.json");
const FIG4: &str = include_str!("../../fixtures/fig4.json");

/// Machine-checkable caption relations.
#[derive(Clone, Debug)]
pub enum FigureRelations {
    /// Every member meets some support that also meets the members' exterior.
    ExternalSupport { members: Vec<String>, supports: Vec<String> },
    SupportedSets {
        u: String,
        v: String,
        supports: Vec<String>,
        supported: Vec<String>,
        unsupported: Vec<String>,
    },
    BracketMap {
        p: Vec<String>,
        s: Vec<String>,
        s_of: Vec<(String, String)>,
        inside: Vec<Point>,
        outside: Vec<Point>,
        /// Grounded probe starting in `I` and leaving through the exterior.
        probe: GroundedCurve,
        /// A support the probe must cross.
        probe_crosses: String,
    },
    CliqueSides {
        cliques: Vec<Vec<String>>,
        /// `(ℓ, r)` per clique.
        anchors: Vec<(String, String)>,
        /// `(curve, clique index, side)`.
        sides: Vec<(String, usize, Side)>,
        crossing: String,
        signature: Signature,
    },
}

fn ids(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn pair(a: &str, b: &str) -> (String, String) {
    (a.to_string(), b.to_string())
}

/// Raw JSON of a frozen figure family.
pub fn figure_json(which: u8) -> Option<&'static str> {
    match which {
        1 => Some(FIG1),
        2 => Some(FIG2),
        3 => Some(FIG3),
        4 => Some(FIG4),
        _ => None,
    }
}

/// The relations stated by the caption of figure `which`.
pub fn figure_relations(which: u8) -> Option<FigureRelations> {
    let rel = match which {
        1 => FigureRelations::ExternalSupport {
            members: ids(&["p1", "p2", "p3", "p4", "p5", "p6", "p7"]),
            supports: ids(&["s1", "s2"]),
        },
        2 => FigureRelations::SupportedSets {
            u: "u".into(),
            v: "v".into(),
            supports: ids(&["s1", "s2"]),
            supported: ids(&["p2", "p4"]),
            unsupported: ids(&["p1", "p3"]),
        },
        3 => FigureRelations::BracketMap {
            p: ids(&["p1", "p2", "p3", "p4"]),
            s: ids(&["s1", "s2", "s3"]),
            s_of: vec![pair("p1", "s1"), pair("p2", "s2"), pair("p3", "s1"), pair("p4", "s3")],
            inside: vec![Point::from_ints(4, 2), Point::new(rat(9, 2), rat(1, 2))],
            outside: vec![Point::from_ints(11, 1), Point::new(rat(1, 4), rat(1, 2))],
            probe: GroundedCurve::new(
                "probe",
                vec![
                    Point::new(rat(4, 1), rat(0, 1)),
                    Point::new(rat(4, 1), rat(2, 1)),
                    Point::new(rat(46, 10), rat(36, 10)),
                    Point::new(rat(12, 1), rat(33, 10)),
                ],
            ),
            probe_crosses: "s1".into(),
        },
        4 => FigureRelations::CliqueSides {
            cliques: vec![ids(&["p1", "p2", "p3"]), ids(&["q1", "q2"])],
            anchors: vec![pair("p1", "p2"), pair("q1", "q2")],
            sides: vec![
                ("q1".into(), 0, Side::Left),
                ("q2".into(), 0, Side::Left),
                ("s".into(), 0, Side::Right),
                ("s".into(), 1, Side::Right),
            ],
            crossing: "s".into(),
            signature: Signature(vec![1, 1]),
        },
        _ => return None,
    };
    Some(rel)
}

/// The frozen family of figure `which` together with its caption relations.
pub fn figure_fixture(which: u8) -> Result<(CurveFamily, FigureRelations), FamilyFileError> {
    let text = figure_json(which).ok_or_else(|| FamilyFileError::Json {
        line: 0,
        column: 0,
        message: format!("no figure {which}"),
    })?;
    let family = parse_family(text)?;
    Ok((family, figure_relations(which).expect("text and relations share the index range")))
}

fn sorted(v: &[String]) -> BTreeSet<String> {
    v.iter().cloned().collect()
}

impl FigureRelations {
    /// Checks every relation against `family`, returning one line per relation.
    pub fn check(&self, family: &CurveFamily) -> Result<Vec<String>, String> {
        let mut log = Vec::new();
        let get = |id: &str| family.get(id).ok_or_else(|| format!("unknown curve {id}"));
        match self {
            FigureRelations::ExternalSupport { members, supports } => {
                let curves: Vec<GroundedCurve> = members.iter().map(|m| get(m).cloned()).collect::<Result<_, _>>()?;
                let ext = Exterior::new(&curves);
                for p in &curves {
                    let mut by = Vec::new();
                    for s in supports {
                        let sc = get(s)?;
                        if curves_intersect(p, sc) && ext.meets_curve(sc).map_err(|e| e.to_string())? {
                            by.push(s.as_str());
                        }
                    }
                    if by.is_empty() {
                        return Err(format!("{} is not externally supported", p.id()));
                    }
                    log.push(format!("{} externally supported by {}", p.id(), by.join(",")));
                }
            }
            FigureRelations::SupportedSets {
                u,
                v,
                supports,
                supported,
                unsupported,
            } => {
                let sk = Skeleton::new(family, u, v, supports).map_err(|e| e.to_string())?;
                for (set, want) in [(supported, true), (unsupported, false)] {
                    for p in set {
                        let got = is_supported(p, &sk, family).map_err(|e| e.to_string())?;
                        if got != want {
                            return Err(format!("{p}: supported = {got}, expected {want}"));
                        }
                        log.push(format!("{p} supported = {got}"));
                    }
                }
                let all = supported_subfamily(family, &sk).map_err(|e| e.to_string())?;
                if sorted(&all) != sorted(supported) {
                    return Err(format!("supported subfamily {all:?} differs from {supported:?}"));
                }
                log.push(format!("supported subfamily = {{{}}}", all.join(",")));
            }
            FigureRelations::BracketMap {
                p,
                s,
                s_of,
                inside,
                outside,
                probe,
                probe_crosses,
            } => {
                let br = build_bracket(p, s, family).map_err(|e| e.to_string())?;
                for (pi, si) in s_of {
                    let got = br.s_of(pi).ok_or_else(|| format!("{pi} not in bracket"))?;
                    if got != si {
                        return Err(format!("s({pi}) = {got}, expected {si}"));
                    }
                    log.push(format!("s({pi}) = {got}"));
                }
                for (set, want) in [(inside, true), (outside, false)] {
                    for q in set {
                        let got = br.interior_contains(q);
                        if got != want {
                            return Err(format!("{q:?} in I = {got}, expected {want}"));
                        }
                        log.push(format!("{q:?} in I = {got}"));
                    }
                }
                if interior_classify(&br, probe) != Classification::CrossesBoundaryOffBaseline {
                    return Err("probe does not leave I above the baseline".into());
                }
                if !br.exterior().meets_curve(probe).map_err(|e| e.to_string())? {
                    return Err("probe misses E".into());
                }
                if !br.interior_contains(probe.basepoint()) {
                    return Err("probe does not start in I".into());
                }
                let ok = verify_bracket_crossing(&br, probe, family).map_err(|e| e.to_string())?;
                if !ok {
                    return Err("probe meets I and E but misses some p and s(p)".into());
                }
                if !curves_intersect(probe, get(probe_crosses)?) {
                    return Err(format!("probe misses {probe_crosses}"));
                }
                log.push(format!("probe from I to E crossing {probe_crosses} meets p or s(p) for every p"));
            }
            FigureRelations::CliqueSides {
                cliques,
                anchors,
                sides,
                crossing,
                signature: expected,
            } => {
                let mut all = Vec::new();
                for (k, (l, r)) in cliques.iter().zip(anchors) {
                    let a = clique_anchors(k, family).map_err(|e| e.to_string())?;
                    if (&a.l, &a.r) != (l, r) {
                        return Err(format!("anchors ({}, {}), expected ({l}, {r})", a.l, a.r));
                    }
                    log.push(format!("ℓ = {l}, r = {r}"));
                    all.push(a);
                }
                for (c, i, want) in sides {
                    let got = side_for_clique(c, &all[*i], family).map_err(|e| e.to_string())?;
                    if got != *want {
                        return Err(format!("{c} is {got:?} for K{}, expected {want:?}", i + 1));
                    }
                    log.push(format!("{c} is {got:?} for K{}", i + 1));
                }
                let cs = validate_clique_system(cliques, family).map_err(|e| e.to_string())?;
                let sig = signature(crossing, &cs, family).map_err(|e| e.to_string())?;
                if &sig != expected {
                    return Err(format!("Σ({crossing}) = {sig}, expected {expected}"));
                }
                log.push(format!("Σ({crossing}) = {sig}"));
            }
        }
        Ok(log)
    }
}
