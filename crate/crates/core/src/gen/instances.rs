//! Seeded instances of the configurations the structural lemmas speak about.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{generate, GenError, GenSpec};
use crate::geom::{curves_intersect, int, validate_family, CurveFamily, GroundedCurve, Point, Rational};
use crate::structures::{
    build_bracket, crosses_system, interior_classify, signature, validate_bracket_system, validate_clique_system,
    Classification,
};

/// A bracket `(P, S)` of `family` and a family curve meeting both `I` and `E`.
#[derive(Clone, Debug)]
pub struct BracketInstance {
    pub family: CurveFamily,
    pub p: Vec<String>,
    pub s: Vec<String>,
    pub probe: String,
}

/// Pairwise disjoint `s₁ ≺ s₂ ≺ s₃`, each crossing the system, `Σ(s₁) = Σ(s₃)`.
#[derive(Clone, Debug)]
pub struct SignatureTriple {
    pub family: CurveFamily,
    pub cliques: Vec<Vec<String>>,
    pub triple: [String; 3],
}

/// Two nested brackets `(P, S)`, inner first.
#[derive(Clone, Debug)]
pub struct TwoBracketSystem {
    pub family: CurveFamily,
    pub brackets: Vec<(Vec<String>, Vec<String>)>,
}

fn corpus_family(seed: u64) -> Option<CurveFamily> {
    let n = 8 + (seed % 5) as usize;
    let spec = if seed.is_multiple_of(2) {
        GenSpec::segments(n, seed)
    } else {
        GenSpec::polylines(n, 3 + (seed % 2) as usize, seed)
    };
    generate(&spec).ok()
}

/// Single-support brackets of random families, each paired with every other
/// family curve that meets its interior and exterior.
pub fn bracket_crossing_instances(count: usize, seed: u64) -> Vec<BracketInstance> {
    let mut out = Vec::with_capacity(count);
    let mut next = seed;
    while out.len() < count {
        let Some(f) = corpus_family(next) else {
            next += 1;
            continue;
        };
        next += 1;
        for (si, s) in f.curves().iter().enumerate() {
            for left in [true, false] {
                let p: Vec<String> = f
                    .curves()
                    .iter()
                    .enumerate()
                    .filter(|&(i, c)| if left { i > si } else { i < si } && curves_intersect(c, s))
                    .map(|(_, c)| c.id().to_string())
                    .collect();
                if p.is_empty() {
                    continue;
                }
                let Ok(br) = build_bracket(&p, &[s.id().to_string()], &f) else { continue };
                for c in f.curves() {
                    if c.id() == s.id() || p.iter().any(|x| x == c.id()) {
                        continue;
                    }
                    let inside = interior_classify(&br, c) != Classification::Outside;
                    if inside && br.exterior().meets_curve(c).unwrap_or(false) {
                        out.push(BracketInstance {
                            family: f.clone(),
                            p: p.clone(),
                            s: vec![s.id().to_string()],
                            probe: c.id().to_string(),
                        });
                        if out.len() == count {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Triples meeting the hypotheses of signature betweenness, over one- and
/// two-clique systems of random families.
pub fn signature_triples(count: usize, seed: u64) -> Vec<SignatureTriple> {
    let mut out = Vec::with_capacity(count);
    let mut next = seed;
    while out.len() < count {
        let Some(f) = corpus_family(next) else {
            next += 1;
            continue;
        };
        next += 1;
        let n = f.len();
        let pairs: Vec<Vec<String>> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .map(|(a, b)| vec![f.curve(a).id().to_string(), f.curve(b).id().to_string()])
            .collect();
        // one-clique systems, each followed by its two-clique extensions
        let systems = pairs.iter().flat_map(|k| {
            std::iter::once(vec![k.clone()]).chain(pairs.iter().map(move |inner| vec![k.clone(), inner.clone()]))
        });
        for cliques in systems {
            let Ok(cs) = validate_clique_system(&cliques, &f) else { continue };
            let candidates: Vec<(usize, _)> = (0..n)
                .filter(|&i| crosses_system(f.curve(i).id(), &cs, &f).unwrap_or(false))
                .filter_map(|i| signature(f.curve(i).id(), &cs, &f).ok().map(|s| (i, s)))
                .collect();
            for (x, (i, si)) in candidates.iter().enumerate() {
                for (y, (j, _)) in candidates.iter().enumerate().skip(x + 1) {
                    if curves_intersect(f.curve(*i), f.curve(*j)) {
                        continue;
                    }
                    for (k, sk) in candidates.iter().skip(y + 1) {
                        if sk != si
                            || curves_intersect(f.curve(*i), f.curve(*k))
                            || curves_intersect(f.curve(*j), f.curve(*k))
                        {
                            continue;
                        }
                        out.push(SignatureTriple {
                            family: f.clone(),
                            cliques: cliques.clone(),
                            triple: [f.curve(*i), f.curve(*j), f.curve(*k)].map(|c| c.id().to_string()),
                        });
                        if out.len() == count {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

const SYSTEM_RETRIES: usize = 64;

/// `lo + k/1000` for a uniform `k ∈ 0..=span·1000`.
fn jitter(rng: &mut ChaCha8Rng, lo: i64, span: i64) -> Rational {
    let k = rng.gen_range(0..=span * 1000);
    Rational::new(BigInt::from(lo * 1000 + k), BigInt::from(1000))
}

/// A randomized two-bracket system: an outer bracket whose support is an
/// inverted L, and inside its interior a bracket of crossing curves hitting
/// a vertical support. Odd seeds mirror the picture, putting supports on the right.
pub fn two_bracket_system(seed: u64) -> Result<TwoBracketSystem, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SYSTEM_RETRIES {
        let h = jitter(&mut rng, 9, 2);
        let w = jitter(&mut rng, 24, 2);
        let c = jitter(&mut rng, 1, 1);
        let b = jitter(&mut rng, 18, 1);
        let one = Rational::from_integer(1.into());
        let zero = Rational::from_integer(0.into());
        let pt = |x: &Rational, y: &Rational| Point::new(x.clone(), y.clone());

        let mut curves = vec![
            GroundedCurve::new("A", vec![pt(&zero, &zero), pt(&zero, &h), pt(&w, &h)]),
            GroundedCurve::new("C", vec![pt(&c, &zero), pt(&(&c + jitter(&mut rng, 0, 1) / int(4)), &(&h + int(2)))]),
            GroundedCurve::new("B", vec![pt(&b, &zero), pt(&(&b + jitter(&mut rng, 0, 1) / int(4)), &(&h + int(3)))]),
            GroundedCurve::new("B2", vec![pt(&(&b - &one), &zero), pt(&(&b + int(2)), &(&h + &one))]),
        ];
        // D₁ and D₂ cross: D₁ starts left of D₂ and ends above it
        let extra = rng.gen_range(0..=2);
        let mut inner = Vec::new();
        for (i, (base, top)) in [(4, 4), (6, 2)]
            .into_iter()
            .chain((0..extra).map(|i| (8 + 2 * i, 1)))
            .enumerate()
        {
            let id = format!("D{}", i + 1);
            let x0 = jitter(&mut rng, base, 1);
            let y1 = jitter(&mut rng, top, 1);
            curves.push(GroundedCurve::new(&id, vec![pt(&x0, &zero), pt(&(&c - &one / int(2)), &y1)]));
            inner.push(id);
        }
        if seed % 2 == 1 {
            let mirror = &w + int(1);
            curves = curves
                .into_iter()
                .map(|cv| {
                    let vs = cv.vertices().iter().map(|q| Point::new(&mirror - &q.x, q.y.clone())).collect();
                    GroundedCurve::new(cv.id(), vs)
                })
                .collect();
        }
        let Ok(family) = validate_family(curves) else { continue };
        let brackets = vec![
            (inner, vec!["C".to_string()]),
            (vec!["B".to_string(), "B2".to_string()], vec!["A".to_string()]),
        ];
        let built: Result<Vec<_>, _> = brackets.iter().map(|(p, s)| build_bracket(p, s, &family)).collect();
        if let Ok(built) = built {
            if validate_bracket_system(&built, &family).is_ok() {
                return Ok(TwoBracketSystem { family, brackets });
            }
        }
    }
    Err(GenError::GenerationFailure { rounds: SYSTEM_RETRIES })
}
