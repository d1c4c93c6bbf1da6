//! Deterministic generators for grounded families and the figure fixtures.

mod figures;
mod instances;

pub use figures::{figure_fixture, figure_json, figure_relations, FigureRelations};
pub use instances::{
    bracket_crossing_instances, signature_triples, two_bracket_system, BracketInstance, SignatureTriple, TwoBracketSystem,
};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geom::{self_intersections, validate_family, CurveFamily, GroundedCurve, Point, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Segments,
    Polylines,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    /// Maximum number of vertices per curve.
    pub bends: usize,
    pub seed: u64,
    /// Integer coordinate range `0..=grid` before perturbation.
    pub grid: i64,
}

impl GenSpec {
    pub fn segments(n: usize, seed: u64) -> Self {
        GenSpec {
            kind: GenKind::Segments,
            n,
            bends: 2,
            seed,
            grid: 10,
        }
    }

    pub fn polylines(n: usize, bends: usize, seed: u64) -> Self {
        GenSpec {
            kind: GenKind::Polylines,
            n,
            bends,
            seed,
            grid: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("no general-position family after {rounds} perturbation rounds")]
    GenerationFailure { rounds: usize },
}

const PERTURBATION_ROUNDS: usize = 32;
const SIMPLE_RETRIES: usize = 64;

pub fn random_grounded_segments(spec: &GenSpec) -> Result<CurveFamily, GenError> {
    if spec.kind != GenKind::Segments {
        return Err(GenError::InvalidSpec("kind must be segments".into()));
    }
    generate(spec)
}

pub fn random_grounded_polylines(spec: &GenSpec) -> Result<CurveFamily, GenError> {
    if spec.kind != GenKind::Polylines {
        return Err(GenError::InvalidSpec("kind must be polylines".into()));
    }
    generate(spec)
}

/// Dispatches on `spec.kind`.
pub fn generate(spec: &GenSpec) -> Result<CurveFamily, GenError> {
    if spec.n == 0 {
        return Err(GenError::InvalidSpec("n must be at least 1".into()));
    }
    if spec.bends < 2 {
        return Err(GenError::InvalidSpec("bends must be at least 2".into()));
    }
    if spec.grid < 1 {
        return Err(GenError::InvalidSpec("grid must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let width = spec.grid.max(spec.n as i64 - 1);
    let mut xs: Vec<i64> = (0..=width).collect();
    xs.shuffle(&mut rng);
    let mut bases: Vec<i64> = xs[..spec.n].to_vec();
    bases.sort_unstable();

    let skeleton: Vec<Vec<(i64, i64)>> = bases
        .iter()
        .map(|&x0| match spec.kind {
            GenKind::Segments => vec![(x0, 0), (rng.gen_range(0..=width), rng.gen_range(1..=spec.grid))],
            GenKind::Polylines => polyline(&mut rng, x0, spec.bends, width, spec.grid),
        })
        .collect();

    let scale = BigInt::from(spec.n as i64 + 1) * BigInt::from(1_000_000_000i64);
    for _round in 0..PERTURBATION_ROUNDS {
        let curves: Vec<GroundedCurve> = skeleton
            .iter()
            .enumerate()
            .map(|(i, vs)| {
                let pts = vs
                    .iter()
                    .enumerate()
                    .map(|(j, &(x, y))| {
                        let dx = Rational::new(BigInt::from(rng.gen_range(1..=1000i64)), scale.clone());
                        let x = Rational::from_integer(x.into()) + dx;
                        if j == 0 {
                            return Point::new(x, Rational::from_integer(0.into()));
                        }
                        let dy = Rational::new(BigInt::from(rng.gen_range(1..=1000i64)), scale.clone());
                        Point::new(x, Rational::from_integer(y.into()) + dy)
                    })
                    .collect();
                GroundedCurve::new(format!("c{i}"), pts)
            })
            .collect();
        if spec.kind == GenKind::Polylines && curves.iter().any(|c| !self_intersections(c).is_empty()) {
            continue;
        }
        if let Ok(f) = validate_family(curves) {
            return Ok(f);
        }
    }
    Err(GenError::GenerationFailure {
        rounds: PERTURBATION_ROUNDS,
    })
}

/// An integer polyline from `(x0, 0)` whose first segment rises, and which is
/// simple as an integer polyline whenever a retry succeeds.
fn polyline(rng: &mut ChaCha8Rng, x0: i64, bends: usize, width: i64, grid: i64) -> Vec<(i64, i64)> {
    let count = rng.gen_range(2..=bends);
    for _ in 0..SIMPLE_RETRIES {
        let mut vs = vec![(x0, 0), (x0 + rng.gen_range(-1..=1), rng.gen_range(1..=grid))];
        while vs.len() < count {
            vs.push((rng.gen_range(0..=width), rng.gen_range(1..=grid)));
        }
        let ok = vs.windows(2).all(|w| w[0] != w[1]);
        if ok && !self_intersecting(&vs) {
            return vs;
        }
    }
    vec![(x0, 0), (x0, rng.gen_range(1..=grid))]
}

fn self_intersecting(vs: &[(i64, i64)]) -> bool {
    let c = GroundedCurve::from_ints("probe", vs);
    !self_intersections(&c).is_empty()
        || c.vertices().windows(3).any(|w| {
            // immediate backtracking along the same line
            crate::geom::orientation(&w[0], &w[1], &w[2]) == std::cmp::Ordering::Equal
        })
}
