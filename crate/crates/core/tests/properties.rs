use std::cmp::Ordering;

use outerstring::gen::{generate, GenSpec};
use outerstring::geom::*;
use proptest::prelude::*;

fn family(seed: u64, n: usize, polylines: bool) -> CurveFamily {
    let spec = if polylines { GenSpec::polylines(n, 4, seed) } else { GenSpec::segments(n, seed) };
    generate(&spec).expect("generator yields a valid family")
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn intersection_is_symmetric(seed in 0u64..1_000_000, polylines in any::<bool>()) {
        let f = family(seed, 6, polylines);
        for i in 0..f.len() {
            for j in 0..f.len() {
                if i == j {
                    continue;
                }
                let (x, y) = (f.curve(i), f.curve(j));
                let mut fwd: Vec<Point> = curve_intersections(x, y).into_iter().map(|p| p.0.at).collect();
                let mut back: Vec<Point> = curve_intersections(y, x).into_iter().map(|p| p.1.at).collect();
                fwd.sort();
                back.sort();
                prop_assert_eq!(&fwd, &back);
                prop_assert_eq!(curves_intersect(x, y), !fwd.is_empty());
            }
        }
    }

    /// The first hit is an intersection and no obstacle is met earlier.
    #[test]
    fn first_hit_is_minimal(seed in 0u64..1_000_000, polylines in any::<bool>(), pick in 0usize..6) {
        let f = family(seed, 6, polylines);
        let c = f.curve(pick);
        let obstacles: Vec<&GroundedCurve> = f.curves().iter().filter(|o| o.id() != c.id()).collect();
        let all: Vec<CurvePoint> = obstacles.iter().flat_map(|o| curve_intersections(c, o)).map(|p| p.0).collect();
        match first_hit_curves(c, &obstacles) {
            None => prop_assert!(all.is_empty()),
            Some(hit) => {
                prop_assert!(curve_intersections(c, obstacles[hit.obstacle]).iter().any(|p| p.0 == hit.at));
                prop_assert!(all.iter().all(|p| p.cmp(&hit.at) != Ordering::Less));
            }
        }
    }

    /// Adding a curve only shrinks the exterior.
    #[test]
    fn exterior_is_monotone(seed in 0u64..1_000_000, polylines in any::<bool>()) {
        let f = family(seed, 7, polylines);
        let curves = f.curves();
        let (probe, rest) = curves.split_last().unwrap();
        let (_, base) = rest.split_last().unwrap();
        let small = Exterior::new(base);
        let large = Exterior::new(rest);
        for q in sample_points(probe, rest) {
            prop_assert!(!large.contains_point(&q) || small.contains_point(&q), "{:?}", q);
        }
    }

    /// A curve grounded between two crossing curves and disjoint from both
    /// is enclosed by them and misses their exterior.
    #[test]
    fn enclosed_curve_misses_exterior(seed in 0u64..1_000_000, polylines in any::<bool>()) {
        let f = family(seed, 8, polylines);
        let n = f.len();
        for u in 0..n {
            for v in u + 2..n {
                if !curves_intersect(f.curve(u), f.curve(v)) {
                    continue;
                }
                let pair = [f.curve(u).clone(), f.curve(v).clone()];
                for s in u + 1..v {
                    let s = f.curve(s);
                    if pair.iter().any(|c| curves_intersect(c, s)) {
                        continue;
                    }
                    prop_assert!(!exterior_meets_curve(&pair, s).expect("family is in general position"));
                }
            }
        }
    }
}
