//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use outerstring::gen::{generate, GenSpec};
use outerstring::geom::{validate_family, CurveFamily, GroundedCurve};

/// `u`, `v` and `s` pairwise crossing.
pub fn nest() -> CurveFamily {
    validate_family(vec![
        GroundedCurve::from_ints("u", &[(0, 0), (0, 4), (6, 4)]),
        GroundedCurve::from_ints("v", &[(6, 0), (6, 3), (-1, 3)]),
        GroundedCurve::from_ints("s", &[(3, 0), (3, 5)]),
    ])
    .unwrap()
}

/// Adjacency matrix by direct pairwise tests.
pub fn adjacency(f: &CurveFamily) -> Vec<Vec<bool>> {
    let n = f.len();
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m[i][j] = outerstring::geom::curves_intersect(f.curve(i), f.curve(j));
            }
        }
    }
    m
}

/// Largest clique by enumerating every subset.
pub fn brute_omega(m: &[Vec<bool>]) -> usize {
    let n = m.len();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if vs.len() > best && vs.iter().all(|&a| vs.iter().all(|&b| a == b || m[a][b])) {
            best = vs.len();
        }
    }
    best
}

/// Smallest `k` admitting a proper coloring, by enumerating all `k`-colorings.
pub fn brute_chi(m: &[Vec<bool>]) -> usize {
    let n = m.len();
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let total = (k as u64).pow(n as u32);
        for code in 0..total {
            let mut c = vec![0usize; n];
            let mut x = code;
            for slot in c.iter_mut() {
                *slot = (x % k as u64) as usize;
                x /= k as u64;
            }
            if (0..n).all(|a| (a + 1..n).all(|b| !m[a][b] || c[a] != c[b])) {
                return k;
            }
        }
    }
    n
}

/// Deterministic corpus mixing segment and polyline families.
pub fn corpus(count: u64, max_n: usize, seed_base: u64) -> Vec<CurveFamily> {
    (0..count)
        .map(|i| {
            let seed = seed_base + i;
            let n = 3 + (seed as usize * 7) % (max_n - 2);
            let spec = if i % 2 == 0 {
                GenSpec::segments(n, seed)
            } else {
                GenSpec::polylines(n, 3 + (i as usize % 3), seed)
            };
            generate(&spec).expect("generator succeeds")
        })
        .collect()
}
