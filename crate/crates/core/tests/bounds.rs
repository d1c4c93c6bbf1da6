use num_bigint::BigUint;
use outerstring::bounds::*;

fn b(v: u128) -> BigUint {
    BigUint::from(v)
}

/// Independent closed form: `βᵢ = (2ⁱ − 1)((2α + 6k)ξ + 2)`, so
/// `f(α) = 2^{k+2}((2^{k+1} − 1)((2α + 6k)ξ + 2) + 2ξ + 1)`.
fn f_closed(alpha: u128, k: u32, xi: u128) -> u128 {
    let c = (2 * alpha + 6 * k as u128) * xi + 2;
    (1u128 << (k + 2)) * (((1u128 << (k + 1)) - 1) * c + 2 * xi + 1)
}

#[test]
fn f_for_k2_xi1() {
    assert_eq!(f_bound(&b(0), 2, &b(1)), b(1616));
    assert_eq!(f_closed(0, 2, 1), 1616);
    for alpha in [1u128, 2, 17, 1000, 123_456_789] {
        assert_eq!(f_bound(&b(alpha), 2, &b(1)), b(224 * alpha + 1616));
        assert_eq!(f_closed(alpha, 2, 1), 224 * alpha + 1616);
    }
}

#[test]
fn f_for_k1_follows_the_recurrence() {
    // β₁ = 8, β₂ = 2·8 + 8 = 24, γ = 2³·(24 + 2 + 1) = 216
    assert_eq!(f_betas(&b(0), 1, &b(1)), vec![b(0), b(8), b(24)]);
    assert_eq!(f_bound(&b(0), 1, &b(1)), b(216));
    assert_eq!(f_closed(0, 1, 1), 216);
}

#[test]
fn f_matches_closed_form_on_a_grid() {
    for k in 1..=5u32 {
        for xi in 1..=4u128 {
            for alpha in 0..=6u128 {
                assert_eq!(f_bound(&b(alpha), k as u64, &b(xi)), b(f_closed(alpha, k, xi)));
            }
        }
    }
}

#[test]
fn f_is_increasing_in_alpha() {
    for alpha in 0..20u128 {
        assert!(f_bound(&b(alpha + 1), 3, &b(2)) > f_bound(&b(alpha), 3, &b(2)));
    }
}

#[test]
fn g2_values() {
    assert_eq!(g2_bound(&b(0), 0, 2, &b(1)), b(363_601));
    assert_eq!(224 * 1616 + 1616 + 1, 363_601);
    // α = 0 kills the product: f^{(m)}(0) + 1 with m = 2ⁿ + 1
    for n in 0..4u64 {
        let mut v = b(0);
        for _ in 0..pigeonhole_m(n) {
            v = f_bound(&v, 2, &b(1));
        }
        assert_eq!(g2_bound(&b(0), n, 2, &b(1)), v + b(1));
    }
    assert!(g2_bound(&b(1), 1, 2, &b(1)) > g2_bound(&b(0), 1, 2, &b(1)));
}

#[test]
fn g3_from_closed_form() {
    // β₁ = g₂(0, 0) = 363601; β₂ = g₂(363601, 1) with m = 3 and
    // β = 2·363601·((2⁵ + 6)·1 + 1), then three applications of f(x) = 224x + 1616
    let inner = 2 * 363_601u128 * (38 + 1);
    let mut v = inner;
    for _ in 0..3 {
        v = f_closed(v, 2, 1);
    }
    let expected = v + 1;
    assert_eq!(expected, 318_760_014_302_289);
    assert_eq!(gt_bound(3, &b(0), 0, 2, &b(1)), b(expected));
    assert_eq!(gt_bound(2, &b(5), 1, 2, &b(1)), g2_bound(&b(5), 1, 2, &b(1)));
}

#[test]
fn explicit_bounds() {
    assert_eq!(explicit_chi_bound(1), b(1));
    assert_eq!(explicit_chi_bound(2), gt_bound(3, &b(0), 0, 2, &b(1)));
    assert_eq!(explicit_chi_bound(2), b(318_760_014_302_289));
    assert!(explicit_chi_bound(3) >= explicit_chi_bound(2));
}

#[test]
fn monotone_in_t_alpha_n() {
    let xi = b(1);
    assert!(gt_bound(3, &b(0), 0, 2, &xi) >= gt_bound(2, &b(0), 0, 2, &xi));
    assert!(gt_bound(3, &b(1), 0, 2, &xi) >= gt_bound(3, &b(0), 0, 2, &xi));
    assert!(gt_bound(2, &b(0), 2, 2, &xi) >= gt_bound(2, &b(0), 1, 2, &xi));
}
