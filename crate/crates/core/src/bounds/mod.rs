//! Exact evaluation of the bound recurrences of the χ-boundedness proof.
//!
//! `f(α) = 2^{k+2}(β_{k+1} + 2ξ + 1)` where `β₀ = 0` and
//! `β_{i+1} = 2βᵢ + (2α + 6k)ξ + 2`; `g₂(α, n) = f^{(m)}(β) + 1` with
//! `m = 2ⁿ + 1` and `β = 2α((2^{mn+2} + 2m)ξ + 1)`; for `t ≥ 3`,
//! `g_t(α, n) = β_m` where `β₀ = α` and `β_{i+1} = g_{t−1}(βᵢ, n + i)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub type BoundValue = BigUint;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// `β₀, …, β_{k+1}` for the given `α`.
pub fn f_betas(alpha: &BigUint, k: u64, xi: &BigUint) -> Vec<BigUint> {
    let step = (big(2) * alpha + big(6 * k)) * xi + big(2);
    let mut betas = vec![BigUint::zero()];
    for i in 0..=k as usize {
        let next = big(2) * &betas[i] + &step;
        betas.push(next);
    }
    betas
}

/// `γ = 2^{k+2}(β_{k+1} + 2ξ + 1)`.
pub fn f_bound(alpha: &BigUint, k: u64, xi: &BigUint) -> BigUint {
    assert!(k >= 1, "k must be at least 1");
    let betas = f_betas(alpha, k, xi);
    let last = betas.last().expect("nonempty");
    pow2(k as usize + 2) * (last + big(2) * xi + big(1))
}

/// `m = 2ⁿ + 1`.
pub fn pigeonhole_m(n: u64) -> u64 {
    (1u64 << n) + 1
}

/// `β = 2α((2^{mn+2} + 2m)ξ + 1)`.
pub fn g2_beta(alpha: &BigUint, n: u64, xi: &BigUint) -> BigUint {
    let m = pigeonhole_m(n);
    let exp = (m * n + 2) as usize;
    big(2) * alpha * ((pow2(exp) + big(2 * m)) * xi + big(1))
}

/// `g₂(α, n) = f^{(m)}(β) + 1`.
pub fn g2_bound(alpha: &BigUint, n: u64, k: u64, xi: &BigUint) -> BigUint {
    let mut value = g2_beta(alpha, n, xi);
    for _ in 0..pigeonhole_m(n) {
        value = f_bound(&value, k, xi);
    }
    value + big(1)
}

/// `g_t(α, n)`; `t = 2` delegates to [`g2_bound`].
pub fn gt_bound(t: u64, alpha: &BigUint, n: u64, k: u64, xi: &BigUint) -> BigUint {
    assert!(t >= 2, "t must be at least 2");
    if t == 2 {
        return g2_bound(alpha, n, k, xi);
    }
    let mut beta = alpha.clone();
    for i in 0..pigeonhole_m(n) {
        beta = gt_bound(t - 1, &beta, n + i, k, xi);
    }
    beta
}

/// `ξ_k`, where `ξ₁ = 1` and `ξ_κ = g_{κ+1}(0, 0)` evaluated with clique bound `κ` and `ξ_{κ−1}`.
pub fn explicit_chi_bound(k: u64) -> BigUint {
    assert!(k >= 1, "k must be at least 1");
    let mut xi = BigUint::one();
    for kappa in 2..=k {
        xi = gt_bound(kappa + 1, &BigUint::zero(), 0, kappa, &xi);
    }
    xi
}

/// Decimal digits of `v`, or scientific notation with the exact digit count
/// when `v` has more than `max_digits` digits.
pub fn format_bound(v: &BigUint, max_digits: usize) -> String {
    let s = v.to_str_radix(10);
    if s.len() <= max_digits {
        return s;
    }
    let mantissa = format!("{}.{}", &s[..1], &s[1..16]);
    format!("{mantissa}e{} ({} digits)", s.len() - 1, s.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_prefix() {
        let b = f_betas(&BigUint::zero(), 2, &big(1));
        assert_eq!(b, vec![big(0), big(14), big(42), big(98)]);
    }

    #[test]
    fn scientific_above_limit() {
        assert_eq!(format_bound(&big(12345), 10), "12345");
        let v = pow2(100);
        let s = format_bound(&v, 10);
        assert!(s.starts_with("1.267650600228229e30"), "{s}");
        assert!(s.ends_with("(31 digits)"));
    }
}
