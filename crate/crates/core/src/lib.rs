//! Scattered subspaces with respect to Desarguesian spreads.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is exact arithmetic
//! over small finite fields, and every structural claim the library makes
//! (partitions, bounds, intersection numbers, arc properties) is checked by
//! enumeration at desk-scale parameters rather than assumed.
//!
//! Field elements are plain [`Elem`] indices: an element of GF(p^m) given by
//! coefficients `c_0 + c_1 x + ...` over its immediate subfield is stored as
//! the integer `sum c_i s^i`, where `s` is the subfield order. Zero is `0`
//! and one is `1` in every field.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod codes;
mod error;
pub mod geom;
pub mod gf;
pub mod linalg;
pub mod linset;
pub mod scattered;
pub mod spread;

pub use error::{Error, Result};
pub use gf::{Elem, FieldElement, FieldTower, Gf};
pub use linalg::{ProjectivePoint, Subspace};
pub use spread::{DesarguesianSpread, FieldReduction, Spread};

/// Default cap on the number of objects any single enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

pub(crate) fn check_budget(needed: u128, budget: u64) -> Result<()> {
    if needed > u128::from(budget) {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// `base^exp` in `u128`, saturating at `u128::MAX`.
pub fn pow_u128(base: u64, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(u128::from(base));
    }
    acc
}

/// theta_n(q) = (q^{n+1} - 1)/(q - 1): the number of points of PG(n, q).
///
/// `theta(-1, q) = 0` by convention, which is what the blocking-set
/// multiplicity `theta_{k-1}` needs at `k = 0`.
pub fn theta(n: i64, q: u64) -> u128 {
    if n < 0 {
        return 0;
    }
    let mut acc: u128 = 0;
    for i in 0..=n {
        acc = acc.saturating_add(pow_u128(q, i as u32));
    }
    acc
}

/// Gaussian binomial coefficient `[n choose k]_q`, the number of
/// `k`-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(pow_u128(q, (n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(pow_u128(q, (i + 1) as u32) - 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(6, 3, 2), 1395);
        assert_eq!(gaussian_binomial(4, 2, 8), 4745);
        assert_eq!(gaussian_binomial(3, 0, 5), 1);
        assert_eq!(gaussian_binomial(2, 3, 5), 0);
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(2, 4), 21);
        assert_eq!(theta(-1, 3), 0);
        assert_eq!(theta(0, 7), 1);
    }
}
