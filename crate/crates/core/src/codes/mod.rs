//! Two-intersection sets, two-weight codes, multiple blocking sets, and
//! rank-metric codes from linearized polynomials.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::gf::Elem;
use crate::linalg::{dot, mat_rank, projective_points, subspaces, vectors, ProjectivePoint};
use crate::linset::{is_scattered_linear_set, linear_set, LinearSet};
use crate::spread::DesarguesianSpread;
use crate::{check_budget, pow_u128, theta, Error, Result, Subspace};

pub mod rank_metric;

pub use rank_metric::{mrd_from_poly, rank_distance, LinearizedPolynomial, RankMetricCode};

/// The two intersection numbers `(m1, m2)` of a scattered linear set of
/// rank `rt/2` with hyperplanes.
pub fn intersection_numbers(r: usize, t: usize, q: u32) -> (u128, u128) {
    let h = (r * t / 2) as i64 - t as i64;
    (theta(h - 1, u64::from(q)), theta(h, u64::from(q)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneSpectrum {
    /// `|B(U)|`.
    pub n: usize,
    /// `|L ∩ H| → number of hyperplanes H`.
    pub sizes: BTreeMap<usize, u128>,
    /// `(m1, m2)`, present when the two-intersection property was asserted.
    pub expected: Option<(u128, u128)>,
}

/// Intersection sizes of `L` with every hyperplane of PG(r-1, q^t).
pub fn hyperplane_spectrum(l: &LinearSet, spread: &DesarguesianSpread, budget: u64) -> Result<HyperplaneSpectrum> {
    let r = spread.r();
    let t = spread.t();
    if r < 2 {
        return Err(Error::InvalidInput("hyperplanes need r >= 2".into()));
    }
    let top = spread.top_field();
    let points: Vec<&ProjectivePoint> = l.points().collect();
    let mut sizes = BTreeMap::new();
    for a in projective_points(top.order(), r, budget)? {
        let c = points.iter().filter(|x| dot(top, a.coords(), x.coords()) == 0).count();
        *sizes.entry(c).or_insert(0u128) += 1;
    }
    let maximum = (r * t) % 2 == 0 && l.rank() == r * t / 2 && is_scattered_linear_set(l);
    let expected = if maximum {
        let (m1, m2) = intersection_numbers(r, t, spread.q());
        let want: BTreeSet<u128> = [m1, m2].into();
        let got: BTreeSet<u128> = sizes.keys().map(|&k| k as u128).collect();
        if got != want {
            return Err(Error::InvariantViolated("two intersection numbers".into()));
        }
        Some((m1, m2))
    } else {
        None
    };
    Ok(HyperplaneSpectrum { n: l.size(), sizes, expected })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoWeightCode {
    /// Code length `|B(U)| = (q^m - 1)/(q - 1)`.
    pub n: usize,
    /// Dimension over GF(q^t), equal to `r`.
    pub dimension: usize,
    /// `M_U`: one row per point of `B(U)`, normalized coordinates.
    pub generator: Vec<Vec<Elem>>,
    /// `weight → number of codewords`, including the zero word.
    pub weight_enumerator: BTreeMap<usize, u128>,
    pub expected_weights: (u128, u128),
}

/// The code spanned over GF(q^t) by the columns of `M_U`. Codeword `a`
/// has entry `a·x` at point `x`, so its weight is `n - |L ∩ a^⊥|`.
pub fn two_weight_code(u: &Subspace, spread: &DesarguesianSpread, budget: u64) -> Result<TwoWeightCode> {
    let r = spread.r();
    let t = spread.t();
    let q = spread.q();
    if (r * t) % 2 != 0 || u.dim() != r * t / 2 {
        return Err(Error::InvalidInput("two-weight codes need dim U = rt/2".into()));
    }
    let l = linear_set(u, spread)?;
    if !is_scattered_linear_set(&l) {
        return Err(Error::NotScattered);
    }
    let top = spread.top_field();
    let generator: Vec<Vec<Elem>> = l.points().map(|p| p.coords().to_vec()).collect();
    if mat_rank(top, &generator) != r {
        return Err(Error::InvariantViolated("code dimension r".into()));
    }
    let n = generator.len();
    check_budget(pow_u128(u64::from(top.order()), r as u32).saturating_mul(n as u128), budget)?;
    let mut weight_enumerator = BTreeMap::new();
    for a in vectors(top.order(), r, budget)? {
        let w = generator.iter().filter(|x| dot(top, &a, x) != 0).count();
        *weight_enumerator.entry(w).or_insert(0u128) += 1;
    }
    let m = r * t / 2;
    let q64 = u64::from(q);
    let w1 = pow_u128(q64, (m - t) as u32) * theta(t as i64 - 1, q64);
    let w2 = pow_u128(q64, (m - t + 1) as u32) * theta(t as i64 - 2, q64);
    let nonzero: BTreeSet<u128> = weight_enumerator.keys().filter(|&&w| w > 0).map(|&w| w as u128).collect();
    if nonzero != BTreeSet::from([w1, w2]) || weight_enumerator.get(&0) != Some(&1) {
        return Err(Error::InvariantViolated("two weights".into()));
    }
    Ok(TwoWeightCode { n, dimension: r, generator, weight_enumerator, expected_weights: (w1, w2) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingReport {
    /// `|B(U)|`, expected `θ_{m-1}(q)`.
    pub size: u128,
    /// Projective dimension `(rt - m + k)/t - 1` of the blocked subspaces.
    pub subspace_dim: usize,
    /// Required multiplicity `θ_{k-1}(q)`.
    pub multiplicity: u128,
    pub subspaces_checked: u128,
    pub min_intersection: u128,
    pub holds: bool,
}

/// Checks that `B(U)` meets every subspace of PG(r-1, q^t) of projective
/// dimension `(rt - m + k)/t - 1` in at least `θ_{k-1}(q)` points.
pub fn verify_blocking(u: &Subspace, spread: &DesarguesianSpread, k: usize, budget: u64) -> Result<BlockingReport> {
    let m = u.dim();
    let t = spread.t();
    let r = spread.r();
    let q = u64::from(spread.q());
    if k < 1 || k > m || (m - k) % t != 0 {
        return Err(Error::InvalidInput("need 1 <= k <= m and t | (m - k)".into()));
    }
    let l = linear_set(u, spread)?;
    if !is_scattered_linear_set(&l) {
        return Err(Error::NotScattered);
    }
    let s = (r * t - m + k) / t;
    let multiplicity = theta(k as i64 - 1, q);
    let size = l.size() as u128;
    let mut checked = 0u128;
    let mut min_intersection = u128::MAX;
    for w in subspaces(spread.top_field().clone(), r, s, budget)? {
        let mut c = 0u128;
        for p in l.points() {
            if w.contains_vector(p.coords())? {
                c += 1;
            }
        }
        min_intersection = min_intersection.min(c);
        checked += 1;
    }
    let holds = size == theta(m as i64 - 1, q) && min_intersection >= multiplicity;
    Ok(BlockingReport { size, subspace_dim: s - 1, multiplicity, subspaces_checked: checked, min_intersection, holds })
}
