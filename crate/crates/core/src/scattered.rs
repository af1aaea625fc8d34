//! Scattered subspaces: certification, greedy extension, bounds and
//! explicit constructions.
//!
//! A subspace `U` is scattered with respect to a spread when every spread
//! element meets it in dimension at most one. Everything here works by
//! classifying the vectors of `U` (or of a coset `U + w`), never by walking
//! the spread.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::gf::{Elem, FieldTower};
use crate::linalg::{vector_from_index, Subspace};
use crate::spread::{DesarguesianSpread, Spread};
use crate::{check_budget, pow_u128, Error, Result};

/// Intersection dimension with every spread element that meets `u`, keyed by
/// element index.
pub fn point_weights<S: Spread + ?Sized>(u: &Subspace, spread: &S) -> Result<BTreeMap<u64, usize>> {
    if u.ambient_dim() != spread.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: spread.ambient_dim(), found: u.ambient_dim() });
    }
    if **u.field() != **spread.field() {
        return Err(Error::FieldMismatch);
    }
    check_budget(u.vector_count(), spread.budget())?;
    let mut counts: BTreeMap<u64, u128> = BTreeMap::new();
    for v in u.vectors().skip(1) {
        *counts.entry(spread.classify_index(&v)?).or_default() += 1;
    }
    let q = u64::from(spread.field().order());
    counts
        .into_iter()
        .map(|(idx, c)| {
            // c = q^w - 1 nonzero vectors in a w-dimensional intersection
            let mut w = 0usize;
            while pow_u128(q, w as u32) - 1 < c {
                w += 1;
            }
            if pow_u128(q, w as u32) - 1 != c {
                return Err(Error::InvariantViolated("intersection size is not q^w - 1".into()));
            }
            Ok((idx, w))
        })
        .collect()
}

/// Histogram `intersection dimension → number of spread elements`, over the
/// elements meeting `u` nontrivially.
pub fn profile_of(weights: &BTreeMap<u64, usize>) -> BTreeMap<usize, u64> {
    let mut profile = BTreeMap::new();
    for &w in weights.values() {
        *profile.entry(w).or_default() += 1;
    }
    profile
}

pub fn is_scattered<S: Spread + ?Sized>(u: &Subspace, spread: &S) -> Result<bool> {
    Ok(point_weights(u, spread)?.values().all(|&w| w <= 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScatterReport {
    pub dim: usize,
    pub ambient_dim: usize,
    pub profile: BTreeMap<usize, u64>,
    /// Number of spread elements meeting `U`, i.e. `|B(U)|`.
    pub linear_set_size: u64,
    pub is_scattered: bool,
    /// `None` when the extension scan would exceed the budget or `U` is not
    /// scattered.
    pub is_maximally_scattered: Option<bool>,
    /// `Some(true)` when `dim U` reaches the Desarguesian upper bound,
    /// `Some(false)` when a larger scattered subspace is known to exist.
    pub is_maximum: Option<bool>,
    pub bounds: Option<BoundSet>,
}

/// Classifies every vector of `U` and summarizes the intersection profile.
pub fn analyze<S: Spread + ?Sized>(u: &Subspace, spread: &S) -> Result<ScatterReport> {
    let weights = point_weights(u, spread)?;
    let profile = profile_of(&weights);
    let is_scattered = profile.keys().all(|&w| w <= 1);
    let bounds = spread.desarguesian_params().map(|(r, t, q)| dim_bounds(r, t, q));
    if is_scattered {
        if let Some(b) = &bounds {
            if b.t >= 2 && u.dim() > b.upper_desarguesian {
                return Err(Error::InvariantViolated("scattered subspace above rt/2".into()));
            }
        }
    }
    let scan_cost =
        pow_u128(u64::from(spread.field().order()), spread.ambient_dim() as u32).saturating_mul(u.vector_count());
    let is_maximally_scattered = if is_scattered && scan_cost <= u128::from(spread.budget()) {
        Some(extend_scattered(u, spread)?.is_none())
    } else {
        None
    };
    let is_maximum = match (&bounds, is_scattered) {
        (Some(b), true) if u.dim() == b.upper_desarguesian => Some(true),
        (Some(b), true) if b.r % 2 == 0 || b.t == 2 => Some(false),
        (_, false) => Some(false),
        _ => None,
    };
    Ok(ScatterReport {
        dim: u.dim(),
        ambient_dim: u.ambient_dim(),
        linear_set_size: weights.len() as u64,
        profile,
        is_scattered,
        is_maximally_scattered,
        is_maximum,
        bounds,
    })
}

/// Precomputed state for testing candidate vectors `w` against a scattered
/// subspace `U`: `⟨U, w⟩` is scattered iff the classes of `u + w` for
/// `u ∈ U` are pairwise distinct and avoid `B(U)`.
pub struct ExtensionScan<'a, S: Spread + ?Sized> {
    spread: &'a S,
    base: Subspace,
    vectors: Vec<Vec<Elem>>,
    hit: BTreeSet<u64>,
}

impl<'a, S: Spread + ?Sized> ExtensionScan<'a, S> {
    pub fn new(u: &Subspace, spread: &'a S) -> Result<Self> {
        let weights = point_weights(u, spread)?;
        if weights.values().any(|&w| w > 1) {
            return Err(Error::NotScattered);
        }
        Ok(ExtensionScan {
            spread,
            base: u.clone(),
            vectors: u.vectors().collect(),
            hit: weights.into_keys().collect(),
        })
    }

    pub fn subspace(&self) -> &Subspace {
        &self.base
    }

    /// Number of candidate vectors, `q^n`.
    pub fn candidate_count(&self) -> u128 {
        pow_u128(u64::from(self.spread.field().order()), self.spread.ambient_dim() as u32)
    }

    pub fn accepts(&self, w: &[Elem]) -> Result<bool> {
        if w.iter().all(|&c| c == 0) {
            return Ok(false);
        }
        if self.hit.contains(&self.spread.classify_index(w)?) {
            return Ok(false);
        }
        let f = &**self.spread.field();
        let mut seen = BTreeSet::new();
        let mut sum = vec![0; w.len()];
        for u in &self.vectors {
            for ((s, &a), &b) in sum.iter_mut().zip(u).zip(w) {
                *s = f.add(a, b);
            }
            let c = self.spread.classify_index(&sum)?;
            if self.hit.contains(&c) || !seen.insert(c) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest candidate index in `range` that extends `U`, with its vector.
    pub fn first_in_range(&self, range: Range<u128>) -> Result<Option<(u128, Vec<Elem>)>> {
        let q = self.spread.field().order();
        let n = self.spread.ambient_dim();
        for i in range {
            let w = vector_from_index(q, n, i);
            if self.accepts(&w)? {
                return Ok(Some((i, w)));
            }
        }
        Ok(None)
    }
}

/// `⟨U, w⟩` for the smallest `w` (in vector enumeration order) keeping it
/// scattered, or `None` when `U` is maximally scattered.
pub fn extend_scattered<S: Spread + ?Sized>(u: &Subspace, spread: &S) -> Result<Option<Subspace>> {
    let scan = ExtensionScan::new(u, spread)?;
    let total = scan.candidate_count();
    check_budget(total.saturating_mul(u.vector_count()), spread.budget())?;
    match scan.first_in_range(1..total)? {
        Some((_, w)) => Ok(Some(u.extended(&w)?)),
        None => Ok(None),
    }
}

/// Repeats [`extend_scattered`] until no extension exists.
pub fn maximally_scatter<S: Spread + ?Sized>(u: &Subspace, spread: &S) -> Result<Subspace> {
    let mut current = u.clone();
    while let Some(next) = extend_scattered(&current, spread)? {
        current = next;
    }
    Ok(current)
}

/// One greedy pass: walks candidate indices in the given order, extending
/// whenever the candidate keeps the subspace scattered. Stops early once
/// `target` is reached.
pub fn greedy_in_order<S, I>(spread: &S, start: &Subspace, order: I, target: Option<usize>) -> Result<Subspace>
where
    S: Spread + ?Sized,
    I: IntoIterator<Item = u128>,
{
    let q = spread.field().order();
    let n = spread.ambient_dim();
    let mut scan = ExtensionScan::new(start, spread)?;
    let mut remaining = u128::from(spread.budget());
    for i in order {
        if target.is_some_and(|t| scan.base.dim() >= t) {
            break;
        }
        let cost = scan.base.vector_count();
        if cost > remaining {
            return Err(Error::BudgetExceeded { needed: cost, budget: spread.budget() });
        }
        remaining -= cost;
        let w = vector_from_index(q, n, i);
        if scan.accepts(&w)? {
            scan = ExtensionScan::new(&scan.base.extended(&w)?, spread)?;
        }
    }
    Ok(scan.base)
}

/// All scattered subspaces of dimension `dim + 1` containing `U`.
pub fn scattered_extensions<S: Spread + ?Sized>(u: &Subspace, spread: &S) -> Result<Vec<Subspace>> {
    let scan = ExtensionScan::new(u, spread)?;
    let q = spread.field().order();
    let n = spread.ambient_dim();
    let free: Vec<usize> = (0..n).filter(|c| !u.pivots().contains(c)).collect();
    let reps = pow_u128(u64::from(q), free.len() as u32);
    let mut out = BTreeSet::new();
    for i in 1..reps {
        let digits = vector_from_index(q, free.len(), i);
        let mut w = vec![0; n];
        for (&c, &d) in free.iter().zip(&digits) {
            w[c] = d;
        }
        if scan.accepts(&w)? {
            out.insert(u.extended(&w)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// Exact maximum dimension of a scattered subspace, with the smallest
/// witness of that dimension.
///
/// Works level by level: every scattered subspace of dimension `k + 1`
/// extends one of dimension `k`, so only scattered subspaces are expanded.
/// The budget bounds the number of candidate checks.
pub fn exhaustive_max_scattered<S: Spread + ?Sized>(spread: &S, budget: u64) -> Result<(usize, Subspace)> {
    let n = spread.ambient_dim();
    let field = spread.field().clone();
    let mut level: BTreeSet<Subspace> = BTreeSet::new();
    level.insert(Subspace::zero(field, n));
    let mut spent: u128 = 0;
    loop {
        let mut next = BTreeSet::new();
        for u in &level {
            let free = (n - u.dim()) as u32;
            spent = spent.saturating_add(pow_u128(u64::from(spread.field().order()), free));
            check_budget(spent, budget)?;
            next.extend(scattered_extensions(u, spread)?);
        }
        if next.is_empty() {
            let witness = level.into_iter().next().expect("level is nonempty");
            return Ok((witness.dim(), witness));
        }
        level = next;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MaximumCase {
    /// q = 2 and t ≥ 4.
    I,
    /// t not divisible by 3.
    Ii,
    /// q ≡ 1 mod 3 and t ≡ 0 mod 3.
    Iii,
}

impl MaximumCase {
    pub fn tag(self) -> &'static str {
        match self {
            MaximumCase::I => "i",
            MaximumCase::Ii => "ii",
            MaximumCase::Iii => "iii",
        }
    }
}

/// Dimension bounds for scattered subspaces w.r.t. `D_{r,t,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundSet {
    pub r: usize,
    pub t: usize,
    pub q: u32,
    /// Every maximally scattered subspace has at least this dimension.
    pub lower_maximal: usize,
    /// Upper bound for arbitrary t-spreads, `rt - t`.
    pub upper_general: usize,
    /// Upper bound for the Desarguesian spread, `⌊rt/2⌋`.
    pub upper_desarguesian: usize,
    /// The larger of the two existence readings below.
    pub existence_lower: usize,
    /// Largest `r'k` over all admissible divisors `r'`.
    pub existence_max_product: usize,
    /// `r'k` for the largest admissible divisor `r'` alone.
    pub existence_largest_divisor: usize,
    pub existence_ambiguous: bool,
    /// Set when maximum scattered subspaces of dimension `rt/2` are known to
    /// exist by a direct construction (t even).
    pub maximum_case: Option<MaximumCase>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Largest `k` with `r'k < (rt - t + r' + 3)/2`, or `k < (rt - t + 3)/2`
/// when `q = 2` and `r' = 1`.
fn existence_k(r: usize, t: usize, q: u32, rp: usize) -> usize {
    let m = r * t - t;
    // brute force over k, comparing 2·lhs < rhs numerator
    let mut k = 0;
    loop {
        let next = k + 1;
        let ok = if q == 2 && rp == 1 { 2 * next < m + 3 } else { 2 * rp * next < m + rp + 3 };
        if !ok {
            return k;
        }
        k = next;
    }
}

pub fn dim_bounds(r: usize, t: usize, q: u32) -> BoundSet {
    let rt = r * t;
    let m = rt - t;
    let admissible: Vec<usize> = (1..=r).filter(|&d| r % d == 0 && gcd(d, t) == 1).collect();
    let products: Vec<(usize, usize)> = admissible.iter().map(|&d| (d, d * existence_k(r, t, q, d))).collect();
    let max_product = products.iter().map(|&(_, p)| p).max().unwrap_or(0);
    let largest_divisor = products.last().map(|&(_, p)| p).unwrap_or(0);
    let maximum_case = if t % 2 != 0 {
        None
    } else if q == 2 && t >= 4 {
        Some(MaximumCase::I)
    } else if t % 3 != 0 {
        Some(MaximumCase::Ii)
    } else if q % 3 == 1 {
        Some(MaximumCase::Iii)
    } else {
        None
    };
    BoundSet {
        r,
        t,
        q,
        lower_maximal: m.div_ceil(2) + 1,
        upper_general: m,
        upper_desarguesian: rt / 2,
        existence_lower: max_product.max(largest_divisor),
        existence_max_product: max_product,
        existence_largest_divisor: largest_divisor,
        existence_ambiguous: max_product != largest_divisor,
        maximum_case,
    }
}

/// A scattered subspace of dimension `rt/2` w.r.t. `D_{r,t,q}`:
/// `{(x, x^q)}` for r = 2, the GF(q)-rational vectors for t = 2, and a
/// direct sum of r = 2 blocks for other even r. The result is re-checked.
pub fn construct_max_scattered(spread: &DesarguesianSpread) -> Result<Subspace> {
    let tower = spread.tower();
    let r = spread.r();
    let t = spread.t();
    let rows: Vec<Vec<Elem>> = if r == 2 {
        pair_block_rows(tower, 0, 1)
    } else if t == 2 {
        (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect()
    } else if r % 2 == 0 {
        (0..r / 2).flat_map(|b| pair_block_rows(tower, b, r / 2)).collect()
    } else {
        return Err(Error::Unsupported("no explicit construction for odd r with t > 2".into()));
    };
    let reduced: Vec<Vec<Elem>> = rows
        .iter()
        .map(|v| {
            let mut full = vec![0; r];
            full[..v.len()].copy_from_slice(v);
            spread.reduction().phi(&full)
        })
        .collect::<Result<_>>()?;
    let u = Subspace::span(tower.base().clone(), r * t, &reduced)?;
    if u.dim() != r * t / 2 || !is_scattered(&u, spread)? {
        return Err(Error::InvariantViolated("construction is not scattered of dimension rt/2".into()));
    }
    Ok(u)
}

/// Rows `(…, b, b^q, …)` placed in coordinates `2·block, 2·block + 1` of a
/// vector of length `2·blocks`, for each basis element `b`.
fn pair_block_rows(tower: &FieldTower, block: usize, blocks: usize) -> Vec<Vec<Elem>> {
    tower
        .q_basis()
        .iter()
        .map(|&b| {
            let mut v = vec![0; 2 * blocks];
            v[2 * block] = b;
            v[2 * block + 1] = tower.frobenius(b, 1);
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::subspaces;
    use crate::FieldTower;

    fn spread(p: u32, r: usize, t: usize) -> DesarguesianSpread {
        DesarguesianSpread::new(FieldTower::new(p, 1, t, None).unwrap(), r).unwrap()
    }

    fn brute_max(d: &DesarguesianSpread) -> usize {
        let n = d.ambient_dim();
        let mut best = 0;
        for k in 1..=n {
            let found =
                subspaces(d.tower().base().clone(), n, k, 10_000_000).unwrap().any(|s| is_scattered(&s, d).unwrap());
            if found {
                best = k;
            }
        }
        best
    }

    #[test]
    fn spread_element_profile() {
        let d = spread(2, 2, 3);
        let s = d.element(3).unwrap();
        let rep = analyze(&s, &d).unwrap();
        assert_eq!(rep.profile, BTreeMap::from([(3, 1)]));
        assert!(!rep.is_scattered);
    }

    #[test]
    fn one_dimensional_is_scattered() {
        let d = spread(3, 2, 2);
        let u = Subspace::span(d.tower().base().clone(), 4, &[vec![1, 2, 0, 1]]).unwrap();
        let rep = analyze(&u, &d).unwrap();
        assert!(rep.is_scattered);
        assert_eq!(rep.linear_set_size, 1);
    }

    #[test]
    fn extend_from_zero() {
        let d = spread(2, 2, 2);
        let z = Subspace::zero(d.tower().base().clone(), 4);
        let u = extend_scattered(&z, &d).unwrap().unwrap();
        assert_eq!(u.dim(), 1);
        assert_eq!(u.basis()[0], vec![0, 0, 0, 1]);
    }

    #[test]
    fn extension_rejects_non_scattered() {
        let d = spread(2, 2, 2);
        let s = d.element(0).unwrap();
        assert_eq!(extend_scattered(&s, &d).unwrap_err(), Error::NotScattered);
    }

    #[test]
    fn greedy_meets_lower_bound() {
        for (p, r, t) in [(2, 3, 2), (2, 2, 3), (2, 2, 2), (3, 2, 2), (2, 4, 2), (2, 3, 3)] {
            let d = spread(p, r, t);
            let z = Subspace::zero(d.tower().base().clone(), r * t);
            let u = maximally_scatter(&z, &d).unwrap();
            let b = dim_bounds(r, t, p);
            assert!(u.dim() >= b.lower_maximal, "{r} {t} {p}");
            assert!(u.dim() <= b.upper_desarguesian);
            assert!(extend_scattered(&u, &d).unwrap().is_none());
        }
    }

    #[test]
    fn exhaustive_matches_brute_force() {
        for (r, t) in [(2, 2), (3, 2), (2, 3)] {
            let d = spread(2, r, t);
            let (m, w) = exhaustive_max_scattered(&d, 10_000_000).unwrap();
            assert_eq!(m, brute_max(&d));
            assert_eq!(m, r * t / 2);
            assert!(is_scattered(&w, &d).unwrap());
            assert_eq!(w.dim(), m);
        }
    }

    #[test]
    fn exhaustive_budget() {
        let d = spread(2, 3, 2);
        assert!(matches!(exhaustive_max_scattered(&d, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn bounds_examples() {
        for q in [2, 3, 4] {
            let b = dim_bounds(2, 2, q);
            assert_eq!((b.lower_maximal, b.upper_general, b.upper_desarguesian), (2, 2, 2));
            let b = dim_bounds(2, 3, q);
            assert_eq!((b.lower_maximal, b.upper_desarguesian), (3, 3));
        }
        let b = dim_bounds(3, 4, 2);
        assert_eq!(b.upper_desarguesian, 6);
        assert_eq!(b.lower_maximal, 5);
        assert_eq!(b.existence_lower, 6);
        assert_eq!(b.maximum_case, Some(MaximumCase::I));
        assert_eq!(dim_bounds(3, 6, 5).maximum_case, None);
        assert_eq!(dim_bounds(3, 6, 7).maximum_case, Some(MaximumCase::Iii));
        assert_eq!(dim_bounds(3, 3, 7).maximum_case, None);
    }

    #[test]
    fn bounds_ordered() {
        for r in 2..7 {
            for t in 2..7 {
                for q in [2, 3, 4, 5] {
                    let b = dim_bounds(r, t, q);
                    assert!(b.lower_maximal <= b.upper_desarguesian, "{r} {t} {q}");
                    assert!(b.upper_desarguesian <= b.upper_general);
                    assert!(b.existence_lower <= b.upper_desarguesian);
                }
            }
        }
    }

    #[test]
    fn existence_readings_can_differ() {
        // r = 6, t = 5: r' ranges over 1, 2, 3, 6
        let b = dim_bounds(6, 5, 3);
        assert_eq!(b.existence_max_product, 15);
        assert_eq!(b.existence_largest_divisor, 12);
        assert!(b.existence_ambiguous);
        assert_eq!(b.existence_lower, 15);
    }

    #[test]
    fn constructions_verify() {
        for (p, r, t) in [(2, 2, 6), (2, 3, 2), (2, 4, 3), (3, 2, 2), (3, 3, 2), (2, 2, 1)] {
            let d = spread(p, r, t);
            let u = construct_max_scattered(&d).unwrap();
            assert_eq!(u.dim(), r * t / 2);
            assert!(analyze(&u, &d).unwrap().is_scattered);
        }
        assert!(matches!(construct_max_scattered(&spread(2, 3, 3)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pair_construction_is_the_frobenius_graph() {
        let d = spread(2, 2, 3);
        let u = construct_max_scattered(&d).unwrap();
        let top = d.top_field();
        let graph = Subspace::span(
            d.tower().base().clone(),
            6,
            &top.elements().map(|a| d.reduction().phi(&[a, top.mul(a, a)]).unwrap()).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(u, graph);
    }
}
