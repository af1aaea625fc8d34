//! Field reduction and the Desarguesian spread.
//!
//! `φ: GF(q^t)^r → GF(q)^{rt}` writes each coordinate in the tower's
//! `q_basis`. The spread element of a point `⟨v⟩` of PG(r-1, q^t) is
//! `φ(GF(q^t)·v)`. Elements are never stored: a vector is classified by
//! applying `φ⁻¹` and normalizing over GF(q^t).

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{Elem, FieldTower, Gf};
use crate::linalg::{vector_from_index, ProjectivePoint, Subspace};
use crate::{check_budget, pow_u128, Error, Result, DEFAULT_BUDGET};

/// A partition of the nonzero vectors of GF(q)^n into subspaces of equal
/// dimension, addressed by element index.
pub trait Spread {
    /// GF(q), the field of the ambient vector space.
    fn field(&self) -> &Arc<Gf>;
    fn ambient_dim(&self) -> usize;
    fn element_dim(&self) -> usize;
    fn element_count(&self) -> u128;
    fn element(&self, index: u64) -> Result<Subspace>;
    /// Index of the unique element containing the nonzero vector `v`.
    fn classify_index(&self, v: &[Elem]) -> Result<u64>;
    /// Enumeration budget for operations driven by this spread.
    fn budget(&self) -> u64;
    /// `(r, t, q)` when the spread is Desarguesian.
    fn desarguesian_params(&self) -> Option<(usize, usize, u32)> {
        None
    }
}

/// The GF(q)-isomorphism `φ: GF(q^t)^r → GF(q)^{rt}`.
#[derive(Clone, Debug)]
pub struct FieldReduction {
    tower: FieldTower,
    r: usize,
}

impl FieldReduction {
    pub fn new(tower: FieldTower, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("r must be >= 1".into()));
        }
        Ok(FieldReduction { tower, r })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        self.tower.t()
    }

    pub fn q(&self) -> u32 {
        self.tower.q()
    }

    /// `rt`.
    pub fn ambient_dim(&self) -> usize {
        self.r * self.tower.t()
    }

    pub fn phi(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.r {
            return Err(Error::DimensionMismatch { expected: self.r, found: v.len() });
        }
        let t = self.t();
        let mut out = vec![0; self.r * t];
        for (chunk, &x) in out.chunks_mut(t).zip(v) {
            self.tower.coords_into(x, chunk);
        }
        Ok(out)
    }

    pub fn phi_inv(&self, w: &[Elem]) -> Result<Vec<Elem>> {
        if w.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: w.len() });
        }
        Ok(w.chunks(self.t()).map(|c| self.tower.from_coords_unchecked(c)).collect())
    }

    /// The spread element `φ({λv : λ ∈ GF(q^t)})` of the point `x`.
    pub fn field_reduce(&self, x: &ProjectivePoint) -> Result<Subspace> {
        if x.len() != self.r {
            return Err(Error::DimensionMismatch { expected: self.r, found: x.len() });
        }
        let top = self.tower.top();
        let rows: Vec<Vec<Elem>> = self
            .tower
            .q_basis()
            .iter()
            .map(|&b| {
                let scaled: Vec<Elem> = x.coords().iter().map(|&c| top.mul(b, c)).collect();
                self.phi(&scaled).expect("length checked")
            })
            .collect();
        Subspace::span(self.tower.base().clone(), self.ambient_dim(), &rows)
    }

    /// The point of PG(r-1, q^t) whose spread element contains `w`.
    pub fn classify(&self, w: &[Elem]) -> Result<ProjectivePoint> {
        let v = self.phi_inv(w)?;
        ProjectivePoint::normalize(self.tower.top(), &v)
    }
}

/// The Desarguesian t-spread `D_{r,t,q}` of GF(q)^{rt}.
#[derive(Clone, Debug)]
pub struct DesarguesianSpread {
    reduction: FieldReduction,
    budget: u64,
}

/// Outcome of [`DesarguesianSpread::verify_partition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub element_count: u128,
    pub nonzero_vectors: u128,
    /// Every element has dimension t.
    pub element_dims_ok: bool,
    /// Every nonzero vector is classified to exactly one element, and each
    /// element receives exactly q^t - 1 vectors.
    pub partition_ok: bool,
    /// `v ∈ field_reduce(classify(v))` for all nonzero `v`.
    pub inverse_ok: bool,
}

impl PartitionReport {
    pub fn ok(&self) -> bool {
        self.element_dims_ok && self.partition_ok && self.inverse_ok
    }
}

impl DesarguesianSpread {
    pub fn new(tower: FieldTower, r: usize) -> Result<Self> {
        Ok(DesarguesianSpread { reduction: FieldReduction::new(tower, r)?, budget: DEFAULT_BUDGET })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn reduction(&self) -> &FieldReduction {
        &self.reduction
    }

    pub fn tower(&self) -> &FieldTower {
        self.reduction.tower()
    }

    pub fn r(&self) -> usize {
        self.reduction.r()
    }

    pub fn t(&self) -> usize {
        self.reduction.t()
    }

    pub fn q(&self) -> u32 {
        self.reduction.q()
    }

    pub fn top_field(&self) -> &Arc<Gf> {
        self.tower().top()
    }

    pub fn field_reduce(&self, x: &ProjectivePoint) -> Result<Subspace> {
        self.reduction.field_reduce(x)
    }

    pub fn classify(&self, w: &[Elem]) -> Result<ProjectivePoint> {
        self.reduction.classify(w)
    }

    pub fn point(&self, index: u64) -> Result<ProjectivePoint> {
        ProjectivePoint::from_index(self.top_field().order(), self.r(), u128::from(index))
            .ok_or_else(|| Error::InvalidInput("spread element index out of range".into()))
    }

    pub fn point_index(&self, x: &ProjectivePoint) -> u64 {
        x.index(self.top_field().order()) as u64
    }

    /// Exhaustively checks the partition property over all nonzero vectors.
    pub fn verify_partition(&self) -> Result<PartitionReport> {
        let n = self.ambient_dim();
        let q = self.q();
        let total = pow_u128(u64::from(q), n as u32);
        let count = self.element_count();
        check_budget(total.saturating_add(count), self.budget)?;
        let t = self.t();
        let per_element = pow_u128(u64::from(q), t as u32) - 1;

        let mut hits = vec![0u64; count as usize];
        for i in 1..total {
            let v = vector_from_index(q, n, i);
            let idx = self.classify_index(&v)? as usize;
            hits[idx] += 1;
        }
        let partition_ok = hits.iter().all(|&h| u128::from(h) == per_element);

        let mut element_dims_ok = true;
        let mut inverse_ok = true;
        for idx in 0..count as u64 {
            let s = self.element(idx)?;
            element_dims_ok &= s.dim() == t;
            for v in s.vectors().skip(1) {
                inverse_ok &= self.classify_index(&v)? == idx;
            }
        }
        Ok(PartitionReport {
            element_count: count,
            nonzero_vectors: total - 1,
            element_dims_ok,
            partition_ok,
            inverse_ok,
        })
    }
}

impl Spread for DesarguesianSpread {
    fn field(&self) -> &Arc<Gf> {
        self.tower().base()
    }

    fn ambient_dim(&self) -> usize {
        self.reduction.ambient_dim()
    }

    fn element_dim(&self) -> usize {
        self.t()
    }

    /// (q^{rt} - 1)/(q^t - 1), the number of points of PG(r-1, q^t).
    fn element_count(&self) -> u128 {
        let qt = pow_u128(u64::from(self.q()), self.t() as u32);
        let qrt = pow_u128(u64::from(self.q()), self.ambient_dim() as u32);
        (qrt - 1) / (qt - 1)
    }

    fn element(&self, index: u64) -> Result<Subspace> {
        self.field_reduce(&self.point(index)?)
    }

    fn classify_index(&self, v: &[Elem]) -> Result<u64> {
        Ok(self.point_index(&self.classify(v)?))
    }

    fn budget(&self) -> u64 {
        self.budget
    }

    fn desarguesian_params(&self) -> Option<(usize, usize, u32)> {
        Some((self.r(), self.t(), self.q()))
    }
}

/// The matrix of multiplication by the generator `x` of GF(q^t) in
/// `q_basis` coordinates: column `j` holds the coordinates of `x·b_j`.
pub fn companion_matrix(tower: &FieldTower) -> Vec<Vec<Elem>> {
    let t = tower.t();
    let top = tower.top();
    let x = if t >= 2 { tower.q() } else { top.neg(top.modulus()[0]) };
    let mut m = vec![vec![0; t]; t];
    for (j, &b) in tower.q_basis().iter().enumerate() {
        for (i, c) in tower.coords(top.mul(x, b)).into_iter().enumerate() {
            m[i][j] = c;
        }
    }
    m
}

/// The span of `(M^k u_1, …, M^k u_r)` for `k = 0..t`, where `M` is the
/// [`companion_matrix`] and each `u_i ∈ GF(q)^t`. This is the spread element
/// through `(u_1, …, u_r)` written without reference to `φ`.
pub fn orbit_span(tower: &FieldTower, blocks: &[Vec<Elem>]) -> Result<Subspace> {
    let t = tower.t();
    let base = tower.base();
    if let Some(b) = blocks.iter().find(|b| b.len() != t) {
        return Err(Error::DimensionMismatch { expected: t, found: b.len() });
    }
    let m = companion_matrix(tower);
    let mut current: Vec<Vec<Elem>> = blocks.to_vec();
    let mut rows = Vec::with_capacity(t);
    for _ in 0..t {
        rows.push(current.concat());
        current = current.iter().map(|u| crate::linalg::mat_vec(base, &m, u)).collect();
    }
    Subspace::span(base.clone(), blocks.len() * t, &rows)
}
