//! Exact linear algebra over a finite field.
//!
//! [`Subspace`] keeps its basis in reduced row echelon form, so two subspaces
//! are equal exactly when their stored bases are identical. Every producer of
//! subspaces in the crate goes through [`rref`].
//!
//! Vectors are `Vec<Elem>`; "lexicographic order" always means comparing
//! coordinates left to right with elements ordered by their index.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::hash::{Hash, Hasher};

use crate::gf::{Elem, Gf};
use crate::{check_budget, gaussian_binomial, pow_u128, theta, Error, Result};

/// Bring `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(f: &Gf, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).expect("nonzero pivot");
        if inv != 1 {
            for x in rows[r][c..].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                axpy(f, row, f.neg(factor), &pivot_row, c);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// `y += a * x` over the coordinates from `from` on.
#[inline]
fn axpy(f: &Gf, y: &mut [Elem], a: Elem, x: &[Elem], from: usize) {
    for (yi, &xi) in y[from..].iter_mut().zip(&x[from..]) {
        if xi != 0 {
            *yi = f.add(*yi, f.mul(a, xi));
        }
    }
}

pub fn mat_rank(f: &Gf, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{ y : M y = 0 }` for the matrix with the given rows and
/// `ncols` columns.
pub fn null_space(f: &Gf, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let mut out = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for fc in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; ncols];
        v[fc] = 1;
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = f.neg(row[fc]);
        }
        out.push(v);
    }
    out
}

pub fn mat_inverse(f: &Gf, m: &[Vec<Elem>]) -> Option<Vec<Vec<Elem>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut aug: Vec<Vec<Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| Elem::from(i == j)));
            row
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(f: &Gf, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![0; cols];
            for (k, &aik) in row.iter().enumerate() {
                if aik != 0 {
                    axpy(f, &mut out, aik, &b[k], 0);
                }
            }
            out
        })
        .collect()
}

pub fn mat_vec(f: &Gf, m: &[Vec<Elem>], v: &[Elem]) -> Vec<Elem> {
    m.iter().map(|row| dot(f, row, v)).collect()
}

pub fn dot(f: &Gf, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| if x == 0 || y == 0 { acc } else { f.add(acc, f.mul(x, y)) })
}

pub fn add_vectors(f: &Gf, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn sub_vectors(f: &Gf, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn scale_vector(f: &Gf, a: Elem, v: &[Elem]) -> Vec<Elem> {
    v.iter().map(|&x| f.mul(a, x)).collect()
}

/// The vector of GF(q)^n at position `index` in lexicographic order
/// (coordinate 0 is the most significant digit).
pub fn vector_from_index(q: u32, n: usize, mut index: u128) -> Vec<Elem> {
    let mut v = vec![0; n];
    for x in v.iter_mut().rev() {
        *x = (index % u128::from(q)) as Elem;
        index /= u128::from(q);
    }
    v
}

pub fn vector_index(q: u32, v: &[Elem]) -> u128 {
    v.iter().fold(0u128, |acc, &x| acc * u128::from(q) + u128::from(x))
}

/// All vectors of GF(q)^n in lexicographic order.
#[derive(Clone, Debug)]
pub struct Vectors {
    q: u32,
    n: usize,
    next: u128,
    end: u128,
}

impl Iterator for Vectors {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        if self.next >= self.end {
            return None;
        }
        let v = vector_from_index(self.q, self.n, self.next);
        self.next += 1;
        Some(v)
    }
}

pub fn vectors(q: u32, n: usize, budget: u64) -> Result<Vectors> {
    let end = pow_u128(u64::from(q), n as u32);
    check_budget(end, budget)?;
    Ok(Vectors { q, n, next: 0, end })
}

/// A point of PG(n-1, F): a nonzero vector scaled so its first nonzero
/// coordinate is 1. The derived order is lexicographic on coordinates,
/// which is also the enumeration order of [`projective_points`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint {
    coords: Vec<Elem>,
}

impl ProjectivePoint {
    pub fn normalize(f: &Gf, v: &[Elem]) -> Result<Self> {
        let lead = v.iter().position(|&x| x != 0).ok_or(Error::ZeroVector)?;
        let inv = f.inv(v[lead]).expect("nonzero");
        let coords = if inv == 1 { v.to_vec() } else { v.iter().map(|&x| f.mul(x, inv)).collect() };
        Ok(ProjectivePoint { coords })
    }

    /// Wrap coordinates that are already normalized.
    pub fn from_normalized(coords: Vec<Elem>) -> Result<Self> {
        match coords.iter().find(|&&x| x != 0) {
            Some(1) => Ok(ProjectivePoint { coords }),
            Some(_) => Err(Error::InvalidInput("point is not normalized".into())),
            None => Err(Error::ZeroVector),
        }
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Elem> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Position of this point in the enumeration order of PG(n-1, q).
    pub fn index(&self, q: u32) -> u128 {
        let n = self.coords.len();
        let lead = self.coords.iter().position(|&x| x != 0).expect("normalized point");
        // points whose lead is further right come first
        let before: u128 = (0..(n - 1 - lead)).map(|j| pow_u128(u64::from(q), j as u32)).sum();
        before + vector_index(q, &self.coords[lead + 1..])
    }

    pub fn from_index(q: u32, n: usize, mut index: u128) -> Option<Self> {
        for lead in (0..n).rev() {
            let tail = n - 1 - lead;
            let block = pow_u128(u64::from(q), tail as u32);
            if index < block {
                let mut coords = vec![0; n];
                coords[lead] = 1;
                coords[lead + 1..].copy_from_slice(&vector_from_index(q, tail, index));
                return Some(ProjectivePoint { coords });
            }
            index -= block;
        }
        None
    }
}

/// All points of PG(n-1, F) in lexicographic order.
#[derive(Clone, Debug)]
pub struct ProjectivePoints {
    q: u32,
    n: usize,
    next: u128,
    end: u128,
}

impl Iterator for ProjectivePoints {
    type Item = ProjectivePoint;

    fn next(&mut self) -> Option<ProjectivePoint> {
        if self.next >= self.end {
            return None;
        }
        let p = ProjectivePoint::from_index(self.q, self.n, self.next);
        self.next += 1;
        p
    }
}

/// Points of the projective space of GF(q)^n (so PG(n-1, q)).
pub fn projective_points(q: u32, n: usize, budget: u64) -> Result<ProjectivePoints> {
    let end = if n == 0 { 0 } else { theta(n as i64 - 1, u64::from(q)) };
    check_budget(end, budget)?;
    Ok(ProjectivePoints { q, n, next: 0, end })
}

/// A subspace of F^n with a canonical (reduced echelon) basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Arc<Gf>,
    ambient: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows == other.rows && *self.field == *other.field
    }
}

impl Eq for Subspace {}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.rows.len(), &self.rows).cmp(&(other.ambient, other.rows.len(), &other.rows))
    }
}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.rows.hash(state);
    }
}

impl Subspace {
    pub fn zero(field: Arc<Gf>, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Arc<Gf>, ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| (0..ambient).map(|j| Elem::from(i == j)).collect()).collect();
        Subspace { field, ambient, rows, pivots: (0..ambient).collect() }
    }

    /// The span of `vectors`, canonicalized.
    pub fn span<V: AsRef<[Elem]>>(field: Arc<Gf>, ambient: usize, vectors: &[V]) -> Result<Self> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            let v = v.as_ref();
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
            if v.iter().any(|&x| x >= field.order()) {
                return Err(Error::InvalidInput("coordinate outside the field".into()));
            }
            rows.push(v.to_vec());
        }
        let pivots = rref(&field, &mut rows);
        Ok(Subspace { field, ambient, rows, pivots })
    }

    /// Build from rows already in reduced echelon form.
    pub(crate) fn from_rref(field: Arc<Gf>, ambient: usize, rows: Vec<Vec<Elem>>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(rows.len(), pivots.len());
        Subspace { field, ambient, rows, pivots }
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `q^dim`.
    pub fn vector_count(&self) -> u128 {
        pow_u128(u64::from(self.field.order()), self.dim() as u32)
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        if *self.field != *other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Canonical representative of the coset `v + self`: the unique element
    /// of the coset that vanishes on every pivot column.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let mut out = v.to_vec();
        self.reduce_in_place(&mut out);
        out
    }

    pub(crate) fn reduce_in_place(&self, v: &mut [Elem]) {
        let f = &*self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                axpy(f, v, f.neg(c), row, p);
            }
        }
    }

    pub fn contains_vector(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        Ok(w.iter().all(|&x| x == 0))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        for row in &other.rows {
            if !self.contains_vector(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let mut rows: Vec<Vec<Elem>> = self.rows.iter().chain(&other.rows).cloned().collect();
        let pivots = rref(&self.field, &mut rows);
        Ok(Subspace { field: self.field.clone(), ambient: self.ambient, rows, pivots })
    }

    /// Intersection by the Zassenhaus algorithm.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let n = self.ambient;
        let mut m: Vec<Vec<Elem>> = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.rows {
            let mut row = r.clone();
            row.extend_from_slice(r);
            m.push(row);
        }
        for r in &other.rows {
            let mut row = r.clone();
            row.extend(core::iter::repeat(0).take(n));
            m.push(row);
        }
        let pivots = rref(&self.field, &mut m);
        let meet: Vec<Vec<Elem>> =
            m.into_iter().zip(pivots).filter(|&(_, p)| p >= n).map(|(row, _)| row[n..].to_vec()).collect();
        Subspace::span(self.field.clone(), n, &meet)
    }

    /// `self + <v>`.
    pub fn extended(&self, v: &[Elem]) -> Result<Subspace> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        let pivots = rref(&self.field, &mut rows);
        Ok(Subspace { field: self.field.clone(), ambient: self.ambient, rows, pivots })
    }

    /// The linear combination `sum coeffs[i] * basis[i]`.
    pub fn combination(&self, coeffs: &[Elem]) -> Vec<Elem> {
        let f = &*self.field;
        let mut v = vec![0; self.ambient];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if c != 0 {
                axpy(f, &mut v, c, row, 0);
            }
        }
        v
    }

    /// Every vector of the subspace, ordered lexicographically by its
    /// coefficient tuple; the first one is zero.
    pub fn vectors(&self) -> SubspaceVectors<'_> {
        SubspaceVectors { space: self, next: 0, end: self.vector_count() }
    }

    /// One normalized representative per 1-dimensional subspace.
    pub fn points(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        let q = self.field.order();
        let d = self.dim();
        let count = if d == 0 { 0 } else { theta(d as i64 - 1, u64::from(q)) };
        // normalized coefficient tuples give normalized vectors because the
        // basis is in reduced echelon form
        (0..count).map(move |i| {
            let c = ProjectivePoint::from_index(q, d, i).expect("in range");
            self.combination(c.coords())
        })
    }

    /// Subspace spanned by the first `k` basis rows.
    pub fn truncated(&self, k: usize) -> Subspace {
        let k = k.min(self.dim());
        Subspace {
            field: self.field.clone(),
            ambient: self.ambient,
            rows: self.rows[..k].to_vec(),
            pivots: self.pivots[..k].to_vec(),
        }
    }
}

/// Iterator returned by [`Subspace::vectors`].
pub struct SubspaceVectors<'a> {
    space: &'a Subspace,
    next: u128,
    end: u128,
}

impl Iterator for SubspaceVectors<'_> {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        if self.next >= self.end {
            return None;
        }
        let q = self.space.field.order();
        let coeffs = vector_from_index(q, self.space.dim(), self.next);
        self.next += 1;
        Some(self.space.combination(&coeffs))
    }
}

/// All `k`-dimensional subspaces of F^n: pivot sets in lexicographic order,
/// then the free entries of the echelon form in lexicographic order.
pub struct Subspaces {
    field: Arc<Gf>,
    n: usize,
    k: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    counter: u128,
    block: u128,
}

impl Subspaces {
    fn load_block(&mut self) {
        if let Some(p) = &self.pivots {
            self.free.clear();
            for (i, &pc) in p.iter().enumerate() {
                for c in pc + 1..self.n {
                    if !p.contains(&c) {
                        self.free.push((i, c));
                    }
                }
            }
            self.counter = 0;
            self.block = pow_u128(u64::from(self.field.order()), self.free.len() as u32);
        }
    }

    fn advance_pivots(&mut self) {
        let Some(p) = self.pivots.as_mut() else { return };
        let (n, k) = (self.n, self.k);
        let mut i = k;
        loop {
            if i == 0 {
                self.pivots = None;
                return;
            }
            i -= 1;
            if p[i] < n - k + i {
                p[i] += 1;
                for j in i + 1..k {
                    p[j] = p[j - 1] + 1;
                }
                break;
            }
        }
        self.load_block();
    }
}

impl Iterator for Subspaces {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            let pivots = self.pivots.as_ref()?.clone();
            if self.counter < self.block {
                let q = self.field.order();
                let vals = vector_from_index(q, self.free.len(), self.counter);
                self.counter += 1;
                let mut rows = vec![vec![0; self.n]; self.k];
                for (i, &pc) in pivots.iter().enumerate() {
                    rows[i][pc] = 1;
                }
                for (&(i, c), &v) in self.free.iter().zip(&vals) {
                    rows[i][c] = v;
                }
                return Some(Subspace::from_rref(self.field.clone(), self.n, rows, pivots));
            }
            self.advance_pivots();
        }
    }
}

pub fn subspaces(field: Arc<Gf>, n: usize, k: usize, budget: u64) -> Result<Subspaces> {
    let count = gaussian_binomial(n, k, u64::from(field.order()));
    check_budget(count, budget)?;
    let mut it = Subspaces {
        field,
        n,
        k,
        pivots: if k <= n { Some((0..k).collect()) } else { None },
        free: Vec::new(),
        counter: 0,
        block: 0,
    };
    it.load_block();
    Ok(it)
}
