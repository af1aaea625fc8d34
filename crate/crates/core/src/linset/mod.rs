//! GF(q)-linear sets `B(U)` of PG(r-1, q^t).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::gf::Elem;
use crate::linalg::{mat_rank, null_space, projective_points, ProjectivePoint, Subspace};
use crate::scattered::point_weights;
use crate::spread::{DesarguesianSpread, Spread};
use crate::{check_budget, pow_u128, theta, Error, Result};

pub mod pseudoregulus;
pub mod splash;

pub use pseudoregulus::{pseudoregulus, PseudoregulusResult};
pub use splash::{splash, splash_subspace, Splash, SplashKind};

/// The point set `{x : field_reduce(x) ∩ U ≠ 0}` with weights
/// `dim(field_reduce(x) ∩ U)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSet {
    r: usize,
    t: usize,
    q: u32,
    subspace: Subspace,
    /// Sorted by point enumeration index.
    points: Vec<(ProjectivePoint, usize)>,
}

pub fn linear_set(u: &Subspace, spread: &DesarguesianSpread) -> Result<LinearSet> {
    let weights = point_weights(u, spread)?;
    let q = spread.q();
    let total: u128 = weights.values().map(|&w| pow_u128(u64::from(q), w as u32) - 1).sum();
    if total != u.vector_count() - 1 {
        return Err(Error::InvariantViolated("weight identity".into()));
    }
    let points = weights.into_iter().map(|(idx, w)| Ok((spread.point(idx)?, w))).collect::<Result<_>>()?;
    Ok(LinearSet { r: spread.r(), t: spread.t(), q, subspace: u.clone(), points })
}

impl LinearSet {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rank(&self) -> usize {
        self.subspace.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> impl Iterator<Item = &ProjectivePoint> {
        self.points.iter().map(|(p, _)| p)
    }

    pub fn weighted_points(&self) -> &[(ProjectivePoint, usize)] {
        &self.points
    }

    pub fn weight(&self, x: &ProjectivePoint) -> usize {
        self.points.iter().find(|(p, _)| p == x).map_or(0, |&(_, w)| w)
    }

    pub fn contains(&self, x: &ProjectivePoint) -> bool {
        self.weight(x) > 0
    }

    /// `weight → number of points`.
    pub fn weight_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &(_, w) in &self.points {
            *h.entry(w).or_default() += 1;
        }
        h
    }

    /// `(q^rank - 1)/(q - 1)`, the largest possible size for this rank.
    pub fn max_size(&self) -> u128 {
        theta(self.rank() as i64 - 1, u64::from(self.q))
    }
}

/// A linear set is scattered iff it has the maximal number of points.
pub fn is_scattered_linear_set(l: &LinearSet) -> bool {
    l.size() as u128 == l.max_size()
}

/// `β(x, y) = Σ x_a M[a][b] σ(y_b)` on GF(q^t)^r, where `σ` raises to the
/// power `q^frobenius_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesquilinearForm {
    pub matrix: Vec<Vec<Elem>>,
    pub frobenius_power: u32,
}

impl SesquilinearForm {
    /// The standard dot product.
    pub fn standard(r: usize) -> Self {
        let matrix = (0..r)
            .map(|i| {
                let mut row = vec![0; r];
                row[i] = 1;
                row
            })
            .collect();
        SesquilinearForm { matrix, frobenius_power: 0 }
    }

    /// Gram matrix of `Tr∘β` in the basis `φ(b_i e_a)` of GF(q)^{rt}.
    pub fn trace_gram(&self, spread: &DesarguesianSpread) -> Result<Vec<Vec<Elem>>> {
        let r = spread.r();
        let t = spread.t();
        if self.matrix.len() != r || self.matrix.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch { expected: r, found: self.matrix.len() });
        }
        let tower = spread.tower();
        let top = tower.top();
        let basis = tower.q_basis();
        let mut g = vec![vec![0; r * t]; r * t];
        for a in 0..r {
            for (i, &bi) in basis.iter().enumerate() {
                for b in 0..r {
                    for (j, &bj) in basis.iter().enumerate() {
                        let v = top.mul(top.mul(bi, self.matrix[a][b]), tower.frobenius(bj, self.frobenius_power));
                        g[a * t + i][b * t + j] = tower.trace(v);
                    }
                }
            }
        }
        if mat_rank(tower.base(), &g) != r * t {
            return Err(Error::DegenerateForm);
        }
        Ok(g)
    }
}

/// `{y : Tr β(u, y) = 0 for all u ∈ U}`.
pub fn perp(u: &Subspace, form: &SesquilinearForm, spread: &DesarguesianSpread) -> Result<Subspace> {
    let g = form.trace_gram(spread)?;
    perp_with(u, &g, spread)
}

/// `{x : Tr β(x, u) = 0 for all u ∈ U}`.
pub fn left_perp(u: &Subspace, form: &SesquilinearForm, spread: &DesarguesianSpread) -> Result<Subspace> {
    let g = form.trace_gram(spread)?;
    let n = g.len();
    let gt: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| g[j][i]).collect()).collect();
    perp_with(u, &gt, spread)
}

fn perp_with(u: &Subspace, g: &[Vec<Elem>], spread: &DesarguesianSpread) -> Result<Subspace> {
    let n = spread.ambient_dim();
    if u.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: u.ambient_dim() });
    }
    let f = spread.tower().base();
    let rows: Vec<Vec<Elem>> = u.basis().iter().map(|row| crate::linalg::mat_vec(f, &transpose(g), row)).collect();
    let perp = Subspace::span(f.clone(), n, &null_space(f, &rows, n))?;
    if perp.dim() + u.dim() != n {
        return Err(Error::InvariantViolated("dual rank relation".into()));
    }
    Ok(perp)
}

fn transpose(m: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let n = m.len();
    let k = m.first().map_or(0, Vec::len);
    (0..k).map(|j| (0..n).map(|i| m[i][j]).collect()).collect()
}

/// The linear set of `U^⊥` with respect to `Tr∘β`.
pub fn dual_linear_set(u: &Subspace, form: &SesquilinearForm, spread: &DesarguesianSpread) -> Result<LinearSet> {
    linear_set(&perp(u, form, spread)?, spread)
}

/// Intersection sizes of `L` with every GF(q)-subline of PG(1, q^t):
/// `size → number of sublines`. Fails if a size falls outside
/// `{0, …, min(q+1, rank)} ∪ {q+1}`.
pub fn subline_spectrum(l: &LinearSet, spread: &DesarguesianSpread, budget: u64) -> Result<BTreeMap<usize, u64>> {
    if spread.r() != 2 || l.r() != 2 {
        return Err(Error::InvalidInput("sublines need a projective line (r = 2)".into()));
    }
    let top = spread.top_field();
    let qt = top.order();
    let q = spread.q();
    let n_points = u128::from(qt) + 1;
    check_budget(n_points * n_points * n_points, budget)?;
    let points: Vec<ProjectivePoint> = projective_points(qt, 2, budget)?.collect();
    let members: BTreeSet<u64> = l.points().map(|p| spread.point_index(p)).collect();

    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut spectrum = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        for (j, qp) in points.iter().enumerate().skip(i + 1) {
            for rp in points.iter().skip(j + 1) {
                // rp = α·p + β·qp; rescale so that rp = p' + q'
                let (alpha, beta) = line_coefficients(top, p.coords(), qp.coords(), rp.coords());
                let u: Vec<Elem> = p.coords().iter().map(|&c| top.mul(alpha, c)).collect();
                let v: Vec<Elem> = qp.coords().iter().map(|&c| top.mul(beta, c)).collect();
                let mut sub: Vec<u64> = Vec::with_capacity(q as usize + 1);
                sub.push(spread.point_index(p));
                for lambda in 0..q {
                    let w: Vec<Elem> = u.iter().zip(&v).map(|(&a, &b)| top.add(top.mul(lambda, a), b)).collect();
                    sub.push(spread.point_index(&ProjectivePoint::normalize(top, &w)?));
                }
                sub.sort_unstable();
                if seen.contains(&sub) {
                    continue;
                }
                let size = sub.iter().filter(|x| members.contains(x)).count();
                *spectrum.entry(size).or_insert(0u64) += 1;
                seen.insert(sub);
            }
        }
    }
    let cap = (q as usize + 1).min(l.rank());
    if let Some(&bad) = spectrum.keys().find(|&&s| s > cap && s != q as usize + 1) {
        return Err(Error::InvariantViolated(alloc::format!("subline meets linear set in {bad} points")));
    }
    Ok(spectrum)
}

/// `(α, β)` with `r = α·p + β·q` for three points of a projective line.
fn line_coefficients(f: &crate::Gf, p: &[Elem], q: &[Elem], r: &[Elem]) -> (Elem, Elem) {
    let det = f.sub(f.mul(p[0], q[1]), f.mul(p[1], q[0]));
    let inv = f.inv(det).expect("distinct points");
    let alpha = f.mul(f.sub(f.mul(r[0], q[1]), f.mul(r[1], q[0])), inv);
    let beta = f.mul(f.sub(f.mul(p[0], r[1]), f.mul(p[1], r[0])), inv);
    (alpha, beta)
}
