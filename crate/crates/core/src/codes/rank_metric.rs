//! Rank-metric codes of t×t matrices over GF(q).

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::gf::Elem;
use crate::linalg::{mat_rank, sub_vectors};
use crate::spread::DesarguesianSpread;
use crate::{check_budget, pow_u128, Error, FieldTower, Result, Subspace};

pub type Matrix = Vec<Vec<Elem>>;

/// `f(x) = Σ c_i x^{q^i}` over GF(q^t).
#[derive(Clone, Debug)]
pub struct LinearizedPolynomial {
    tower: FieldTower,
    coeffs: Vec<Elem>,
}

impl LinearizedPolynomial {
    pub fn new(tower: &FieldTower, coeffs: &[Elem]) -> Result<Self> {
        let t = tower.t();
        if coeffs.len() > t {
            return Err(Error::InvalidInput("more than t coefficients".into()));
        }
        if coeffs.iter().any(|&c| c >= tower.top().order()) {
            return Err(Error::InvalidInput("coefficient outside GF(q^t)".into()));
        }
        let mut c = coeffs.to_vec();
        c.resize(t, 0);
        Ok(LinearizedPolynomial { tower: tower.clone(), coeffs: c })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let top = self.tower.top();
        self.coeffs
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &c)| top.add(acc, top.mul(c, self.tower.frobenius(x, i as u32))))
    }

    /// `M[i][j] = coords(f(b_j))[i]` in the tower's `q_basis`.
    pub fn matrix(&self) -> Matrix {
        map_matrix(&self.tower, |x| self.eval(x))
    }

    /// `U_f = {(x, f(x))}` after field reduction, a t-dimensional subspace of
    /// GF(q)^{2t}.
    pub fn graph(&self, spread: &DesarguesianSpread) -> Result<Subspace> {
        if spread.r() != 2 || spread.tower().top() != self.tower.top() {
            return Err(Error::InvalidInput("graph lives in the spread D_{2,t,q} of the same tower".into()));
        }
        let rows: Vec<Vec<Elem>> =
            self.tower.q_basis().iter().map(|&b| spread.reduction().phi(&[b, self.eval(b)])).collect::<Result<_>>()?;
        Subspace::span(self.tower.base().clone(), 2 * self.tower.t(), &rows)
    }
}

fn map_matrix(tower: &FieldTower, g: impl Fn(Elem) -> Elem) -> Matrix {
    let t = tower.t();
    let mut m = vec![vec![0; t]; t];
    for (j, &b) in tower.q_basis().iter().enumerate() {
        for (i, c) in tower.coords(g(b)).into_iter().enumerate() {
            m[i][j] = c;
        }
    }
    m
}

#[derive(Clone, Debug)]
pub enum CodeSource {
    Explicit(Vec<Matrix>),
    /// `{x ↦ a x + b f(x) : a, b ∈ GF(q^t)}`, zero map included.
    Linearized(LinearizedPolynomial),
}

#[derive(Clone, Debug)]
pub struct RankMetricCode {
    tower: FieldTower,
    source: CodeSource,
    size: u128,
    linear: bool,
}

/// The code `{x ↦ a x + b f(x)}` for nonzero `f`.
pub fn mrd_from_poly(f: &LinearizedPolynomial) -> Result<RankMetricCode> {
    if f.is_zero() {
        return Err(Error::InvalidInput("f must be nonzero".into()));
    }
    let tower = f.tower().clone();
    let top = tower.top();
    // the code is spanned over GF(q) by x ↦ b_i x and x ↦ b_i f(x)
    let mut gens: Vec<Vec<Elem>> = Vec::with_capacity(2 * tower.t());
    for &b in tower.q_basis() {
        gens.push(map_matrix(&tower, |x| top.mul(b, x)).concat());
        gens.push(map_matrix(&tower, |x| top.mul(b, f.eval(x))).concat());
    }
    let dim = mat_rank(tower.base(), &gens);
    Ok(RankMetricCode {
        size: pow_u128(u64::from(tower.q()), dim as u32),
        tower,
        source: CodeSource::Linearized(f.clone()),
        linear: true,
    })
}

impl RankMetricCode {
    /// A code given by its codewords. Duplicates are removed; `linear` is a
    /// claim that the caller vouches for.
    pub fn explicit(tower: &FieldTower, codewords: Vec<Matrix>, linear: bool) -> Result<Self> {
        let t = tower.t();
        if codewords.iter().any(|m| m.len() != t || m.iter().any(|row| row.len() != t)) {
            return Err(Error::DimensionMismatch { expected: t, found: 0 });
        }
        let unique: BTreeSet<Matrix> = codewords.into_iter().collect();
        Ok(RankMetricCode {
            size: unique.len() as u128,
            tower: tower.clone(),
            source: CodeSource::Explicit(unique.into_iter().collect()),
            linear,
        })
    }

    /// All `q^{t²}` matrices.
    pub fn all_matrices(tower: &FieldTower, budget: u64) -> Result<Self> {
        let t = tower.t();
        let q = tower.q();
        let total = pow_u128(u64::from(q), (t * t) as u32);
        check_budget(total, budget)?;
        let words = (0..total)
            .map(|i| crate::linalg::vector_from_index(q, t * t, i).chunks(t).map(<[Elem]>::to_vec).collect())
            .collect();
        Self::explicit(tower, words, true)
    }

    pub fn q(&self) -> u32 {
        self.tower.q()
    }

    pub fn t(&self) -> usize {
        self.tower.t()
    }

    /// Number of distinct codewords.
    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    pub fn source(&self) -> &CodeSource {
        &self.source
    }

    /// Every codeword, possibly with repeats for the linearized family.
    pub fn codewords(&self, budget: u64) -> Result<Vec<Matrix>> {
        match &self.source {
            CodeSource::Explicit(words) => Ok(words.clone()),
            CodeSource::Linearized(f) => {
                let top = self.tower.top();
                let qt = u128::from(top.order());
                check_budget(qt * qt, budget)?;
                let mut out = Vec::with_capacity((qt * qt) as usize);
                for a in top.elements() {
                    for b in top.elements() {
                        out.push(map_matrix(&self.tower, |x| top.add(top.mul(a, x), top.mul(b, f.eval(x)))));
                    }
                }
                Ok(out)
            }
        }
    }
}

fn matrix_rank(tower: &FieldTower, m: &Matrix) -> usize {
    mat_rank(tower.base(), m)
}

/// Minimum rank distance `d` and whether `|C| = q^{t(t - d + 1)}`.
pub fn rank_distance(code: &RankMetricCode, budget: u64) -> Result<(usize, bool)> {
    let words = code.codewords(budget)?;
    let t = code.t();
    let mut d = usize::MAX;
    if code.is_linear() {
        for w in &words {
            let r = matrix_rank(&code.tower, w);
            if r > 0 {
                d = d.min(r);
            }
        }
    } else {
        let n = words.len() as u128;
        check_budget(n * n / 2, budget)?;
        let f = code.tower.base();
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                let diff: Matrix = a.iter().zip(b).map(|(x, y)| sub_vectors(f, x, y)).collect();
                d = d.min(matrix_rank(&code.tower, &diff));
            }
        }
    }
    if d == usize::MAX {
        return Err(Error::InvalidInput("code has no two distinct codewords".into()));
    }
    let bound = pow_u128(u64::from(code.q()), (t * (t - d + 1)) as u32);
    Ok((d, code.size() == bound))
}

/// `rank(x ↦ a x + b f(x)) ≥ t - 1` for all `(a, b) ≠ (0, 0)`.
pub fn rank_condition(f: &LinearizedPolynomial) -> bool {
    let tower = f.tower();
    let top = tower.top();
    let t = tower.t();
    top.elements().all(|a| {
        top.elements().all(|b| {
            (a == 0 && b == 0)
                || matrix_rank(tower, &map_matrix(tower, |x| top.add(top.mul(a, x), top.mul(b, f.eval(x))))) + 1 >= t
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::mat_vec;
    use crate::scattered::is_scattered;

    fn gf8() -> FieldTower {
        FieldTower::new(2, 1, 3, None).unwrap()
    }

    #[test]
    fn evaluation_is_q_linear() {
        let tw = FieldTower::new(3, 1, 2, None).unwrap();
        let top = tw.top();
        for coeffs in [[1, 0], [0, 1], [4, 7], [2, 5]] {
            let f = LinearizedPolynomial::new(&tw, &coeffs).unwrap();
            let m = f.matrix();
            for a in top.elements() {
                for b in top.elements() {
                    assert_eq!(f.eval(top.add(a, b)), top.add(f.eval(a), f.eval(b)));
                }
                for lambda in 0..3 {
                    assert_eq!(f.eval(top.mul(lambda, a)), top.mul(lambda, f.eval(a)));
                }
                assert_eq!(mat_vec(tw.base(), &m, &tw.coords(a)), tw.coords(f.eval(a)));
            }
        }
    }

    #[test]
    fn frobenius_code_is_mrd() {
        let tw = gf8();
        let f = LinearizedPolynomial::new(&tw, &[0, 1]).unwrap();
        let c = mrd_from_poly(&f).unwrap();
        assert_eq!(c.size(), 64);
        assert_eq!(c.codewords(1000).unwrap().len(), 64);
        assert_eq!(rank_distance(&c, 1_000_000).unwrap(), (2, true));
    }

    #[test]
    fn zero_polynomial_rejected() {
        let f = LinearizedPolynomial::new(&gf8(), &[]).unwrap();
        assert!(mrd_from_poly(&f).is_err());
    }

    #[test]
    fn multiplications_are_invertible() {
        let tw = gf8();
        let top = tw.top();
        for a in 1..8 {
            assert_eq!(matrix_rank(&tw, &map_matrix(&tw, |x| top.mul(a, x))), 3);
        }
    }

    #[test]
    fn full_matrix_space() {
        let tw = FieldTower::new(2, 1, 2, None).unwrap();
        let c = RankMetricCode::all_matrices(&tw, 1000).unwrap();
        assert_eq!(c.size(), 16);
        assert_eq!(rank_distance(&c, 1000).unwrap(), (1, true));
        let nonlinear = RankMetricCode::explicit(&tw, c.codewords(1000).unwrap(), false).unwrap();
        assert_eq!(rank_distance(&nonlinear, 1000).unwrap(), (1, true));
    }

    #[test]
    fn scalar_multiple_of_identity_collapses() {
        let tw = gf8();
        let f = LinearizedPolynomial::new(&tw, &[5]).unwrap();
        let c = mrd_from_poly(&f).unwrap();
        assert_eq!(c.size(), 8);
        let distinct: BTreeSet<Matrix> = c.codewords(1000).unwrap().into_iter().collect();
        assert_eq!(distinct.len(), 8);
        assert_eq!(rank_distance(&c, 1000).unwrap(), (3, true));
    }

    #[test]
    fn rank_condition_matches_scattered() {
        let tw = gf8();
        let d = DesarguesianSpread::new(tw.clone(), 2).unwrap();
        for c0 in 0..8 {
            for c1 in 0..8 {
                for c2 in 0..8 {
                    let f = LinearizedPolynomial::new(&tw, &[c0, c1, c2]).unwrap();
                    let u = f.graph(&d).unwrap();
                    assert_eq!(rank_condition(&f), is_scattered(&u, &d).unwrap());
                }
            }
        }
    }
}
