//! The affine design D(S) of a spread, translation hyperovals and
//! translation caps.
//!
//! Points are the vectors of GF(q)^n. Lines are the cosets `v + S_e` of
//! spread elements; two lines are parallel when they share the element. For
//! r = 2 the projective closure adds one point at infinity per element and
//! the line ℓ∞ through all of them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::gf::Elem;
use crate::linalg::{sub_vectors, vector_from_index, vector_index, Subspace};
use crate::scattered::point_weights;
use crate::spread::Spread;
use crate::{check_budget, pow_u128, Error, Result};

/// A line of D(S): spread element index and the canonical coset
/// representative (zero on the element's pivot columns).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbbLine {
    pub element: u64,
    pub offset: Vec<Elem>,
}

pub struct AbbSpace<'a, S: Spread + ?Sized> {
    spread: &'a S,
}

impl<'a, S: Spread + ?Sized> AbbSpace<'a, S> {
    pub fn new(spread: &'a S) -> Self {
        AbbSpace { spread }
    }

    pub fn spread(&self) -> &S {
        self.spread
    }

    pub fn point_count(&self) -> u128 {
        pow_u128(u64::from(self.spread.field().order()), self.spread.ambient_dim() as u32)
    }

    pub fn line_size(&self) -> u128 {
        pow_u128(u64::from(self.spread.field().order()), self.spread.element_dim() as u32)
    }

    pub fn line_count(&self) -> u128 {
        self.spread.element_count() * (self.point_count() / self.line_size())
    }

    fn check_point(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.spread.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.spread.ambient_dim(), found: v.len() });
        }
        Ok(())
    }

    /// The line through `v` in the parallel class of `element`.
    pub fn line_in_class(&self, element: u64, v: &[Elem]) -> Result<AbbLine> {
        self.check_point(v)?;
        Ok(AbbLine { element, offset: self.spread.element(element)?.reduce(v) })
    }

    pub fn line_through(&self, u: &[Elem], v: &[Elem]) -> Result<AbbLine> {
        self.check_point(u)?;
        self.check_point(v)?;
        let d = sub_vectors(self.spread.field(), v, u);
        if d.iter().all(|&c| c == 0) {
            return Err(Error::InvalidInput("a line needs two distinct points".into()));
        }
        self.line_in_class(self.spread.classify_index(&d)?, u)
    }

    pub fn on_line(&self, line: &AbbLine, v: &[Elem]) -> Result<bool> {
        self.check_point(v)?;
        Ok(self.spread.element(line.element)?.reduce(v) == line.offset)
    }

    pub fn parallel(&self, a: &AbbLine, b: &AbbLine) -> bool {
        a.element == b.element
    }

    /// `u, v, w` lie on a common line iff `v - u` and `w - u` lie in the
    /// same spread element.
    pub fn collinear(&self, u: &[Elem], v: &[Elem], w: &[Elem]) -> Result<bool> {
        self.check_point(u)?;
        self.check_point(v)?;
        self.check_point(w)?;
        if u == v || u == w || v == w {
            return Err(Error::InvalidInput("collinearity needs three distinct points".into()));
        }
        let f = self.spread.field();
        Ok(self.spread.classify_index(&sub_vectors(f, v, u))? == self.spread.classify_index(&sub_vectors(f, w, u))?)
    }

    /// Every line, class by class, with its points as vector indices.
    pub fn lines(&self, budget: u64) -> Result<Vec<(AbbLine, Vec<u128>)>> {
        check_budget(self.line_count().saturating_mul(self.line_size()), budget)?;
        let q = self.spread.field().order();
        let n = self.spread.ambient_dim();
        let mut out = Vec::with_capacity(self.line_count() as usize);
        for e in 0..self.spread.element_count() as u64 {
            let s = self.spread.element(e)?;
            let free: Vec<usize> = (0..n).filter(|c| !s.pivots().contains(c)).collect();
            let elems: Vec<Vec<Elem>> = s.vectors().collect();
            for i in 0..pow_u128(u64::from(q), free.len() as u32) {
                let digits = vector_from_index(q, free.len(), i);
                let mut rep = vec![0; n];
                for (&c, &d) in free.iter().zip(&digits) {
                    rep[c] = d;
                }
                let mut pts: Vec<u128> =
                    elems.iter().map(|x| vector_index(q, &crate::linalg::add_vectors(s.field(), &rep, x))).collect();
                pts.sort_unstable();
                out.push((AbbLine { element: e, offset: rep }, pts));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignReport {
    /// `(v, k, λ) = (q^n, q^t, 1)`.
    pub points: u128,
    pub line_size: u128,
    pub lambda: u32,
    pub lines: u128,
    pub pairs_covered_once: bool,
    /// Lines of each parallel class partition the points.
    pub parallel_classes_ok: bool,
    /// Through each point off a line there is exactly one parallel line,
    /// and it is disjoint from the first.
    pub antiflag_ok: bool,
}

impl DesignReport {
    pub fn ok(&self) -> bool {
        self.pairs_covered_once && self.parallel_classes_ok && self.antiflag_ok
    }
}

/// Exhaustive check of the 2-(q^n, q^t, 1) design axioms with parallelism.
pub fn design_check<S: Spread + ?Sized>(space: &AbbSpace<'_, S>, budget: u64) -> Result<DesignReport> {
    let p = space.point_count();
    check_budget(p.saturating_mul(p), budget)?;
    let lines = space.lines(budget)?;
    let classes = space.spread().element_count() as usize;
    let np = p as usize;

    // pair table over i < j, packed row by row
    let mut pair_hits = vec![0u8; np * np];
    // line_of[point * classes + element] = line id + 1
    let mut line_of = vec![0usize; np * classes];
    let mut parallel_classes_ok = true;
    for (id, (line, pts)) in lines.iter().enumerate() {
        for (a, &i) in pts.iter().enumerate() {
            let slot = &mut line_of[i as usize * classes + line.element as usize];
            parallel_classes_ok &= *slot == 0;
            *slot = id + 1;
            for &j in &pts[a + 1..] {
                let cell = &mut pair_hits[i as usize * np + j as usize];
                *cell = cell.saturating_add(1);
            }
        }
    }
    parallel_classes_ok &= line_of.iter().all(|&s| s != 0);
    let mut pairs_covered_once = true;
    for i in 0..np {
        for j in i + 1..np {
            pairs_covered_once &= pair_hits[i * np + j] == 1;
        }
    }

    let mut antiflag_ok = true;
    check_budget((lines.len() as u128).saturating_mul(p), budget)?;
    'lines: for (id, (line, pts)) in lines.iter().enumerate() {
        for x in 0..np {
            if pts.binary_search(&(x as u128)).is_ok() {
                continue;
            }
            let through: Vec<usize> = (0..classes)
                .map(|e| line_of[x * classes + e] - 1)
                .filter(|&m| lines[m].0.element == line.element)
                .collect();
            let ok = through.len() == 1
                && through[0] != id
                && lines[through[0]].1.iter().all(|y| pts.binary_search(y).is_err());
            if !ok {
                antiflag_ok = false;
                break 'lines;
            }
        }
    }
    Ok(DesignReport {
        points: p,
        line_size: space.line_size(),
        lambda: 1,
        lines: lines.len() as u128,
        pairs_covered_once,
        parallel_classes_ok,
        antiflag_ok,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcModel {
    /// In the projective translation plane π(S), r = 2.
    Hyperoval,
    /// In the affine space AG(r-1, 2^t).
    Cap,
}

impl ArcModel {
    pub fn name(self) -> &'static str {
        match self {
            ArcModel::Hyperoval => "hyperoval",
            ArcModel::Cap => "cap",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArcPoint {
    Affine(Vec<Elem>),
    /// The point at infinity of a parallel class.
    Infinite(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcCertificate {
    pub model: ArcModel,
    pub points: Vec<ArcPoint>,
    pub size: usize,
    pub lines_checked: u128,
    pub max_collinear: usize,
}

impl ArcCertificate {
    pub fn no_three_collinear(&self) -> bool {
        self.max_collinear <= 2
    }
}

/// The set `U ∪ {∞_e : S_e ∩ U = 0}` in π(S), with the largest number of
/// its points on any line. No preconditions on `U`.
pub fn translation_arc<S: Spread + ?Sized>(u: &Subspace, space: &AbbSpace<'_, S>) -> Result<ArcCertificate> {
    let spread = space.spread();
    let hit = point_weights(u, spread)?;
    let infinite: Vec<u64> = (0..spread.element_count() as u64).filter(|e| !hit.contains_key(e)).collect();
    let vectors: Vec<Vec<Elem>> = u.vectors().collect();
    check_budget(space.line_count().saturating_mul(vectors.len() as u128), spread.budget())?;

    let lines = space.lines(spread.budget())?;
    let mut max_collinear = infinite.len();
    for (line, _) in &lines {
        let s = spread.element(line.element)?;
        let affine = vectors.iter().filter(|v| s.reduce(v) == line.offset).count();
        let at_infinity = usize::from(infinite.binary_search(&line.element).is_ok());
        max_collinear = max_collinear.max(affine + at_infinity);
    }
    let points: Vec<ArcPoint> =
        vectors.into_iter().map(ArcPoint::Affine).chain(infinite.into_iter().map(ArcPoint::Infinite)).collect();
    Ok(ArcCertificate {
        model: ArcModel::Hyperoval,
        size: points.len(),
        points,
        lines_checked: lines.len() as u128 + 1,
        max_collinear,
    })
}

/// A hyperoval of π(S) from a t-dimensional scattered `U` w.r.t. a t-spread
/// of GF(2)^{2t}.
pub fn translation_hyperoval<S: Spread + ?Sized>(u: &Subspace, space: &AbbSpace<'_, S>) -> Result<ArcCertificate> {
    let spread = space.spread();
    let t = spread.element_dim();
    if spread.field().order() != 2 || spread.ambient_dim() != 2 * t {
        return Err(Error::InvalidInput("hyperovals need q = 2 and r = 2".into()));
    }
    if u.dim() != t {
        return Err(Error::DimensionMismatch { expected: t, found: u.dim() });
    }
    if point_weights(u, spread)?.values().any(|&w| w > 1) {
        return Err(Error::NotScattered);
    }
    let cert = translation_arc(u, space)?;
    let infinite = cert.points.iter().filter(|p| matches!(p, ArcPoint::Infinite(_))).count();
    if infinite != 2 {
        return Err(Error::InvariantViolated("exactly two points at infinity".into()));
    }
    if cert.size != (1 << t) + 2 || !cert.no_three_collinear() {
        return Err(Error::InvariantViolated("hyperoval".into()));
    }
    Ok(cert)
}

/// Largest number of points of `set` on one line, by pairs.
fn max_on_a_line<S: Spread + ?Sized>(set: &[Vec<Elem>], space: &AbbSpace<'_, S>) -> Result<(usize, u128)> {
    let mut pairs: BTreeMap<AbbLine, u128> = BTreeMap::new();
    for (i, u) in set.iter().enumerate() {
        for v in &set[i + 1..] {
            *pairs.entry(space.line_through(u, v)?).or_default() += 1;
        }
    }
    let mut best = set.len().min(1);
    for &c in pairs.values() {
        // c = k(k-1)/2
        let mut k = 2usize;
        while ((k * (k - 1) / 2) as u128) < c {
            k += 1;
        }
        best = best.max(k);
    }
    Ok((best, pairs.len() as u128))
}

/// The vectors of a scattered `U` as a cap of AG(r-1, 2^t).
pub fn translation_cap<S: Spread + ?Sized>(u: &Subspace, space: &AbbSpace<'_, S>) -> Result<ArcCertificate> {
    let spread = space.spread();
    if spread.field().order() != 2 {
        return Err(Error::InvalidInput("caps need q = 2".into()));
    }
    if spread.element_dim() < 2 {
        return Err(Error::InvalidInput("caps need t > 1".into()));
    }
    if point_weights(u, spread)?.values().any(|&w| w > 1) {
        return Err(Error::NotScattered);
    }
    let set: Vec<Vec<Elem>> = u.vectors().collect();
    let (max_collinear, lines_checked) = if set.len() <= 64 {
        let mut worst = set.len().min(2);
        let mut triples = 0u128;
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                for k in j + 1..set.len() {
                    triples += 1;
                    if space.collinear(&set[i], &set[j], &set[k])? {
                        worst = 3;
                    }
                }
            }
        }
        (worst, triples)
    } else {
        check_budget((set.len() as u128).pow(2), spread.budget())?;
        max_on_a_line(&set, space)?
    };
    if max_collinear > 2 {
        return Err(Error::InvariantViolated("cap has three collinear points".into()));
    }
    Ok(ArcCertificate {
        model: ArcModel::Cap,
        size: set.len(),
        points: set.into_iter().map(ArcPoint::Affine).collect(),
        lines_checked,
        max_collinear,
    })
}

/// Whether the vector set of `u` has no three collinear points, without
/// reference to scatteredness.
pub fn is_cap<S: Spread + ?Sized>(u: &Subspace, space: &AbbSpace<'_, S>) -> Result<bool> {
    let set: Vec<Vec<Elem>> = u.vectors().collect();
    Ok(max_on_a_line(&set, space)?.0 <= 2)
}

/// Distinct parallel classes met by the differences of a point set.
pub fn directions<S: Spread + ?Sized>(set: &[Vec<Elem>], space: &AbbSpace<'_, S>) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for (i, u) in set.iter().enumerate() {
        for v in &set[i + 1..] {
            out.insert(space.line_through(u, v)?.element);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{subspaces, vectors};
    use crate::scattered::{construct_max_scattered, is_scattered};
    use crate::{DesarguesianSpread, FieldTower};

    fn spread(p: u32, r: usize, t: usize) -> DesarguesianSpread {
        DesarguesianSpread::new(FieldTower::new(p, 1, t, None).unwrap(), r).unwrap()
    }

    #[test]
    fn collinearity_examples() {
        let d = spread(2, 2, 2);
        let space = AbbSpace::new(&d);
        let s = d.element(1).unwrap();
        let s2 = d.element(2).unwrap();
        let u = vec![1, 0, 1, 1];
        let add = |a: &[Elem], b: &[Elem]| crate::linalg::add_vectors(d.field(), a, b);
        let (a, b) = (&s.basis()[0], &s.basis()[1]);
        assert!(space.collinear(&u, &add(&u, a), &add(&u, b)).unwrap());
        assert!(!space.collinear(&u, &add(&u, a), &add(&u, &s2.basis()[0])).unwrap());
        assert!(space.collinear(&u, &u, &add(&u, a)).is_err());
    }

    #[test]
    fn collinearity_agrees_with_lines() {
        let d = spread(2, 2, 2);
        let space = AbbSpace::new(&d);
        let lines = space.lines(1_000_000).unwrap();
        assert_eq!(lines.len(), 20);
        let pts: Vec<Vec<Elem>> = vectors(2, 4, 100).unwrap().collect();
        for i in 0..16 {
            for j in i + 1..16 {
                for k in j + 1..16 {
                    let on_common = lines
                        .iter()
                        .any(|(_, l)| l.contains(&(i as u128)) && l.contains(&(j as u128)) && l.contains(&(k as u128)));
                    assert_eq!(space.collinear(&pts[i], &pts[j], &pts[k]).unwrap(), on_common);
                }
            }
        }
    }

    #[test]
    fn designs() {
        for (p, r, t, points, lines) in [(2, 2, 2, 16, 20), (2, 3, 2, 64, 336), (2, 1, 3, 8, 1), (3, 2, 2, 81, 90)] {
            let d = spread(p, r, t);
            let rep = design_check(&AbbSpace::new(&d), 10_000_000).unwrap();
            assert_eq!((rep.points, rep.lines), (points, lines));
            assert!(rep.ok(), "{r} {t} {p}");
        }
    }

    #[test]
    fn hyperovals() {
        for (t, size, lines) in [(2, 6, 21), (3, 10, 73), (4, 18, 273)] {
            let d = spread(2, 2, t);
            let u = construct_max_scattered(&d).unwrap();
            let cert = translation_hyperoval(&u, &AbbSpace::new(&d)).unwrap();
            assert_eq!((cert.size, cert.lines_checked), (size, lines));
            assert_eq!(cert.max_collinear, 2);
        }
    }

    #[test]
    fn hyperoval_iff_scattered() {
        for t in [2, 3] {
            let d = spread(2, 2, t);
            let space = AbbSpace::new(&d);
            for u in subspaces(d.field().clone(), 2 * t, t, 100_000).unwrap() {
                let cert = translation_arc(&u, &space).unwrap();
                let hyperoval = cert.no_three_collinear() && cert.size == (1 << t) + 2;
                assert_eq!(hyperoval, is_scattered(&u, &d).unwrap());
            }
        }
    }

    #[test]
    fn caps() {
        let d = spread(2, 3, 2);
        let space = AbbSpace::new(&d);
        let u = construct_max_scattered(&d).unwrap();
        let cert = translation_cap(&u, &space).unwrap();
        assert_eq!((cert.size, cert.lines_checked, cert.max_collinear), (8, 56, 2));
        let line = Subspace::span(d.field().clone(), 6, &[u.basis()[0].clone()]).unwrap();
        assert_eq!(translation_cap(&line, &space).unwrap().size, 2);
        for w in subspaces(d.field().clone(), 6, 3, 100_000).unwrap() {
            assert_eq!(is_cap(&w, &space).unwrap(), is_scattered(&w, &d).unwrap());
        }
    }

    #[test]
    fn large_cap_uses_line_scan() {
        let d = spread(2, 4, 3);
        let u = construct_max_scattered(&d).unwrap();
        let cert = translation_cap(&u, &AbbSpace::new(&d)).unwrap();
        assert_eq!(cert.size, 64);
        let d = spread(2, 4, 4);
        let u = construct_max_scattered(&d).unwrap();
        let cert = translation_cap(&u, &AbbSpace::new(&d)).unwrap();
        assert_eq!(cert.size, 256);
        assert_eq!(cert.lines_checked, 256 * 255 / 2);
    }
}
