//! The pseudoregulus of a scattered linear set of rank 3n in PG(2n-1, q³).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::linalg::{ProjectivePoint, Subspace};
use crate::linset::{is_scattered_linear_set, LinearSet};
use crate::spread::DesarguesianSpread;
use crate::{check_budget, gaussian_binomial, pow_u128, theta, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoregulusResult {
    /// The (q²+q+1)-secant lines, as 2-dimensional subspaces over GF(q³).
    pub secants: Vec<Subspace>,
    /// The two (n-1)-spaces meeting every secant in one point.
    pub transversals: Vec<Subspace>,
    /// `line size → number of lines of PG(2n-1, q³)` meeting L in that many
    /// points.
    pub spectrum: BTreeMap<u64, u128>,
}

fn invariant(name: &str) -> Error {
    Error::InvariantViolated(name.into())
}

pub fn pseudoregulus(l: &LinearSet, spread: &DesarguesianSpread, budget: u64) -> Result<PseudoregulusResult> {
    if spread.t() != 3 || spread.r() % 2 != 0 || l.r() != spread.r() {
        return Err(Error::InvalidInput("needs PG(2n-1, q^3)".into()));
    }
    let r = spread.r();
    let n = r / 2;
    if l.rank() != 3 * n {
        return Err(Error::InvalidInput("rank must be 3n".into()));
    }
    if !is_scattered_linear_set(l) {
        return Err(Error::NotScattered);
    }
    let top = spread.top_field().clone();
    let q = u64::from(spread.q());
    let q3 = q * q * q;
    let pts: Vec<&ProjectivePoint> = l.points().collect();
    let m = pts.len() as u128;
    check_budget(m * m / 2, budget)?;

    // line -> number of unordered point pairs spanning it
    let mut pair_lines: BTreeMap<Subspace, u128> = BTreeMap::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let line = Subspace::span(top.clone(), r, &[a.coords(), b.coords()])?;
            *pair_lines.entry(line).or_default() += 1;
        }
    }
    let mut spectrum: BTreeMap<u64, u128> = BTreeMap::new();
    let mut secants = Vec::new();
    let mut lines_through: BTreeMap<&ProjectivePoint, u128> = BTreeMap::new();
    let full_secant = q * q + q + 1;
    for (line, &pairs) in &pair_lines {
        // s(s-1)/2 = pairs
        let mut s: u64 = 2;
        while u128::from(s) * u128::from(s - 1) / 2 < pairs {
            s += 1;
        }
        if u128::from(s) * u128::from(s - 1) / 2 != pairs {
            return Err(invariant("pair count is not triangular"));
        }
        if s != q + 1 && s != full_secant {
            return Err(invariant("line meets the linear set in a forbidden number of points"));
        }
        *spectrum.entry(s).or_default() += 1;
        if s == full_secant {
            secants.push(line.clone());
        }
        for p in &pts {
            if line.contains_vector(p.coords())? {
                *lines_through.entry(p).or_default() += 1;
            }
        }
    }
    let lines_per_point = theta(2 * n as i64 - 2, q3);
    let tangents: u128 = pts.iter().map(|p| lines_per_point - lines_through.get(p).copied().unwrap_or(0)).sum();
    let total_lines = gaussian_binomial(r, 2, q3);
    let zero = total_lines - tangents - pair_lines.len() as u128;
    if tangents > 0 {
        spectrum.insert(1, tangents);
    }
    if zero > 0 {
        spectrum.insert(0, zero);
    }

    let expected = (pow_u128(q3, n as u32) - 1) / u128::from(q3 - 1);
    if secants.len() as u128 != expected {
        return Err(invariant("number of secants"));
    }
    for (i, a) in secants.iter().enumerate() {
        for b in &secants[i + 1..] {
            if a.intersect(b)?.dim() != 0 {
                return Err(invariant("secants pairwise disjoint"));
            }
        }
    }
    for p in &pts {
        let on = secants.iter().filter(|s| s.contains_vector(p.coords()).unwrap_or(false)).count();
        if on != 1 {
            return Err(invariant("every point on exactly one secant"));
        }
    }

    let transversals = find_transversals(&secants, r, budget)?;
    if transversals.len() != 2 {
        return Err(Error::StructureAbsent(alloc::format!("{} transversal spaces, expected 2", transversals.len())));
    }
    Ok(PseudoregulusResult { secants, transversals, spectrum })
}

/// Spans of one point from each of `n` secants in direct sum, kept when they
/// meet every secant in exactly one point.
fn find_transversals(secants: &[Subspace], r: usize, budget: u64) -> Result<Vec<Subspace>> {
    let n = r / 2;
    let top = secants[0].field().clone();
    let mut chosen: Vec<&Subspace> = Vec::new();
    let mut acc = Subspace::zero(top.clone(), r);
    for s in secants {
        let next = acc.sum(s)?;
        if next.dim() == acc.dim() + 2 {
            chosen.push(s);
            acc = next;
        }
        if chosen.len() == n {
            break;
        }
    }
    if chosen.len() != n {
        return Err(Error::StructureAbsent("secants do not span the space".into()));
    }
    let per: Vec<Vec<Vec<u32>>> = chosen.iter().map(|s| s.points().collect()).collect();
    let combos = per.iter().fold(1u128, |a, p| a.saturating_mul(p.len() as u128));
    check_budget(combos.saturating_mul(secants.len() as u128), budget)?;

    let mut found = BTreeSet::new();
    let mut idx = alloc::vec![0usize; n];
    'outer: loop {
        let rows: Vec<&[u32]> = idx.iter().zip(&per).map(|(&i, p)| p[i].as_slice()).collect();
        let span = Subspace::span(top.clone(), r, &rows)?;
        let mut ok = true;
        for s in secants {
            if span.intersect(s)?.dim() != 1 {
                ok = false;
                break;
            }
        }
        if ok {
            found.insert(span);
        }
        for k in 0..n {
            idx[k] += 1;
            if idx[k] < per[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linset::linear_set;
    use crate::scattered::construct_max_scattered;
    use crate::FieldTower;

    #[test]
    fn pg3_q8() {
        let d = DesarguesianSpread::new(FieldTower::new(2, 1, 3, None).unwrap(), 4).unwrap();
        let u = construct_max_scattered(&d).unwrap();
        let l = linear_set(&u, &d).unwrap();
        assert_eq!(l.size(), 63);
        let res = pseudoregulus(&l, &d, 10_000_000).unwrap();
        assert_eq!(res.secants.len(), 9);
        assert_eq!(res.transversals.len(), 2);
        for t in &res.transversals {
            assert_eq!(t.dim(), 2);
        }
        assert_eq!(res.spectrum[&7], 9);
        let total: u128 = res.spectrum.values().sum();
        assert_eq!(total, gaussian_binomial(4, 2, 8));
        assert!(res.spectrum.keys().all(|k| [0, 1, 3, 7].contains(k)));
    }
}
