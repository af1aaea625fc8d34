//! Splashes of the GF(q)-subgeometry of PG(r-1, q^n) on a line.
//!
//! The subgeometry is the set of GF(q)-rational points, optionally moved by
//! a frame matrix `A` (points `A·x`). Its hyperplanes are `a·(A⁻¹y) = 0`
//! for rational `a`, and each one meets the line `⟨P, Q⟩` in the point
//! `(a·Q)P - (a·P)Q`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::gf::Elem;
use crate::linalg::{dot, mat_inverse, mat_rank, mat_vec, projective_points, subspaces, ProjectivePoint, Subspace};
use crate::spread::DesarguesianSpread;
use crate::{Error, FieldTower, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SplashKind {
    /// The line misses the subgeometry.
    External,
    /// The line meets the subgeometry in one point.
    Tangent,
    /// The line meets the subgeometry in a subline; the splash is that subline.
    Secant,
}

impl SplashKind {
    pub fn name(self) -> &'static str {
        match self {
            SplashKind::External => "external",
            SplashKind::Tangent => "tangent",
            SplashKind::Secant => "secant",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splash {
    pub kind: SplashKind,
    /// Points of the splash in PG(r-1, q^n) with the number of subgeometry
    /// hyperplanes through each.
    pub points: Vec<(ProjectivePoint, u64)>,
    /// The same points in the coordinates `(α, β) ↦ αP + βQ` of the line.
    pub line_points: Vec<ProjectivePoint>,
    /// Subgeometry hyperplanes containing the whole line (skipped).
    pub containing_hyperplanes: u64,
    /// Rational points of the subgeometry on the line.
    pub rational_points_on_line: u64,
}

fn subgeometry_coords(tower: &FieldTower, frame: Option<&[Vec<Elem>]>, v: &[Elem]) -> Result<Vec<Elem>> {
    match frame {
        None => Ok(v.to_vec()),
        Some(a) => {
            let inv = mat_inverse(tower.top(), a).ok_or(Error::InvalidInput("singular frame matrix".into()))?;
            Ok(mat_vec(tower.top(), &inv, v))
        }
    }
}

/// The splash of the (framed) subgeometry on the line `⟨p, q⟩`.
pub fn splash(tower: &FieldTower, frame: Option<&[Vec<Elem>]>, p: &[Elem], q: &[Elem]) -> Result<Splash> {
    let top = tower.top();
    let r = p.len();
    if q.len() != r {
        return Err(Error::DimensionMismatch { expected: r, found: q.len() });
    }
    if let Some(a) = frame {
        if a.len() != r || a.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch { expected: r, found: a.len() });
        }
    }
    let p = subgeometry_coords(tower, frame, p)?;
    let q = subgeometry_coords(tower, frame, q)?;
    if mat_rank(top, &[p.clone(), q.clone()]) != 2 {
        return Err(Error::InvalidInput("P and Q do not span a line".into()));
    }
    let base_order = tower.q();
    let mut rational_points_on_line = 0;
    for x in projective_points(base_order, r, u64::MAX)? {
        if mat_rank(top, &[p.clone(), q.clone(), x.coords().to_vec()]) == 2 {
            rational_points_on_line += 1;
        }
    }
    let kind = match rational_points_on_line {
        0 => SplashKind::External,
        1 => SplashKind::Tangent,
        _ => SplashKind::Secant,
    };

    let mut counts: BTreeMap<ProjectivePoint, u64> = BTreeMap::new();
    let mut containing = 0;
    for a in projective_points(base_order, r, u64::MAX)? {
        let aq = dot(top, a.coords(), &q);
        let ap = dot(top, a.coords(), &p);
        if aq == 0 && ap == 0 {
            containing += 1;
            continue;
        }
        let line = ProjectivePoint::normalize(top, &[aq, top.neg(ap)])?;
        *counts.entry(line).or_default() += 1;
    }
    let p_orig = match frame {
        None => p.clone(),
        Some(a) => mat_vec(top, a, &p),
    };
    let q_orig = match frame {
        None => q.clone(),
        Some(a) => mat_vec(top, a, &q),
    };
    let mut points = Vec::with_capacity(counts.len());
    let mut line_points = Vec::with_capacity(counts.len());
    for (lp, c) in counts {
        let (al, be) = (lp.coords()[0], lp.coords()[1]);
        let v: Vec<Elem> = p_orig.iter().zip(&q_orig).map(|(&x, &y)| top.add(top.mul(al, x), top.mul(be, y))).collect();
        points.push((ProjectivePoint::normalize(top, &v)?, c));
        line_points.push(lp);
    }
    Ok(Splash { kind, points, line_points, containing_hyperplanes: containing, rational_points_on_line })
}

/// The GF(q)-subspace `{(a·Q, -a·P) : a ∈ GF(q)^r}` of GF(q^n)^2 after field
/// reduction. Its linear set in PG(1, q^n) is the splash in line
/// coordinates.
pub fn splash_subspace(
    spread: &DesarguesianSpread,
    frame: Option<&[Vec<Elem>]>,
    p: &[Elem],
    q: &[Elem],
) -> Result<Subspace> {
    if spread.r() != 2 {
        return Err(Error::InvalidInput("splash subspace lives on a line (r = 2)".into()));
    }
    let tower = spread.tower();
    let top = tower.top();
    let p = subgeometry_coords(tower, frame, p)?;
    let q = subgeometry_coords(tower, frame, q)?;
    let rows: Vec<Vec<Elem>> =
        p.iter().zip(&q).map(|(&pi, &qi)| spread.reduction().phi(&[qi, top.neg(pi)])).collect::<Result<_>>()?;
    Subspace::span(tower.base().clone(), 2 * spread.t(), &rows)
}

/// First line of PG(r-1, q^n), in enumeration order, of the given kind,
/// as a pair of spanning points.
pub fn first_line_of_kind(
    tower: &FieldTower,
    r: usize,
    kind: SplashKind,
    budget: u64,
) -> Result<(Vec<Elem>, Vec<Elem>)> {
    for line in subspaces(tower.top().clone(), r, 2, budget)? {
        let (p, q) = (&line.basis()[0], &line.basis()[1]);
        if splash(tower, None, p, q)?.kind == kind {
            return Ok((p.clone(), q.clone()));
        }
    }
    Err(Error::StructureAbsent(alloc::format!("no {} line", kind.name())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linset::{is_scattered_linear_set, linear_set};
    use crate::theta;
    use alloc::vec;

    fn tower() -> FieldTower {
        FieldTower::new(2, 1, 3, None).unwrap()
    }

    #[test]
    fn external_splash_is_scattered() {
        let tw = tower();
        let (p, q) = first_line_of_kind(&tw, 3, SplashKind::External, 1_000_000).unwrap();
        let s = splash(&tw, None, &p, &q).unwrap();
        assert_eq!(s.points.len(), 7);
        assert!(s.points.iter().all(|&(_, c)| c == 1));
        let d = DesarguesianSpread::new(tw.clone(), 2).unwrap();
        let u = splash_subspace(&d, None, &p, &q).unwrap();
        assert_eq!(u.dim(), 3);
        let l = linear_set(&u, &d).unwrap();
        assert!(is_scattered_linear_set(&l));
        let from_linear_set: Vec<_> = l.points().cloned().collect();
        let mut from_splash = s.line_points.clone();
        from_splash.sort();
        let mut sorted = from_linear_set;
        sorted.sort();
        assert_eq!(sorted, from_splash);
    }

    #[test]
    fn tangent_point_has_maximal_count() {
        let tw = tower();
        let (p, q) = first_line_of_kind(&tw, 3, SplashKind::Tangent, 1_000_000).unwrap();
        let s = splash(&tw, None, &p, &q).unwrap();
        let (best, count) = s.points.iter().max_by_key(|(_, c)| *c).unwrap();
        assert_eq!(*count, theta(1, 2) as u64);
        assert!(best.coords().iter().all(|&c| c < 2));
        assert!(s.points.len() < 7);
    }

    #[test]
    fn secant_line_is_tagged() {
        let tw = tower();
        let s = splash(&tw, None, &[1, 0, 0], &[0, 1, 0]).unwrap();
        assert_eq!(s.kind, SplashKind::Secant);
        assert_eq!(s.rational_points_on_line, 3);
        assert_eq!(s.containing_hyperplanes, 1);
    }

    #[test]
    fn frame_moves_the_subgeometry() {
        let tw = tower();
        let (p, q) = first_line_of_kind(&tw, 3, SplashKind::External, 1_000_000).unwrap();
        let frame = vec![vec![2, 0, 0], vec![0, 3, 1], vec![0, 0, 5]];
        let top = tw.top();
        let pa = mat_vec(top, &frame, &p);
        let qa = mat_vec(top, &frame, &q);
        let plain = splash(&tw, None, &p, &q).unwrap();
        let framed = splash(&tw, Some(&frame), &pa, &qa).unwrap();
        assert_eq!(framed.kind, SplashKind::External);
        assert_eq!(framed.line_points, plain.line_points);
    }
}
