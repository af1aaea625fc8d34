//! Exact arithmetic in GF(p^m) and the tower GF(q) ⊂ GF(q^t).
//!
//! A [`Gf`] is always an extension of degree `d` of an immediate subfield of
//! order `s` (for a prime field, `s = p` and `d = 1`). Elements are
//! coefficient vectors over that subfield packed into an [`Elem`] as
//! `sum c_i s^i`; because the subfield is itself packed the same way, the
//! index is also the base-`p` numeral of the element's GF(p)-coordinates, so
//! addition is digit-wise mod `p` at every level.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A field element, encoded as described in the crate docs.
pub type Elem = u32;

/// Largest field order the crate supports.
pub const MAX_ORDER: u32 = 1 << 16;
/// Fields up to this order carry a full multiplication table.
const TABLE_ORDER: u32 = 256;
const MAX_DEGREE: usize = 16;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
fn digit_add(p: u32, mut a: Elem, mut b: Elem) -> Elem {
    if p == 2 {
        return a ^ b;
    }
    let mut out = 0;
    let mut place = 1;
    while a != 0 || b != 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

#[inline]
fn digit_neg(p: u32, mut a: Elem) -> Elem {
    if p == 2 {
        return a;
    }
    let mut out = 0;
    let mut place = 1;
    while a != 0 {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out
}

/// A finite field GF(p^m), presented as a simple extension of a subfield.
#[derive(Clone, Debug)]
pub struct Gf {
    p: u32,
    order: u32,
    sub_order: u32,
    degree: usize,
    /// Monic defining polynomial over the subfield, low degree first.
    modulus: Vec<Elem>,
    /// Defining polynomial of the subfield over GF(p) (empty for a prime field).
    sub_modulus: Vec<Elem>,
    sub_mul: Vec<Elem>,
    mul_table: Option<Vec<Elem>>,
    inv_table: Vec<Elem>,
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.order == other.order
            && self.sub_order == other.sub_order
            && self.modulus == other.modulus
            && self.sub_modulus == other.sub_modulus
    }
}

impl Eq for Gf {}

impl Gf {
    /// The prime field GF(p), `p <= 251`.
    pub fn prime(p: u32) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > TABLE_ORDER {
            return Err(Error::Unsupported(format!("prime {p} > {TABLE_ORDER}")));
        }
        let mut sub_mul = vec![0; (p * p) as usize];
        for a in 0..p {
            for b in 0..p {
                sub_mul[(a * p + b) as usize] = (a * b) % p;
            }
        }
        let mut f = Gf {
            p,
            order: p,
            sub_order: p,
            degree: 1,
            modulus: vec![0, 1],
            sub_modulus: Vec::new(),
            sub_mul,
            mul_table: None,
            inv_table: Vec::new(),
        };
        f.finish_tables();
        Ok(f)
    }

    /// The extension `sub[x]/(modulus)`. The modulus is made monic and must
    /// be irreducible over `sub`.
    pub fn extension(sub: &Gf, modulus: &[Elem]) -> Result<Gf> {
        let mut m = trim(modulus.to_vec());
        if m.iter().any(|&c| c >= sub.order) {
            return Err(Error::InvalidInput(format!("polynomial coefficient outside GF({})", sub.order)));
        }
        if m.len() < 2 {
            return Err(Error::InvalidInput("defining polynomial must have degree >= 1".into()));
        }
        make_monic(sub, &mut m);
        let degree = m.len() - 1;
        if degree > MAX_DEGREE {
            return Err(Error::Unsupported(format!("extension degree {degree}")));
        }
        let order = u64::from(sub.order).pow(degree as u32);
        if order > u64::from(MAX_ORDER) {
            return Err(Error::Unsupported(format!("field order {order} > {MAX_ORDER}")));
        }
        let Some(sub_mul) = sub.mul_table.clone() else {
            return Err(Error::Unsupported(format!("subfield order {} > {TABLE_ORDER}", sub.order)));
        };
        if !is_irreducible(sub, &m)? {
            return Err(Error::Reducible);
        }
        let mut f = Gf {
            p: sub.p,
            order: order as u32,
            sub_order: sub.order,
            degree,
            modulus: m,
            sub_modulus: sub.modulus.clone(),
            sub_mul,
            mul_table: None,
            inv_table: Vec::new(),
        };
        f.finish_tables();
        Ok(f)
    }

    /// Extension of the given degree by the smallest irreducible polynomial.
    pub fn extension_default(sub: &Gf, degree: usize) -> Result<Gf> {
        let m = smallest_irreducible(sub, degree)?;
        Gf::extension(sub, &m)
    }

    fn finish_tables(&mut self) {
        if self.order <= TABLE_ORDER {
            let n = self.order as usize;
            let mut t = vec![0; n * n];
            for a in 0..self.order {
                for b in a..self.order {
                    let c = self.mul_poly(a, b);
                    t[a as usize * n + b as usize] = c;
                    t[b as usize * n + a as usize] = c;
                }
            }
            self.mul_table = Some(t);
        }
        let mut inv = vec![0; self.order as usize];
        for a in 1..self.order {
            inv[a as usize] = self.pow(a, u64::from(self.order) - 2);
        }
        self.inv_table = inv;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the immediate subfield this field is built over.
    pub fn subfield_order(&self) -> u32 {
        self.sub_order
    }

    /// Degree over the immediate subfield.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monic defining polynomial over the immediate subfield, low degree first.
    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        digit_add(self.p, a, b)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        digit_neg(self.p, a)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        digit_add(self.p, a, digit_neg(self.p, b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.mul_table {
            Some(t) => t[(a * self.order + b) as usize],
            None => self.mul_poly(a, b),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            None
        } else {
            Some(self.inv_table[a as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(s^i)` where `s` is the immediate subfield order.
    pub fn frobenius(&self, a: Elem, i: u32) -> Elem {
        let mut x = a;
        for _ in 0..(i as usize % self.degree) {
            x = self.pow(x, u64::from(self.sub_order));
        }
        x
    }

    /// Coefficients of `a` over the immediate subfield (length = degree).
    pub fn digits(&self, a: Elem) -> Vec<Elem> {
        let mut out = vec![0; self.degree];
        let mut a = a;
        for d in out.iter_mut() {
            *d = a % self.sub_order;
            a /= self.sub_order;
        }
        out
    }

    pub fn from_digits(&self, digits: &[Elem]) -> Elem {
        digits.iter().rev().fold(0, |acc, &d| acc * self.sub_order + d)
    }

    #[inline]
    fn sub_mul(&self, a: Elem, b: Elem) -> Elem {
        self.sub_mul[(a * self.sub_order + b) as usize]
    }

    fn mul_poly(&self, a: Elem, b: Elem) -> Elem {
        let s = self.sub_order;
        let d = self.degree;
        let mut ad = [0; MAX_DEGREE];
        let mut bd = [0; MAX_DEGREE];
        let (mut x, mut y) = (a, b);
        for i in 0..d {
            ad[i] = x % s;
            bd[i] = y % s;
            x /= s;
            y /= s;
        }
        let mut prod = [0; 2 * MAX_DEGREE];
        for i in 0..d {
            if ad[i] == 0 {
                continue;
            }
            for j in 0..d {
                if bd[j] != 0 {
                    prod[i + j] = digit_add(self.p, prod[i + j], self.sub_mul(ad[i], bd[j]));
                }
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..d {
                let m = self.modulus[j];
                if m != 0 {
                    let t = self.sub_mul(c, m);
                    prod[k - d + j] = digit_add(self.p, prod[k - d + j], digit_neg(self.p, t));
                }
            }
        }
        prod[..d].iter().rev().fold(0, |acc, &c| acc * s + c)
    }
}

fn trim(mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn make_monic(f: &Gf, m: &mut [Elem]) {
    let lead = *m.last().expect("nonempty");
    if lead != 1 {
        let li = f.inv(lead).expect("nonzero lead");
        for c in m.iter_mut() {
            *c = f.mul(*c, li);
        }
    }
}

/// Remainder of `a` modulo the monic polynomial `b` over `f`.
pub fn poly_rem(f: &Gf, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let c = *r.last().expect("nonempty");
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let t = f.mul(c, bj);
                r[shift + j] = f.sub(r[shift + j], t);
            }
        }
        r.pop();
    }
    trim(r)
}

/// Irreducibility over `f` by trial division with every monic polynomial of
/// degree at most `deg/2`.
pub fn is_irreducible(f: &Gf, g: &[Elem]) -> Result<bool> {
    let mut g = trim(g.to_vec());
    if g.len() < 2 {
        return Ok(false);
    }
    make_monic(f, &mut g);
    let d = g.len() - 1;
    let s = u64::from(f.order());
    let mut work: u128 = 0;
    for k in 1..=d / 2 {
        work += crate::pow_u128(s, k as u32);
    }
    crate::check_budget(work, crate::DEFAULT_BUDGET)?;
    for k in 1..=d / 2 {
        let count = s.pow(k as u32);
        for n in 0..count {
            let mut h = Vec::with_capacity(k + 1);
            let mut x = n;
            for _ in 0..k {
                h.push((x % s) as Elem);
                x /= s;
            }
            h.push(1);
            if poly_rem(f, &g, &h).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The smallest monic irreducible polynomial of the given degree over `f`,
/// ordering candidates lexicographically from the leading coefficient down
/// (equivalently by the integer `sum c_i s^i` of the lower coefficients).
pub fn smallest_irreducible(f: &Gf, degree: usize) -> Result<Vec<Elem>> {
    if degree == 0 {
        return Err(Error::InvalidInput("degree must be >= 1".into()));
    }
    let s = u64::from(f.order());
    let total = crate::pow_u128(s, degree as u32);
    for n in 0..total {
        let mut g = Vec::with_capacity(degree + 1);
        let mut x = n;
        for _ in 0..degree {
            g.push((x % u128::from(s)) as Elem);
            x /= u128::from(s);
        }
        g.push(1);
        if is_irreducible(f, &g)? {
            return Ok(g);
        }
    }
    Err(Error::InvariantViolated(format!("no irreducible of degree {degree}")))
}

/// GF(q) ⊂ GF(q^t) with q = p^e and a fixed GF(q)-basis of GF(q^t).
///
/// Base-field elements embed into the top field as constant polynomials,
/// so an index `c < q` denotes the same element in both fields.
#[derive(Clone, Debug)]
pub struct FieldTower {
    e: u32,
    t: usize,
    base: Arc<Gf>,
    top: Arc<Gf>,
    base_irreducible: Vec<Elem>,
    q_basis: Vec<Elem>,
    /// Maps power-basis coordinates to `q_basis` coordinates; `None` when
    /// `q_basis` is the power basis.
    basis_change: Option<Vec<Vec<Elem>>>,
}

/// Builder for [`FieldTower`] with optional overrides.
#[derive(Clone, Debug)]
pub struct TowerBuilder {
    p: u32,
    e: u32,
    t: usize,
    base_irreducible: Option<Vec<Elem>>,
    top_irreducible: Option<Vec<Elem>>,
    q_basis: Option<Vec<Elem>>,
}

impl TowerBuilder {
    pub fn base_irreducible(mut self, poly: Vec<Elem>) -> Self {
        self.base_irreducible = Some(poly);
        self
    }

    pub fn top_irreducible(mut self, poly: Vec<Elem>) -> Self {
        self.top_irreducible = Some(poly);
        self
    }

    pub fn q_basis(mut self, basis: Vec<Elem>) -> Self {
        self.q_basis = Some(basis);
        self
    }

    pub fn build(self) -> Result<FieldTower> {
        let TowerBuilder { p, e, t, base_irreducible, top_irreducible, q_basis } = self;
        if e == 0 || t == 0 {
            return Err(Error::InvalidInput("extension degrees must be >= 1".into()));
        }
        let prime = Gf::prime(p)?;
        let base = if e == 1 && base_irreducible.is_none() {
            prime.clone()
        } else {
            let poly = match base_irreducible {
                Some(poly) => poly,
                None => smallest_irreducible(&prime, e as usize)?,
            };
            if trim(poly.clone()).len() != e as usize + 1 {
                return Err(Error::InvalidInput(format!("base polynomial must have degree {e}")));
            }
            if e == 1 {
                prime.clone()
            } else {
                Gf::extension(&prime, &poly)?
            }
        };
        let top_poly = match top_irreducible {
            Some(poly) => {
                if trim(poly.clone()).len() != t + 1 {
                    return Err(Error::InvalidInput(format!("top polynomial must have degree {t}")));
                }
                poly
            }
            None => smallest_irreducible(&base, t)?,
        };
        let top = Gf::extension(&base, &top_poly)?;
        let base_irr = if e == 1 { vec![0, 1] } else { base.modulus().to_vec() };

        let (q_basis, basis_change) = match q_basis {
            None => {
                let q = base.order();
                let basis = (0..t as u32).map(|i| q.pow(i)).collect();
                (basis, None)
            }
            Some(basis) => {
                if basis.len() != t {
                    return Err(Error::DimensionMismatch { expected: t, found: basis.len() });
                }
                if basis.iter().any(|&b| b >= top.order()) {
                    return Err(Error::InvalidInput("basis element outside GF(q^t)".into()));
                }
                // column i holds the power-basis coordinates of basis[i]
                let mut m = vec![vec![0; t]; t];
                for (i, &b) in basis.iter().enumerate() {
                    for (j, d) in top.digits(b).into_iter().enumerate() {
                        m[j][i] = d;
                    }
                }
                let inv = crate::linalg::mat_inverse(&base, &m)
                    .ok_or_else(|| Error::InvalidInput("q_basis is not linearly independent".into()))?;
                (basis, Some(inv))
            }
        };
        Ok(FieldTower {
            e,
            t,
            base: Arc::new(base),
            top: Arc::new(top),
            base_irreducible: base_irr,
            q_basis,
            basis_change,
        })
    }
}

impl FieldTower {
    /// Tower with default base polynomial and an optional top polynomial
    /// (coefficients in GF(q), low degree first).
    pub fn new(p: u32, e: u32, t: usize, top_irreducible: Option<&[Elem]>) -> Result<FieldTower> {
        let mut b = FieldTower::builder(p, e, t);
        if let Some(poly) = top_irreducible {
            b = b.top_irreducible(poly.to_vec());
        }
        b.build()
    }

    pub fn builder(p: u32, e: u32, t: usize) -> TowerBuilder {
        TowerBuilder { p, e, t, base_irreducible: None, top_irreducible: None, q_basis: None }
    }

    pub fn p(&self) -> u32 {
        self.base.characteristic()
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn q(&self) -> u32 {
        self.base.order()
    }

    pub fn base(&self) -> &Arc<Gf> {
        &self.base
    }

    pub fn top(&self) -> &Arc<Gf> {
        &self.top
    }

    /// Defining polynomial of GF(q) over GF(p); `[0, 1]` when `e = 1`.
    pub fn base_irreducible(&self) -> &[Elem] {
        &self.base_irreducible
    }

    pub fn top_irreducible(&self) -> &[Elem] {
        self.top.modulus()
    }

    pub fn q_basis(&self) -> &[Elem] {
        &self.q_basis
    }

    /// `x^(q^i)`.
    pub fn frobenius(&self, x: Elem, i: u32) -> Elem {
        self.top.frobenius(x, i)
    }

    /// Tr(x) = sum_{i<t} x^{q^i}, as a GF(q) index.
    pub fn trace(&self, x: Elem) -> Elem {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.t {
            acc = self.top.add(acc, y);
            y = self.top.pow(y, u64::from(self.q()));
        }
        debug_assert!(acc < self.q());
        acc
    }

    /// N(x) = x^{(q^t - 1)/(q - 1)}, as a GF(q) index.
    pub fn norm(&self, x: Elem) -> Elem {
        let q = u64::from(self.q());
        let e = (q.pow(self.t as u32) - 1) / (q - 1);
        let n = self.top.pow(x, e);
        debug_assert!(n < self.q());
        n
    }

    /// Coordinates of `x` in `q_basis`.
    pub fn coords(&self, x: Elem) -> Vec<Elem> {
        let mut out = vec![0; self.t];
        self.coords_into(x, &mut out);
        out
    }

    pub fn coords_into(&self, x: Elem, out: &mut [Elem]) {
        let q = self.q();
        match &self.basis_change {
            None => {
                let mut x = x;
                for d in out.iter_mut() {
                    *d = x % q;
                    x /= q;
                }
            }
            Some(m) => {
                let digits = self.top.digits(x);
                for (i, d) in out.iter_mut().enumerate() {
                    let mut acc = 0;
                    for (j, &c) in digits.iter().enumerate() {
                        acc = self.base.add(acc, self.base.mul(m[i][j], c));
                    }
                    *d = acc;
                }
            }
        }
    }

    /// Inverse of [`coords`](Self::coords).
    pub fn from_coords(&self, coords: &[Elem]) -> Result<Elem> {
        if coords.len() != self.t {
            return Err(Error::DimensionMismatch { expected: self.t, found: coords.len() });
        }
        if coords.iter().any(|&c| c >= self.q()) {
            return Err(Error::InvalidInput("coordinate outside GF(q)".into()));
        }
        Ok(self.from_coords_unchecked(coords))
    }

    pub(crate) fn from_coords_unchecked(&self, coords: &[Elem]) -> Elem {
        match &self.basis_change {
            None => coords.iter().rev().fold(0, |acc, &c| acc * self.q() + c),
            Some(_) => coords.iter().zip(&self.q_basis).fold(0, |acc, (&c, &b)| self.top.add(acc, self.top.mul(c, b))),
        }
    }

    /// Whether a top-field element lies in GF(q).
    pub fn in_base(&self, x: Elem) -> bool {
        x < self.q()
    }
}

/// A field element bound to its field, with checked operations.
#[derive(Clone, Copy, Debug)]
pub struct FieldElement<'a> {
    field: &'a Gf,
    value: Elem,
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && same_field(self.field, other.field)
    }
}

fn same_field(a: &Gf, b: &Gf) -> bool {
    core::ptr::eq(a, b) || a == b
}

/// Operations accepted by [`arithmetic`]. `Pow` and `Frobenius` ignore the
/// second operand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
    Frobenius(u32),
}

impl<'a> FieldElement<'a> {
    pub fn new(field: &'a Gf, value: Elem) -> Result<Self> {
        if value >= field.order() {
            return Err(Error::InvalidInput(format!("{value} is not an element of GF({})", field.order())));
        }
        Ok(FieldElement { field, value })
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &'a Gf {
        self.field
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(self.field, other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, value: Elem) -> Self {
        FieldElement { field: self.field, value }
    }

    pub fn add(self, other: Self) -> Result<Self> {
        self.check(&other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(self, other: Self) -> Result<Self> {
        self.check(&other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(self, other: Self) -> Result<Self> {
        self.check(&other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(self, other: Self) -> Result<Self> {
        self.check(&other)?;
        Ok(self.with(self.field.div(self.value, other.value)?))
    }

    pub fn pow(self, k: u64) -> Self {
        self.with(self.field.pow(self.value, k))
    }

    /// `x^(s^i)` for the immediate subfield order `s`.
    pub fn frobenius(self, i: u32) -> Self {
        self.with(self.field.frobenius(self.value, i))
    }
}

pub fn arithmetic<'a>(a: FieldElement<'a>, b: FieldElement<'a>, op: ArithOp) -> Result<FieldElement<'a>> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
        ArithOp::Pow(k) => Ok(a.pow(k)),
        ArithOp::Frobenius(i) => Ok(a.frobenius(i)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_fields() -> Vec<Gf> {
        // every field of order <= 81
        let mut out = Vec::new();
        for (p, m) in [
            (2, 1),
            (3, 1),
            (2, 2),
            (5, 1),
            (7, 1),
            (2, 3),
            (3, 2),
            (2, 4),
            (5, 2),
            (3, 3),
            (2, 5),
            (7, 2),
            (2, 6),
            (3, 4),
        ] {
            let prime = Gf::prime(p).unwrap();
            out.push(if m == 1 { prime } else { Gf::extension_default(&prime, m).unwrap() });
        }
        out
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields() {
            let n = f.order();
            for a in 0..n {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..n {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..n {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_and_reduction_agree() {
        let f = Gf::extension_default(&Gf::prime(2).unwrap(), 8).unwrap();
        for a in (0..256).step_by(7) {
            for b in 0..256 {
                assert_eq!(f.mul(a, b), f.mul_poly(a, b));
            }
        }
    }

    #[test]
    fn frobenius_is_automorphism() {
        for f in small_fields() {
            let n = f.order();
            for a in 0..n {
                assert_eq!(f.frobenius(a, 0), a);
                for b in 0..n {
                    let fa = f.frobenius(a, 1);
                    let fb = f.frobenius(b, 1);
                    assert_eq!(f.frobenius(f.add(a, b), 1), f.add(fa, fb));
                    assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(fa, fb));
                }
            }
        }
    }

    #[test]
    fn gf64_reduction_example() {
        let t = FieldTower::new(2, 1, 6, Some(&[1, 1, 0, 1, 1, 0, 1])).unwrap();
        let top = t.top();
        // x * x^5 = x^6 = x^4 + x^3 + x + 1
        let x = 2;
        let x5 = 1 << 5;
        assert_eq!(top.mul(x, x5), 0b011011);
    }

    #[test]
    fn gf9_default_is_x2_plus_1() {
        let t = FieldTower::new(3, 1, 2, None).unwrap();
        // oracle: a quadratic is irreducible iff it has no root; scan monic
        // x^2 + b x + c in the builder's candidate order (c + 3b ascending)
        let first =
            (0..9u32).map(|n| (n % 3, n / 3)).find(|&(c, b)| (0..3u32).all(|x| (x * x + b * x + c) % 3 != 0)).unwrap();
        assert_eq!(first, (1, 0));
        assert_eq!(t.top_irreducible(), &[1, 0, 1]);
    }

    #[test]
    fn gf2_trivial_tower() {
        let t = FieldTower::new(2, 1, 1, None).unwrap();
        assert_eq!(t.top().order(), 2);
        assert_eq!(t.q(), 2);
        for x in 0..2 {
            assert_eq!(t.trace(x), x);
            assert_eq!(t.coords(x), vec![x]);
        }
    }

    #[test]
    fn gf8_order_of_units() {
        let t = FieldTower::new(2, 1, 3, None).unwrap();
        for a in 1..8 {
            assert_eq!(t.top().pow(a, 7), 1);
            assert_eq!(t.norm(a), 1);
        }
        assert_eq!(t.top_irreducible(), &[1, 1, 0, 1]);
    }

    #[test]
    fn gf4_trace_balanced() {
        let t = FieldTower::new(2, 1, 2, None).unwrap();
        let ones = (0..4).filter(|&x| t.trace(x) == 1).count();
        assert_eq!(ones, 2);
        assert_eq!(t.trace(0), 0);
        assert_eq!(t.norm(0), 0);
        assert_eq!(t.coords(0), vec![0, 0]);
    }

    #[test]
    fn trace_norm_land_in_base_and_trace_linear() {
        for (p, e, tt) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (3, 1, 3), (2, 1, 6), (3, 2, 2)] {
            let t = FieldTower::new(p, e, tt, None).unwrap();
            let top = t.top();
            for x in top.elements() {
                assert!(t.trace(x) < t.q());
                assert!(t.norm(x) < t.q());
                for lambda in 0..t.q() {
                    let lx = top.mul(lambda, x);
                    assert_eq!(t.trace(lx), t.base().mul(lambda, t.trace(x)));
                }
            }
            for x in top.elements().step_by(3) {
                for y in top.elements().step_by(5) {
                    assert_eq!(t.trace(top.add(x, y)), t.base().add(t.trace(x), t.trace(y)));
                }
            }
        }
    }

    #[test]
    fn coords_round_trip_custom_basis() {
        // basis {x+1, x} of GF(9) over GF(3)
        let t = FieldTower::builder(3, 1, 2).q_basis(vec![4, 3]).build().unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for x in t.top().elements() {
            let c = t.coords(x);
            assert_eq!(t.from_coords(&c).unwrap(), x);
            seen.insert(c);
        }
        assert_eq!(seen.len(), 9);
        assert!(FieldTower::builder(3, 1, 2).q_basis(vec![1, 2]).build().is_err());
    }

    #[test]
    fn errors() {
        assert_eq!(Gf::prime(4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldTower::new(2, 1, 2, Some(&[1, 0, 1])).unwrap_err(), Error::Reducible);
        assert!(matches!(FieldTower::new(2, 1, 3, Some(&[1, 1])), Err(Error::InvalidInput(_))));
        let f = Gf::prime(5).unwrap();
        let g = Gf::prime(7).unwrap();
        let a = FieldElement::new(&f, 2).unwrap();
        let b = FieldElement::new(&g, 2).unwrap();
        assert_eq!(arithmetic(a, b, ArithOp::Add).unwrap_err(), Error::FieldMismatch);
        let z = FieldElement::new(&f, 0).unwrap();
        assert_eq!(arithmetic(a, z, ArithOp::Div).unwrap_err(), Error::DivisionByZero);
        assert_eq!(arithmetic(a, a, ArithOp::Mul).unwrap().value(), 4);
        assert_eq!(arithmetic(a, a, ArithOp::Frobenius(0)).unwrap(), a);
    }

    #[test]
    fn gf4_over_gf4_tower() {
        let t = FieldTower::new(2, 2, 2, None).unwrap();
        assert_eq!(t.q(), 4);
        assert_eq!(t.top().order(), 16);
        for x in t.top().elements() {
            assert_eq!(t.top().frobenius(x, 2), x);
            assert_eq!(t.from_coords(&t.coords(x)).unwrap(), x);
        }
    }
}
