//! Text formats: matrices, polynomials and spread descriptors.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use scattered_core::{DesarguesianSpread, Elem, FieldTower, Subspace};

use crate::error::CliError;

fn digit_char(d: u32) -> char {
    char::from_digit(d, 36).expect("digit below 36")
}

/// An element of GF(p^e) as `e` base-p digits, most significant first.
pub fn element_to_digits(x: Elem, p: u32, e: u32) -> String {
    let mut digits = vec!['0'; e as usize];
    let mut v = x;
    for slot in digits.iter_mut().rev() {
        *slot = digit_char(v % p);
        v /= p;
    }
    digits.into_iter().collect()
}

pub fn element_from_digits(s: &str, p: u32, e: u32) -> Result<Elem, CliError> {
    if s.chars().count() != e as usize {
        return Err(CliError::Usage(format!("'{s}' should have {e} base-{p} digits")));
    }
    s.chars().try_fold(0, |acc, c| match c.to_digit(p) {
        Some(d) => Ok(acc * p + d),
        None => Err(CliError::Usage(format!("'{c}' is not a base-{p} digit"))),
    })
}

/// One row per line, coordinates separated by spaces.
pub fn write_matrix(rows: &[Vec<Elem>], p: u32, e: u32) -> String {
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| element_to_digits(x, p, e)).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

/// Parses the matrix format. Blank lines and `#` comments are skipped. Over
/// a prime field a row may also be written without separators.
pub fn read_matrix(text: &str, p: u32, e: u32) -> Result<Vec<Vec<Elem>>, CliError> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let row = if e == 1 && tokens.len() == 1 && tokens[0].len() > 1 {
            tokens[0].chars().map(|c| element_from_digits(&c.to_string(), p, 1)).collect::<Result<Vec<_>, _>>()?
        } else {
            tokens.iter().map(|t| element_from_digits(t, p, e)).collect::<Result<Vec<_>, _>>()?
        };
        rows.push(row);
    }
    if let Some(first) = rows.first() {
        if rows.iter().any(|r| r.len() != first.len()) {
            return Err(CliError::Usage("matrix rows have different lengths".into()));
        }
    }
    Ok(rows)
}

pub fn read_subspace(text: &str, spread: &DesarguesianSpread) -> Result<Subspace, CliError> {
    let tower = spread.tower();
    let rows = read_matrix(text, tower.p(), tower.e())?;
    let n = spread.reduction().ambient_dim();
    if let Some(row) = rows.iter().find(|r| r.len() != n) {
        return Err(CliError::Usage(format!("subspace rows need {n} coordinates, found {}", row.len())));
    }
    Ok(Subspace::span(tower.base().clone(), n, &rows)?)
}

pub fn subspace_text(u: &Subspace, tower: &FieldTower) -> String {
    write_matrix(u.basis(), tower.p(), tower.e())
}

/// Comma-separated coefficients, low degree first.
pub fn parse_poly(s: &str) -> Result<Vec<Elem>, CliError> {
    s.split(',')
        .map(|c| c.trim().parse::<Elem>().map_err(|_| CliError::Usage(format!("bad coefficient '{c}' in '{s}'"))))
        .collect()
}

pub fn poly_string(c: &[Elem]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Everything needed to rebuild a Desarguesian spread.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadDescriptor {
    pub p: u32,
    pub e: u32,
    pub t: usize,
    pub r: usize,
    pub base_irreducible: Vec<Elem>,
    pub irreducible: Vec<Elem>,
}

impl SpreadDescriptor {
    pub fn of(spread: &DesarguesianSpread) -> Self {
        let tower = spread.tower();
        SpreadDescriptor {
            p: tower.p(),
            e: tower.e(),
            t: tower.t(),
            r: spread.r(),
            base_irreducible: tower.base_irreducible().to_vec(),
            irreducible: tower.top_irreducible().to_vec(),
        }
    }

    pub fn build(&self) -> Result<DesarguesianSpread, CliError> {
        let mut b = FieldTower::builder(self.p, self.e, self.t).top_irreducible(self.irreducible.clone());
        if self.e > 1 {
            b = b.base_irreducible(self.base_irreducible.clone());
        }
        Ok(DesarguesianSpread::new(b.build()?, self.r)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_round_trip() {
        for (p, e) in [(2u32, 1u32), (2, 3), (3, 2), (5, 1), (7, 2)] {
            for x in 0..p.pow(e) {
                let s = element_to_digits(x, p, e);
                assert_eq!(s.len(), e as usize);
                assert_eq!(element_from_digits(&s, p, e).unwrap(), x);
            }
        }
    }

    #[test]
    fn matrix_round_trip() {
        let rows = vec![vec![0, 8, 3], vec![4, 1, 7]];
        let text = write_matrix(&rows, 3, 2);
        assert_eq!(text, "00 22 10\n11 01 21\n");
        assert_eq!(read_matrix(&text, 3, 2).unwrap(), rows);
    }

    #[test]
    fn compact_rows() {
        let rows = read_matrix("# U\n1001\n\n0110  # second\n", 2, 1).unwrap();
        assert_eq!(rows, vec![vec![1, 0, 0, 1], vec![0, 1, 1, 0]]);
        assert!(read_matrix("12\n", 2, 1).is_err());
        assert!(read_matrix("1 0\n1\n", 2, 1).is_err());
    }

    #[test]
    fn polynomials() {
        assert_eq!(parse_poly("1,1,0,1,1,0,1").unwrap(), vec![1, 1, 0, 1, 1, 0, 1]);
        assert_eq!(parse_poly(" 0, 1").unwrap(), vec![0, 1]);
        assert!(parse_poly("1,x").is_err());
        assert_eq!(poly_string(&[1, 0, 1]), "1,0,1");
    }

    #[test]
    fn descriptor_rebuilds() {
        let tower = FieldTower::new(2, 2, 3, None).unwrap();
        let d = DesarguesianSpread::new(tower, 2).unwrap();
        let desc = SpreadDescriptor::of(&d);
        let json = serde_json::to_string(&desc).unwrap();
        let back: SpreadDescriptor = serde_json::from_str(&json).unwrap();
        let d2 = back.build().unwrap();
        assert_eq!(SpreadDescriptor::of(&d2), desc);
        assert_eq!(d2.tower().top().modulus(), d.tower().top().modulus());
    }
}
