//! Small exact integer linear algebra: primitive covectors, square integer
//! matrices and fraction-free rank.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A primitive integer linear functional, sign-normalized so the first
/// nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Covector(Vec<i64>);

impl Covector {
    /// Normalizes `coeffs`; returns the covector together with the sign
    /// (+1 or -1) that was factored out, or `None` for the zero vector.
    pub fn normalize(coeffs: &[i64]) -> Option<(Covector, i64)> {
        let g = coeffs.iter().fold(0i64, |g, &c| g.gcd(&c));
        if g == 0 {
            return None;
        }
        let first = *coeffs.iter().find(|&&c| c != 0).unwrap();
        let sign = first.signum();
        Some((
            Covector(coeffs.iter().map(|&c| sign * c / g).collect()),
            sign,
        ))
    }

    pub fn new(coeffs: Vec<i64>) -> Result<Covector> {
        match Covector::normalize(&coeffs) {
            Some((c, _)) if c.0 == coeffs => Ok(c),
            _ => Err(Error::Argument(format!(
                "{coeffs:?} is not a primitive sign-normalized covector"
            ))),
        }
    }

    pub fn unit(dim: usize, k: usize) -> Covector {
        let mut v = vec![0; dim];
        v[k] = 1;
        Covector(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, point: &[i64]) -> i64 {
        dot(&self.0, point)
    }
}

impl fmt::Display for Covector {
    /// Renders as `t1 + 2t2 - t3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&linear_form(&self.0))
    }
}

pub fn linear_form(coeffs: &[i64]) -> String {
    let mut s = String::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&format!("t{}", k + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn eval_rational(coeffs: &[i64], point: &[BigRational]) -> BigRational {
    coeffs
        .iter()
        .zip(point)
        .map(|(&c, x)| BigRational::from_integer(BigInt::from(c)) * x)
        .sum()
}

/// Square integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntMatrix(Vec<Vec<i64>>);

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = vec![vec![0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        IntMatrix(m)
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Argument("matrix is not square".into()));
        }
        Ok(IntMatrix(rows))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.0[i]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.0.iter().map(|r| r[j]).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.dim();
        let mut out = vec![vec![0i64; n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..n).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        IntMatrix(out)
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.0.iter().map(|r| dot(r, v)).collect()
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> i64 {
        let n = self.dim();
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = self
            .0
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs() == 1
    }
}

/// Rank over the rationals via fraction-free elimination on `i128` rows.
pub fn rank(rows: &[&[i64]]) -> usize {
    let mut basis = EchelonBasis::default();
    for r in rows {
        basis.insert(r);
    }
    basis.rank()
}

/// Incrementally maintained row-echelon basis over the integers.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<i128>)>,
}

impl EchelonBasis {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (pivot, row) in &self.rows {
            let c = w[*pivot];
            if c == 0 {
                continue;
            }
            let p = row[*pivot];
            for (x, &r) in w.iter_mut().zip(row) {
                *x = *x * p - c * r;
            }
            let g = w.iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                w.iter_mut().for_each(|x| *x /= g);
            }
        }
        match w.iter().position(|&x| x != 0) {
            Some(pivot) => {
                self.rows.push((pivot, w));
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let (c, s) = Covector::normalize(&[0, -4, 6]).unwrap();
        assert_eq!(c.coeffs(), &[0, 2, -3]);
        assert_eq!(s, -1);
        assert!(Covector::normalize(&[0, 0]).is_none());
        assert!(Covector::new(vec![2, 4]).is_err());
        assert!(Covector::new(vec![-1, 4]).is_err());
        assert_eq!(Covector::new(vec![1, 2]).unwrap().to_string(), "t1 + 2t2");
    }

    #[test]
    fn determinants() {
        let m = IntMatrix::from_rows(vec![vec![-1, -3], vec![1, 2]]).unwrap();
        assert_eq!(m.determinant(), 1);
        let m = IntMatrix::from_rows(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(m.determinant(), -1);
        let m = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.determinant(), 0);
        let m = IntMatrix::from_rows(vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]).unwrap();
        assert_eq!(m.determinant(), 6);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]), 2);
        assert_eq!(rank(&[&[1, 2], &[3, 4]]), 2);
        assert_eq!(rank(&[&[0, 0]]), 0);
        assert_eq!(rank(&[]), 0);
    }
}
