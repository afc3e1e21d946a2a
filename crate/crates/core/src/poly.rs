use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Polynomial in `q` with integer coefficients, lowest degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QPoly {
    coeffs: Vec<i64>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// `c · q^d`.
    pub fn monomial(c: i64, d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Drop all terms of degree above `dmax`.
    pub fn truncate(&self, dmax: usize) -> Self {
        Self::new(self.coeffs.iter().take(dmax + 1).copied().collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), 0);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.scale(-1)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::new(coeffs)
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> Self {
        iter.fold(QPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{a}q")?,
                (_, 1) => write!(f, "q^{d}")?,
                _ => write!(f, "{a}q^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_displays() {
        let p = QPoly::new(vec![1, 0, -3, 0, 0]);
        assert_eq!(p.coeffs(), &[1, 0, -3]);
        assert_eq!(p.to_string(), "-3q^2 + 1");
        assert_eq!(QPoly::new(vec![0, 0]).to_string(), "0");
        assert_eq!(QPoly::monomial(1, 1).to_string(), "q");
        assert_eq!(QPoly::new(vec![0, 2, 1]).to_string(), "q^2 + 2q");
    }

    #[test]
    fn arithmetic() {
        let a = QPoly::new(vec![1, 1]);
        let b = QPoly::new(vec![-1, 1]);
        assert_eq!(&a * &b, QPoly::new(vec![-1, 0, 1]));
        assert_eq!(&a - &a, QPoly::zero());
        assert_eq!(a.shift(2), QPoly::new(vec![0, 0, 1, 1]));
        assert_eq!(QPoly::new(vec![1, 2, 3]).truncate(1), QPoly::new(vec![1, 2]));
        assert_eq!(QPoly::new(vec![0, 0, 5]).valuation(), Some(2));
        assert_eq!(QPoly::new(vec![1, 2, 3]).eval(2), 17);
    }
}
