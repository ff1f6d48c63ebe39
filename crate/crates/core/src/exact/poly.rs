//! Dense polynomials with exact rational coefficients, in the variable
//! `y = 1/x`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::det::ExactRing;
use crate::error::{Error, Result};

/// `coefficients[k]` multiplies `y^k`. Trailing zeros are stripped, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPolynomial {
    coefficients: Vec<BigRational>,
}

impl ExactPolynomial {
    pub fn from_coefficients(coefficients: Vec<BigRational>) -> Self {
        let mut p = Self { coefficients };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coefficients.last().is_some_and(|c| c.is_zero()) {
            self.coefficients.pop();
        }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coefficients.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coefficients.last()
    }

    /// Smallest power with a nonzero coefficient.
    pub fn lowest_power(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, y: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * y + c)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_coefficients(self.coefficients.iter().map(|c| c * s).collect())
    }

    /// Divides by `y^s`; fails if any of the dropped coefficients is nonzero.
    pub fn shift_down(&self, s: usize) -> Result<Self> {
        if self.coefficients.iter().take(s).any(|c| !c.is_zero()) {
            return Err(Error::Consistency(format!(
                "polynomial is not divisible by y^{s}"
            )));
        }
        Ok(Self::from_coefficients(
            self.coefficients.iter().skip(s).cloned().collect(),
        ))
    }

    fn add_scaled_shifted(&mut self, other: &Self, s: &BigRational, shift: usize) {
        let need = other.coefficients.len() + shift;
        if self.coefficients.len() < need {
            self.coefficients.resize(need, BigRational::zero());
        }
        for (k, c) in other.coefficients.iter().enumerate() {
            self.coefficients[k + shift] += c * s;
        }
    }

    /// Long division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Internal("polynomial division by zero".into()))?;
        let lead = d.coefficients[dd].clone();
        let mut rem = self.clone();
        let mut quot = vec![BigRational::zero(); self.coefficients.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let q = &rem.coefficients[rd] / &lead;
            rem.add_scaled_shifted(d, &-q.clone(), rd - dd);
            // The leading term cancels exactly; drop it even if normalize would not.
            rem.coefficients.truncate(rd);
            rem.normalize();
            quot[rd - dd] = q;
        }
        Ok((Self::from_coefficients(quot), rem))
    }
}

impl ExactRing for ExactPolynomial {
    fn ring_zero() -> Self {
        Self { coefficients: Vec::new() }
    }
    fn ring_one() -> Self {
        Self { coefficients: vec![BigRational::one()] }
    }
    fn ring_is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        if self.coefficients.is_empty() || rhs.coefficients.is_empty() {
            return Self::ring_zero();
        }
        let mut out = vec![BigRational::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coefficients(out)
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_shifted(rhs, &-BigRational::one(), 0);
        out.normalize();
        out
    }
    fn ring_neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(rhs)?;
        if !r.coefficients.is_empty() {
            return Err(Error::Internal("inexact polynomial division in Bareiss step".into()));
        }
        Ok(q)
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·y")?,
                _ => write!(f, "({c})·y^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(cs: &[i64]) -> ExactPolynomial {
        ExactPolynomial::from_coefficients(
            cs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        )
    }

    #[test]
    fn strips_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn product_then_exact_division() {
        let a = p(&[1, -3, 2]);
        let b = p(&[0, 5, 1, 7]);
        let ab = a.ring_mul(&b);
        assert_eq!(ab.exact_div(&b).unwrap(), a);
        assert!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])).is_err());
    }

    #[test]
    fn shift_and_eval() {
        let q = p(&[0, 0, 3, 4]);
        assert_eq!(q.lowest_power(), Some(2));
        assert_eq!(q.shift_down(2).unwrap(), p(&[3, 4]));
        assert!(q.shift_down(3).is_err());
        let two = BigRational::from_integer(BigInt::from(2));
        assert_eq!(q.eval(&two), BigRational::from_integer(BigInt::from(44)));
    }
}
