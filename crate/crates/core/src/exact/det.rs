//! Fraction-free (Bareiss) determinant over any ring with exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Ring operations needed by Bareiss elimination. `exact_div` is only ever
/// called when the quotient is known to exist; implementations report an
/// error if it does not.
pub trait ExactRing: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn exact_div(&self, rhs: &Self) -> Result<Self>;
}

impl ExactRing for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(rhs);
        if !Zero::is_zero(&r) {
            return Err(Error::Internal("inexact integer division in Bareiss step".into()));
        }
        Ok(q)
    }
}

impl ExactRing for BigRational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            return Err(Error::Internal("division by zero pivot".into()));
        }
        Ok(self / rhs)
    }
}

/// Determinant of a square matrix given as rows.
///
/// Every intermediate entry is a minor of the input, so its size stays
/// bounded by Hadamard's inequality. Zero pivots are handled by row swaps.
pub fn bareiss_determinant<T: ExactRing>(mut a: Vec<Vec<T>>) -> Result<T> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidParameter("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(T::ring_one());
    }
    let mut negate = false;
    let mut prev = T::ring_one();
    for k in 0..n - 1 {
        if a[k][k].ring_is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].ring_is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(T::ring_zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k].ring_mul(&a[i][j]).ring_sub(&a[i][k].ring_mul(&a[k][j]));
                a[i][j] = t.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.ring_neg() } else { d })
}
