//! Integer combinatorics: binomials, factorials, Pochhammer symbols and
//! MacMahon's count of boxed plane partitions.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)` for an integer base.
pub fn pochhammer(a: i64, k: u64) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(a + i))
}

/// Number of plane partitions fitting in an `a × b × c` box:
/// `∏_{j=1}^{a} (b+c+j-1)! (j-1)! / [(b+j-1)! (c+j-1)!]`.
///
/// The product is accumulated as one numerator and one denominator and the
/// final division is checked to be exact.
pub fn macmahon_pl(a: u64, b: u64, c: u64) -> Result<BigUint> {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 1..=a {
        num *= factorial(b + c + j - 1) * factorial(j - 1);
        den *= factorial(b + j - 1) * factorial(c + j - 1);
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "MacMahon product for ({a},{b},{c}) is not integral"
        )));
    }
    Ok(q)
}

pub(crate) fn to_rational(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
