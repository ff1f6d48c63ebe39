//! Exact finite-size quantities.
//!
//! Everything here is computed with arbitrary-precision rationals. The
//! nontrivial factor `P_{N,M,L}(1/x)` of the partition function is available
//! through two independent routes: the Hankel determinant of the terminating
//! `₂F₁(2-L, 1-M; 2; 1/x)` and its `(x∂x)` derivatives, and the brute-force
//! discrete log-gas sum. Floating point only enters in [`partition_function`].

mod combinatorics;
mod det;
mod poly;

pub use combinatorics::{binomial, factorial, macmahon_pl, pochhammer};
pub use det::{bareiss_determinant, ExactRing};
pub use poly::ExactPolynomial;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use combinatorics::to_rational;

/// Default cap on elementary products for [`tau_loggas`].
pub const DEFAULT_WORK_BUDGET: u128 = 100_000_000;

/// `N` paths on a lattice of `L` vertical and `M` horizontal lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteModel {
    n: u64,
    m: u64,
    l: u64,
}

impl FiniteModel {
    pub fn new(n: u64, m: u64, l: u64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("N must be positive"));
        }
        if m == 0 {
            return Err(invalid("M must be positive"));
        }
        if l < 2 {
            return Err(invalid("L must be at least 2"));
        }
        if n > m {
            return Err(invalid("N exceeds M"));
        }
        if n > l - 1 {
            return Err(invalid("N exceeds L-1"));
        }
        Ok(Self { n, m, l })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// Largest log-gas site, `min(L-2, M-1)`.
    pub fn max_site(&self) -> u64 {
        (self.l - 2).min(self.m - 1)
    }

    /// `N·min(M-N, L-N-1)`.
    pub fn p_degree(&self) -> u64 {
        self.n * (self.m - self.n).min(self.l - self.n - 1)
    }

    /// The model with `L ↔ M+1` exchanged, which has the same `P`.
    pub fn dual(&self) -> Self {
        Self { n: self.n, m: self.l - 1, l: self.m + 1 }
    }
}

/// Boltzmann-weight parameters. `x ∈ (0,1)` requires `Δ < 0` and `x > 1`
/// requires `Δ > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    x: f64,
    delta: f64,
    alpha: f64,
}

impl WeightParams {
    pub fn new(x: f64, delta: f64, alpha: f64) -> Result<Self> {
        if !(x.is_finite() && x > 0.0) {
            return Err(invalid("x must be a positive finite number"));
        }
        if !delta.is_finite() || delta == 0.0 {
            return Err(invalid("Delta must be nonzero and finite"));
        }
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(invalid("alpha must be nonnegative"));
        }
        let consistent = (x < 1.0 && delta < 0.0) || (x > 1.0 && delta > 0.0);
        if !consistent {
            return Err(invalid(format!(
                "weight parametrization requires x<1 with Delta<0 or x>1 with Delta>0 (x={x}, Delta={delta})"
            )));
        }
        Ok(Self { x, delta, alpha })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn check_positive(x: &BigRational) -> Result<()> {
    if !x.is_positive() {
        return Err(invalid("x must be positive"));
    }
    Ok(())
}

/// Log-gas site weight `ν(k) = C(L-2,k) C(M-1,k) x^{-k} / (k+1)`.
pub fn loggas_weight(model: &FiniteModel, k: i64, x: &BigRational) -> Result<BigRational> {
    check_positive(x)?;
    if k < 0 || k as u64 > model.max_site() {
        return Err(invalid(format!("site k={k} outside [0, {}]", model.max_site())));
    }
    let binomials = to_rational(binomial(model.l - 2, k) * binomial(model.m - 1, k));
    let xk = x.recip().pow(k as i32);
    Ok(binomials * xk / int(k + 1))
}

/// `C_{N,M,L} = ∏_{j=0}^{N-1} (L-N+j-1)! (M-N+j)! / [(L-2)! (M-1)!]`.
pub fn normalization_constant(model: &FiniteModel) -> BigRational {
    let (n, m, l) = (model.n, model.m, model.l);
    let den = to_rational(factorial(l - 2) * factorial(m - 1));
    (0..n).fold(BigRational::one(), |acc, j| {
        acc * to_rational(factorial(l - n + j - 1) * factorial(m - n + j)) / &den
    })
}

/// Estimated work of the ordered log-gas sum, `C(m+1, N)·N!`.
pub fn loggas_work_estimate(model: &FiniteModel) -> u128 {
    let tuples = binomial(model.max_site() + 1, model.n as i64) * factorial(model.n);
    tuples.to_u128().unwrap_or(u128::MAX)
}

/// `τ_{N,M,L}(1/x)` as the discrete log-gas sum
/// `C_{N,M,L} Σ_{k} ∏_{i<j}(k_j-k_i)² ∏_i ν(k_i)`.
///
/// Only strictly increasing tuples contribute (the Vandermonde factor kills
/// coincident sites), so the sum runs over `k_1 < … < k_N` and is multiplied
/// by `N!`.
pub fn tau_loggas(model: &FiniteModel, x: &BigRational, budget: u128) -> Result<BigRational> {
    check_positive(x)?;
    let estimate = loggas_work_estimate(model);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let sites = model.max_site() as i64;
    let weights: Vec<BigRational> = (0..=sites)
        .map(|k| loggas_weight(model, k, x))
        .collect::<Result<_>>()?;

    let mut sum = BigRational::zero();
    for tuple in (0..=sites).combinations(model.n as usize) {
        let mut vandermonde = BigInt::one();
        for (i, &ki) in tuple.iter().enumerate() {
            for &kj in &tuple[i + 1..] {
                let d = BigInt::from(kj - ki);
                vandermonde *= &d * &d;
            }
        }
        let product = tuple
            .iter()
            .fold(BigRational::from_integer(vandermonde), |acc, &k| acc * &weights[k as usize]);
        sum += product;
    }
    Ok(sum * to_rational(factorial(model.n)) * normalization_constant(model))
}

/// Coefficients of the terminating `₂F₁(2-L, 1-M; 2; y)` in powers of
/// `y = 1/x`: `c_k = (2-L)_k (1-M)_k / [(2)_k k!]`.
pub fn hyper2f1_polynomial(model: &FiniteModel) -> ExactPolynomial {
    let a = 2 - model.l as i64;
    let b = 1 - model.m as i64;
    let coefficients = (0..=model.max_site())
        .map(|k| {
            BigRational::new(
                pochhammer(a, k) * pochhammer(b, k),
                pochhammer(2, k) * BigInt::from(factorial(k)),
            )
        })
        .collect();
    ExactPolynomial::from_coefficients(coefficients)
}

/// `(x∂x)^p F(1/x) = Σ_k (-k)^p c_k x^{-k}` for `p = 0..count`.
fn hankel_moments(f: &ExactPolynomial, x: &BigRational, count: usize) -> Vec<BigRational> {
    let y = x.recip();
    let terms: Vec<BigRational> = f
        .coefficients()
        .iter()
        .enumerate()
        .map(|(k, c)| c * y.pow(k as i32))
        .collect();
    (0..count)
        .map(|p| {
            terms.iter().enumerate().fold(BigRational::zero(), |acc, (k, t)| {
                acc + t * int(-(k as i64)).pow(p as i32)
            })
        })
        .collect()
}

/// Determinant of the `N×N` Hankel matrix of rational moments, computed by
/// clearing denominators and running Bareiss over the integers.
fn hankel_determinant(moments: &[BigRational], n: usize) -> Result<BigRational> {
    let lcm = moments
        .iter()
        .fold(BigInt::one(), |acc, h| acc.lcm(h.denom()));
    let scaled: Vec<BigInt> = moments
        .iter()
        .map(|h| h.numer() * (&lcm / h.denom()))
        .collect();
    let matrix: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| scaled[i + j].clone()).collect())
        .collect();
    let det = bareiss_determinant(matrix)?;
    Ok(BigRational::new(det, num_traits::pow(lcm, n)))
}

/// `τ_{N,M,L}(1/x) = N! C_{N,M,L} det[(x∂x)^{i+j-2} ₂F₁(2-L, 1-M; 2; 1/x)]`.
pub fn tau_hankel(model: &FiniteModel, x: &BigRational) -> Result<BigRational> {
    check_positive(x)?;
    let n = model.n as usize;
    let f = hyper2f1_polynomial(model);
    let moments = hankel_moments(&f, x, 2 * n - 1);
    let det = hankel_determinant(&moments, n)?;
    Ok(det * to_rational(factorial(model.n)) * normalization_constant(model))
}

/// `P_{N,M,L}(1/x) = x^{N(N-1)/2} τ_{N,M,L}(1/x)` evaluated through the
/// Hankel route at an exact point.
pub fn p_value(model: &FiniteModel, x: &BigRational) -> Result<BigRational> {
    let shift = (model.n * (model.n - 1) / 2) as i32;
    Ok(tau_hankel(model, x)? * x.pow(shift))
}

/// `P_{N,M,L}` as an exact polynomial in `1/x`, built from the Hankel
/// determinant of polynomial entries and checked against its normalization
/// and degree.
pub fn p_polynomial(model: &FiniteModel) -> Result<ExactPolynomial> {
    let n = model.n as usize;
    let f = hyper2f1_polynomial(model);
    let entries: Vec<ExactPolynomial> = (0..2 * n - 1)
        .map(|p| {
            let coefficients = f
                .coefficients()
                .iter()
                .enumerate()
                .map(|(k, c)| c * int(-(k as i64)).pow(p as i32))
                .collect();
            ExactPolynomial::from_coefficients(coefficients)
        })
        .collect();
    let matrix: Vec<Vec<ExactPolynomial>> = (0..n)
        .map(|i| (0..n).map(|j| entries[i + j].clone()).collect())
        .collect();
    let det = bareiss_determinant(matrix)?;
    let tau = det.scale(&(to_rational(factorial(model.n)) * normalization_constant(model)));
    let p = tau.shift_down(n * (n - 1) / 2)?;

    if p.coeff(0) != BigRational::one() {
        return Err(Error::Consistency(format!(
            "P_{{{},{},{}}}(0) = {} instead of 1",
            model.n,
            model.m,
            model.l,
            p.coeff(0)
        )));
    }
    if p.degree() != Some(model.p_degree() as usize) {
        return Err(Error::Consistency(format!(
            "deg P_{{{},{},{}}} = {:?}, expected {}",
            model.n,
            model.m,
            model.l,
            p.degree(),
            model.p_degree()
        )));
    }
    Ok(p)
}

/// `P(1) = PL(L-N, N, M-N) / C(M, N)`, from the count of boxed plane
/// partitions.
pub fn p_at_one_from_plane_partitions(model: &FiniteModel) -> Result<BigRational> {
    let (n, m, l) = (model.n, model.m, model.l);
    Ok(to_rational(macmahon_pl(l - n, n, m - n)?) / to_rational(binomial(m, n as i64)))
}

/// Expected top coefficient of `P` (the `x → 0` limit of `x^{deg P} P(1/x)`):
/// `PL(N, M-L+1, L-N)/C(M,N)` when `L ≤ M+1`, otherwise
/// `PL(N, L-M-1, M-N+1)/C(L-1,N)`.
pub fn leading_coefficient_from_plane_partitions(model: &FiniteModel) -> Result<BigRational> {
    let (n, m, l) = (model.n, model.m, model.l);
    if l <= m + 1 {
        Ok(to_rational(macmahon_pl(n, m + 1 - l, l - n)?) / to_rational(binomial(m, n as i64)))
    } else {
        Ok(to_rational(macmahon_pl(n, l - m - 1, m - n + 1)?)
            / to_rational(binomial(l - 1, n as i64)))
    }
}

/// Natural logarithm of a positive rational, valid far outside the `f64`
/// range.
pub fn ln_rational(q: &BigRational) -> Result<f64> {
    if !q.is_positive() {
        return Err(invalid("logarithm of a nonpositive rational"));
    }
    Ok(ln_bigint(q.numer()) - ln_bigint(q.denom()))
}

fn ln_bigint(v: &BigInt) -> f64 {
    let bits = v.bits();
    let shift = bits.saturating_sub(64);
    let top = (v >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `Z = C(M,N) E_{N,M,L}(x; Δ, α) P_{N,M,L}(1/x)` with
/// `E = ((x-1)/Δ)^{(L-N)(M-N)} (α/√x)^{M(L-2N)} x^{N(L-N-1)}`.
///
/// `P` is evaluated exactly at the binary value of `x` and converted once;
/// the product is assembled in log space so intermediate factors do not
/// overflow.
pub fn partition_function(model: &FiniteModel, w: &WeightParams) -> Result<f64> {
    let (n, m, l) = (model.n as i64, model.m as i64, model.l as i64);
    let field_exponent = m * (l - 2 * n);
    if w.alpha == 0.0 {
        if field_exponent < 0 {
            return Err(invalid("alpha = 0 with negative exponent M(L-2N)"));
        }
        if field_exponent > 0 {
            return Ok(0.0);
        }
    }
    let x_exact = BigRational::from_float(w.x)
        .ok_or_else(|| invalid("x is not representable as a rational"))?;
    let p = p_polynomial(model)?.eval(&x_exact.recip());
    let mut log_z = ln_rational(&to_rational(binomial(model.m, n)))?
        + ln_rational(&p)?
        + ((l - n) * (m - n)) as f64 * ((w.x - 1.0) / w.delta).ln()
        + (n * (l - n - 1)) as f64 * w.x.ln();
    if field_exponent != 0 {
        log_z += field_exponent as f64 * (w.alpha.ln() - 0.5 * w.x.ln());
    }
    Ok(log_z.exp())
}

/// Parses `"p/q"`, an integer or a finite decimal such as `"0.125"` into an
/// exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || invalid(format!("cannot parse '{text}' as a rational number"));
    let int = |s: &str| s.parse::<BigInt>().map_err(|_| bad());
    if let Some((p, q)) = text.split_once('/') {
        let q = int(q)?;
        if q.is_zero() {
            return Err(invalid("zero denominator"));
        }
        return Ok(BigRational::new(int(p)?, q));
    }
    match text.split_once('.') {
        None => Ok(BigRational::from_integer(int(text)?)),
        Some((whole, frac)) => {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = whole.starts_with('-');
            let whole = if whole.is_empty() || whole == "-" || whole == "+" { BigInt::zero() } else { int(whole)? };
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let frac = BigRational::new(int(frac)?, scale);
            Ok(if negative { BigRational::from_integer(whole) - frac } else { BigRational::from_integer(whole) + frac })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn model_validation_messages() {
        assert_eq!(
            FiniteModel::new(3, 2, 5).unwrap_err(),
            Error::InvalidParameter("N exceeds M".into())
        );
        assert!(FiniteModel::new(3, 4, 3).is_err());
        assert!(FiniteModel::new(0, 4, 3).is_err());
        let m = FiniteModel::new(2, 4, 5).unwrap();
        assert_eq!(m.max_site(), 3);
        assert_eq!(m.dual(), FiniteModel::new(2, 4, 5).unwrap());
        assert_eq!(FiniteModel::new(2, 6, 5).unwrap().dual(), FiniteModel::new(2, 4, 7).unwrap());
    }

    #[test]
    fn weight_examples() {
        let m43 = FiniteModel::new(1, 3, 4).unwrap();
        assert_eq!(loggas_weight(&m43, 0, &q(7, 3)).unwrap(), q(1, 1));
        assert_eq!(loggas_weight(&m43, 1, &q(2, 1)).unwrap(), q(1, 1));
        let m32 = FiniteModel::new(1, 2, 3).unwrap();
        assert_eq!(loggas_weight(&m32, 1, &q(1, 1)).unwrap(), q(1, 2));
        assert!(loggas_weight(&m32, 2, &q(1, 1)).is_err());
        assert!(loggas_weight(&m32, -1, &q(1, 1)).is_err());
    }

    #[test]
    fn hypergeometric_coefficients() {
        let m = FiniteModel::new(1, 2, 3).unwrap();
        assert_eq!(hyper2f1_polynomial(&m).coefficients(), &[q(1, 1), q(1, 2)]);
        let flat = FiniteModel::new(1, 6, 2).unwrap();
        assert_eq!(hyper2f1_polynomial(&flat).coefficients(), &[q(1, 1)]);
    }

    #[test]
    fn smallest_model_both_routes() {
        let m = FiniteModel::new(1, 2, 3).unwrap();
        let one = q(1, 1);
        assert_eq!(tau_loggas(&m, &one, DEFAULT_WORK_BUDGET).unwrap(), q(3, 2));
        assert_eq!(tau_hankel(&m, &one).unwrap(), q(3, 2));
        assert_eq!(p_polynomial(&m).unwrap().coefficients(), &[q(1, 1), q(1, 2)]);
    }

    #[test]
    fn budget_is_enforced() {
        let m = FiniteModel::new(4, 9, 9).unwrap();
        let err = tau_loggas(&m, &q(1, 1), 10).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { estimate: 70 * 24, budget: 10 });
    }

    #[test]
    fn ln_of_huge_rational() {
        let big = BigRational::from_integer(BigInt::from(10).pow(400));
        let v = ln_rational(&(big / q(3, 1))).unwrap();
        assert!((v - (400.0 * 10f64.ln() - 3f64.ln())).abs() < 1e-10);
        assert!(ln_rational(&q(-1, 2)).is_err());
    }

    #[test]
    fn weight_params_sign_consistency() {
        assert!(WeightParams::new(0.5, -1.0, 1.0).is_ok());
        assert!(WeightParams::new(0.5, 1.0, 1.0).is_err());
        assert!(WeightParams::new(1.0, 1.0, 1.0).is_err());
        assert!(WeightParams::new(2.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn rational_parsing() {
        let q = |p: i64, d: i64| BigRational::new(BigInt::from(p), BigInt::from(d));
        assert_eq!(parse_rational("3/2").unwrap(), q(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), q(-7, 1));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        for bad in ["", "1/0", "x", "1.", "1.2e3", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn partition_function_reductions() {
        // Δ = x-1 and α = √x make E = x^{N(L-N-1)}.
        let m = FiniteModel::new(2, 4, 5).unwrap();
        let x = 3.0f64;
        let w = WeightParams::new(x, x - 1.0, x.sqrt()).unwrap();
        let p = p_polynomial(&m).unwrap().eval(&q(1, 3));
        let expected = 6.0 * x.powi(4) * p.to_f64().unwrap();
        let z = partition_function(&m, &w).unwrap();
        assert!((z / expected - 1.0).abs() < 1e-13);

        // Free-fermion point x = e^Δ, Δ → 0, α = 1 counts plane partitions.
        let m = FiniteModel::new(1, 2, 3).unwrap();
        let d = 1e-7f64;
        let w = WeightParams::new(d.exp(), d, 1.0).unwrap();
        assert!((partition_function(&m, &w).unwrap() - 3.0).abs() < 1e-5);

        let w0 = WeightParams::new(2.0, 1.0, 0.0).unwrap();
        // M(L-2N) = 4·(5-4) > 0
        assert_eq!(partition_function(&FiniteModel::new(2, 4, 5).unwrap(), &w0).unwrap(), 0.0);
        // M(L-2N) = 4·(3-4) < 0
        assert!(partition_function(&FiniteModel::new(2, 4, 3).unwrap(), &w0).is_err());
    }
}
