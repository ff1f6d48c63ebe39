//! Finite-size convergence of `(1/N²) log P` to `f₂`.

use dashu_float::FBig;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{f2, ScaledGeometry};
use crate::error::{invalid, Error, Result};
use crate::exact::{factorial, ln_rational, normalization_constant, p_value, FiniteModel};

/// Starting mantissa width of the floating Hankel path.
pub const DEFAULT_PRECISION_BITS: usize = 256;
/// Auto-raise stops here and reports a convergence failure.
pub const MAX_PRECISION_BITS: usize = 1 << 17;

/// How `(L, M)` are derived from `(λ, μ, N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SizeConvention {
    /// `L = ⌊λN⌋`, `M = ⌊μN⌋`.
    Floor,
    /// `L - 2 = ⌊λN⌋`, `M - 1 = ⌊μN⌋`: the log-gas support `[0, L-2]` and the
    /// binomial `C(M-1, k)` scale exactly as `λN` and `μN`.
    LogGas,
}

impl SizeConvention {
    pub fn model(self, geom: &ScaledGeometry, n: u64) -> Result<FiniteModel> {
        let scale = |r: f64| (r * n as f64).floor() as u64;
        let (l, m) = (scale(geom.lambda()), scale(geom.mu()));
        match self {
            Self::Floor => FiniteModel::new(n, m, l),
            Self::LogGas => FiniteModel::new(n, m + 1, l + 2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub n: u64,
    pub m: u64,
    pub l: u64,
    pub convention: SizeConvention,
    pub x: f64,
    pub geometry: ScaledGeometry,
    pub finite_value: f64,
    pub asymptotic_value: f64,
    pub error: f64,
    pub precision_bits: usize,
}

/// `log P_{N,M,L}(1/x)` with the mantissa width that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogP {
    pub value: f64,
    pub precision_bits: usize,
}

fn float(v: i64, bits: usize) -> FBig {
    FBig::from(v).with_precision(bits).value()
}

/// Hankel determinant `det[(x∂x)^{i+j} ₂F₁(2-L, 1-M; 2; 1/x)]` at a fixed
/// mantissa width, by Gaussian elimination with partial pivoting.
fn hankel_det_float(model: &FiniteModel, x: f64, bits: usize) -> Result<FBig> {
    let n = model.n() as usize;
    let (a, b) = (2 - model.l() as i64, 1 - model.m() as i64);
    let y = float(1, bits)
        / FBig::try_from(x)
            .map_err(|_| invalid("x must be finite"))?
            .with_precision(bits)
            .value();

    // Terms c_k y^k of the terminating series.
    let mut terms = Vec::with_capacity(model.max_site() as usize + 1);
    let mut t = float(1, bits);
    for k in 0..=model.max_site() as i64 {
        terms.push(t.clone());
        t = t * float((a + k) * (b + k), bits) * &y / float((k + 2) * (k + 1), bits);
    }
    let mut moments = Vec::with_capacity(2 * n - 1);
    for _ in 0..2 * n - 1 {
        moments.push(terms.iter().fold(float(0, bits), |acc, c| acc + c));
        for (k, c) in terms.iter_mut().enumerate() {
            *c *= float(-(k as i64), bits);
        }
    }

    let mut mat: Vec<Vec<FBig>> = (0..n)
        .map(|i| (0..n).map(|j| moments[i + j].clone()).collect())
        .collect();
    let zero = float(0, bits);
    let abs = |v: &FBig| if *v < zero { -v.clone() } else { v.clone() };
    let mut det = float(1, bits);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| abs(&mat[i][col]).partial_cmp(&abs(&mat[j][col])).expect("finite"))
            .expect("nonempty range");
        if mat[pivot][col] == zero {
            return Ok(zero);
        }
        if pivot != col {
            mat.swap(pivot, col);
            det = -det;
        }
        let head = mat[col][col].clone();
        det *= &head;
        for row in col + 1..n {
            let factor = &mat[row][col] / &head;
            for k in col + 1..n {
                let delta = &factor * &mat[col][k];
                mat[row][k] -= delta;
            }
        }
    }
    Ok(det)
}

fn relative_gap(a: &FBig, b: &FBig) -> f64 {
    let diff = (a - b).to_f64().value().abs();
    diff / b.to_f64().value().abs()
}

/// `log P_{N,M,L}(1/x)` through the Hankel determinant in `bits`-bit
/// floating point, doubling the width until two consecutive widths agree to
/// 1e-25 relative.
///
/// The Hankel matrix is severely ill-conditioned: around `N = 32` several
/// thousand bits are needed.
pub fn log_p_float(model: &FiniteModel, x: f64, bits: usize) -> Result<LogP> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(invalid("x must be positive and finite"));
    }
    if bits < 64 {
        return Err(invalid("precision must be at least 64 bits"));
    }
    let mut bits = bits;
    let mut prev = hankel_det_float(model, x, bits)?;
    loop {
        let next_bits = bits * 2;
        if next_bits > MAX_PRECISION_BITS {
            return Err(Error::Convergence(format!(
                "Hankel determinant for N={} did not stabilize below {MAX_PRECISION_BITS} bits",
                model.n()
            )));
        }
        let next = hankel_det_float(model, x, next_bits)?;
        let zero = float(0, next_bits);
        if prev > zero && next > zero && relative_gap(&prev, &next) <= 1e-25 {
            let log_det = next.ln().to_f64().value();
            let prefactor = BigRational::from_integer(factorial(model.n()).into()) * normalization_constant(model);
            let n = model.n() as f64;
            let value = log_det + ln_rational(&prefactor)? + 0.5 * n * (n - 1.0) * x.ln();
            return Ok(LogP { value, precision_bits: next_bits });
        }
        prev = next;
        bits = next_bits;
    }
}

/// Exact `log P_{N,M,L}(1/x)` for rational-representable `x`.
pub fn log_p_exact(model: &FiniteModel, x: f64) -> Result<f64> {
    let q = BigRational::from_f64(x).ok_or_else(|| invalid("x must be finite"))?;
    ln_rational(&p_value(model, &q)?)
}

/// Compares `(1/N²) log P` against `f₂(x)` for each `N`.
pub fn convergence_study(
    geom: &ScaledGeometry,
    x: f64,
    n_list: &[u64],
    convention: SizeConvention,
    bits: usize,
) -> Result<Vec<ConvergenceRecord>> {
    let asymptotic_value = f2(geom, x)?;
    n_list
        .iter()
        .map(|&n| {
            let model = convention.model(geom, n)?;
            let log_p = log_p_float(&model, x, bits)?;
            let finite_value = log_p.value / (n * n) as f64;
            Ok(ConvergenceRecord {
                n,
                m: model.m(),
                l: model.l(),
                convention,
                x,
                geometry: *geom,
                finite_value,
                asymptotic_value,
                error: (finite_value - asymptotic_value).abs(),
                precision_bits: log_p.precision_bits,
            })
        })
        .collect()
}
