//! Closed-form resolvents and the quadrature oracle for them.
//!
//! Every scenario's resolvent has the shape `W = ½ log x + Σ eₖ log fₖ(z)`,
//! with factors `√|c-a| √(z-b) ± √|c-b| √(z-a)` or `√(b-a) √(z-c)`, and
//! `Σ eₖ = 0`. The end-point equations say that the constant left over as
//! `z → ∞` vanishes, so `W` is evaluated as `Σ eₖ log f̂ₖ` with each factor
//! divided by its leading behaviour `coefₖ √(z-a)`. Then `f̂ₖ → 1` and
//! `log f̂ₖ` is computed with `log1p`, which keeps `W` accurate to full
//! relative precision at large `|z|`, where `W ≈ 1/z`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::integrals::{kernel_integral, BandPoint};
use super::BandSupport;
use crate::error::{Error, Result};
use crate::numeric::complex_ln_1p;

/// Minimum distance from the cut at which the resolvent is evaluated.
pub const CUT_GUARD: f64 = 1e-12;

/// Offsets used to extrapolate boundary values on the real axis.
pub const BOUNDARY_OFFSETS: [f64; 3] = [1e-4, 1e-5, 1e-6];

#[derive(Clone, Copy, Debug, PartialEq)]
enum Factor {
    /// `√|c-a| √(z-b) + s √|c-b| √(z-a)`.
    Pair { c: f64, s: f64 },
    /// `√(b-a) √(z-c)`.
    Single { c: f64 },
}

/// Side of the real axis for boundary values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

/// Closed-form resolvent of one support.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolvent {
    support: BandSupport,
    factors: Vec<(Factor, f64)>,
}

pub fn resolvent(support: &BandSupport) -> Resolvent {
    let (l, m) = support.geometry.canonical();
    let left = if support.scenario.left_saturated() {
        Factor::Single { c: 0.0 }
    } else {
        Factor::Pair { c: 0.0, s: 1.0 }
    };
    let factors = if support.geometry.is_symmetric() {
        let right = if support.scenario.right_saturated() {
            Factor::Single { c: l }
        } else {
            Factor::Pair { c: l, s: 1.0 }
        };
        vec![(left, 2.0), (right, -2.0)]
    } else {
        let s = if support.scenario.right_saturated() { -1.0 } else { 1.0 };
        vec![(left, 2.0), (Factor::Pair { c: l, s }, -1.0), (Factor::Pair { c: m, s: 1.0 }, -1.0)]
    };
    Resolvent { support: *support, factors }
}

impl Resolvent {
    pub fn support(&self) -> &BandSupport {
        &self.support
    }

    fn on_cut(&self, z: Complex64) -> bool {
        let (lo, hi) = self.support.analytic_hull();
        z.im.abs() <= CUT_GUARD && z.re >= lo - CUT_GUARD && z.re <= hi + CUT_GUARD
    }

    /// `W(z)` for `z` off the support `S` (band plus saturated gaps).
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("resolvent at non-finite z = {z}")));
        }
        if self.on_cut(z) {
            return Err(Error::Domain(format!("resolvent evaluated on the support at z = {z}")));
        }
        let (a, b) = (self.support.a, self.support.b);
        let za = (z - a).sqrt();
        let zb = (z - b).sqrt();
        // r - 1 with r = √(z-b)/√(z-a), free of cancellation.
        let r_minus_1 = Complex64::new(a - b, 0.0) / (za * (zb + za));
        let mut w = Complex64::new(0.0, 0.0);
        for &(factor, e) in &self.factors {
            let log_hat = match factor {
                Factor::Pair { c, s } => {
                    let p = (c - a).abs().sqrt();
                    let q = s * (c - b).abs().sqrt();
                    complex_ln_1p(r_minus_1 * (p / (p + q)))
                }
                Factor::Single { c } => 0.5 * complex_ln_1p(Complex64::new(a - c, 0.0) / (z - a)),
            };
            w += log_hat * e;
        }
        Ok(w)
    }

    /// `W(x ± i0)` by polynomial extrapolation from
    /// [`BOUNDARY_OFFSETS`].
    pub fn boundary_value(&self, x: f64, side: Side) -> Result<Complex64> {
        let sign = match side {
            Side::Upper => 1.0,
            Side::Lower => -1.0,
        };
        let e = BOUNDARY_OFFSETS;
        let w: Vec<Complex64> = e
            .iter()
            .map(|&eps| self.eval(Complex64::new(x, sign * eps)))
            .collect::<Result<_>>()?;
        // Lagrange interpolation at ε = 0.
        let mut out = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            let mut weight = 1.0;
            for j in 0..3 {
                if i != j {
                    weight *= e[j] / (e[j] - e[i]);
                }
            }
            out += w[i] * weight;
        }
        Ok(out)
    }

    /// `-(1/2πi)[W(x+i0) - W(x-i0)]`.
    pub fn density_from_jump(&self, x: f64) -> Result<f64> {
        let jump = self.boundary_value(x, Side::Upper)? - self.boundary_value(x, Side::Lower)?;
        Ok((-jump / Complex64::new(0.0, 2.0 * PI)).re)
    }
}

/// Right-hand side `U` of the saddle-point equation for the gap-corrected
/// resolvent `H = W - (gap logs)` on the band.
pub(crate) fn effective_potential(support: &BandSupport, p: BandPoint) -> f64 {
    let (l, m) = support.geometry.canonical();
    let u = p.u;
    let left = if support.scenario.left_saturated() { 2.0 * p.from_a.ln() } else { 2.0 * u.ln() };
    let right = if support.geometry.is_symmetric() {
        if support.scenario.right_saturated() {
            -2.0 * p.to_b.ln()
        } else {
            -2.0 * (l - u).ln()
        }
    } else if support.scenario.right_saturated() {
        (l - u).ln() - 2.0 * p.to_b.ln() - (m - u).ln()
    } else {
        -(l - u).ln() - (m - u).ln()
    };
    support.x.ln() + left + right
}

/// Logarithmic cuts carried by the saturated gaps: `log(z/(z-a))` on the
/// left and `log((z-b)/(z-γ))` on the right.
pub(crate) fn gap_logs(support: &BandSupport, z: Complex64) -> Complex64 {
    let mut out = Complex64::new(0.0, 0.0);
    if support.scenario.left_saturated() {
        out += (z / (z - support.a)).ln();
    }
    if support.scenario.right_saturated() {
        out += ((z - support.b) / (z - support.gamma())).ln();
    }
    out
}

/// Absolute accuracy requested from the quadrature oracle.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

/// `W(z)` from the one-cut solution
/// `H(z) = √((z-a)(z-b))/(2π) ∫_a^b U(u) du / [(z-u)√((u-a)(b-u))]`
/// plus the saturated-gap logarithms, evaluated by adaptive quadrature.
pub fn resolvent_quadrature(support: &BandSupport, z: Complex64) -> Result<Complex64> {
    if support.zero_width {
        return Err(Error::Domain("quadrature oracle needs a band of positive width".into()));
    }
    let closed = resolvent(support);
    if closed.on_cut(z) {
        return Err(Error::Domain(format!("quadrature oracle evaluated on the support at z = {z}")));
    }
    let (a, b) = (support.a, support.b);
    let integral = kernel_integral(a, b, z, |p| effective_potential(support, p), QUADRATURE_TOLERANCE)?;
    let h = (z - a).sqrt() * (z - b).sqrt() / (2.0 * PI) * integral.value;
    Ok(h + gap_logs(support, z))
}
