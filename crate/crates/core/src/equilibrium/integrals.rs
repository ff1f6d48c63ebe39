//! Closed-form singular integrals over a band `[a, b]` and a numerical
//! evaluator for the same kernel.
//!
//! All closed forms hold for `z ∈ ℂ \ [a, b]` with principal branches, every
//! `√(z-c)` cut along `(-∞, c]`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::numeric::{integrate_complex, Integral};

fn csqrt(z: Complex64) -> Complex64 {
    z.sqrt()
}

/// `∫_a^b g(u) du / [(z-u) √((u-a)(b-u))]`, via `u = (a+b)/2 - ((b-a)/2) cos θ`,
/// which turns the measure into `dθ` on `[0, π]`.
pub fn kernel_integral(
    a: f64,
    b: f64,
    z: Complex64,
    g: impl Fn(BandPoint) -> f64,
    tol: f64,
) -> Result<Integral<Complex64>> {
    // Both halves of [0, π] are folded onto [0, π/2], each measured from its
    // own end point, so the edge singularities of `g` sit at φ = 0 exactly.
    let w = b - a;
    integrate_complex(
        |phi: f64| {
            let s = w * (0.5 * phi).sin().powi(2);
            let lo = BandPoint { a, b, u: a + s, from_a: s, to_b: w - s };
            let hi = BandPoint { a, b, u: b - s, from_a: w - s, to_b: s };
            g(lo) / (z - lo.u) + g(hi) / (z - hi.u)
        },
        0.0,
        0.5 * PI,
        tol,
    )
}

/// A quadrature node `u` in `[a, b]` with its distances to both ends.
#[derive(Clone, Copy, Debug)]
pub struct BandPoint {
    a: f64,
    b: f64,
    pub u: f64,
    pub from_a: f64,
    pub to_b: f64,
}

impl BandPoint {
    pub fn new(a: f64, b: f64, u: f64) -> Self {
        Self { a, b, u, from_a: u - a, to_b: b - u }
    }

    /// `u - c`, exact at the band ends.
    pub fn minus(&self, c: f64) -> f64 {
        if c == self.a {
            self.from_a
        } else if c == self.b {
            -self.to_b
        } else {
            self.u - c
        }
    }
}

/// `u(θ) = (a+b)/2 - ((b-a)/2) cos θ`, computed from the nearer end so that
/// `u - a` and `b - u` keep full relative precision near the edges.
pub(crate) fn band_point(a: f64, b: f64, theta: f64) -> f64 {
    let w = b - a;
    if theta <= 0.5 * PI {
        a + w * (0.5 * theta).sin().powi(2)
    } else {
        b - w * (0.5 * theta).cos().powi(2)
    }
}

/// `∫_a^b du / [(z-u)√((u-a)(b-u))] = π / √((z-a)(z-b))`.
pub fn inverse_sqrt_kernel(a: f64, b: f64, z: Complex64) -> Complex64 {
    Complex64::new(PI, 0.0) / (csqrt(z - a) * csqrt(z - b))
}

fn pair(p: f64, q: f64, a: f64, b: f64, z: Complex64) -> Complex64 {
    csqrt(z - b) * p.sqrt() + csqrt(z - a) * q.sqrt()
}

/// `∫_a^b log((u-c)/(u-d)) du / [(z-u)√((u-a)(b-u))]` for `c, d` both on the
/// same side of the band.
pub fn log_ratio_kernel(a: f64, b: f64, c: f64, d: f64, z: Complex64) -> Result<Complex64> {
    let pref = Complex64::new(2.0 * PI, 0.0) / (csqrt(z - a) * csqrt(z - b));
    let ratio = if c <= a && d <= a {
        pair(a - c, b - c, a, b, z) / pair(a - d, b - d, a, b, z)
    } else if c >= b && d >= b {
        pair(c - a, c - b, a, b, z) / pair(d - a, d - b, a, b, z)
    } else {
        return Err(invalid("log_ratio_kernel needs c, d <= a or c, d >= b"));
    };
    Ok(pref * ratio.ln())
}

/// `∫_a^b log((u-c)/(d-u)) du / [(z-u)√((u-a)(b-u))]` for `c ≤ a`, `b ≤ d`.
pub fn log_straddle_kernel(a: f64, b: f64, c: f64, d: f64, z: Complex64) -> Result<Complex64> {
    if !(c <= a && b <= d) {
        return Err(invalid("log_straddle_kernel needs c <= a and b <= d"));
    }
    let pref = Complex64::new(2.0 * PI, 0.0) / (csqrt(z - a) * csqrt(z - b));
    Ok(pref * (pair(a - c, b - c, a, b, z) / pair(d - a, d - b, a, b, z)).ln())
}

/// Jump `f(x+i0) - f(x-i0)` of `f(z) = log[√(α(z-a)) + √(β(z-b))]` across
/// the band, `2i arctan √(β(b-x)/(α(x-a)))`.
pub fn sqrt_sum_log_jump(alpha: f64, beta: f64, a: f64, b: f64, x: f64) -> Complex64 {
    let theta = (beta * (b - x)).sqrt().atan2((alpha * (x - a)).sqrt());
    Complex64::new(0.0, 2.0 * theta)
}

/// `f(z) = log[√(α(z-a)) + √(β(z-b))]` itself.
pub fn sqrt_sum_log(alpha: f64, beta: f64, a: f64, b: f64, z: Complex64) -> Complex64 {
    (csqrt((z - a) * alpha) + csqrt((z - b) * beta)).ln()
}
