//! Explicit solution of the regime-II end-point system.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::asymptotics::{x_of_t, ScaledGeometry};
use crate::error::{invalid, Error, Result};

/// Sign distinguishing VBV (`+1`) from VBS (`-1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Nu {
    Plus,
    Minus,
}

impl Nu {
    pub fn value(self) -> f64 {
        match self {
            Nu::Plus => 1.0,
            Nu::Minus => -1.0,
        }
    }
}

impl fmt::Display for Nu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Nu::Plus => "+1",
            Nu::Minus => "-1",
        })
    }
}

/// `A± = ¼(√b ± √a)²`, `B± = ¼(√(λ-a) ± ν√(λ-b))²`,
/// `C± = ¼(√(μ-a) ± √(μ-b))²` as rational functions of `t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParametricState {
    pub t: f64,
    pub w_plus: f64,
    pub w_minus: f64,
    pub a_plus: f64,
    pub a_minus: f64,
    pub b_plus: f64,
    pub b_minus: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub n_plus: f64,
    pub n_minus: f64,
    pub nu: Nu,
    pub x: f64,
}

fn rel(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0)
}

impl ParametricState {
    /// Residuals of the multiplicative, additive, ratio and linear
    /// relations, each relative to `max(1, |lhs|, |rhs|)`.
    pub fn residuals(&self, lambda: f64, mu: f64) -> [f64; 7] {
        let s = self;
        [
            rel(s.a_plus * s.a_minus, s.b_plus * s.b_minus),
            rel(s.a_plus * s.a_minus, s.c_plus * s.c_minus),
            rel(s.a_plus + s.a_minus, lambda - s.b_plus - s.b_minus),
            rel(s.a_plus + s.a_minus, mu - s.c_plus - s.c_minus),
            rel(s.a_minus * s.c_plus / (s.a_plus * s.b_minus), s.x),
            rel(2.0 * s.a_plus + s.b_plus + s.c_plus, s.n_plus),
            rel(2.0 * s.a_minus + s.b_minus + s.c_minus, s.n_minus),
        ]
    }

    pub fn max_residual(&self, lambda: f64, mu: f64) -> f64 {
        self.residuals(lambda, mu).into_iter().fold(0.0, f64::max)
    }

    /// `a = (√A₊ - √A₋)²`.
    pub fn a(&self) -> f64 {
        (self.a_plus.sqrt() - self.a_minus.sqrt()).powi(2)
    }

    /// `b = (√A₊ + √A₋)²`.
    pub fn b(&self) -> f64 {
        (self.a_plus.sqrt() + self.a_minus.sqrt()).powi(2)
    }
}

/// Tolerance on the relations checked by [`parametric_state`].
pub const PARAMETRIC_TOLERANCE: f64 = 1e-12;

pub fn parametric_state(geom: &ScaledGeometry, t: f64, nu: Nu) -> Result<ParametricState> {
    geom.require_interior()?;
    let (l, m) = geom.canonical();
    let t0 = m - l;
    if !(t > t0 && t.is_finite()) {
        return Err(invalid(format!("t = {t} must exceed t0 = {t0}")));
    }
    let n_plus = l + m - 1.0;
    let n_minus = 1.0;
    let w_minus = (n_plus * n_minus + t0 * t0 * (t + 1.0) / (t * t)) / (n_plus + n_minus * (t + 1.0));
    let w_plus = (t + 1.0) * w_minus;

    let d = t - t0;
    let den = 2.0 * t * t * (l + m + t);
    let p_l = (2.0 * l - 2.0) * t0 + (2.0 * l - 1.0) * d; // (2λ-1)t + λ - μ
    let p_m = 2.0 * m * t0 + (2.0 * m - 1.0) * d; // (2μ-1)t - λ + μ
    let s = ParametricState {
        t,
        w_plus,
        w_minus,
        a_plus: p_l * p_m / den,
        a_minus: (t + 1.0) * (t + t0) * d / den,
        b_plus: (t + 1.0) * d * p_l / den,
        b_minus: (t + t0) * p_m / den,
        c_plus: (t + 1.0) * (t + t0) * p_m / den,
        c_minus: d * p_l / den,
        n_plus,
        n_minus,
        nu,
        x: x_of_t(geom, t)?,
    };

    let quantities = [s.a_plus, s.a_minus, s.b_plus, s.b_minus, s.c_plus, s.c_minus];
    if quantities.iter().any(|q| !(*q >= 0.0)) {
        return Err(Error::Consistency(format!("negative A/B/C at t = {t}: {quantities:?}")));
    }
    let mut residuals = s.residuals(l, m).to_vec();
    residuals.push(rel(s.w_plus, n_plus - 2.0 * s.a_plus));
    residuals.push(rel(s.w_minus, n_minus - 2.0 * s.a_minus));
    if residuals.iter().any(|r| !(*r <= PARAMETRIC_TOLERANCE)) {
        return Err(Error::Consistency(format!("parametric relations violated at t = {t}: {residuals:?}")));
    }
    Ok(s)
}
