//! Scaling-limit thermodynamics of the log-gas.
//!
//! The geometry is fixed by the aspect ratios `λ = lim (L-2)/N` and
//! `μ = lim (M-1)/N`; the weight enters only through `x`. All formulas are
//! evaluated in the canonical orientation `λ ≤ μ`, which is harmless because
//! the potential is symmetric under `λ ↔ μ`.

mod classify;
mod free_energy;
mod parametric;
mod psi;

pub use classify::{classify, critical_values, BOUNDARY_TOLERANCE, CriticalPoint, CriticalValues, Regime, Scenario, ScenarioReport};
pub use free_energy::{f2, free_energy, phi, phi_regime_i, phi_regime_i_of_t, phi_regime_ii_of_t};
pub use parametric::{t_of_x, x_of_t, x_of_t_offset, t_offset_of_x};
pub use psi::{psi, psi_equal_args};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Default threshold on `|λ - μ|` below which the symmetric formulas apply.
pub const DEFAULT_SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Aspect ratios of the rescaled lattice.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledGeometry {
    lambda: f64,
    mu: f64,
    symmetry_tolerance: f64,
}

impl ScaledGeometry {
    pub fn new(lambda: f64, mu: f64) -> Result<Self> {
        for (name, v) in [("lambda", lambda), ("mu", mu)] {
            if !(v.is_finite() && v >= 1.0) {
                return Err(invalid(format!("{name} must be a finite number >= 1, got {v}")));
            }
        }
        Ok(Self { lambda, mu, symmetry_tolerance: DEFAULT_SYMMETRY_TOLERANCE })
    }

    pub fn symmetric(lambda: f64) -> Result<Self> {
        Self::new(lambda, lambda)
    }

    pub fn with_symmetry_tolerance(mut self, tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(invalid("symmetry tolerance must be nonnegative"));
        }
        self.symmetry_tolerance = tol;
        Ok(self)
    }

    /// As given by the caller.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// As given by the caller.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn symmetry_tolerance(&self) -> f64 {
        self.symmetry_tolerance
    }

    /// `(min(λ,μ), max(λ,μ))`.
    pub fn canonical(&self) -> (f64, f64) {
        (self.lambda.min(self.mu), self.lambda.max(self.mu))
    }

    /// Position of the right hard wall, `γ = min(λ, μ)`.
    pub fn gamma(&self) -> f64 {
        self.lambda.min(self.mu)
    }

    pub fn is_symmetric(&self) -> bool {
        (self.lambda - self.mu).abs() <= self.symmetry_tolerance
    }

    /// `t₀ = μ - λ` in canonical orientation.
    pub fn t0(&self) -> f64 {
        let (l, m) = self.canonical();
        m - l
    }

    /// Most asymptotic formulas divide by `λ-1` or `μ-1`.
    pub(crate) fn require_interior(&self) -> Result<()> {
        if self.lambda <= 1.0 || self.mu <= 1.0 {
            return Err(invalid("lambda and mu must both exceed 1"));
        }
        Ok(())
    }
}

pub(crate) fn require_positive_x(x: f64) -> Result<()> {
    if !(x.is_finite() && x > 0.0) {
        return Err(invalid(format!("x must be a positive finite number, got {x}")));
    }
    Ok(())
}
