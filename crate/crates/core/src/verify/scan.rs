//! Scenario scans along `x` at fixed geometry.

use serde::{Deserialize, Serialize};

use crate::asymptotics::{classify, critical_values, f2, phi, CriticalPoint, CriticalValues, Regime, ScaledGeometry, Scenario};
use crate::equilibrium::{density, endpoint_residuals, endpoints, first_moment};
use crate::error::{invalid, Result};

/// Quadrature tolerance for the normalization column.
const MASS_TOLERANCE: f64 = 1e-12;
/// Relative offset of the two probes straddling a boundary.
const STRADDLE: f64 = 1e-10;
/// Largest jump in `a`, `b` or `E` accepted as continuous across a boundary.
pub const CONTINUITY_TOLERANCE: f64 = 1e-6;

/// `count` points from `start` to `stop` inclusive, equally spaced in `log x`.
pub fn log_grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if !(start > 0.0 && start < stop && stop.is_finite()) {
        return Err(invalid("log grid needs 0 < start < stop"));
    }
    let mut g: Vec<f64> = grid(start.ln(), stop.ln(), count)?.into_iter().map(f64::exp).collect();
    // Pin the ends to the requested values.
    g[0] = start;
    if count > 1 {
        g[count - 1] = stop;
    }
    Ok(g)
}

/// `count` points from `start` to `stop` inclusive, equally spaced.
pub fn linear_grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if !(start < stop && start.is_finite() && stop.is_finite()) {
        return Err(invalid("grid needs start < stop"));
    }
    grid(start, stop, count)
}

fn grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    match count {
        0 => Err(invalid("grid count must be at least 1")),
        1 => Ok(vec![start]),
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            Ok((0..count)
                .map(|i| if i == count - 1 { stop } else { start + step * i as f64 })
                .collect())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub x: f64,
    pub scenario: Scenario,
    pub regime: Regime,
    pub on_boundary: Option<CriticalPoint>,
    pub a: f64,
    pub b: f64,
    pub first_moment: f64,
    pub phi: f64,
    pub f2: f64,
    /// `|∫ρ - 1|`.
    pub mass_residual: f64,
    /// Largest end-point equation residual.
    pub endpoint_residual: f64,
}

pub fn scan_row(geom: &ScaledGeometry, x: f64) -> Result<ScanRow> {
    let report = classify(geom, x)?;
    let support = endpoints(geom, x)?;
    let mass = density(&support).mass(MASS_TOLERANCE)?;
    Ok(ScanRow {
        x,
        scenario: report.scenario,
        regime: report.regime,
        on_boundary: report.on_boundary,
        a: support.a,
        b: support.b,
        first_moment: first_moment(&support)?,
        phi: phi(geom, x)?,
        f2: f2(geom, x)?,
        mass_residual: (mass - 1.0).abs(),
        endpoint_residual: endpoint_residuals(&support).max_abs(),
    })
}

/// Left and right limits of the support and first moment at a scenario
/// boundary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCheck {
    pub point: CriticalPoint,
    pub x: f64,
    pub left: Scenario,
    pub right: Scenario,
    pub jump_a: f64,
    pub jump_b: f64,
    pub jump_first_moment: f64,
}

impl BoundaryCheck {
    pub fn continuous(&self) -> bool {
        [self.jump_a, self.jump_b, self.jump_first_moment]
            .iter()
            .all(|j| j.abs() <= CONTINUITY_TOLERANCE)
    }
}

fn boundary_check(geom: &ScaledGeometry, point: CriticalPoint, x: f64) -> Result<BoundaryCheck> {
    let lo = endpoints(geom, x * (1.0 - STRADDLE))?;
    let hi = endpoints(geom, x * (1.0 + STRADDLE))?;
    Ok(BoundaryCheck {
        point,
        x,
        left: lo.scenario,
        right: hi.scenario,
        jump_a: hi.a - lo.a,
        jump_b: hi.b - lo.b,
        jump_first_moment: first_moment(&hi)? - first_moment(&lo)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioScan {
    pub geometry: ScaledGeometry,
    pub critical: CriticalValues,
    pub rows: Vec<ScanRow>,
    pub boundaries: Vec<BoundaryCheck>,
}

fn dedup<T: PartialEq + Copy>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for item in items {
        if out.last() != Some(&item) {
            out.push(item);
        }
    }
    out
}

impl ScenarioScan {
    /// Scenarios met along the grid, consecutive repeats removed.
    pub fn scenario_sequence(&self) -> Vec<Scenario> {
        dedup(self.rows.iter().map(|r| r.scenario))
    }

    pub fn regime_sequence(&self) -> Vec<Regime> {
        dedup(self.rows.iter().map(|r| r.regime))
    }

    /// Grid points `(x_i, x_{i+1})` between which the regime changes.
    pub fn regime_changes(&self) -> Vec<(f64, f64)> {
        self.rows
            .windows(2)
            .filter(|w| w[0].regime != w[1].regime)
            .map(|w| (w[0].x, w[1].x))
            .collect()
    }

    pub fn continuous(&self) -> bool {
        self.boundaries.iter().all(BoundaryCheck::continuous)
    }
}

/// One row per grid point plus a continuity check at every scenario
/// boundary of the geometry.
pub fn scenario_scan(geom: &ScaledGeometry, x_grid: &[f64]) -> Result<ScenarioScan> {
    let critical = critical_values(geom)?;
    let rows = x_grid.iter().map(|&x| scan_row(geom, x)).collect::<Result<_>>()?;
    let boundaries = critical
        .scenario_boundaries()
        .into_iter()
        .map(|(p, x)| boundary_check(geom, p, x))
        .collect::<Result<_>>()?;
    Ok(ScenarioScan { geometry: *geom, critical, rows, boundaries })
}
