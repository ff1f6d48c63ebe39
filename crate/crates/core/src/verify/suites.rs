//! Named verification suites and their JSON reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::consistency::{equilibrium_check, moment_check};
use super::convergence::{convergence_study, SizeConvention, DEFAULT_PRECISION_BITS};
use super::equivalence::{equivalence_sweep, structure_sweep, SweepReport, SweepSpec};
use super::plane_partitions::macmahon_sweep;
use super::scan::{log_grid, scenario_scan};
use super::transition::{assess, transition_order, DEFAULT_STENCILS};
use crate::asymptotics::{
    critical_values, phi, psi, t_of_x, x_of_t, CriticalPoint, Regime, ScaledGeometry,
};
use crate::equilibrium::{parametric_state, Nu};
use crate::error::{Error, Result};
use crate::exact::DEFAULT_WORK_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Equivalence,
    Structure,
    Macmahon,
    Equilibrium,
    Moments,
    SpecialValues,
    Transitions,
    Convergence,
    Parametric,
    Phases,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Equivalence,
        Suite::Structure,
        Suite::Macmahon,
        Suite::Equilibrium,
        Suite::Moments,
        Suite::SpecialValues,
        Suite::Transitions,
        Suite::Convergence,
        Suite::Parametric,
        Suite::Phases,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Equivalence => "equivalence",
            Suite::Structure => "structure",
            Suite::Macmahon => "macmahon",
            Suite::Equilibrium => "equilibrium",
            Suite::Moments => "moments",
            Suite::SpecialValues => "special-values",
            Suite::Transitions => "transitions",
            Suite::Convergence => "convergence",
            Suite::Parametric => "parametric",
            Suite::Phases => "phases",
        }
    }

    pub fn known_names() -> String {
        Suite::ALL.iter().map(|s| s.name()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite '{s}'; known suites: {}", Suite::known_names())))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: String,
    pub status: Status,
    pub residuals: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseResult {
    fn new(case: impl Into<String>, ok: bool, residuals: &[(&str, f64)]) -> Self {
        Self {
            case: case.into(),
            status: Status::from_bool(ok),
            residuals: residuals.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn error(case: impl Into<String>, e: &Error) -> Self {
        Self::new(case, false, &[]).with_note(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub status: Status,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    fn new(suite: Suite, mut cases: Vec<CaseResult>) -> Self {
        cases.sort_by(|a, b| a.case.cmp(&b.case));
        let status = Status::from_bool(cases.iter().all(|c| c.status == Status::Pass));
        Self { suite, status, cases }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Knobs shared by the suites.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub sweep: SweepSpec,
    pub budget: u128,
    pub precision_bits: usize,
    pub convergence_sizes: Vec<u64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            sweep: SweepSpec::default(),
            budget: DEFAULT_WORK_BUDGET,
            precision_bits: DEFAULT_PRECISION_BITS,
            convergence_sizes: vec![8, 16, 32],
        }
    }
}

/// Tolerances of the suites.
pub mod tolerance {
    pub const MASS: f64 = 1e-7;
    pub const DENSITY_RANGE: f64 = 1e-10;
    pub const ENDPOINT: f64 = 1e-10;
    /// On `|z W(z) - 1 - E/z| · |z|` at `|z| = 10⁶`.
    pub const LARGE_Z: f64 = 1e-4;
    pub const QUADRATURE: f64 = 1e-6;
    pub const MOMENT_DERIVATIVE: f64 = 1e-6;
    pub const MOMENT_DENSITY: f64 = 1e-7;
    pub const PHI_AT_ONE: f64 = 1e-10;
    pub const PHI_LARGE_X: f64 = 1e-6;
    pub const PHI_SMALL_X: f64 = 1e-5;
    pub const THIRD_JUMP_VARIATION: f64 = 0.1;
    pub const CONVERGENCE_CAP: f64 = 0.05;
    pub const PARAMETRIC: f64 = 1e-12;
    pub const ROUND_TRIP: f64 = 1e-12;
}

/// `(λ, μ, x)` configurations covering every scenario in both symmetric
/// and asymmetric geometries.
pub const EQUILIBRIUM_GRID: [(f64, f64, f64); 16] = [
    (2.0, 2.0, 1.0),
    (2.0, 2.0, 3.0),
    (2.0, 2.0, 20.0),
    (2.0, 2.0, 0.05),
    (1.5, 1.5, 10.0),
    (1.5, 1.5, 0.1),
    (2.0, 3.0, 16.0),
    (2.0, 3.0, 1.5),
    (2.0, 3.0, 0.5),
    (2.0, 3.0, 4.0),
    (1.2, 3.0, 8.0),
    (1.2, 3.0, 2.0),
    (1.2, 3.0, 15.0),
    (1.5, 4.0, 0.3),
    (1.5, 4.0, 3.0),
    (1.5, 4.0, 20.0),
];

/// Geometries for the `Φ`-level suites.
pub const GEOMETRIES: [(f64, f64); 5] = [(2.0, 2.0), (1.5, 1.5), (2.0, 3.0), (1.2, 3.0), (1.5, 4.0)];

fn key(l: f64, m: f64, x: Option<f64>) -> String {
    match x {
        Some(x) => format!("lambda={l},mu={m},x={x}"),
        None => format!("lambda={l},mu={m}"),
    }
}

fn geometry(l: f64, m: f64) -> Result<ScaledGeometry> {
    ScaledGeometry::new(l, m)
}

fn sweep_cases(report: SweepReport) -> Vec<CaseResult> {
    report
        .checks
        .into_iter()
        .map(|c| {
            let case = CaseResult::new(c.key(), c.passed(), &[]);
            if c.passed() {
                case
            } else {
                case.with_note(c.failures.join("; "))
            }
        })
        .collect()
}

fn equilibrium_cases() -> Vec<CaseResult> {
    use tolerance::*;
    EQUILIBRIUM_GRID
        .par_iter()
        .map(|&(l, m, x)| {
            let k = key(l, m, Some(x));
            match geometry(l, m).and_then(|g| equilibrium_check(&g, x)) {
                Ok(e) => {
                    let ok = e.mass_residual <= MASS
                        && e.density_min >= -DENSITY_RANGE
                        && e.density_max <= 1.0 + DENSITY_RANGE
                        && e.endpoint_residual <= ENDPOINT
                        && e.large_z_residual <= LARGE_Z
                        && e.quadrature_residual <= QUADRATURE;
                    CaseResult::new(
                        k,
                        ok,
                        &[
                            ("mass", e.mass_residual),
                            ("density_min", e.density_min),
                            ("density_max", e.density_max),
                            ("endpoint", e.endpoint_residual),
                            ("large_z", e.large_z_residual),
                            ("quadrature", e.quadrature_residual),
                        ],
                    )
                    .with_note(e.scenario.to_string())
                }
                Err(e) => CaseResult::error(k, &e),
            }
        })
        .collect()
}

fn moment_cases() -> Vec<CaseResult> {
    EQUILIBRIUM_GRID
        .par_iter()
        .map(|&(l, m, x)| {
            let k = key(l, m, Some(x));
            match geometry(l, m).and_then(|g| moment_check(&g, x)) {
                Ok(c) => CaseResult::new(
                    k,
                    c.derivative_residual <= tolerance::MOMENT_DERIVATIVE
                        && c.density_residual <= tolerance::MOMENT_DENSITY,
                    &[("x_dphi_dx", c.derivative_residual), ("z_rho", c.density_residual)],
                )
                .with_note(c.scenario.to_string()),
                Err(e) => CaseResult::error(k, &e),
            }
        })
        .collect()
}

/// `Φ(1) = -Ψ(λ-1, μ-1)`, `Φ(x) - ½ log x → 0` as `x → ∞` and
/// `Φ(x) - (λ-½) log x → -Ψ(μ-λ, λ-1)` as `x → 0` (canonical `λ ≤ μ`).
fn special_value_cases() -> Vec<CaseResult> {
    use tolerance::*;
    GEOMETRIES
        .iter()
        .map(|&(l, m)| {
            let k = key(l, m, None);
            let run = || -> Result<CaseResult> {
                let g = geometry(l, m)?;
                let (lc, mc) = g.canonical();
                let at_one = (phi(&g, 1.0)? + psi(lc - 1.0, mc - 1.0)).abs();
                let large = (phi(&g, 1e8)? - 0.5 * 1e8f64.ln()).abs();
                let small_x = 1e-8f64;
                let small = (phi(&g, small_x)? - (lc - 0.5) * small_x.ln() + psi(mc - lc, lc - 1.0)).abs();
                Ok(CaseResult::new(
                    k.clone(),
                    at_one <= PHI_AT_ONE && large <= PHI_LARGE_X && small <= PHI_SMALL_X,
                    &[("phi_at_one", at_one), ("large_x", large), ("small_x", small)],
                ))
            };
            run().unwrap_or_else(|e| CaseResult::error(k, &e))
        })
        .collect()
}

fn transition_cases() -> Vec<CaseResult> {
    let mut out = Vec::new();
    for &(l, m) in &GEOMETRIES {
        let Ok(g) = geometry(l, m) else { continue };
        let Ok(crit) = critical_values(&g) else { continue };
        for which in CriticalPoint::ALL {
            if crit.get(which).is_none() {
                continue;
            }
            let k = format!("{},point={}", key(l, m, None), which.name());
            let regime_change = matches!(which, CriticalPoint::Xc | CriticalPoint::XcTilde);
            let case = match transition_order(&g, which, &DEFAULT_STENCILS) {
                Ok(probes) => {
                    let v = assess(&probes);
                    let ok = if regime_change {
                        v.third_order && v.third_variation <= tolerance::THIRD_JUMP_VARIATION
                    } else {
                        v.value_vanishes && v.first_vanishes && v.second_vanishes && v.third_vanishes
                    };
                    let mut residuals = vec![("third_jump", v.third_jump), ("third_variation", v.third_variation)];
                    if let Some(p) = probes.last() {
                        residuals.extend([
                            ("value_jump", p.value_jump),
                            ("first_jump", p.first_jump),
                            ("second_jump", p.second_jump),
                        ]);
                    }
                    CaseResult::new(k, ok, &residuals)
                }
                Err(e) => CaseResult::error(k, &e),
            };
            out.push(case);
        }
    }
    out
}

fn convergence_cases(opts: &SuiteOptions) -> Vec<CaseResult> {
    let mut jobs = Vec::new();
    for (l, m) in [(2.0, 2.0), (2.0, 3.0)] {
        for x in [0.5, 1.0, 2.0] {
            jobs.push((l, m, x));
        }
    }
    jobs.par_iter()
        .map(|&(l, m, x)| {
            let k = key(l, m, Some(x));
            let run = geometry(l, m).and_then(|g| {
                convergence_study(&g, x, &opts.convergence_sizes, SizeConvention::LogGas, opts.precision_bits)
            });
            match run {
                Ok(records) => {
                    let errors: Vec<f64> = records.iter().map(|r| r.error).collect();
                    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
                    let last = errors.last().copied().unwrap_or(f64::INFINITY);
                    let residuals: Vec<(String, f64)> =
                        records.iter().map(|r| (format!("error_n{}", r.n), r.error)).collect();
                    let named: Vec<(&str, f64)> = residuals.iter().map(|(k, v)| (k.as_str(), *v)).collect();
                    CaseResult::new(k, decreasing && last <= tolerance::CONVERGENCE_CAP, &named)
                }
                Err(e) => CaseResult::error(k, &e),
            }
        })
        .collect()
}

/// 100 values of `t` in `(t₀, 10 t_c]`.
pub fn parametric_grid(t0: f64, t_c: f64) -> Vec<f64> {
    (1..=100).map(|i| t0 + (10.0 * t_c - t0) * i as f64 / 100.0).collect()
}

fn parametric_cases() -> Vec<CaseResult> {
    [(2.0, 3.0), (1.2, 3.0), (1.5, 4.0)]
        .iter()
        .map(|&(l, m)| {
            let k = key(l, m, None);
            let run = || -> Result<CaseResult> {
                let g = geometry(l, m)?;
                let crit = critical_values(&g)?;
                let (t0, t_c, t2) = (
                    crit.t0.unwrap_or_default(),
                    crit.t_c.unwrap_or_default(),
                    crit.t2.unwrap_or_default(),
                );
                let (mut worst, mut trip, mut prev, mut monotone) = (0.0f64, 0.0f64, 0.0f64, true);
                for t in parametric_grid(t0, t_c) {
                    let nu = if t >= t2 { Nu::Plus } else { Nu::Minus };
                    let s = parametric_state(&g, t, nu)?;
                    worst = worst.max(s.max_residual(l.min(m), l.max(m)));
                    let x = x_of_t(&g, t)?;
                    monotone &= x > prev;
                    prev = x;
                    trip = trip.max((t_of_x(&g, x)? - t).abs() / t.max(1.0));
                }
                Ok(CaseResult::new(
                    k.clone(),
                    worst <= tolerance::PARAMETRIC && trip <= tolerance::ROUND_TRIP && monotone,
                    &[("relations", worst), ("round_trip", trip), ("monotone", f64::from(u8::from(monotone)))],
                ))
            };
            run().unwrap_or_else(|e| CaseResult::error(k, &e))
        })
        .collect()
}

/// Regime structure: three regimes when `λ = μ`, two otherwise, each change
/// bracketed at the critical value.
fn phase_cases() -> Vec<CaseResult> {
    GEOMETRIES
        .iter()
        .map(|&(l, m)| {
            let k = key(l, m, None);
            let run = || -> Result<CaseResult> {
                let g = geometry(l, m)?;
                let scan = scenario_scan(&g, &log_grid(1e-4, 1e4, 401)?)?;
                let regimes = scan.regime_sequence();
                let expected = if g.is_symmetric() {
                    vec![Regime::III, Regime::II, Regime::I]
                } else {
                    vec![Regime::II, Regime::I]
                };
                let bracketed = scan
                    .regime_changes()
                    .iter()
                    .zip(scan.critical.regime_boundaries())
                    .all(|((lo, hi), (_, xc))| *lo < xc && xc <= *hi);
                let changes = scan.regime_changes().len();
                let ok = regimes == expected && bracketed && changes + 1 == expected.len() && scan.continuous();
                let worst_jump = scan
                    .boundaries
                    .iter()
                    .flat_map(|b| [b.jump_a, b.jump_b, b.jump_first_moment])
                    .fold(0.0f64, |acc, j| acc.max(j.abs()));
                Ok(CaseResult::new(
                    k.clone(),
                    ok,
                    &[("regimes", regimes.len() as f64), ("boundary_jump", worst_jump)],
                ))
            };
            run().unwrap_or_else(|e| CaseResult::error(k, &e))
        })
        .collect()
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> SuiteReport {
    let cases = match suite {
        Suite::Equivalence => sweep_cases(equivalence_sweep(&opts.sweep, opts.budget)),
        Suite::Structure => sweep_cases(structure_sweep(&opts.sweep)),
        Suite::Macmahon => macmahon_sweep(3)
            .into_iter()
            .map(|c| {
                CaseResult::new(format!("a={},b={},c={}", c.a, c.b, c.c), c.agree, &[])
                    .with_note(format!("enumerated {}, formula {}", c.enumerated, c.formula))
            })
            .collect(),
        Suite::Equilibrium => equilibrium_cases(),
        Suite::Moments => moment_cases(),
        Suite::SpecialValues => special_value_cases(),
        Suite::Transitions => transition_cases(),
        Suite::Convergence => convergence_cases(opts),
        Suite::Parametric => parametric_cases(),
        Suite::Phases => phase_cases(),
    };
    SuiteReport::new(suite, cases)
}

/// Runs the suites in the given order.
pub fn run_suites(suites: &[Suite], opts: &SuiteOptions) -> Vec<SuiteReport> {
    suites.iter().map(|&s| run_suite(s, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_value(s).unwrap(), serde_json::Value::String(s.name().into()));
        }
        let err = "nope".parse::<Suite>().unwrap_err().to_string();
        assert!(err.contains("equivalence") && err.contains("phases"));
    }

    #[test]
    fn cheap_suites_pass() {
        let opts = SuiteOptions::default();
        for s in [Suite::Macmahon, Suite::SpecialValues, Suite::Parametric, Suite::Phases, Suite::Transitions] {
            let r = run_suite(s, &opts);
            assert!(r.passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
        }
    }

    #[test]
    fn report_is_sorted() {
        let r = run_suite(Suite::Macmahon, &SuiteOptions::default());
        assert!(r.cases.windows(2).all(|w| w[0].case <= w[1].case));
        assert_eq!(r.cases.len(), 64);
    }
}
