//! Cross-level verification: oracle sweeps, finite-size convergence,
//! transition order and named suites with machine-readable reports.

pub mod consistency;
pub mod convergence;
pub mod equivalence;
pub mod plane_partitions;
pub mod scan;
pub mod suites;
pub mod transition;

pub use consistency::{equilibrium_check, moment_check, phi_log_derivative, EquilibriumCheck, MomentCheck};
pub use convergence::{convergence_study, log_p_exact, log_p_float, ConvergenceRecord, LogP, SizeConvention};
pub use equivalence::{equivalence_sweep, structure_sweep, ModelCheck, SweepReport, SweepSpec};
pub use plane_partitions::{count_plane_partitions, macmahon_sweep, PlanePartitionCheck};
pub use scan::{linear_grid, log_grid, scan_row, scenario_scan, BoundaryCheck, ScanRow, ScenarioScan};
pub use suites::{run_suite, run_suites, CaseResult, Status, Suite, SuiteOptions, SuiteReport};
pub use transition::{assess, transition_order, TransitionProbe, TransitionVerdict, DEFAULT_STENCILS};
