mod exact;
mod measure;
mod scan;
mod verify;

use fivevertex::asymptotics::ScaledGeometry;

use crate::args::{Cli, Command, GeometryArgs};
use crate::error::CliError;
use crate::output::Table;
use crate::settings::Settings;

/// Runs one invocation. `Ok(false)` means the command completed but
/// reported a failure (a verification suite did not pass).
pub fn run(cli: Cli) -> Result<bool, CliError> {
    let settings = Settings::resolve(&cli.global)?;
    match cli.command {
        Command::Exact(args) => emit(&settings, exact::run(&settings, args)?),
        Command::Scan(args) => emit(&settings, scan::run(&settings, args)?),
        Command::Measure(args) => emit(&settings, measure::run(&settings, args)?),
        Command::Verify(args) => verify::run(&settings, args),
    }
}

fn emit(settings: &Settings, table: Table) -> Result<bool, CliError> {
    let mut out = settings.sink()?;
    table.write(settings.format, &mut out)?;
    Ok(true)
}

/// `μ` defaults to `λ`.
fn geometry(settings: &Settings, args: &GeometryArgs) -> Result<ScaledGeometry, CliError> {
    let lambda: f64 = settings.require(args.lambda, "lambda")?;
    let mu = settings.pick(args.mu, "mu")?.unwrap_or(lambda);
    Ok(ScaledGeometry::new(lambda, mu)?)
}

/// Both or neither of `Δ` and `α`.
fn weights(settings: &Settings, delta: Option<f64>, alpha: Option<f64>) -> Result<Option<(f64, f64)>, CliError> {
    match (settings.pick(delta, "delta")?, settings.pick(alpha, "alpha")?) {
        (Some(d), Some(a)) => Ok(Some((d, a))),
        (None, None) => Ok(None),
        _ => Err(CliError::usage("--delta and --alpha must be given together")),
    }
}

fn describe_geometry(table: &mut Table, geom: &ScaledGeometry) -> Result<(), CliError> {
    let crit = fivevertex::asymptotics::critical_values(geom)?;
    table.meta_float("lambda", geom.lambda()).meta_float("mu", geom.mu());
    for (point, value) in crit.scenario_boundaries() {
        table.meta_float(point.name(), value);
    }
    if !geom.is_symmetric() {
        table.meta("sbs_region", crit.sbs_region);
    }
    Ok(())
}
