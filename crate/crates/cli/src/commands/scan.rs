use fivevertex::asymptotics::free_energy;
use fivevertex::exact::WeightParams;
use fivevertex::verify::{linear_grid, log_grid, scan_row};

use super::{describe_geometry, geometry, weights};
use crate::args::{ScanArgs, Spacing};
use crate::error::CliError;
use crate::output::{Cell, Table};
use crate::settings::Settings;

pub const COLUMNS: [&str; 12] = [
    "x",
    "scenario",
    "regime",
    "a",
    "b",
    "first_moment",
    "phi",
    "f2",
    "free_energy",
    "mass_residual",
    "endpoint_residual",
    "flag",
];

pub const DEFAULT_COUNT: usize = 101;

fn grid(settings: &Settings, args: &ScanArgs) -> Result<(Vec<f64>, String), CliError> {
    let explicit: Option<Vec<f64>> = settings.pick(args.x.clone(), "x")?;
    let start = settings.pick(args.x_start, "x-start")?;
    let stop = settings.pick(args.x_stop, "x-stop")?;
    match (explicit, start, stop) {
        (Some(xs), None, None) => {
            let n = xs.len();
            Ok((xs, format!("explicit, {n} points")))
        }
        (None, Some(start), Some(stop)) => {
            let count = settings.pick(args.count, "count")?.unwrap_or(DEFAULT_COUNT);
            let spacing = settings.pick(args.spacing, "spacing")?.unwrap_or_default();
            let (xs, name) = match spacing {
                Spacing::Log => (log_grid(start, stop, count)?, "log"),
                Spacing::Lin => (linear_grid(start, stop, count)?, "lin"),
            };
            Ok((xs, format!("{name} [{start}, {stop}], {count} points")))
        }
        (Some(_), _, _) => Err(CliError::usage("give either --x or --x-start/--x-stop, not both")),
        _ => Err(CliError::usage("missing grid: give --x or both --x-start and --x-stop")),
    }
}

pub fn run(settings: &Settings, args: ScanArgs) -> Result<Table, CliError> {
    let geom = geometry(settings, &args.geometry)?;
    let (xs, description) = grid(settings, &args)?;
    let weights = weights(settings, args.delta, args.alpha)?;

    let mut table = Table::new(&COLUMNS);
    table.meta("command", "scan");
    describe_geometry(&mut table, &geom)?;
    table.meta("grid", description);
    if let Some((delta, alpha)) = weights {
        table.meta_float("delta", delta).meta_float("alpha", alpha);
    }

    for x in xs {
        let r = scan_row(&geom, x)?;
        let mut flags = Vec::new();
        if let Some(p) = r.on_boundary {
            flags.push(format!("boundary:{p}"));
        }
        let f = match weights {
            None => Cell::Empty,
            Some((delta, alpha)) => match WeightParams::new(x, delta, alpha).and_then(|w| free_energy(&geom, &w)) {
                Ok(v) => Cell::float(v),
                Err(_) => {
                    flags.push("free-energy-undefined".into());
                    Cell::Empty
                }
            },
        };
        let values = [r.a, r.b, r.first_moment, r.phi, r.f2];
        if values.iter().any(|v| !v.is_finite()) {
            flags.push("non-finite".into());
        }
        table.push(vec![
            Cell::float(r.x),
            r.scenario.to_string().into(),
            r.regime.to_string().into(),
            Cell::float(r.a),
            Cell::float(r.b),
            Cell::float(r.first_moment),
            Cell::float(r.phi),
            Cell::float(r.f2),
            f,
            Cell::float(r.mass_residual),
            Cell::float(r.endpoint_residual),
            flags.join(";").into(),
        ]);
    }
    Ok(table)
}
