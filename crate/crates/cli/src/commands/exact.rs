use fivevertex::exact::{
    p_polynomial, p_value, parse_rational, partition_function, tau_hankel, tau_loggas, FiniteModel, WeightParams,
};
use fivevertex::verify::log_p_float;
use num_traits::ToPrimitive;

use super::weights;
use crate::args::ExactArgs;
use crate::error::CliError;
use crate::output::{Cell, Table};
use crate::settings::Settings;

pub const COLUMNS: [&str; 4] = ["quantity", "x", "index", "value"];

pub fn run(settings: &Settings, args: ExactArgs) -> Result<Table, CliError> {
    let model = FiniteModel::new(
        settings.require(args.n, "N")?,
        settings.require(args.m, "M")?,
        settings.require(args.l, "L")?,
    )?;
    let points = settings
        .pick(args.x, "x")?
        .unwrap_or_default()
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()?;
    let weights = weights(settings, args.delta, args.alpha)?;
    let loggas = !settings.switch(args.no_loggas, "no-loggas")?;

    let mut table = Table::new(&COLUMNS);
    table
        .meta("command", "exact")
        .meta("N", model.n())
        .meta("M", model.m())
        .meta("L", model.l())
        .meta("degree", model.p_degree())
        .meta("precision", settings.precision)
        .meta("budget", settings.budget);
    if let Some((delta, alpha)) = weights {
        table.meta_float("delta", delta).meta_float("alpha", alpha);
    }

    let p = p_polynomial(&model)?;
    for (k, c) in p.coefficients().iter().enumerate() {
        table.push(vec!["p_coefficient".into(), Cell::Empty, k.into(), c.to_string().into()]);
    }
    for x in &points {
        let label = || Cell::text(x.to_string());
        let row = |q: &str, v: Cell| vec![q.into(), label(), Cell::Empty, v];
        let xf = x.to_f64().filter(|v| v.is_finite() && *v > 0.0);
        table.push(row("p_value", p_value(&model, x)?.to_string().into()));
        let hankel = tau_hankel(&model, x)?;
        table.push(row("tau_hankel", hankel.to_string().into()));
        if loggas {
            let gas = tau_loggas(&model, x, settings.budget)?;
            table.push(row("tau_loggas", gas.to_string().into()));
            table.push(row("tau_equal", (gas == hankel).into()));
        }
        if let Some(xf) = xf {
            let log_p = log_p_float(&model, xf, settings.precision)?;
            table.push(row("log_p_float", Cell::float(log_p.value)));
            if let Some((delta, alpha)) = weights {
                let z = partition_function(&model, &WeightParams::new(xf, delta, alpha)?)?;
                table.push(row("z", Cell::float(z)));
            }
        }
    }
    Ok(table)
}
