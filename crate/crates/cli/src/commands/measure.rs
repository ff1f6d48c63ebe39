use fivevertex::asymptotics::{classify, BOUNDARY_TOLERANCE};
use fivevertex::equilibrium::{BandSupport, MeasureClosure};
use num_complex::Complex64;

use super::{describe_geometry, geometry};
use crate::args::{BoundarySide, MeasureArgs};
use crate::error::CliError;
use crate::output::{Cell, Table};
use crate::settings::Settings;

pub const DENSITY_COLUMNS: [&str; 3] = ["z", "rho", "region"];
pub const CONTOUR_COLUMNS: [&str; 5] = ["theta", "z_re", "z_im", "w_re", "w_im"];
pub const DEFAULT_POINTS: usize = 10001;

fn region(s: &BandSupport, z: f64) -> &'static str {
    let gap = |saturated: bool| if saturated { "saturated" } else { "void" };
    if z < s.a || (s.zero_width && z <= s.a) {
        gap(s.scenario.left_saturated())
    } else if z > s.b || s.zero_width {
        gap(s.scenario.right_saturated())
    } else {
        "band"
    }
}

pub fn run(settings: &Settings, args: MeasureArgs) -> Result<Table, CliError> {
    let geom = geometry(settings, &args.geometry)?;
    let x: f64 = settings.require(args.x, "x")?;
    let report = classify(&geom, x)?;
    let side = settings.pick(args.boundary_side, "boundary-side")?;
    let x_eval = match (report.on_boundary, side) {
        (Some(p), None) => {
            return Err(CliError::usage(format!(
                "x = {x} lies on the critical value {p}; pass --boundary-side lower or --boundary-side upper"
            )))
        }
        // Far enough below the critical value to leave the snapping window.
        (Some(_), Some(BoundarySide::Lower)) => x - 4.0 * BOUNDARY_TOLERANCE * x.max(1.0),
        _ => x,
    };
    let closure = MeasureClosure::new(&geom, x_eval)?;
    let s = closure.support;
    let gamma = s.gamma();

    let contour = settings.pick(args.contour, "contour")?;
    let mut table = Table::new(if contour.is_some() { &CONTOUR_COLUMNS } else { &DENSITY_COLUMNS });
    table.meta("command", "measure");
    describe_geometry(&mut table, &geom)?;
    table
        .meta_float("x", x)
        .meta_float("x_evaluated", x_eval)
        .meta("scenario", s.scenario)
        .meta("regime", s.regime)
        .meta_float("a", s.a)
        .meta_float("b", s.b)
        .meta_float("first_moment", closure.first_moment);
    if let Some(p) = s.on_boundary.or(report.on_boundary) {
        table.meta("boundary", p);
    }

    match contour {
        Some(count) => {
            if count == 0 {
                return Err(CliError::usage("--contour needs at least one point"));
            }
            let radius = settings.pick(args.radius, "radius")?.unwrap_or(gamma);
            if !(radius > 0.5 * gamma && radius.is_finite()) {
                return Err(CliError::usage(format!("--radius must exceed γ/2 = {}", 0.5 * gamma)));
            }
            table.meta_float("center", 0.5 * gamma).meta_float("radius", radius);
            for k in 0..count {
                let theta = std::f64::consts::TAU * k as f64 / count as f64;
                let z = Complex64::new(0.5 * gamma, 0.0) + Complex64::from_polar(radius, theta);
                let w = closure.resolvent.eval(z)?;
                table.push(vec![
                    Cell::float(theta),
                    Cell::float(z.re),
                    Cell::float(z.im),
                    Cell::float(w.re),
                    Cell::float(w.im),
                ]);
            }
        }
        None => {
            let points = settings.pick(args.points, "points")?.unwrap_or(DEFAULT_POINTS);
            if points < 2 {
                return Err(CliError::usage("--points must be at least 2"));
            }
            for i in 0..points {
                let z = if i + 1 == points { gamma } else { gamma * i as f64 / (points - 1) as f64 };
                table.push(vec![Cell::float(z), Cell::float(closure.density.eval(z)?), region(&s, z).into()]);
            }
        }
    }
    Ok(table)
}
