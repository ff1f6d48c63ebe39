use std::collections::BTreeMap;

use fivevertex::verify::{run_suites, Suite, SuiteOptions, SuiteReport};
use serde::Serialize;
use std::io::Write;

use crate::args::VerifyArgs;
use crate::error::CliError;
use crate::settings::Settings;

#[derive(Serialize)]
struct Report<'a> {
    metadata: BTreeMap<&'static str, String>,
    status: &'static str,
    suites: &'a [SuiteReport],
}

pub fn run(settings: &Settings, args: VerifyArgs) -> Result<bool, CliError> {
    let suites = match settings.pick(args.suite, "suite")? {
        None => Suite::ALL.to_vec(),
        Some(names) => names.iter().map(|n| n.parse()).collect::<Result<Vec<Suite>, _>>()?,
    };
    let mut opts = SuiteOptions { budget: settings.budget, precision_bits: settings.precision, ..Default::default() };
    if let Some(n) = settings.pick(args.max_n, "max-n")? {
        opts.sweep.max_n = n;
    }
    if let Some(sizes) = settings.pick(args.sizes, "sizes")? {
        opts.convergence_sizes = sizes;
    }

    let reports = run_suites(&suites, &opts);
    let passed = reports.iter().all(SuiteReport::passed);
    for r in &reports {
        let failed = r.cases.iter().filter(|c| c.status == fivevertex::verify::Status::Fail).count();
        eprintln!("{}: {} ({} cases, {} failed)", r.suite, if r.passed() { "pass" } else { "FAIL" }, r.cases.len(), failed);
    }

    let metadata = BTreeMap::from([
        ("command", "verify".to_string()),
        ("version", env!("CARGO_PKG_VERSION").to_string()),
        ("budget", opts.budget.to_string()),
        ("precision", opts.precision_bits.to_string()),
        ("max_n", opts.sweep.max_n.to_string()),
        ("convergence_sizes", opts.convergence_sizes.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
    ]);
    let report = Report { metadata, status: if passed { "pass" } else { "fail" }, suites: &reports };
    let mut out = settings.sink()?;
    serde_json::to_writer_pretty(&mut out, &report)
        .map_err(|e| CliError::io("cannot write report", e.into()))?;
    writeln!(out).map_err(|e| CliError::io("cannot write report", e))?;
    out.flush().map_err(|e| CliError::io("cannot write report", e))?;
    Ok(passed)
}
