//! Runs the bundled verification suite and writes the CSV report and plots
//! into a temporary directory.

use std::process::ExitCode;

use apjackson::report::{write_outputs, SignalSource};
use apjackson::{run_suite, RunConfig};

fn main() -> apjackson::Result<ExitCode> {
    let mut cfg = RunConfig::new();
    cfg.signals = vec![SignalSource::fixture("extremal", None), SignalSource::fixture("probe", None), SignalSource::fixture("random", Some(2))];
    cfg.plots = true;
    let report = run_suite(&cfg)?;
    let s = &report.summary;
    println!("{} checks, {} passed, {} failed, {} skipped", s.total, s.passed, s.failed, report.skipped.len());
    for row in report.rows.iter().take(6) {
        println!("{:<10} {:<20} {:<9} n {} margin {:+.3e}", row.suite, row.theorem, row.signal, row.n, row.margin);
    }
    let dir = std::env::temp_dir().join("apjackson-example");
    for path in write_outputs(&report, &dir)? {
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}
