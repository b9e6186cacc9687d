use std::process::ExitCode;
use std::time::Instant;

use genfermat::verify::{Suite, Verifier};

fn main() -> ExitCode {
    let t = Instant::now();
    let report = Verifier::default().run_suite_with(Suite::All, |c| println!("{c}"));
    for (case, reading) in &report.pinned_readings {
        println!("pinned reading {case}: {reading}");
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        report.checks.len() - failed,
        report.checks.len(),
        t.elapsed().as_secs_f64()
    );
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
