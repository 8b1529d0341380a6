//! Acceptance run: every check of the validation suite at full size, one
//! pass/fail line per criterion, non-zero exit if any fails.

use std::process::ExitCode;

use secrecy_geom::validate::{run_check, SuiteOptions, CHECK_NAMES};

fn main() -> ExitCode {
    let options = SuiteOptions::default();
    let mut failed = Vec::new();
    println!("\nacceptance criteria");
    for id in 1..=CHECK_NAMES.len() {
        let report = run_check(id, &options);
        println!("criterion {id:>2}: {report}");
        if !report.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("all {} criteria passed\n", CHECK_NAMES.len());
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}\n");
        ExitCode::FAILURE
    }
}
