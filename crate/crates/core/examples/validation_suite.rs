//! Runs the quick variant of the built-in validation suite and prints one
//! line per check.

use secrecy_geom::validate::{run_suite, SuiteOptions};

fn main() {
    let options = SuiteOptions {
        quick: true,
        ..SuiteOptions::default()
    };
    let reports = run_suite(&options, |report| println!("{report}"));
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} passed, {failed} failed", reports.len() - failed);
}
