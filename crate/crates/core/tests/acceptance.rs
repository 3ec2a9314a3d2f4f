//! Acceptance suite: one pass/fail line per criterion, with the failing
//! checks listed under it. Exits non-zero if any criterion fails.

use std::process::ExitCode;

use ncbeta::selftest::{self, Suite};

fn main() -> ExitCode {
    let reports = selftest::run(Suite::All);
    println!("\nacceptance criteria");
    for r in &reports {
        println!("{}", r.summary());
        for c in r.failures() {
            println!("{c}");
        }
        if !r.within_budget() {
            println!("  [FAIL] runtime {:.3} s exceeds {} s", r.elapsed.as_secs_f64(), r.budget.as_secs());
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!("{passed}/{} criteria passed\n", reports.len());
    if passed == reports.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
