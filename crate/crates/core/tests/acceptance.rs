//! Release criteria, one verdict line per criterion. The process exit
//! code is the number of failed criteria, so the target stays red while
//! any frozen expectation is missed.

use sncurve_core::selftest;

fn main() {
    let outcomes = selftest::run_all();
    let mut failed = 0;
    for o in &outcomes {
        println!("{}", o.headline());
        for c in o.failures() {
            println!("  failed: {} ({})", c.name, c.detail);
        }
        if !o.passed() {
            failed += 1;
        }
    }
    std::process::exit(failed);
}
