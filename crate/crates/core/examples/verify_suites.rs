//! Run every verification suite and print the pass/fail table.
//!
//! `cargo run --example verify_suites`

use nullshock::config::RunConfig;
use nullshock::report::run_suite;

fn main() -> nullshock::Result<()> {
    let doc = run_suite("all", &RunConfig::default())?;
    for c in &doc.checks {
        println!(
            "{:<4} {:<45} {:e}",
            if c.pass { "ok" } else { "FAIL" },
            c.name,
            c.value
        );
    }
    println!("overall: {}", if doc.passed { "pass" } else { "fail" });
    Ok(())
}
