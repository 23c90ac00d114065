//! Runs every catalog scenario and prints one line per verdict.

use minannuli::experiments::{run_catalog, RunConfig};

fn main() {
    let config = RunConfig::default();
    for report in run_catalog(&config) {
        let status = if report.all_pass() { "PASS" } else { "FAIL" };
        println!("{status} {}", report.scenario);
        for (name, v) in &report.verdicts {
            println!(
                "    {:<5} {name:<48} margin {:+.3e}",
                if v.pass { "ok" } else { "FAIL" },
                v.margin
            );
        }
        if let Some(f) = &report.failure {
            println!("    aborted: {}", f.message);
        }
        for d in &report.diagnostics {
            println!("    note: {d}");
        }
    }
}
