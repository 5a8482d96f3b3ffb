//! Runs the cross-checks on one scenario with a short random suite.

use pcat::fixtures;
use pcat::globalize::equiv_closure;
use pcat::oracle::run_oracle;

fn main() {
    let s = fixtures::ISO_A.scenario();
    let report = run_oracle(&s.category, &s.action, 6, 7, 100, &equiv_closure).unwrap();
    for c in &report.checks {
        println!(
            "{}",
            format!("{:<26} {}  {}", c.name, c.verdict, c.detail).trim_end()
        );
    }
    println!("all pass: {}", report.passed());
}
