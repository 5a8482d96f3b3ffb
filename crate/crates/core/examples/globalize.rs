//! Computes the universal globalization of each bundled scenario.

use pcat::fixtures;
use pcat::globalize::{build_globalization, GlobalizationDisplay};

fn main() {
    for f in fixtures::ALL {
        let s = f.scenario();
        let glob = build_globalization(&s.category, &s.action).expect("partial action");
        println!("== {}", f.name);
        print!(
            "{}",
            GlobalizationDisplay {
                cat: &s.category,
                act: &s.action,
                glob: &glob
            }
        );
    }
}
