//! Enumerates small globalizations of the first arrow scenario and checks
//! that each receives exactly one mediating map from the universal one.

use pcat::fixtures;
use pcat::globalize::{
    build_globalization, enumerate_globalizations, mediating, mediators_brute_force,
};

fn main() {
    let s = fixtures::ARROW_A.scenario();
    let (cat, act) = (&s.category, &s.action);
    let glob = build_globalization(cat, act).unwrap();
    let targets = enumerate_globalizations(cat, act, 5).unwrap();
    let mut injective = 0;
    for ext in &targets {
        let m = mediating(cat, act, &glob, &ext.target, &ext.j).unwrap();
        assert!(m.factors && m.equivariant.passed());
        assert_eq!(
            mediators_brute_force(&glob, &ext.target, &ext.j),
            std::slice::from_ref(&m.k)
        );
        injective += usize::from(m.injective);
    }
    println!(
        "{} globalizations on at most 5 points, each with a unique mediator; {injective} injective",
        targets.len()
    );

    let y = glob.action();
    let first = targets.iter().find(|e| e.target.len() == 5).unwrap();
    let m = mediating(cat, act, &glob, &first.target, &first.j).unwrap();
    for p in y.points() {
        println!(
            "  k {} = {}",
            y.point_name(p),
            first.target.point_name(m.k[p.0])
        );
    }
}
