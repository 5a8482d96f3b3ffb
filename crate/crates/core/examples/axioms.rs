//! Checks one partial action against every axiom system the library knows:
//! the category axioms, the groupoid axioms, and the subset form.

use pcat::action::{
    check_category_axioms, check_groupoid_axioms, check_triple_axioms, to_functor, to_triple,
};
use pcat::fixtures;

fn main() {
    let s = fixtures::ISO_B.scenario();
    let (cat, act) = (&s.category, &s.action);
    println!(
        "category axioms\n{}",
        check_category_axioms(cat, act).unwrap()
    );
    let wit = cat
        .groupoid_witness()
        .expect("the shift fixture lives on a groupoid");
    println!(
        "groupoid axioms\n{}",
        check_groupoid_axioms(cat, &wit, act).unwrap()
    );
    println!(
        "subset form\n{}",
        check_triple_axioms(cat, &to_triple(act), Some(&wit))
    );

    // Only global actions are functors.
    match to_functor(cat, act) {
        Ok(_) => println!("global, so a functor"),
        Err(e) => println!("not a functor: {e}"),
    }
}
