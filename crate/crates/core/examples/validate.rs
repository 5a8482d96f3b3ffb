//! Builds a small category by hand, validates it, then breaks its
//! composition table and shows what the validator reports.

use pcat::Category;

fn main() {
    let objects = ["e", "f"];
    let morphisms = [("g", "e", "f"), ("ginv", "f", "e")];
    let good = Category::new(
        &objects,
        &morphisms,
        &[("g", "ginv", "f"), ("ginv", "g", "e")],
    )
    .expect("names resolve");
    println!(
        "{} morphisms, valid: {}",
        good.len(),
        good.validate().is_valid()
    );
    match good.groupoid_witness() {
        Some(w) => {
            let g = good.id("g").unwrap();
            println!("groupoid, inverse of g is {}", good.name(w.inverse(g)));
        }
        None => println!("not a groupoid"),
    }

    let broken = Category::new(
        &objects,
        &morphisms,
        &[("g", "ginv", "e"), ("ginv", "g", "e")],
    )
    .expect("names resolve");
    for v in broken.validate().violations {
        println!("{}: {v}", v.code());
    }
}
