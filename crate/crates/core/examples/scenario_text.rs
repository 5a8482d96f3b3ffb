//! Parses a scenario, prints it back, and shows a located parse error.

use pcat::dsl::{parse, to_text};

fn main() {
    let s = pcat::fixtures::ARROW_B.scenario();
    let text = to_text(&s);
    print!("{text}");
    assert_eq!(parse(&text).unwrap(), s);

    let broken = text.replace("act g 3 = 2", "act g 3 = 7");
    match parse(&broken) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("{e}"),
    }
}
