//! The four worked examples shipped with the crate, as scenario sources.

use crate::dsl::{parse, Scenario};

/// A named scenario source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
}

impl Fixture {
    pub fn scenario(&self) -> Scenario {
        parse(self.source).expect("shipped fixtures parse")
    }
}

/// Arrow category `g : e -> f` on `{1,2,3}`.
pub const ARROW_A: Fixture = Fixture {
    name: "arrow_a",
    source: include_str!("../fixtures/arrow_a.pcat"),
};

/// Arrow category on `{1,2,3,4}` with a non-injective `g`.
pub const ARROW_B: Fixture = Fixture {
    name: "arrow_b",
    source: include_str!("../fixtures/arrow_b.pcat"),
};

/// Two-object groupoid on `{1,2,3}` with `g` and `ginv` fixing 2.
pub const ISO_A: Fixture = Fixture {
    name: "iso_a",
    source: include_str!("../fixtures/iso_a.pcat"),
};

/// Two-object groupoid on `{1,2,3}` with `g` shifting `1 -> 2 -> 3`.
pub const ISO_B: Fixture = Fixture {
    name: "iso_b",
    source: include_str!("../fixtures/iso_b.pcat"),
};

pub const ALL: [Fixture; 4] = [ARROW_A, ARROW_B, ISO_A, ISO_B];

pub fn by_name(name: &str) -> Option<Fixture> {
    ALL.into_iter().find(|f| f.name == name)
}
