//! Partial actions of finite categories and groupoids on finite sets.
//!
//! The crate builds the universal globalization of a partial action as a
//! quotient of the set of pairs `(g, x)` with `d(g)·x` defined, checks the
//! axiom systems for category, groupoid, group and monoid actions, and
//! carries everything over to finite topological spaces.
//!
//! Scenarios are written in a small line-oriented format (see [`dsl`]); the
//! `pcat` binary drives the same checks from the command line.

pub mod action;
pub mod category;
pub mod cli;
pub mod dsl;
pub mod fixtures;
pub mod globalize;
pub mod oracle;
pub mod random;
pub mod report;
pub mod topo;

pub use action::{PartialAction, PointId};
pub use category::{Category, MorId};
pub use report::{Axiom, AxiomReport, Verdict, Witness};
