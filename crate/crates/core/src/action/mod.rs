//! Partial set actions of a category's morphisms on a finite set.
//!
//! A [`PartialAction`] is just a partial table `(g, x) -> g·x`. Whether the
//! table satisfies any axiom system is a separate, checked question; see
//! [`axioms`].

mod axioms;
mod functor;
mod triple;

use std::collections::HashMap;

use thiserror::Error;

use crate::category::{Category, MorId};
use crate::report::{Verdict, Witness};

pub use axioms::{
    check_category_axioms, check_group_axioms, check_groupoid_axioms, check_monoid_axioms, GLOBAL,
    GROUPOID_PARTIAL, PARTIAL,
};
pub use functor::{check_functor, from_functor, to_functor, FunctorError, SetFunctor};
pub use triple::{
    check_triple_axioms, from_triple, to_triple, TripleEntry, TripleError, TripleForm,
};

/// Index of a point inside the carrier of a [`PartialAction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub usize);

impl PointId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("point `{0}` declared twice")]
    DuplicatePoint(String),
    #[error("`{g}·{x}` given two different values")]
    Conflict { g: String, x: String },
    #[error("action has {action} morphism slots but the category has {category}")]
    CategoryMismatch { action: usize, category: usize },
    #[error("the category is not a groupoid")]
    NotGroupoid,
    #[error("the category has {0} objects, expected exactly one")]
    NotOneObject(usize),
}

/// A partial map `mor(G) × X -> X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAction {
    points: Vec<String>,
    lookup: HashMap<String, PointId>,
    morphisms: usize,
    // table[g * |X| + x] = g·x
    table: Vec<Option<PointId>>,
}

impl PartialAction {
    /// Builds an action from names. Points are sorted lexicographically.
    pub fn new<S: AsRef<str>>(
        cat: &Category,
        points: &[S],
        entries: &[(S, S, S)],
    ) -> Result<Self, ActionError> {
        let mut act = Self::empty(cat.len(), points.iter().map(|p| p.as_ref().to_string()))?;
        for (g, x, y) in entries {
            let gid = cat
                .id(g.as_ref())
                .ok_or_else(|| ActionError::UnknownMorphism(g.as_ref().to_string()))?;
            let xid = act.require_point(x.as_ref())?;
            let yid = act.require_point(y.as_ref())?;
            if act.act(gid, xid).is_some_and(|prev| prev != yid) {
                return Err(ActionError::Conflict {
                    g: g.as_ref().to_string(),
                    x: x.as_ref().to_string(),
                });
            }
            act.set(gid, xid, Some(yid));
        }
        Ok(act)
    }

    /// An action with no defined entries on the given carrier.
    pub fn empty<I>(morphisms: usize, points: I) -> Result<Self, ActionError>
    where
        I: IntoIterator<Item = String>,
    {
        let mut points: Vec<String> = points.into_iter().collect();
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(ActionError::DuplicatePoint(w[0].clone()));
        }
        let lookup = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), PointId(i)))
            .collect();
        let table = vec![None; morphisms * points.len()];
        Ok(PartialAction {
            points,
            lookup,
            morphisms,
            table,
        })
    }

    fn require_point(&self, name: &str) -> Result<PointId, ActionError> {
        self.point(name)
            .ok_or_else(|| ActionError::UnknownPoint(name.to_string()))
    }

    pub(crate) fn ensure_fits(&self, cat: &Category) -> Result<(), ActionError> {
        if self.morphisms != cat.len() {
            return Err(ActionError::CategoryMismatch {
                action: self.morphisms,
                category: cat.len(),
            });
        }
        Ok(())
    }

    /// `g·x`, if defined.
    pub fn act(&self, g: MorId, x: PointId) -> Option<PointId> {
        self.table[g.0 * self.points.len() + x.0]
    }

    pub fn is_defined(&self, g: MorId, x: PointId) -> bool {
        self.act(g, x).is_some()
    }

    pub fn set(&mut self, g: MorId, x: PointId, y: Option<PointId>) {
        let n = self.points.len();
        self.table[g.0 * n + x.0] = y;
    }

    /// Number of points in the carrier.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.points.len()).map(PointId)
    }

    pub fn point_names(&self) -> &[String] {
        &self.points
    }

    pub fn point_name(&self, x: PointId) -> &str {
        &self.points[x.0]
    }

    pub fn point(&self, name: &str) -> Option<PointId> {
        self.lookup.get(name).copied()
    }

    /// Defined entries `(g, x, g·x)` in lexicographic order of `(g, x)`.
    pub fn entries(&self) -> impl Iterator<Item = (MorId, PointId, PointId)> + '_ {
        let n = self.points.len();
        self.table
            .iter()
            .enumerate()
            .filter_map(move |(i, y)| y.map(|y| (MorId(i / n), PointId(i % n), y)))
    }

    /// Number of defined entries.
    pub fn defined_count(&self) -> usize {
        self.table.iter().filter(|y| y.is_some()).count()
    }

    /// `X_g`, the points where `g` acts.
    pub fn domain_of(&self, g: MorId) -> Vec<PointId> {
        self.points().filter(|&x| self.is_defined(g, x)).collect()
    }

    /// Entries rendered with names, for diagnostics and tests.
    pub fn named_entries<'a>(&'a self, cat: &'a Category) -> Vec<(&'a str, &'a str, &'a str)> {
        self.entries()
            .map(|(g, x, y)| (cat.name(g), self.point_name(x), self.point_name(y)))
            .collect()
    }
}

/// Checks that `f : source -> target` is a G-function: whenever `g·x` is
/// defined, `g·f(x)` is defined and equals `f(g·x)`.
///
/// Witnesses are `(g, x)` named in the source.
pub fn check_g_function(
    cat: &Category,
    f: &[PointId],
    source: &PartialAction,
    target: &PartialAction,
) -> Verdict {
    let mut out = Vec::new();
    for (g, x, y) in source.entries() {
        if target.act(g, f[x.0]) != Some(f[y.0]) {
            out.push(Witness::tuple([cat.name(g), source.point_name(x)]));
        }
    }
    Verdict::from_witnesses(out)
}

/// `true` iff `f` never sends two points to the same place.
pub fn is_injective(f: &[PointId]) -> bool {
    let mut seen = std::collections::HashSet::new();
    f.iter().all(|y| seen.insert(*y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> Category {
        Category::new(&["e", "f"], &[("g", "e", "f")], &[]).unwrap()
    }

    #[test]
    fn construction_errors() {
        let cat = arrow();
        assert_eq!(
            PartialAction::new(&cat, &["1"], &[("h", "1", "1")]),
            Err(ActionError::UnknownMorphism("h".into()))
        );
        assert_eq!(
            PartialAction::new(&cat, &["1"], &[("e", "5", "1")]),
            Err(ActionError::UnknownPoint("5".into()))
        );
        assert_eq!(
            PartialAction::new(&cat, &["1", "1"], &[]),
            Err(ActionError::DuplicatePoint("1".into()))
        );
        assert!(matches!(
            PartialAction::new(&cat, &["1", "2"], &[("e", "1", "1"), ("e", "1", "2")]),
            Err(ActionError::Conflict { .. })
        ));
    }

    #[test]
    fn g_function_identity_and_mutation() {
        let cat = arrow();
        let act = PartialAction::new(
            &cat,
            &["1", "2", "3"],
            &[
                ("e", "1", "1"),
                ("e", "2", "2"),
                ("f", "2", "2"),
                ("f", "3", "3"),
                ("g", "2", "2"),
            ],
        )
        .unwrap();
        let id: Vec<PointId> = act.points().collect();
        assert!(check_g_function(&cat, &id, &act, &act).passed());
        // 2 -> 1 breaks g·2 = 2
        let bent = vec![PointId(0), PointId(0), PointId(2)];
        let v = check_g_function(&cat, &bent, &act, &act);
        assert!(!v.passed());
        assert!(v.witnesses.contains(&Witness::tuple(["g", "2"])));
    }

    #[test]
    fn injectivity() {
        assert!(is_injective(&[PointId(0), PointId(2)]));
        assert!(!is_injective(&[PointId(1), PointId(1)]));
    }
}
