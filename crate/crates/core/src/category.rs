//! Finite categories with explicit composition tables.
//!
//! Objects are identified with their identity morphisms, so a category is a
//! single ordered namespace of morphisms together with the subset of them that
//! are objects. Morphisms are indexed in lexicographic order of their names;
//! every iteration in this crate follows that order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Index of a morphism inside its [`Category`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub usize);

impl MorId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Errors raised while assembling a category from names.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
    #[error("`{0}` is defined more than once")]
    Duplicate(String),
    #[error("`{0}` is not an object")]
    NotAnObject(String),
}

/// A finite category.
///
/// The structure may be *raw*: nothing here forces the category laws to hold.
/// Use [`Category::validate`] to find out whether they do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Category {
    names: Vec<String>,
    lookup: HashMap<String, MorId>,
    is_object: Vec<bool>,
    objects: Vec<MorId>,
    dom: Vec<MorId>,
    cod: Vec<MorId>,
    // row-major n x n table, comp[g * n + h] = gh
    comp: Vec<Option<MorId>>,
}

/// One way in which a raw category fails to be a category.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// The object's morphism is not an endomorphism of that object.
    MissingIdentity { object: String },
    /// `(g, h)` is composable but `gh` is not in the table.
    MissingComposite { g: String, h: String },
    /// `gh` is in the table although `d(g) != c(h)`.
    NonComposablePair { g: String, h: String },
    /// `gh = k` but `d(k) != d(h)` or `c(k) != c(g)`.
    CompositeEndpoints { g: String, h: String, k: String },
    /// `g d(g) != g`.
    RightIdentity { g: String },
    /// `c(g) g != g`.
    LeftIdentity { g: String },
    /// `(gh)k != g(hk)`.
    Associativity { g: String, h: String, k: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingIdentity { object } => {
                write!(
                    f,
                    "missing identity: `{object}` is not an endomorphism of itself"
                )
            }
            Violation::MissingComposite { g, h } => {
                write!(f, "missing composite for composable pair ({g},{h})")
            }
            Violation::NonComposablePair { g, h } => {
                write!(f, "composite given for non-composable pair ({g},{h})")
            }
            Violation::CompositeEndpoints { g, h, k } => {
                write!(f, "composite {g}.{h} = {k} has wrong domain or codomain")
            }
            Violation::RightIdentity { g } => write!(f, "right identity law fails for {g}"),
            Violation::LeftIdentity { g } => write!(f, "left identity law fails for {g}"),
            Violation::Associativity { g, h, k } => {
                write!(f, "associativity fails for ({g},{h},{k})")
            }
        }
    }
}

impl Violation {
    /// Stable short code used in machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            Violation::MissingIdentity { .. } => "missing_identity",
            Violation::MissingComposite { .. } => "missing_composite",
            Violation::NonComposablePair { .. } => "non_composable_pair",
            Violation::CompositeEndpoints { .. } => "composite_endpoints",
            Violation::RightIdentity { .. } => "right_identity",
            Violation::LeftIdentity { .. } => "left_identity",
            Violation::Associativity { .. } => "associativity",
        }
    }

    /// Names of the morphisms involved, in the order they appear in the law.
    pub fn culprits(&self) -> Vec<&str> {
        match self {
            Violation::MissingIdentity { object } => vec![object],
            Violation::MissingComposite { g, h } | Violation::NonComposablePair { g, h } => {
                vec![g, h]
            }
            Violation::CompositeEndpoints { g, h, k } | Violation::Associativity { g, h, k } => {
                vec![g, h, k]
            }
            Violation::RightIdentity { g } | Violation::LeftIdentity { g } => vec![g],
        }
    }
}

/// Result of [`Category::validate`]; empty means the structure is a category.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Inverse map of a groupoid, indexed by [`MorId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidWitness {
    inverse: Vec<MorId>,
}

impl GroupoidWitness {
    pub fn inverse(&self, g: MorId) -> MorId {
        self.inverse[g.0]
    }

    pub fn as_slice(&self) -> &[MorId] {
        &self.inverse
    }
}

impl Category {
    /// Builds a raw category from names, without filling in anything.
    ///
    /// Every object that is not listed among `morphisms` is added as a
    /// morphism `o : o -> o`. `dom`/`cod` must name objects.
    pub fn from_raw<S: AsRef<str>>(
        objects: &[S],
        morphisms: &[(S, S, S)],
        composites: &[(S, S, S)],
    ) -> Result<Self, CategoryError> {
        let mut object_names = BTreeSet::new();
        for o in objects {
            if !object_names.insert(o.as_ref().to_string()) {
                return Err(CategoryError::Duplicate(o.as_ref().to_string()));
            }
        }
        let mut ends: HashMap<String, (String, String)> = HashMap::new();
        for (name, d, c) in morphisms {
            let name = name.as_ref().to_string();
            if ends.contains_key(&name) {
                return Err(CategoryError::Duplicate(name));
            }
            for end in [d.as_ref(), c.as_ref()] {
                if !object_names.contains(end) {
                    return Err(CategoryError::NotAnObject(end.to_string()));
                }
            }
            ends.insert(name, (d.as_ref().to_string(), c.as_ref().to_string()));
        }
        for o in &object_names {
            ends.entry(o.clone())
                .or_insert_with(|| (o.clone(), o.clone()));
        }

        let mut names: Vec<String> = ends.keys().cloned().collect();
        names.sort();
        let lookup: HashMap<String, MorId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), MorId(i)))
            .collect();
        let n = names.len();
        let is_object: Vec<bool> = names.iter().map(|m| object_names.contains(m)).collect();
        let objects = (0..n).filter(|&i| is_object[i]).map(MorId).collect();
        let dom = names.iter().map(|m| lookup[&ends[m].0]).collect();
        let cod = names.iter().map(|m| lookup[&ends[m].1]).collect();

        let mut comp = vec![None; n * n];
        let resolve = |s: &str| {
            lookup
                .get(s)
                .copied()
                .ok_or_else(|| CategoryError::UnknownId(s.to_string()))
        };
        for (g, h, k) in composites {
            let (g, h, k) = (
                resolve(g.as_ref())?,
                resolve(h.as_ref())?,
                resolve(k.as_ref())?,
            );
            let slot = &mut comp[g.0 * n + h.0];
            if slot.is_some_and(|prev| prev != k) {
                return Err(CategoryError::Duplicate(format!(
                    "{}.{}",
                    names[g.0], names[h.0]
                )));
            }
            *slot = Some(k);
        }
        Ok(Category {
            names,
            lookup,
            is_object,
            objects,
            dom,
            cod,
            comp,
        })
    }

    /// Builds a category, adding the composites with identities
    /// (`g d(g) = g`, `c(g) g = g`) that were not listed explicitly.
    pub fn new<S: AsRef<str>>(
        objects: &[S],
        morphisms: &[(S, S, S)],
        composites: &[(S, S, S)],
    ) -> Result<Self, CategoryError> {
        let mut cat = Self::from_raw(objects, morphisms, composites)?;
        let n = cat.len();
        for g in 0..n {
            let (d, c) = (cat.dom[g].0, cat.cod[g].0);
            if cat.is_object[d] {
                cat.comp[g * n + d].get_or_insert(MorId(g));
            }
            if cat.is_object[c] {
                cat.comp[c * n + g].get_or_insert(MorId(g));
            }
        }
        Ok(cat)
    }

    /// Number of morphisms (objects included).
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.names.len()).map(MorId)
    }

    pub fn objects(&self) -> &[MorId] {
        &self.objects
    }

    pub fn is_object(&self, g: MorId) -> bool {
        self.is_object[g.0]
    }

    pub fn name(&self, g: MorId) -> &str {
        &self.names[g.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<MorId> {
        self.lookup.get(name).copied()
    }

    pub fn dom(&self, g: MorId) -> MorId {
        self.dom[g.0]
    }

    pub fn cod(&self, g: MorId) -> MorId {
        self.cod[g.0]
    }

    pub fn composable(&self, g: MorId, h: MorId) -> bool {
        self.dom[g.0] == self.cod[h.0]
    }

    /// The composite `gh` ("g after h") if the table has it.
    pub fn compose(&self, g: MorId, h: MorId) -> Option<MorId> {
        self.comp[g.0 * self.len() + h.0]
    }

    /// All table entries `(g, h, gh)`, composable or not.
    pub fn composites(&self) -> impl Iterator<Item = (MorId, MorId, MorId)> + '_ {
        let n = self.len();
        self.comp
            .iter()
            .enumerate()
            .filter_map(move |(i, k)| k.map(|k| (MorId(i / n), MorId(i % n), k)))
    }

    /// `G² = {(g, h) : d(g) = c(h)}` in lexicographic order.
    pub fn composable_pairs(&self) -> Vec<(MorId, MorId)> {
        let mut pairs = Vec::new();
        for g in self.morphisms() {
            for h in self.morphisms() {
                if self.composable(g, h) {
                    pairs.push((g, h));
                }
            }
        }
        pairs
    }

    /// Checks the category laws by exhaustive enumeration.
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let nm = |g: MorId| self.names[g.0].clone();
        for &o in &self.objects {
            if self.dom(o) != o || self.cod(o) != o {
                out.push(Violation::MissingIdentity { object: nm(o) });
            }
        }
        for g in self.morphisms() {
            for h in self.morphisms() {
                match (self.composable(g, h), self.compose(g, h)) {
                    (true, None) => out.push(Violation::MissingComposite { g: nm(g), h: nm(h) }),
                    (false, Some(_)) => {
                        out.push(Violation::NonComposablePair { g: nm(g), h: nm(h) })
                    }
                    (true, Some(k)) => {
                        if self.dom(k) != self.dom(h) || self.cod(k) != self.cod(g) {
                            out.push(Violation::CompositeEndpoints {
                                g: nm(g),
                                h: nm(h),
                                k: nm(k),
                            });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for g in self.morphisms() {
            let (d, c) = (self.dom(g), self.cod(g));
            if self.is_object(d) && self.compose(g, d).is_some_and(|k| k != g) {
                out.push(Violation::RightIdentity { g: nm(g) });
            }
            if self.is_object(c) && self.compose(c, g).is_some_and(|k| k != g) {
                out.push(Violation::LeftIdentity { g: nm(g) });
            }
        }
        for (g, h) in self.composable_pairs() {
            let Some(gh) = self.compose(g, h) else {
                continue;
            };
            for k in self.morphisms() {
                if !self.composable(h, k) {
                    continue;
                }
                let Some(hk) = self.compose(h, k) else {
                    continue;
                };
                let left = self.compose(gh, k);
                let right = self.compose(g, hk);
                if left.is_some() && right.is_some() && left != right {
                    out.push(Violation::Associativity {
                        g: nm(g),
                        h: nm(h),
                        k: nm(k),
                    });
                }
            }
        }
        ValidationReport { violations: out }
    }

    /// Returns the inverse map when every morphism is an isomorphism.
    pub fn groupoid_witness(&self) -> Option<GroupoidWitness> {
        let inverse = self
            .morphisms()
            .map(|g| {
                self.morphisms().find(|&h| {
                    self.composable(g, h)
                        && self.composable(h, g)
                        && self.compose(g, h) == Some(self.cod(g))
                        && self.compose(h, g) == Some(self.dom(g))
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(GroupoidWitness { inverse })
    }

    /// `(name, dom, cod)` for every morphism.
    pub(crate) fn triples(&self) -> Vec<(String, String, String)> {
        self.morphisms()
            .map(|g| {
                (
                    self.name(g).to_string(),
                    self.name(self.dom(g)).to_string(),
                    self.name(self.cod(g)).to_string(),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> Category {
        Category::new(&["e", "f"], &[("g", "e", "f")], &[]).unwrap()
    }

    #[test]
    fn arrow_category_is_valid() {
        let cat = arrow();
        assert!(cat.validate().is_valid(), "{:?}", cat.validate());
        assert_eq!(cat.names(), ["e", "f", "g"]);
        let g = cat.id("g").unwrap();
        assert_eq!(cat.compose(g, cat.id("e").unwrap()), Some(g));
        assert_eq!(cat.compose(cat.id("f").unwrap(), g), Some(g));
    }

    #[test]
    fn terminal_category_is_valid() {
        let cat = Category::new(&["e"], &[], &[]).unwrap();
        assert!(cat.validate().is_valid());
        let w = cat.groupoid_witness().unwrap();
        assert_eq!(w.inverse(MorId(0)), MorId(0));
    }

    #[test]
    fn omitted_identity_composite_is_reported() {
        let cat = Category::from_raw(
            &["e", "f"],
            &[("g", "e", "f")],
            &[("e", "e", "e"), ("f", "f", "f"), ("g", "e", "g")],
        )
        .unwrap();
        let report = cat.validate();
        assert_eq!(
            report.violations,
            vec![Violation::MissingComposite {
                g: "f".into(),
                h: "g".into()
            }]
        );
    }

    #[test]
    fn composable_pairs_of_arrow() {
        let cat = arrow();
        let names: Vec<(&str, &str)> = cat
            .composable_pairs()
            .into_iter()
            .map(|(g, h)| (cat.name(g), cat.name(h)))
            .collect();
        assert_eq!(names, vec![("e", "e"), ("f", "f"), ("f", "g"), ("g", "e")]);
    }

    #[test]
    fn one_object_monoid_has_all_pairs() {
        let cat = Category::new(&["e"], &[("m", "e", "e")], &[("m", "m", "m")]).unwrap();
        assert_eq!(cat.composable_pairs().len(), 4);
        assert!(cat.validate().is_valid());
        assert!(cat.groupoid_witness().is_none());
    }

    #[test]
    fn arrow_is_not_a_groupoid() {
        assert!(arrow().groupoid_witness().is_none());
    }

    #[test]
    fn bad_endpoints_and_identity_laws() {
        let cat = Category::from_raw(
            &["e", "f"],
            &[("g", "e", "f")],
            &[
                ("e", "e", "e"),
                ("f", "f", "f"),
                ("g", "e", "f"),
                ("f", "g", "g"),
            ],
        )
        .unwrap();
        let v = cat.validate().violations;
        assert!(v.contains(&Violation::CompositeEndpoints {
            g: "g".into(),
            h: "e".into(),
            k: "f".into()
        }));
        assert!(v.contains(&Violation::RightIdentity { g: "g".into() }));
    }

    #[test]
    fn non_composable_entry_is_reported() {
        let cat = Category::new(&["e", "f"], &[("g", "e", "f")], &[("g", "g", "g")]).unwrap();
        assert!(cat
            .validate()
            .violations
            .contains(&Violation::NonComposablePair {
                g: "g".into(),
                h: "g".into()
            }));
    }

    #[test]
    fn associativity_failure_is_found() {
        // two idempotents on one object with a non-associative table
        let cat = Category::new(
            &["e"],
            &[("a", "e", "e"), ("b", "e", "e")],
            &[
                ("a", "a", "a"),
                ("b", "b", "b"),
                ("a", "b", "a"),
                ("b", "a", "a"),
            ],
        )
        .unwrap();
        assert!(cat.validate().is_valid());
        let bad = Category::new(
            &["e"],
            &[("a", "e", "e"), ("b", "e", "e")],
            &[
                ("a", "a", "b"),
                ("b", "b", "a"),
                ("a", "b", "a"),
                ("b", "a", "b"),
            ],
        )
        .unwrap();
        assert!(bad
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Associativity { .. })));
    }

    #[test]
    fn builder_errors() {
        assert_eq!(
            Category::new(&["e"], &[("g", "e", "x")], &[]),
            Err(CategoryError::NotAnObject("x".into()))
        );
        assert_eq!(
            Category::new(&["e"], &[("g", "e", "e"), ("g", "e", "e")], &[]),
            Err(CategoryError::Duplicate("g".into()))
        );
        assert_eq!(
            Category::new(&["e"], &[], &[("e", "q", "e")]),
            Err(CategoryError::UnknownId("q".into()))
        );
    }
}
