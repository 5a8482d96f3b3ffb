//! The presentation of an action by domains `X_g`, images `gX` and maps
//! `alpha_g : X_g -> gX`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::category::{Category, GroupoidWitness, MorId};
use crate::report::{Axiom, AxiomReport, Verdict, Witness};

use super::{ActionError, PartialAction, PointId};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TripleEntry {
    /// `X_g`
    pub domain: BTreeSet<PointId>,
    /// `gX`
    pub image: BTreeSet<PointId>,
    /// `alpha_g`
    pub alpha: BTreeMap<PointId, PointId>,
}

/// One [`TripleEntry`] per morphism, over a named carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleForm {
    pub points: Vec<String>,
    pub entries: Vec<TripleEntry>,
}

impl TripleForm {
    pub fn entry(&self, g: MorId) -> &TripleEntry {
        &self.entries[g.0]
    }

    fn name(&self, x: PointId) -> &str {
        &self.points[x.0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("triple has {triple} entries but the category has {category} morphisms")]
    CategoryMismatch { triple: usize, category: usize },
    #[error("alpha_{0} is not defined exactly on X_{0}")]
    DomainMismatch(String),
    #[error("alpha_{0} does not map onto {0}X")]
    ImageMismatch(String),
    #[error("alpha_{0} takes a value outside the carrier")]
    OutsideCarrier(String),
    #[error(transparent)]
    Action(#[from] ActionError),
}

pub fn to_triple(act: &PartialAction) -> TripleForm {
    let mut entries = vec![TripleEntry::default(); act.morphism_count()];
    for (g, x, y) in act.entries() {
        let e = &mut entries[g.0];
        e.domain.insert(x);
        e.image.insert(y);
        e.alpha.insert(x, y);
    }
    TripleForm {
        points: act.point_names().to_vec(),
        entries,
    }
}

/// Rebuilds the pointwise action `g·x = alpha_g(x)`.
pub fn from_triple(cat: &Category, t: &TripleForm) -> Result<PartialAction, TripleError> {
    if t.entries.len() != cat.len() {
        return Err(TripleError::CategoryMismatch {
            triple: t.entries.len(),
            category: cat.len(),
        });
    }
    let mut act = PartialAction::empty(cat.len(), t.points.iter().cloned())?;
    for g in cat.morphisms() {
        let e = t.entry(g);
        let name = || cat.name(g).to_string();
        if !e.alpha.keys().copied().eq(e.domain.iter().copied()) {
            return Err(TripleError::DomainMismatch(name()));
        }
        if e.alpha.values().any(|y| y.0 >= t.points.len())
            || e.domain.iter().any(|x| x.0 >= t.points.len())
        {
            return Err(TripleError::OutsideCarrier(name()));
        }
        if e.alpha.values().copied().collect::<BTreeSet<_>>() != e.image {
            return Err(TripleError::ImageMismatch(name()));
        }
        for (&x, &y) in &e.alpha {
            act.set(g, x, Some(y));
        }
    }
    Ok(act)
}

/// Checks (C1')–(C4') and, given an inverse map, (GR1')–(GR3') together with
/// bijectivity of every `alpha_g` onto `X_{g^-1}`.
pub fn check_triple_axioms(
    cat: &Category,
    t: &TripleForm,
    groupoid: Option<&GroupoidWitness>,
) -> AxiomReport {
    let mut report = AxiomReport::default();
    let cover = cover_clause(cat, t);
    let sub = subdomain_clause(cat, t);
    report.push(Axiom::C1p, cover.clone());
    report.push(Axiom::C2p, sub.clone());
    report.push(Axiom::C3p, preimage_clause(cat, t));
    report.push(Axiom::C4p, equal_domain_clause(cat, t));
    if let Some(wit) = groupoid {
        report.push(Axiom::GR1p, cover);
        report.push(Axiom::GR2p, sub);
        report.push(Axiom::GR3p, image_clause(cat, t, wit));
        report.push(Axiom::Bijective, bijection_clause(cat, t, wit));
    }
    report
}

fn gx(cat: &Category, t: &TripleForm, g: MorId, x: PointId) -> Witness {
    Witness::tuple([cat.name(g), t.name(x)])
}

fn ghx(cat: &Category, t: &TripleForm, g: MorId, h: MorId, x: PointId) -> Witness {
    Witness::tuple([cat.name(g), cat.name(h), t.name(x)])
}

fn cover_clause(cat: &Category, t: &TripleForm) -> Verdict {
    let mut out = Vec::new();
    for x in (0..t.points.len()).map(PointId) {
        if !cat
            .objects()
            .iter()
            .any(|&e| t.entry(e).domain.contains(&x))
        {
            out.push(Witness::tuple([t.name(x)]));
        }
    }
    for &e in cat.objects() {
        for (&x, &y) in &t.entry(e).alpha {
            if x != y {
                out.push(gx(cat, t, e, x));
            }
        }
    }
    Verdict::from_witnesses(out)
}

fn subdomain_clause(cat: &Category, t: &TripleForm) -> Verdict {
    let mut out = Vec::new();
    for g in cat.morphisms() {
        let dom = &t.entry(cat.dom(g)).domain;
        for &x in t.entry(g).domain.difference(dom) {
            out.push(gx(cat, t, g, x));
        }
    }
    Verdict::from_witnesses(out)
}

fn composite_agrees(t: &TripleForm, g: MorId, h: MorId, gh: MorId, x: PointId) -> bool {
    let via = t
        .entry(h)
        .alpha
        .get(&x)
        .and_then(|y| t.entry(g).alpha.get(y));
    via.is_some() && via == t.entry(gh).alpha.get(&x)
}

fn preimage_clause(cat: &Category, t: &TripleForm) -> Verdict {
    let mut out = Vec::new();
    for (g, h) in cat.composable_pairs() {
        let Some(gh) = cat.compose(g, h) else {
            continue;
        };
        let (eg, eh, egh) = (t.entry(g), t.entry(h), t.entry(gh));
        let lhs: BTreeSet<PointId> = eh.domain.intersection(&egh.domain).copied().collect();
        let target: BTreeSet<PointId> = eg.domain.intersection(&eh.image).copied().collect();
        let rhs: BTreeSet<PointId> = eh
            .alpha
            .iter()
            .filter(|(_, y)| target.contains(y))
            .map(|(&x, _)| x)
            .collect();
        for &x in lhs.symmetric_difference(&rhs) {
            out.push(ghx(cat, t, g, h, x));
        }
        for &x in lhs.intersection(&rhs) {
            if !composite_agrees(t, g, h, gh, x) {
                out.push(ghx(cat, t, g, h, x));
            }
        }
    }
    Verdict::from_witnesses(out)
}

fn equal_domain_clause(cat: &Category, t: &TripleForm) -> Verdict {
    let mut out = Vec::new();
    for g in cat.morphisms() {
        let dom = &t.entry(cat.dom(g)).domain;
        for &x in t.entry(g).domain.symmetric_difference(dom) {
            out.push(gx(cat, t, g, x));
        }
    }
    Verdict::from_witnesses(out)
}

fn image_clause(cat: &Category, t: &TripleForm, wit: &GroupoidWitness) -> Verdict {
    let mut out = Vec::new();
    for (g, h) in cat.composable_pairs() {
        let Some(gh) = cat.compose(g, h) else {
            continue;
        };
        let (eg, eh, egh) = (t.entry(g), t.entry(h), t.entry(gh));
        let inv = t.entry(wit.inverse(h));
        let moved: BTreeSet<PointId> = eh
            .domain
            .intersection(&egh.domain)
            .filter_map(|x| eh.alpha.get(x))
            .copied()
            .collect();
        let expected: BTreeSet<PointId> = eg.domain.intersection(&inv.domain).copied().collect();
        for &y in moved.symmetric_difference(&expected) {
            out.push(ghx(cat, t, g, h, y));
        }
        for &x in eh.domain.intersection(&egh.domain) {
            if !composite_agrees(t, g, h, gh, x) {
                out.push(ghx(cat, t, g, h, x));
            }
        }
    }
    Verdict::from_witnesses(out)
}

fn bijection_clause(cat: &Category, t: &TripleForm, wit: &GroupoidWitness) -> Verdict {
    let mut out = Vec::new();
    for g in cat.morphisms() {
        let e = t.entry(g);
        let back = t.entry(wit.inverse(g));
        for (&x, y) in &e.alpha {
            if back.alpha.get(y) != Some(&x) {
                out.push(gx(cat, t, g, x));
            }
        }
        // onto X_{g^-1}
        for &y in back.domain.difference(&e.image) {
            out.push(Witness::tuple([cat.name(g), t.name(y)]));
        }
    }
    Verdict::from_witnesses(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{check_category_axioms, GLOBAL};

    fn arrow() -> Category {
        Category::new(&["e", "f"], &[("g", "e", "f")], &[]).unwrap()
    }

    fn ids(t: &TripleForm, set: &BTreeSet<PointId>) -> Vec<String> {
        set.iter().map(|&x| t.points[x.0].clone()).collect()
    }

    #[test]
    fn arrow_fixture_domains() {
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
        let t = to_triple(&act);
        let e = |n| t.entry(cat.id(n).unwrap());
        assert_eq!(ids(&t, &e("e").domain), ["1", "2"]);
        assert_eq!(ids(&t, &e("f").domain), ["2", "3"]);
        assert_eq!(ids(&t, &e("g").domain), ["2"]);
        assert_eq!(ids(&t, &e("g").image), ["2"]);

        let r = check_triple_axioms(&cat, &t, None);
        assert!(r.all_hold(&[Axiom::C1p, Axiom::C2p, Axiom::C3p]));
        assert!(!r.holds(Axiom::C4p));
        assert_eq!(from_triple(&cat, &t).unwrap(), act);
    }

    #[test]
    fn many_to_one_domains() {
        let cat = arrow();
        let act = PartialAction::new(
            &cat,
            &["1", "2", "3", "4"],
            &[
                ("e", "1", "1"),
                ("e", "2", "2"),
                ("e", "3", "3"),
                ("f", "2", "2"),
                ("f", "3", "3"),
                ("f", "4", "4"),
                ("g", "2", "2"),
                ("g", "3", "2"),
            ],
        )
        .unwrap();
        let t = to_triple(&act);
        let g = t.entry(cat.id("g").unwrap());
        assert_eq!(ids(&t, &g.domain), ["2", "3"]);
        assert_eq!(ids(&t, &g.image), ["2"]);
        assert_eq!(from_triple(&cat, &t).unwrap(), act);
    }

    #[test]
    fn empty_table_has_empty_domains() {
        let cat = arrow();
        let act = PartialAction::new::<&str>(&cat, &["1"], &[]).unwrap();
        let t = to_triple(&act);
        assert!(t.entries.iter().all(|e| e.domain.is_empty()));
        assert_eq!(from_triple(&cat, &t).unwrap(), act);
    }

    #[test]
    fn identity_triple_passes_everything() {
        let cat = arrow();
        let act = PartialAction::new(
            &cat,
            &["1", "2"],
            &[("e", "1", "1"), ("f", "2", "2"), ("g", "1", "2")],
        )
        .unwrap();
        assert!(check_category_axioms(&cat, &act).unwrap().all_hold(GLOBAL));
        assert!(check_triple_axioms(&cat, &to_triple(&act), None).all_passed());
    }

    #[test]
    fn shift_fixture_gr3_prime() {
        let cat = Category::new(
            &["e", "f"],
            &[("g", "e", "f"), ("ginv", "f", "e")],
            &[("g", "ginv", "f"), ("ginv", "g", "e")],
        )
        .unwrap();
        let wit = cat.groupoid_witness().unwrap();
        let act = PartialAction::new(
            &cat,
            &["1", "2", "3"],
            &[
                ("e", "1", "1"),
                ("e", "2", "2"),
                ("e", "3", "3"),
                ("f", "2", "2"),
                ("f", "3", "3"),
                ("g", "1", "2"),
                ("g", "2", "3"),
                ("ginv", "2", "1"),
                ("ginv", "3", "2"),
            ],
        )
        .unwrap();
        let t = to_triple(&act);
        // alpha_g(X_g ∩ X_e) = X_ginv ∩ X_ginv
        let g = t.entry(cat.id("g").unwrap());
        assert_eq!(ids(&t, &g.domain), ["1", "2"]);
        assert_eq!(ids(&t, &g.image), ["2", "3"]);
        let r = check_triple_axioms(&cat, &t, Some(&wit));
        assert!(
            r.all_hold(&[Axiom::GR1p, Axiom::GR2p, Axiom::GR3p, Axiom::Bijective]),
            "{r}"
        );
    }

    #[test]
    fn malformed_triples_are_rejected() {
        let cat = arrow();
        let act = PartialAction::new(&cat, &["1"], &[("e", "1", "1")]).unwrap();
        let mut t = to_triple(&act);
        t.entries[0].domain.clear();
        assert!(matches!(
            from_triple(&cat, &t),
            Err(TripleError::DomainMismatch(_))
        ));
        let mut t = to_triple(&act);
        t.entries[0].alpha.insert(PointId(0), PointId(7));
        t.entries[0].image.insert(PointId(7));
        assert!(matches!(
            from_triple(&cat, &t),
            Err(TripleError::OutsideCarrier(_))
        ));
    }
}
