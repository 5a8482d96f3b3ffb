//! Global actions as functors into finite sets.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::category::Category;
use crate::report::{AxiomReport, Verdict, Witness};

use super::{check_category_axioms, ActionError, PartialAction, GLOBAL};

/// A functor `G -> Set` with finite values, recorded by names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SetFunctor {
    /// `F(e)` for every object.
    pub sets: BTreeMap<String, BTreeSet<String>>,
    /// `F(g) : F(d g) -> F(c g)` for every morphism, identities included.
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("action is not global")]
    NotGlobal(AxiomReport),
    #[error("functor has no value at `{0}`")]
    Missing(String),
    #[error("F({0}) is not a total map F(d {0}) -> F(c {0})")]
    BadMap(String),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// `F(e) = X_e`, `F(g) = alpha_g`. Requires (C1)–(C4).
pub fn to_functor(cat: &Category, act: &PartialAction) -> Result<SetFunctor, FunctorError> {
    let report = check_category_axioms(cat, act)?;
    if !report.all_hold(GLOBAL) {
        return Err(FunctorError::NotGlobal(report));
    }
    let mut f = SetFunctor::default();
    for &e in cat.objects() {
        let set = act
            .domain_of(e)
            .into_iter()
            .map(|x| act.point_name(x).to_string())
            .collect();
        f.sets.insert(cat.name(e).to_string(), set);
    }
    for g in cat.morphisms() {
        f.maps.insert(cat.name(g).to_string(), BTreeMap::new());
    }
    for (g, x, y) in act.entries() {
        f.maps
            .get_mut(cat.name(g))
            .expect("every morphism has a slot")
            .insert(act.point_name(x).to_string(), act.point_name(y).to_string());
    }
    Ok(f)
}

fn shape_check(cat: &Category, f: &SetFunctor) -> Result<(), FunctorError> {
    for &e in cat.objects() {
        if !f.sets.contains_key(cat.name(e)) {
            return Err(FunctorError::Missing(cat.name(e).to_string()));
        }
    }
    for g in cat.morphisms() {
        let name = cat.name(g);
        let map = f
            .maps
            .get(name)
            .ok_or_else(|| FunctorError::Missing(name.to_string()))?;
        let src = &f.sets[cat.name(cat.dom(g))];
        let dst = &f.sets[cat.name(cat.cod(g))];
        if !map.keys().eq(src.iter()) || map.values().any(|y| !dst.contains(y)) {
            return Err(FunctorError::BadMap(name.to_string()));
        }
    }
    Ok(())
}

/// Identity and composition laws of a functor; witnesses are `(e,x)` or
/// `(g,h,x)`.
pub fn check_functor(cat: &Category, f: &SetFunctor) -> Result<Verdict, FunctorError> {
    shape_check(cat, f)?;
    let mut out = Vec::new();
    for &e in cat.objects() {
        for (x, y) in &f.maps[cat.name(e)] {
            if x != y {
                out.push(Witness::tuple([cat.name(e), x.as_str()]));
            }
        }
    }
    for (g, h) in cat.composable_pairs() {
        let Some(gh) = cat.compose(g, h) else {
            continue;
        };
        let (fg, fh, fgh) = (
            &f.maps[cat.name(g)],
            &f.maps[cat.name(h)],
            &f.maps[cat.name(gh)],
        );
        for (x, y) in fh {
            if fg.get(y) != fgh.get(x) {
                out.push(Witness::tuple([cat.name(g), cat.name(h), x.as_str()]));
            }
        }
    }
    Ok(Verdict::from_witnesses(out))
}

/// The global action on `X = ∪ F(e)` given by `g·x = F(g)(x)` for
/// `x ∈ F(d g)`.
pub fn from_functor(cat: &Category, f: &SetFunctor) -> Result<PartialAction, FunctorError> {
    shape_check(cat, f)?;
    let carrier: BTreeSet<String> = f.sets.values().flatten().cloned().collect();
    let mut act = PartialAction::empty(cat.len(), carrier)?;
    for g in cat.morphisms() {
        for (x, y) in &f.maps[cat.name(g)] {
            let (x, y) = (act.point(x), act.point(y));
            act.set(g, x.expect("in carrier"), y);
        }
    }
    Ok(act)
}
