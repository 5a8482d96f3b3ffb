use crate::category::{Category, GroupoidWitness, MorId};
use crate::report::{Axiom, AxiomReport, Verdict, Witness};

use super::{ActionError, PartialAction, PointId};

/// Axioms that make a table a partial category action.
pub const PARTIAL: &[Axiom] = &[Axiom::C1, Axiom::C2, Axiom::C3];
/// Axioms of a global category action.
pub const GLOBAL: &[Axiom] = &[Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4];
/// Axioms of a partial groupoid action.
pub const GROUPOID_PARTIAL: &[Axiom] = &[Axiom::GR1, Axiom::GR2, Axiom::GR3];

struct Namer<'a> {
    cat: &'a Category,
    act: &'a PartialAction,
}

impl Namer<'_> {
    fn gx(&self, g: MorId, x: PointId) -> Witness {
        Witness::tuple([self.cat.name(g), self.act.point_name(x)])
    }

    fn ghx(&self, g: MorId, h: MorId, x: PointId) -> Witness {
        Witness::tuple([self.cat.name(g), self.cat.name(h), self.act.point_name(x)])
    }

    fn x(&self, x: PointId) -> Witness {
        Witness::tuple([self.act.point_name(x)])
    }
}

fn identity_clause(cat: &Category, act: &PartialAction) -> Verdict {
    let n = Namer { cat, act };
    let mut out = Vec::new();
    for x in act.points() {
        let mut some_object = false;
        for &e in cat.objects() {
            match act.act(e, x) {
                Some(y) if y != x => {
                    some_object = true;
                    out.push(n.gx(e, x));
                }
                Some(_) => some_object = true,
                None => {}
            }
        }
        if !some_object {
            out.push(n.x(x));
        }
    }
    Verdict::from_witnesses(out)
}

fn domain_clause(cat: &Category, act: &PartialAction) -> Verdict {
    let n = Namer { cat, act };
    let out = act
        .entries()
        .filter(|&(g, x, _)| !act.is_defined(cat.dom(g), x))
        .map(|(g, x, _)| n.gx(g, x))
        .collect();
    Verdict::from_witnesses(out)
}

/// `(gh)·x` defined iff `g·(h·x)` defined, with equal values, whenever
/// `h·x` is defined. Only composable pairs present in the table are examined.
fn composition_clause(cat: &Category, act: &PartialAction, pairs: &[(MorId, MorId)]) -> Verdict {
    let n = Namer { cat, act };
    let mut out = Vec::new();
    for &(g, h) in pairs {
        let Some(gh) = cat.compose(g, h) else {
            continue;
        };
        for x in act.points() {
            let Some(hx) = act.act(h, x) else { continue };
            if act.act(gh, x) != act.act(g, hx) {
                out.push(n.ghx(g, h, x));
            }
        }
    }
    Verdict::from_witnesses(out)
}

fn globality_clause(cat: &Category, act: &PartialAction) -> Verdict {
    let n = Namer { cat, act };
    let mut out = Vec::new();
    for g in cat.morphisms() {
        for x in act.points() {
            if act.is_defined(cat.dom(g), x) && !act.is_defined(g, x) {
                out.push(n.gx(g, x));
            }
        }
    }
    Verdict::from_witnesses(out)
}

fn inverse_clause(cat: &Category, wit: &GroupoidWitness, act: &PartialAction) -> Verdict {
    let n = Namer { cat, act };
    let out = act
        .entries()
        .filter(|&(g, x, y)| act.act(wit.inverse(g), y) != Some(x))
        .map(|(g, x, _)| n.gx(g, x))
        .collect();
    Verdict::from_witnesses(out)
}

/// If `g·(h·x)` is defined then `(gh)·x` is defined and equal to it.
fn forward_composition_clause(
    cat: &Category,
    act: &PartialAction,
    pairs: &[(MorId, MorId)],
) -> Verdict {
    let n = Namer { cat, act };
    let mut out = Vec::new();
    for &(g, h) in pairs {
        let Some(gh) = cat.compose(g, h) else {
            continue;
        };
        for x in act.points() {
            let Some(ghx) = act.act(h, x).and_then(|hx| act.act(g, hx)) else {
                continue;
            };
            if act.act(gh, x) != Some(ghx) {
                out.push(n.ghx(g, h, x));
            }
        }
    }
    Verdict::from_witnesses(out)
}

/// Checks (C1)–(C4).
///
/// C4 is always reported; a partial action only needs C1–C3
/// (see [`PARTIAL`]).
pub fn check_category_axioms(
    cat: &Category,
    act: &PartialAction,
) -> Result<AxiomReport, ActionError> {
    act.ensure_fits(cat)?;
    let pairs = cat.composable_pairs();
    let mut report = AxiomReport::default();
    report.push(Axiom::C1, identity_clause(cat, act));
    report.push(Axiom::C2, domain_clause(cat, act));
    report.push(Axiom::C3, composition_clause(cat, act, &pairs));
    report.push(Axiom::C4, globality_clause(cat, act));
    Ok(report)
}

/// Checks (GR1)–(GR4) against the given inverse map.
pub fn check_groupoid_axioms(
    cat: &Category,
    wit: &GroupoidWitness,
    act: &PartialAction,
) -> Result<AxiomReport, ActionError> {
    act.ensure_fits(cat)?;
    let pairs = cat.composable_pairs();
    let mut report = AxiomReport::default();
    report.push(Axiom::GR1, identity_clause(cat, act));
    report.push(Axiom::GR2, inverse_clause(cat, wit, act));
    report.push(Axiom::GR3, forward_composition_clause(cat, act, &pairs));
    report.push(Axiom::GR4, globality_clause(cat, act));
    Ok(report)
}

/// The partial *group* axioms (G1)–(G3) for a one-object groupoid.
///
/// (G1) asks that the identity acts everywhere as the identity; (G2) and (G3)
/// read like (GR2) and (GR3) with every pair composable.
pub fn check_group_axioms(cat: &Category, act: &PartialAction) -> Result<AxiomReport, ActionError> {
    act.ensure_fits(cat)?;
    let unit = single_object(cat)?;
    let wit = cat.groupoid_witness().ok_or(ActionError::NotGroupoid)?;
    let all_pairs = all_pairs(cat);
    let mut report = AxiomReport::default();
    report.push(Axiom::G1, unit_clause(cat, act, unit));
    report.push(Axiom::G2, inverse_clause(cat, &wit, act));
    report.push(Axiom::G3, forward_composition_clause(cat, act, &all_pairs));
    Ok(report)
}

/// The partial *monoid* axioms (M1)–(M2) for a one-object category.
pub fn check_monoid_axioms(
    cat: &Category,
    act: &PartialAction,
) -> Result<AxiomReport, ActionError> {
    act.ensure_fits(cat)?;
    let unit = single_object(cat)?;
    let all_pairs = all_pairs(cat);
    let mut report = AxiomReport::default();
    report.push(Axiom::M1, unit_clause(cat, act, unit));
    report.push(Axiom::M2, composition_clause(cat, act, &all_pairs));
    Ok(report)
}

fn single_object(cat: &Category) -> Result<MorId, ActionError> {
    match cat.objects() {
        [e] => Ok(*e),
        other => Err(ActionError::NotOneObject(other.len())),
    }
}

fn all_pairs(cat: &Category) -> Vec<(MorId, MorId)> {
    cat.morphisms()
        .flat_map(|g| cat.morphisms().map(move |h| (g, h)))
        .collect()
}

fn unit_clause(cat: &Category, act: &PartialAction, unit: MorId) -> Verdict {
    let n = Namer { cat, act };
    let out = act
        .points()
        .filter(|&x| act.act(unit, x) != Some(x))
        .map(|x| n.x(x))
        .collect();
    Verdict::from_witnesses(out)
}
