use serde_json::{json, Map, Value};

use crate::action::PartialAction;
use crate::category::{Category, ValidationReport};
use crate::globalize::{Globalization, Mediator};
use crate::report::{AxiomReport, Verdict};
use crate::topo::TopoSummary;

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "pass": v.passed(),
        "witnesses": v.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    })
}

/// `{"violations":[...]}`, empty for a valid category.
pub fn validation_json(r: &ValidationReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "code": v.code(),
                "morphisms": v.culprits(),
                "message": v.to_string(),
            })
        })
        .collect();
    json!({ "violations": violations })
}

pub fn axioms_json(r: &AxiomReport) -> Value {
    let map: Map<String, Value> = r
        .entries()
        .iter()
        .map(|(a, v)| (a.label().to_string(), verdict_json(v)))
        .collect();
    Value::Object(map)
}

fn rep(cat: &Category, act: &PartialAction, glob: &Globalization, y: crate::PointId) -> Value {
    let (g, x) = glob.representative(y);
    json!([cat.name(g), act.point_name(x)])
}

/// Classes with their members, the action on `Y`, the embedding, and the
/// axiom report for `Y`. Every class is named by its representative.
pub fn globalization_json(
    cat: &Category,
    act: &PartialAction,
    glob: &Globalization,
    axioms: &AxiomReport,
) -> Value {
    let y = glob.action();
    let classes: Vec<Value> = (0..glob.class_count())
        .map(|c| {
            let p = glob.class_point(c);
            let members: Vec<Value> = glob
                .members(p)
                .into_iter()
                .map(|(g, x)| json!([cat.name(g), act.point_name(x)]))
                .collect();
            json!({ "rep": rep(cat, act, glob, p), "members": members })
        })
        .collect();
    let mut entries: Vec<_> = y
        .entries()
        .map(|(g, p, q)| (g, glob.representative(p), p, q))
        .collect();
    entries.sort_by_key(|&(g, r, _, _)| (g, r));
    let action: Vec<Value> = entries
        .into_iter()
        .map(|(g, _, p, q)| {
            json!({
                "g": cat.name(g),
                "src": rep(cat, act, glob, p),
                "dst": rep(cat, act, glob, q),
            })
        })
        .collect();
    let embedding: Map<String, Value> = act
        .points()
        .map(|x| {
            (
                act.point_name(x).to_string(),
                rep(cat, act, glob, glob.embedding()[x.0]),
            )
        })
        .collect();
    json!({
        "classes": classes,
        "action": action,
        "embedding": embedding,
        "axioms": axioms_json(axioms),
    })
}

pub fn mediator_json(
    cat: &Category,
    act: &PartialAction,
    glob: &Globalization,
    target: &PartialAction,
    m: &Mediator,
) -> Value {
    let k: Vec<Value> = glob
        .action()
        .points()
        .map(|y| {
            json!({
                "class": rep(cat, act, glob, y),
                "value": target.point_name(m.k[y.0]),
            })
        })
        .collect();
    json!({
        "k": k,
        "factors": m.factors,
        "injective": m.injective,
        "equivariant": verdict_json(&m.equivariant),
    })
}

pub fn topo_json(s: &TopoSummary) -> Value {
    let mut out = json!({
        "topological_category": verdict_json(&s.topological_category),
        "CA1": verdict_json(&s.continuity.ca1),
        "CA2": verdict_json(&s.continuity.ca2),
        "star_open": verdict_json(&s.star_open),
        "graph_open": verdict_json(&s.graph_open),
        "pass": s.passed(),
    });
    if let Some(y) = &s.y {
        let opens: Vec<Vec<String>> = y
            .topology
            .opens()
            .iter()
            .map(|o| y.topology.set_names(o))
            .collect();
        out["y"] = json!({
            "opens": opens,
            "i_continuous": verdict_json(&y.report.i_continuous),
            "action_continuous": verdict_json(&y.report.action_continuous),
            "CA1_informational": verdict_json(&y.report.ca1_on_y),
            "i_open": verdict_json(&y.embedding_open),
        });
    }
    out
}
