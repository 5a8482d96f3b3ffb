use std::collections::BTreeSet;
use std::fmt::Write;

use crate::action::PartialAction;
use crate::category::Category;
use crate::globalize::Globalization;

use super::{GMap, OpenFamily, Scenario};

fn implied(cat: &Category, g: crate::MorId, h: crate::MorId, k: crate::MorId) -> bool {
    (cat.is_object(h) && cat.dom(g) == h && k == g)
        || (cat.is_object(g) && cat.cod(h) == g && k == h)
}

fn write_opens(out: &mut String, kind: &str, family: &OpenFamily) {
    writeln!(out, "\ntopology {kind}").unwrap();
    for open in &family.opens {
        if open.is_empty() {
            writeln!(out, "  open empty").unwrap();
        } else {
            writeln!(out, "  open {}", open.join(" ")).unwrap();
        }
    }
    writeln!(out, "end").unwrap();
}

/// Serializes a scenario; [`super::parse`] reads it back unchanged.
pub fn to_text(s: &Scenario) -> String {
    let mut out = String::new();
    let cat = &s.category;
    if let Some(name) = &s.category_name {
        writeln!(out, "category {name}").unwrap();
        for &o in cat.objects() {
            writeln!(out, "  object {}", cat.name(o)).unwrap();
        }
        for (g, d, c) in cat.triples() {
            if cat.id(&g).is_some_and(|g| !cat.is_object(g)) {
                writeln!(out, "  mor {g} : {d} -> {c}").unwrap();
            }
        }
        for (g, h, k) in cat.composites() {
            if !implied(cat, g, h, k) {
                writeln!(
                    out,
                    "  comp {} . {} = {}",
                    cat.name(g),
                    cat.name(h),
                    cat.name(k)
                )
                .unwrap();
            }
        }
        writeln!(out, "end").unwrap();
    }
    if let Some(name) = &s.action_name {
        let act = &s.action;
        if !out.is_empty() {
            out.push('\n');
        }
        writeln!(out, "action {name}").unwrap();
        if !act.is_empty() {
            writeln!(out, "  point {}", act.point_names().join(" ")).unwrap();
        }
        for (g, x, y) in act.entries() {
            writeln!(
                out,
                "  act {} {} = {}",
                cat.name(g),
                act.point_name(x),
                act.point_name(y)
            )
            .unwrap();
        }
        writeln!(out, "end").unwrap();
    }
    if let Some(f) = &s.top_mor {
        write_opens(&mut out, "mor", f);
    }
    if let Some(f) = &s.top_space {
        write_opens(&mut out, "space", f);
    }
    if let Some(m) = &s.map {
        writeln!(out, "\nmap {}", m.name).unwrap();
        for (x, z) in &m.pairs {
            writeln!(out, "  gfun {x} = {z}").unwrap();
        }
        writeln!(out, "end").unwrap();
    }
    out
}

/// Turns arbitrary labels into distinct identifiers: `[e,1]` becomes `e_1`.
pub fn sanitize_point_names(names: &[String]) -> Vec<String> {
    let mut taken = BTreeSet::new();
    names
        .iter()
        .map(|n| {
            let base: String = n
                .chars()
                .map(|c| {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        c
                    } else {
                        '_'
                    }
                })
                .collect::<String>()
                .trim_matches('_')
                .to_string();
            let base = if base.is_empty() {
                "p".to_string()
            } else {
                base
            };
            let mut candidate = base.clone();
            let mut i = 2;
            while !taken.insert(candidate.clone()) {
                candidate = format!("{base}_{i}");
                i += 1;
            }
            candidate
        })
        .collect()
}

/// `Y` as a scenario with identifier point names, plus a `map i` block
/// holding the embedding, so it can serve directly as a mediation target.
pub fn globalization_scenario(
    category_name: &str,
    cat: &Category,
    act: &PartialAction,
    glob: &Globalization,
) -> Scenario {
    let y = glob.action();
    let names = sanitize_point_names(y.point_names());
    let mut renamed = PartialAction::empty(cat.len(), names.iter().cloned())
        .expect("sanitized names are distinct");
    let new = |p: crate::PointId| renamed.point(&names[p.0]).expect("renamed point");
    let entries: Vec<_> = y.entries().map(|(g, p, q)| (g, new(p), new(q))).collect();
    for (g, p, q) in entries {
        renamed.set(g, p, Some(q));
    }
    let pairs = act
        .points()
        .map(|x| {
            (
                act.point_name(x).to_string(),
                names[glob.embedding()[x.0].0].clone(),
            )
        })
        .collect();
    let mut s = Scenario::new(cat.clone(), renamed);
    s.category_name = Some(category_name.to_string());
    s.action_name = Some("Y".into());
    s.map = Some(GMap {
        name: "i".into(),
        pairs,
    });
    s
}
