//! Seeded generators for small categories, actions and topologies.
//!
//! Categories are built concretely: objects are small sets, morphisms are
//! functions between them, and the generated morphisms are closed under
//! composition. Global actions come from random functors; partial actions
//! from restricting a global action to a subset.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::action::{PartialAction, PointId};
use crate::category::{Category, MorId};
use crate::topo::{topology_from_relation, FiniteTopology};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Any category.
    Category,
    /// Every morphism invertible.
    Groupoid,
    /// One object.
    Monoid,
    /// One object, every morphism invertible.
    Group,
}

impl Shape {
    fn one_object(self) -> bool {
        matches!(self, Shape::Monoid | Shape::Group)
    }

    fn invertible(self) -> bool {
        matches!(self, Shape::Groupoid | Shape::Group)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Arrow {
    dom: usize,
    cod: usize,
    map: Vec<usize>,
}

fn compose(g: &Arrow, h: &Arrow) -> Arrow {
    Arrow {
        dom: h.dom,
        cod: g.cod,
        map: h.map.iter().map(|&x| g.map[x]).collect(),
    }
}

fn random_arrow<R: Rng>(rng: &mut R, sizes: &[usize], bijective: bool) -> Option<Arrow> {
    let dom = rng.gen_range(0..sizes.len());
    let cod = if bijective {
        let same: Vec<usize> = (0..sizes.len())
            .filter(|&c| sizes[c] == sizes[dom])
            .collect();
        *same.choose(rng)?
    } else {
        rng.gen_range(0..sizes.len())
    };
    let map = if bijective {
        let mut m: Vec<usize> = (0..sizes[dom]).collect();
        m.shuffle(rng);
        m
    } else {
        (0..sizes[dom])
            .map(|_| rng.gen_range(0..sizes[cod]))
            .collect()
    };
    Some(Arrow { dom, cod, map })
}

fn inverse(g: &Arrow) -> Arrow {
    let mut map = vec![0; g.map.len()];
    for (x, &y) in g.map.iter().enumerate() {
        map[y] = x;
    }
    Arrow {
        dom: g.cod,
        cod: g.dom,
        map,
    }
}

/// Closes `arrows` under composition, giving up past `limit` arrows.
fn close(mut arrows: Vec<Arrow>, limit: usize) -> Option<Vec<Arrow>> {
    let mut seen: HashMap<Arrow, usize> = arrows
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, a)| (a, i))
        .collect();
    let mut i = 0;
    while i < arrows.len() {
        for j in 0..arrows.len() {
            for (g, h) in [(i, j), (j, i)] {
                if arrows[g].dom != arrows[h].cod {
                    continue;
                }
                let gh = compose(&arrows[g], &arrows[h]);
                if !seen.contains_key(&gh) {
                    if arrows.len() == limit {
                        return None;
                    }
                    seen.insert(gh.clone(), arrows.len());
                    arrows.push(gh);
                }
            }
        }
        i += 1;
    }
    Some(arrows)
}

/// A random category of the given shape with at most `max_morphisms`
/// morphisms (identities included). Objects are named `o0`, `o1`, ... and
/// other morphisms `m0`, `m1`, ...
pub fn random_category<R: Rng>(rng: &mut R, shape: Shape, max_morphisms: usize) -> Category {
    assert!(max_morphisms >= 1);
    loop {
        let objects = if shape.one_object() {
            1
        } else {
            rng.gen_range(1..=3.min(max_morphisms))
        };
        let sizes: Vec<usize> = (0..objects).map(|_| rng.gen_range(1..=3)).collect();
        let mut arrows: Vec<Arrow> = sizes
            .iter()
            .enumerate()
            .map(|(o, &s)| Arrow {
                dom: o,
                cod: o,
                map: (0..s).collect(),
            })
            .collect();
        for _ in 0..rng.gen_range(0..=3) {
            let Some(g) = random_arrow(rng, &sizes, shape.invertible()) else {
                continue;
            };
            if shape.invertible() {
                arrows.push(inverse(&g));
            }
            arrows.push(g);
        }
        let mut unique = Vec::new();
        for a in arrows {
            if !unique.contains(&a) {
                unique.push(a);
            }
        }
        if unique.len() > max_morphisms {
            continue;
        }
        let Some(arrows) = close(unique, max_morphisms) else {
            continue;
        };
        return concrete_category(&arrows, objects);
    }
}

fn concrete_category(arrows: &[Arrow], objects: usize) -> Category {
    let names: Vec<String> = (0..arrows.len())
        .map(|i| {
            if i < objects {
                format!("o{i}")
            } else {
                format!("m{}", i - objects)
            }
        })
        .collect();
    let index: HashMap<&Arrow, usize> = arrows.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let morphisms: Vec<(String, String, String)> = arrows[objects..]
        .iter()
        .zip(&names[objects..])
        .map(|(a, n)| (n.clone(), names[a.dom].clone(), names[a.cod].clone()))
        .collect();
    let mut composites = Vec::new();
    for (g, ga) in arrows.iter().enumerate() {
        for (h, ha) in arrows.iter().enumerate() {
            if ga.dom == ha.cod {
                let k = index[&compose(ga, ha)];
                composites.push((names[g].clone(), names[h].clone(), names[k].clone()));
            }
        }
    }
    Category::new(&names[..objects], &morphisms, &composites).expect("concrete category")
}

/// A random global action with at most `max_points` points, given by a
/// functor whose values are random (possibly overlapping) subsets of the
/// points `p0`, `p1`, ...
pub fn random_global_action<R: Rng>(
    rng: &mut R,
    cat: &Category,
    max_points: usize,
) -> PartialAction {
    let pool = max_points.max(1);
    let objects = cat.objects();
    loop {
        // fibre of each object, by pool index
        let mut fibre = vec![Vec::new(); cat.len()];
        for &e in objects {
            let size = rng.gen_range(0..=pool.min(3));
            let mut pts: Vec<usize> = (0..pool).collect();
            pts.shuffle(rng);
            pts.truncate(size);
            pts.sort_unstable();
            fibre[e.0] = pts;
        }
        if let Some(values) = solve_functor(rng, cat, &fibre, pool) {
            let used: Vec<usize> = (0..pool)
                .filter(|&p| objects.iter().any(|e| fibre[e.0].contains(&p)))
                .collect();
            if used.is_empty() {
                continue;
            }
            let names: Vec<String> = used.iter().map(|p| format!("p{p}")).collect();
            let mut act = PartialAction::empty(cat.len(), names.iter().cloned()).expect("distinct");
            let id = |p: usize| act.point(&format!("p{p}")).expect("used point");
            let mut entries = Vec::new();
            for g in cat.morphisms() {
                for &x in &fibre[cat.dom(g).0] {
                    entries.push((g, id(x), id(values[g.0][x].expect("solved"))));
                }
            }
            for (g, x, y) in entries {
                act.set(g, x, Some(y));
            }
            return act;
        }
    }
}

fn solve_functor<R: Rng>(
    rng: &mut R,
    cat: &Category,
    fibre: &[Vec<usize>],
    pool: usize,
) -> Option<Vec<Vec<Option<usize>>>> {
    let mut values = vec![vec![None; pool]; cat.len()];
    let mut vars = Vec::new();
    for g in cat.morphisms() {
        let d = cat.dom(g).0;
        for &x in &fibre[d] {
            if cat.is_object(g) {
                values[g.0][x] = Some(x);
            } else {
                vars.push((g, x));
            }
        }
    }
    let triples: Vec<(MorId, MorId, MorId)> = cat
        .composable_pairs()
        .into_iter()
        .filter_map(|(g, h)| cat.compose(g, h).map(|k| (g, h, k)))
        .collect();
    let consistent = |values: &[Vec<Option<usize>>]| {
        triples.iter().all(|&(g, h, gh)| {
            fibre[cat.dom(h).0]
                .iter()
                .all(|&x| match (values[h.0][x], values[gh.0][x]) {
                    (Some(hx), Some(ghx)) => values[g.0][hx].is_none_or(|v| v == ghx),
                    _ => true,
                })
        })
    };
    #[allow(clippy::too_many_arguments, clippy::type_complexity)]
    fn go<R: Rng>(
        rng: &mut R,
        depth: usize,
        vars: &[(MorId, usize)],
        cat: &Category,
        fibre: &[Vec<usize>],
        values: &mut Vec<Vec<Option<usize>>>,
        consistent: &dyn Fn(&[Vec<Option<usize>>]) -> bool,
        budget: &mut usize,
    ) -> bool {
        if depth == vars.len() {
            return true;
        }
        let (g, x) = vars[depth];
        let mut options = fibre[cat.cod(g).0].clone();
        options.shuffle(rng);
        for y in options {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            values[g.0][x] = Some(y);
            if consistent(values)
                && go(rng, depth + 1, vars, cat, fibre, values, consistent, budget)
            {
                return true;
            }
        }
        values[g.0][x] = None;
        false
    }
    let mut budget = 10_000;
    go(
        rng,
        0,
        &vars,
        cat,
        fibre,
        &mut values,
        &consistent,
        &mut budget,
    )
    .then_some(values)
}

/// The restriction of `act` to the points in `keep`: `g·x` survives when
/// both `x` and `g·x` are kept.
pub fn restrict(act: &PartialAction, keep: &[PointId]) -> PartialAction {
    let names = keep.iter().map(|&x| act.point_name(x).to_string());
    let mut out = PartialAction::empty(act.morphism_count(), names).expect("distinct names");
    for (g, x, y) in act.entries() {
        if let (Some(x2), Some(y2)) = (out.point(act.point_name(x)), out.point(act.point_name(y))) {
            out.set(g, x2, Some(y2));
        }
    }
    out
}

/// A random partial action with at most `max_points` points: a random
/// global action restricted to a random non-empty subset.
pub fn random_partial_action<R: Rng>(
    rng: &mut R,
    cat: &Category,
    max_points: usize,
) -> PartialAction {
    let global = random_global_action(rng, cat, max_points);
    let mut keep: Vec<PointId> = global.points().filter(|_| rng.gen_bool(0.7)).collect();
    if keep.is_empty() {
        keep.push(PointId(rng.gen_range(0..global.len())));
    }
    restrict(&global, &keep)
}

/// Applies `edits` random changes, each clearing an entry or redirecting it
/// to a random point.
pub fn mutate<R: Rng>(rng: &mut R, act: &PartialAction, edits: usize) -> PartialAction {
    let mut out = act.clone();
    if out.is_empty() || out.morphism_count() == 0 {
        return out;
    }
    for _ in 0..edits {
        let g = MorId(rng.gen_range(0..out.morphism_count()));
        let x = PointId(rng.gen_range(0..out.len()));
        let y = rng
            .gen_bool(0.7)
            .then(|| PointId(rng.gen_range(0..out.len())));
        out.set(g, x, y);
    }
    out
}

/// A random topology: each ordered pair of distinct points is linked with
/// probability `p` and neighbourhoods are the reachable sets.
pub fn random_topology<R: Rng>(rng: &mut R, labels: Vec<String>, p: f64) -> FiniteTopology {
    let n = labels.len();
    let edges: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| a != b && rng.gen_bool(p)).collect())
        .collect();
    topology_from_relation(labels, &edges)
}

/// A random subset of `0..n` as a bit set.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.extend((0..n).filter(|_| rng.gen_bool(0.5)));
    s
}
