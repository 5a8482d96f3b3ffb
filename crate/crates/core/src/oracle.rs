//! Independent cross-checks of the globalization machinery.
//!
//! Everything here compares two routes to the same answer: union-find
//! against the naive closure, the formula for `k` against exhaustive search,
//! one axiom system against another.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{
    check_category_axioms, check_group_axioms, check_groupoid_axioms, check_monoid_axioms,
    check_triple_axioms, from_functor, from_triple, to_functor, to_triple, PartialAction, GLOBAL,
    GROUPOID_PARTIAL, PARTIAL,
};
use crate::category::Category;
use crate::dsl::{parse, to_text, Scenario};
use crate::globalize::{
    build_globalization_with, check_induced, enumerate_globalizations, mediating,
    mediators_brute_force, naive_closure, sim_pairs, Extension, GlobalizeError, Partition,
    SimRelation, XBar,
};
use crate::random::{mutate, random_category, random_global_action, restrict, Shape};
use crate::report::{Axiom, Verdict, Witness};

/// A closure routine under test.
pub type ClosureFn<'a> = &'a dyn Fn(usize, &SimRelation) -> Partition;

/// Default seed for the randomized suites.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Default number of random cases.
pub const DEFAULT_CASES: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    /// Extra context such as the number of cases examined.
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub checks: Vec<Check>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.passed())
    }
}

/// `closure` and the naive fixpoint give the same partition of `X̄`.
/// The witness is the first `X̄` element whose class differs.
pub fn closure_agrees(cat: &Category, act: &PartialAction, closure: ClosureFn) -> Verdict {
    let xbar = XBar::enumerate(cat, act);
    let sim = sim_pairs(cat, act, &xbar);
    let fast = closure(xbar.len(), &sim);
    let slow = naive_closure(xbar.len(), &sim);
    if fast == slow {
        return Verdict::pass();
    }
    let bad = (0..xbar.len())
        .find(|&i| fast.classes()[fast.class_of(i)] != slow.classes()[slow.class_of(i)])
        .unwrap_or(0);
    let (g, x) = xbar.get(bad);
    Verdict::from_witnesses(vec![Witness::tuple([cat.name(g), act.point_name(x)])])
}

/// Outcome of [`universality_sweep`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    /// Failures of existence, factorization, equivariance or uniqueness of `k`.
    pub universality: Verdict,
    /// Groupoids only: globalizations whose `k` is not injective.
    pub non_injective: Verdict,
    /// Groupoids only: non-injective `k` for a tight `j`, see [`is_tight`].
    pub non_injective_tight: Verdict,
    /// Number of globalizations examined.
    pub count: usize,
    /// Number of those with a tight `j`.
    pub tight: usize,
}

/// `Z` restricted to `j(X)` gives back the input action, and every point
/// outside `j(X)` lies over exactly one object.
pub fn is_tight(cat: &Category, act: &PartialAction, ext: &Extension) -> bool {
    let single_fibre = ext.target.points().all(|z| {
        ext.j.contains(&z)
            || cat
                .objects()
                .iter()
                .filter(|&&o| ext.target.is_defined(o, z))
                .count()
                == 1
    });
    single_fibre && check_induced(cat, act, &ext.target, &ext.j).passed()
}

/// Every globalization with at most `max_size` points admits exactly one
/// mediating G-function, found both by the formula and by search. For a
/// groupoid the sweep also records which mediators fail to be injective.
pub fn universality_sweep(
    cat: &Category,
    act: &PartialAction,
    max_size: usize,
    closure: ClosureFn,
) -> Result<Sweep, GlobalizeError> {
    let glob = build_globalization_with(cat, act, closure)?;
    let extensions = enumerate_globalizations(cat, act, max_size)?;
    let groupoid = cat.groupoid_witness().is_some();
    let (mut bad, mut collapsed, mut collapsed_tight) = (Vec::new(), Vec::new(), Vec::new());
    let mut tight = 0;
    for (n, ext) in extensions.iter().enumerate() {
        let tag = |what: &str| Witness::tuple([format!("Z{n}"), what.to_string()]);
        let m = match mediating(cat, act, &glob, &ext.target, &ext.j) {
            Ok(m) => m,
            Err(_) => {
                bad.push(tag("no mediator"));
                continue;
            }
        };
        if !m.factors {
            bad.push(tag("k.i != j"));
        }
        if !m.equivariant.passed() {
            bad.push(tag("k not a G-function"));
        }
        if mediators_brute_force(&glob, &ext.target, &ext.j) != [m.k.clone()] {
            bad.push(tag("not unique"));
        }
        let is_tight = is_tight(cat, act, ext);
        tight += usize::from(is_tight);
        if groupoid && !m.injective {
            let w = non_injective_witness(&glob, &ext.target, &m.k, n);
            if is_tight {
                collapsed_tight.push(w.clone());
            }
            collapsed.push(w);
        }
    }
    Ok(Sweep {
        universality: Verdict::from_witnesses(bad),
        non_injective: Verdict::from_witnesses(collapsed),
        non_injective_tight: Verdict::from_witnesses(collapsed_tight),
        count: extensions.len(),
        tight,
    })
}

/// `(Zn, [g,x], [h,x'], z)` for the first two classes sharing an image `z`.
fn non_injective_witness(
    glob: &crate::globalize::Globalization,
    target: &PartialAction,
    k: &[crate::PointId],
    n: usize,
) -> Witness {
    let y = glob.action();
    for a in 0..k.len() {
        for b in a + 1..k.len() {
            if k[a] == k[b] {
                return Witness::tuple([
                    format!("Z{n}"),
                    y.point_name(crate::PointId(a)).to_string(),
                    y.point_name(crate::PointId(b)).to_string(),
                    target.point_name(k[a]).to_string(),
                ]);
            }
        }
    }
    Witness::tuple([format!("Z{n}")])
}

/// One random case of the seeded suite.
#[derive(Debug, Clone)]
pub struct RandomCase {
    pub shape: Shape,
    pub category: Category,
    /// A global action on a superset of `action`'s points.
    pub global: PartialAction,
    pub action: PartialAction,
    /// `false` when `action` was mutated and may break the axioms.
    pub pristine: bool,
}

const SHAPES: [Shape; 4] = [
    Shape::Category,
    Shape::Groupoid,
    Shape::Monoid,
    Shape::Group,
];

/// Seeded random cases with at most 8 morphisms and 6 points, cycling
/// through the category shapes. About a third are mutated.
pub fn random_cases(seed: u64, count: usize) -> Vec<RandomCase> {
    random_cases_of(seed, count, &SHAPES)
}

/// As [`random_cases`], cycling through `shapes` only.
pub fn random_cases_of(seed: u64, count: usize, shapes: &[Shape]) -> Vec<RandomCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let shape = shapes[i % shapes.len()];
            let category = random_category(&mut rng, shape, 8);
            let global = random_global_action(&mut rng, &category, 6);
            let mut keep: Vec<_> = global.points().filter(|_| rng.gen_bool(0.7)).collect();
            if keep.is_empty() {
                keep.push(crate::PointId(0));
            }
            let partial = restrict(&global, &keep);
            let pristine = rng.gen_ratio(2, 3);
            let action = if pristine {
                partial
            } else {
                let edits = rng.gen_range(1..=3);
                mutate(&mut rng, &partial, edits)
            };
            RandomCase {
                shape,
                category,
                global,
                action,
                pristine,
            }
        })
        .collect()
}

fn case_witness(i: usize, what: &str) -> Witness {
    Witness::tuple([format!("case{i}"), what.to_string()])
}

/// Union-find against the naive closure on every case.
pub fn random_closure_check(cases: &[RandomCase], closure: ClosureFn) -> Verdict {
    let out = cases
        .iter()
        .enumerate()
        .filter(|(_, c)| !closure_agrees(&c.category, &c.action, closure).passed())
        .map(|(i, _)| case_witness(i, "closure"))
        .collect();
    Verdict::from_witnesses(out)
}

/// Equivalent axiom systems must agree on every table, valid or not.
pub fn random_axiom_check(cases: &[RandomCase]) -> Verdict {
    let mut out = Vec::new();
    for (i, c) in cases.iter().enumerate() {
        let (cat, act) = (&c.category, &c.action);
        let report = check_category_axioms(cat, act).expect("sizes match");
        let partial = report.all_hold(PARTIAL);
        if let Some(wit) = cat.groupoid_witness() {
            let gr = check_groupoid_axioms(cat, &wit, act).expect("sizes match");
            if gr.all_hold(GROUPOID_PARTIAL) != partial {
                out.push(case_witness(i, "GR"));
            }
            if cat.objects().len() == 1 {
                let g = check_group_axioms(cat, act).expect("one-object groupoid");
                if g.all_passed() != partial {
                    out.push(case_witness(i, "G"));
                }
            }
        }
        if cat.objects().len() == 1 {
            let m = check_monoid_axioms(cat, act).expect("one object");
            if m.all_passed() != partial {
                out.push(case_witness(i, "M"));
            }
        }
        let triple = check_triple_axioms(cat, &to_triple(act), cat.groupoid_witness().as_ref());
        let primed_partial = triple.all_hold(&[Axiom::C1p, Axiom::C2p, Axiom::C3p]);
        if primed_partial != partial {
            out.push(case_witness(i, "C'"));
        }
        let primed_global = primed_partial && triple.holds(Axiom::C4p);
        if primed_global != report.all_hold(GLOBAL) {
            out.push(case_witness(i, "C4'"));
        }
    }
    Verdict::from_witnesses(out)
}

/// Triple form, functor and scenario text all give back what they were
/// built from.
pub fn random_round_trip_check(cases: &[RandomCase]) -> Verdict {
    let mut out = Vec::new();
    for (i, c) in cases.iter().enumerate() {
        let (cat, act) = (&c.category, &c.action);
        if from_triple(cat, &to_triple(act)).as_ref() != Ok(act) {
            out.push(case_witness(i, "triple"));
        }
        match to_functor(cat, &c.global) {
            Ok(f) if from_functor(cat, &f).as_ref() == Ok(&c.global) => {}
            _ => out.push(case_witness(i, "functor")),
        }
        let s = Scenario::new(cat.clone(), act.clone());
        if parse(&to_text(&s)).as_ref() != Ok(&s) {
            out.push(case_witness(i, "scenario"));
        }
    }
    Verdict::from_witnesses(out)
}

/// Runs every check on one scenario and on a seeded random suite.
pub fn run_oracle(
    cat: &Category,
    act: &PartialAction,
    max_size: usize,
    seed: u64,
    cases: usize,
    closure: ClosureFn,
) -> Result<OracleReport, GlobalizeError> {
    let mut checks = vec![Check {
        name: "closure".into(),
        verdict: closure_agrees(cat, act, closure),
        detail: String::new(),
    }];
    let sweep = universality_sweep(cat, act, max_size, closure)?;
    checks.push(Check {
        name: "universality".into(),
        verdict: sweep.universality,
        detail: format!("{} globalizations up to {max_size} points", sweep.count),
    });
    if cat.groupoid_witness().is_some() {
        checks.push(Check {
            name: "groupoid injectivity".into(),
            verdict: sweep.non_injective_tight,
            detail: format!(
                "{} tight globalizations; {} of {} with merely injective j collapse",
                sweep.tight,
                sweep.non_injective.witnesses.len(),
                sweep.count
            ),
        });
    }
    let suite = random_cases(seed, cases);
    let detail = format!("{cases} cases, seed {seed}");
    checks.push(Check {
        name: "random closure".into(),
        verdict: random_closure_check(&suite, closure),
        detail: detail.clone(),
    });
    checks.push(Check {
        name: "random axiom equivalence".into(),
        verdict: random_axiom_check(&suite),
        detail: detail.clone(),
    });
    checks.push(Check {
        name: "random round trips".into(),
        verdict: random_round_trip_check(&suite),
        detail,
    });
    Ok(OracleReport { checks })
}
