//! Algebraic and topological laws over randomly generated scenarios.
//!
//! Structures are built by the seeded generators in `pcat::random`;
//! proptest drives the seeds and shrinks them.

use fixedbitset::FixedBitSet;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pcat::action::{
    check_category_axioms, check_g_function, from_triple, to_triple, GLOBAL, PARTIAL,
};
use pcat::dsl::{parse, to_text, OpenFamily, Scenario};
use pcat::globalize::{
    build_globalization, check_induced, check_left_compatibility, check_reachability,
    check_representative_independence, equiv_closure, mediating, naive_closure, sim_pairs, XBar,
};
use pcat::random::{
    mutate, random_category, random_global_action, random_partial_action, random_topology, Shape,
};
use pcat::topo::{
    all_topologies, check_continuous_partial, summarize, validate_topology, FiniteTopology,
};
use pcat::{Category, PartialAction, PointId};

const SHAPES: [Shape; 4] = [
    Shape::Category,
    Shape::Groupoid,
    Shape::Monoid,
    Shape::Group,
];

fn scenario(seed: u64, max_morphisms: usize, max_points: usize) -> (Category, PartialAction) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = SHAPES[rng.gen_range(0..SHAPES.len())];
    let cat = random_category(&mut rng, shape, max_morphisms);
    let act = random_partial_action(&mut rng, &cat, max_points);
    (cat, act)
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn union_find_matches_the_naive_closure(seed in any::<u64>(), edits in 0usize..3) {
        let (cat, act) = scenario(seed, 8, 6);
        let act = mutate(&mut ChaCha8Rng::seed_from_u64(seed ^ 1), &act, edits);
        let xbar = XBar::enumerate(&cat, &act);
        let sim = sim_pairs(&cat, &act, &xbar);
        prop_assert_eq!(equiv_closure(xbar.len(), &sim), naive_closure(xbar.len(), &sim));
    }

    #[test]
    fn globalization_is_global_and_induces_the_input(seed in any::<u64>()) {
        let (cat, act) = scenario(seed, 8, 6);
        let glob = build_globalization(&cat, &act).unwrap();
        let y = glob.action();
        prop_assert!(check_category_axioms(&cat, y).unwrap().all_hold(GLOBAL));
        prop_assert!(check_induced(&cat, &act, y, glob.embedding()).passed());
        prop_assert!(check_g_function(&cat, glob.embedding(), &act, y).passed());
        prop_assert!(pcat::action::is_injective(glob.embedding()));
        prop_assert!(check_representative_independence(&cat, &act, &glob).passed());
        prop_assert!(check_left_compatibility(&cat, &act, &glob).passed());
        prop_assert!(check_reachability(&cat, &glob).passed());
    }

    #[test]
    fn a_global_action_is_its_own_globalization(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = random_category(&mut rng, SHAPES[(seed % 4) as usize], 8);
        let act = random_global_action(&mut rng, &cat, 5);
        let glob = build_globalization(&cat, &act).unwrap();
        prop_assert_eq!(glob.class_count(), act.len());
        let m = mediating(&cat, &act, &glob, &act, &act.points().collect::<Vec<_>>()).unwrap();
        prop_assert!(m.injective);
        prop_assert_eq!(m.k.len(), act.len());
    }

    #[test]
    fn the_embedding_into_y_mediates_to_the_identity(seed in any::<u64>()) {
        let (cat, act) = scenario(seed, 8, 6);
        let glob = build_globalization(&cat, &act).unwrap();
        let m = mediating(&cat, &act, &glob, glob.action(), glob.embedding()).unwrap();
        let identity: Vec<PointId> = glob.action().points().collect();
        prop_assert_eq!(m.k, identity);
    }

    #[test]
    fn mediator_into_any_global_extension_factors(seed in any::<u64>()) {
        // Z is the global action the partial one was cut out of.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = random_category(&mut rng, SHAPES[(seed % 4) as usize], 8);
        let z = random_global_action(&mut rng, &cat, 6);
        let keep: Vec<PointId> = z.points().filter(|_| rng.gen_bool(0.6)).collect();
        let act = pcat::random::restrict(&z, &keep);
        let j: Vec<PointId> = act
            .points()
            .map(|x| z.point(act.point_name(x)).unwrap())
            .collect();
        let glob = build_globalization(&cat, &act).unwrap();
        let m = mediating(&cat, &act, &glob, &z, &j).unwrap();
        prop_assert!(m.factors);
        prop_assert!(m.equivariant.passed());
    }

    #[test]
    fn subset_form_round_trips(seed in any::<u64>(), edits in 0usize..3) {
        let (cat, act) = scenario(seed, 8, 6);
        let act = mutate(&mut ChaCha8Rng::seed_from_u64(seed ^ 2), &act, edits);
        prop_assert_eq!(from_triple(&cat, &to_triple(&act)), Ok(act));
    }

    #[test]
    fn scenario_text_round_trips(seed in any::<u64>(), p in 0.0f64..0.8) {
        let (cat, act) = scenario(seed, 8, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let mut s = Scenario::new(cat.clone(), act.clone());
        s.top_mor = Some(OpenFamily::from_topology(&random_topology(&mut rng, cat.names().to_vec(), p)));
        s.top_space = Some(OpenFamily::from_topology(&random_topology(&mut rng, act.point_names().to_vec(), p)));
        prop_assert_eq!(parse(&to_text(&s)), Ok(s));
    }

    #[test]
    fn generated_topologies_are_topologies(seed in any::<u64>(), n in 0usize..6, p in 0.0f64..1.0) {
        let t = random_topology(&mut ChaCha8Rng::seed_from_u64(seed), labels(n), p);
        prop_assert!(validate_topology(t.labels(), &t.opens()).is_valid());
        let again = FiniteTopology::from_opens(labels(n), &t.opens()).unwrap();
        prop_assert_eq!(again, t);
    }

    #[test]
    fn quotient_is_the_finest_topology_making_q_continuous(
        seed in any::<u64>(), n in 1usize..6, m in 1usize..4, p in 0.0f64..0.8,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let source = random_topology(&mut rng, labels(n), p);
        let q: Vec<usize> = (0..n).map(|i| if i < m { i } else { rng.gen_range(0..m) }).collect();
        let quotient = source.quotient(labels(m), &q);
        let as_map: Vec<Option<usize>> = q.iter().map(|&c| Some(c)).collect();
        prop_assert!(check_continuous_partial(&as_map, &source, &quotient).passed());
        for other in all_topologies(&labels(m)) {
            if check_continuous_partial(&as_map, &source, &other).passed() {
                for open in other.opens() {
                    prop_assert!(quotient.is_open(&open));
                }
            }
        }
    }

    #[test]
    fn product_opens_are_unions_of_boxes(seed in any::<u64>(), a in 1usize..4, b in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_topology(&mut rng, labels(a), 0.4);
        let t = random_topology(&mut rng, labels(b), 0.4);
        let prod = s.product(&t);
        for x in 0..a {
            for y in 0..b {
                let mut boxed = FixedBitSet::with_capacity(a * b);
                for u in s.neighbourhood(x).ones() {
                    for v in t.neighbourhood(y).ones() {
                        boxed.insert(u * b + v);
                    }
                }
                prop_assert_eq!(prod.neighbourhood(x * b + y), &boxed);
            }
        }
    }

    #[test]
    fn continuity_conclusions_hold_whenever_the_hypotheses_do(
        seed in any::<u64>(), p in 0.0f64..0.9, q in 0.0f64..0.9,
    ) {
        let (cat, act) = scenario(seed, 4, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
        let tm = random_topology(&mut rng, cat.names().to_vec(), p);
        let tx = random_topology(&mut rng, act.point_names().to_vec(), q);
        let glob = build_globalization(&cat, &act).unwrap();
        let s = summarize(&cat, &act, &tm, &tx, &glob).unwrap();
        prop_assume!(s.topological_category.passed() && s.continuity.passed());
        let y = s.y.as_ref().unwrap();
        prop_assert!(y.report.i_continuous.passed());
        prop_assert!(y.report.action_continuous.passed());
        if s.star_open.passed() && s.graph_open.passed() {
            prop_assert!(y.embedding_open.passed());
        }
    }

    #[test]
    fn axiom_systems_agree_on_groupoid_tables(seed in any::<u64>(), edits in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = if seed % 2 == 0 { Shape::Groupoid } else { Shape::Group };
        let cat = random_category(&mut rng, shape, 8);
        let act = random_partial_action(&mut rng, &cat, 6);
        let act = mutate(&mut rng, &act, edits);
        let wit = cat.groupoid_witness().unwrap();
        let c = check_category_axioms(&cat, &act).unwrap().all_hold(PARTIAL);
        let gr = pcat::action::check_groupoid_axioms(&cat, &wit, &act).unwrap();
        prop_assert_eq!(c, gr.all_hold(pcat::action::GROUPOID_PARTIAL));
        if c {
            let t = pcat::action::check_triple_axioms(&cat, &to_triple(&act), Some(&wit));
            prop_assert!(t.holds(pcat::report::Axiom::Bijective));
        }
    }
}

#[test]
fn topology_counts_on_small_carriers() {
    let counts: Vec<usize> = (0..5).map(|n| all_topologies(&labels(n)).len()).collect();
    assert_eq!(counts, [1, 1, 4, 29, 355]);
}
