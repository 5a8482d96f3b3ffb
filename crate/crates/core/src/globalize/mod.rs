//! The universal globalization `Y = X̄ / ≃` of a partial category action.
//!
//! `X̄` is the set of pairs `(g, x)` with `d(g)·x` defined. The generating
//! relation `∼` relates `(g'h, x)` to `(g', h·x)` and `(e, x)` to `(e', x)`
//! for objects `e, e'` defined at `x`; `≃` is its equivalence closure. The
//! category acts globally on the classes by `g·[h, x] = [gh', x']` for any
//! member `(h', x')` composable with `g`.

mod closure;
mod enumerate;
mod mediate;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::action::{check_category_axioms, ActionError, PartialAction, PointId, PARTIAL};
use crate::category::{Category, MorId};
use crate::report::{AxiomReport, Verdict, Witness};

pub use closure::{equiv_closure, naive_closure, Partition};
pub use enumerate::{enumerate_globalizations, Extension, MAX_ENUMERATION_SIZE};
pub use mediate::{check_induced, mediating, mediators_brute_force, MediateError, Mediator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlobalizeError {
    #[error("input is not a partial category action")]
    NotPartialAction(AxiomReport),
    #[error("size {0} exceeds the enumeration limit")]
    SizeLimit(usize),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// `X̄ = {(g, x) : d(g)·x defined}` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XBar {
    elements: Vec<(MorId, PointId)>,
    index: HashMap<(MorId, PointId), usize>,
}

impl XBar {
    /// Enumerates `X̄` without checking any axiom.
    pub fn enumerate(cat: &Category, act: &PartialAction) -> Self {
        let mut elements = Vec::new();
        for g in cat.morphisms() {
            for x in act.points() {
                if act.is_defined(cat.dom(g), x) {
                    elements.push((g, x));
                }
            }
        }
        let index = elements.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        XBar { elements, index }
    }

    pub fn elements(&self) -> &[(MorId, PointId)] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> (MorId, PointId) {
        self.elements[i]
    }

    pub fn position(&self, g: MorId, x: PointId) -> Option<usize> {
        self.index.get(&(g, x)).copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn require_partial(cat: &Category, act: &PartialAction) -> Result<(), GlobalizeError> {
    let report = check_category_axioms(cat, act)?;
    if !report.all_hold(PARTIAL) {
        return Err(GlobalizeError::NotPartialAction(report));
    }
    Ok(())
}

/// `X̄` for an action satisfying (C1)–(C3).
pub fn build_xbar(cat: &Category, act: &PartialAction) -> Result<XBar, GlobalizeError> {
    require_partial(cat, act)?;
    Ok(XBar::enumerate(cat, act))
}

/// Which defining clause relates a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// `(g'h, x) ∼ (g', h·x)`.
    Composite { h: MorId },
    /// `(e, x) ∼ (e', x)` for objects defined at `x`.
    Objects,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimPair {
    pub left: usize,
    pub right: usize,
    pub clause: Clause,
}

/// The generating relation `∼`, as ordered pairs of `X̄` indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimRelation {
    pairs: Vec<SimPair>,
}

impl SimRelation {
    pub fn from_pairs(mut pairs: Vec<SimPair>) -> Self {
        pairs.sort_by_key(|p| (p.left, p.right));
        SimRelation { pairs }
    }

    pub fn pairs(&self) -> &[SimPair] {
        &self.pairs
    }

    pub fn contains(&self, left: usize, right: usize) -> bool {
        self.pairs
            .binary_search_by_key(&(left, right), |p| (p.left, p.right))
            .is_ok()
    }
}

/// All pairs related by `∼`. A pair satisfying both clauses is tagged
/// [`Clause::Objects`].
pub fn sim_pairs(cat: &Category, act: &PartialAction, xbar: &XBar) -> SimRelation {
    let mut found: BTreeMap<(usize, usize), Clause> = BTreeMap::new();
    for (left, &(g, x)) in xbar.elements().iter().enumerate() {
        if cat.is_object(g) && act.is_defined(g, x) {
            for &e in cat.objects() {
                if act.is_defined(e, x) {
                    if let Some(right) = xbar.position(e, x) {
                        found.insert((left, right), Clause::Objects);
                    }
                }
            }
        }
        for h in cat.morphisms() {
            let Some(hx) = act.act(h, x) else { continue };
            for g2 in cat.morphisms() {
                if !cat.composable(g2, h) || cat.compose(g2, h) != Some(g) {
                    continue;
                }
                if let Some(right) = xbar.position(g2, hx) {
                    found
                        .entry((left, right))
                        .or_insert(Clause::Composite { h });
                }
            }
        }
    }
    SimRelation::from_pairs(
        found
            .into_iter()
            .map(|((left, right), clause)| SimPair {
                left,
                right,
                clause,
            })
            .collect(),
    )
}

/// The universal globalization together with the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Globalization {
    xbar: XBar,
    sim: SimRelation,
    partition: Partition,
    // class index -> point of `action`
    class_point: Vec<PointId>,
    action: PartialAction,
    embed: Vec<PointId>,
    trace: Vec<Vec<usize>>,
}

/// Builds `Y`, its global action and the embedding `i(x) = [e, x]`.
pub fn build_globalization(
    cat: &Category,
    act: &PartialAction,
) -> Result<Globalization, GlobalizeError> {
    let xbar = build_xbar(cat, act)?;
    let sim = sim_pairs(cat, act, &xbar);
    let partition = equiv_closure(xbar.len(), &sim);
    Ok(assemble(cat, act, xbar, sim, partition, true))
}

/// Same as [`build_globalization`] but with a caller-supplied closure
/// routine. The first composable member decides `g·[h,x]`; nothing asserts
/// that the others agree.
pub fn build_globalization_with(
    cat: &Category,
    act: &PartialAction,
    closure: impl Fn(usize, &SimRelation) -> Partition,
) -> Result<Globalization, GlobalizeError> {
    let xbar = build_xbar(cat, act)?;
    let sim = sim_pairs(cat, act, &xbar);
    let partition = closure(xbar.len(), &sim);
    Ok(assemble(cat, act, xbar, sim, partition, false))
}

fn class_label(cat: &Category, act: &PartialAction, (g, x): (MorId, PointId)) -> String {
    format!("[{},{}]", cat.name(g), act.point_name(x))
}

fn assemble(
    cat: &Category,
    act: &PartialAction,
    xbar: XBar,
    sim: SimRelation,
    partition: Partition,
    strict: bool,
) -> Globalization {
    let labels: Vec<String> = (0..partition.len())
        .map(|c| class_label(cat, act, xbar.get(partition.representative(c))))
        .collect();
    let mut action = PartialAction::empty(cat.len(), labels.iter().cloned())
        .expect("representatives are distinct");
    let class_point: Vec<PointId> = labels
        .iter()
        .map(|l| action.point(l).expect("label was inserted"))
        .collect();

    for g in cat.morphisms() {
        for (c, members) in partition.classes().iter().enumerate() {
            let mut value = None;
            for &m in members {
                let (h, x) = xbar.get(m);
                if !cat.composable(g, h) {
                    continue;
                }
                let gh = cat.compose(g, h).expect("valid category");
                let target = partition.class_of(xbar.position(gh, x).expect("d(gh) = d(h)"));
                match value {
                    None => value = Some(target),
                    Some(v) => {
                        if strict {
                            debug_assert_eq!(v, target, "g·[h,x] depends on the representative");
                        }
                        if !cfg!(debug_assertions) {
                            break;
                        }
                    }
                }
            }
            if let Some(v) = value {
                action.set(g, class_point[c], Some(class_point[v]));
            }
        }
    }

    let embed = act
        .points()
        .map(|x| {
            let e = cat
                .objects()
                .iter()
                .copied()
                .find(|&e| act.is_defined(e, x))
                .expect("C1 holds");
            class_point[partition.class_of(xbar.position(e, x).expect("e·x defined"))]
        })
        .collect();

    let trace = bfs_trace(&xbar, &sim, &partition);
    Globalization {
        xbar,
        sim,
        partition,
        class_point,
        action,
        embed,
        trace,
    }
}

/// Shortest `∼`-chain (either direction) from each element's class
/// representative to the element.
fn bfs_trace(xbar: &XBar, sim: &SimRelation, partition: &Partition) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); xbar.len()];
    for p in sim.pairs() {
        if p.left != p.right {
            adj[p.left].push(p.right);
            adj[p.right].push(p.left);
        }
    }
    let mut trace = vec![Vec::new(); xbar.len()];
    for c in 0..partition.len() {
        let root = partition.representative(c);
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([root]);
        parent.insert(root, root);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(v) {
                    slot.insert(u);
                    queue.push_back(v);
                }
            }
        }
        for &m in &partition.classes()[c] {
            let mut path = vec![m];
            let mut cur = m;
            while let Some(&p) = parent.get(&cur) {
                if p == cur {
                    break;
                }
                path.push(p);
                cur = p;
            }
            path.reverse();
            trace[m] = path;
        }
    }
    trace
}

impl Globalization {
    pub fn xbar(&self) -> &XBar {
        &self.xbar
    }

    pub fn sim(&self) -> &SimRelation {
        &self.sim
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// The global action on `Y`; its points are labelled `[g,x]` by
    /// representative.
    pub fn action(&self) -> &PartialAction {
        &self.action
    }

    /// `i : X -> Y`, indexed by point of the input action.
    pub fn embedding(&self) -> &[PointId] {
        &self.embed
    }

    pub fn class_count(&self) -> usize {
        self.partition.len()
    }

    /// Point of `Y` holding the class with the given index.
    pub fn class_point(&self, class: usize) -> PointId {
        self.class_point[class]
    }

    /// The class index of a point of `Y`.
    pub fn point_class(&self, y: PointId) -> usize {
        self.class_point
            .iter()
            .position(|&p| p == y)
            .expect("point of Y")
    }

    /// `[g, x]` as a point of `Y`, when `(g, x) ∈ X̄`.
    pub fn class_of(&self, g: MorId, x: PointId) -> Option<PointId> {
        self.xbar
            .position(g, x)
            .map(|i| self.class_point[self.partition.class_of(i)])
    }

    /// Representative `(g, x)` of the class at point `y`.
    pub fn representative(&self, y: PointId) -> (MorId, PointId) {
        self.xbar
            .get(self.partition.representative(self.point_class(y)))
    }

    /// Members of the class at point `y`, in order.
    pub fn members(&self, y: PointId) -> Vec<(MorId, PointId)> {
        self.partition.classes()[self.point_class(y)]
            .iter()
            .map(|&i| self.xbar.get(i))
            .collect()
    }

    /// `∼`-chain from the representative to `(g, x)`, as `X̄` indices.
    pub fn trace(&self, g: MorId, x: PointId) -> Option<&[usize]> {
        self.xbar.position(g, x).map(|i| self.trace[i].as_slice())
    }

    /// Replaces the action on `Y`. Only meant for mutation tests of the
    /// checkers.
    pub fn with_action(mut self, action: PartialAction) -> Self {
        self.action = action;
        self
    }

    /// Renders an `X̄` element as `(g,x)`.
    pub fn pair_label(&self, cat: &Category, act: &PartialAction, i: usize) -> String {
        let (g, x) = self.xbar.get(i);
        format!("({},{})", cat.name(g), act.point_name(x))
    }
}

/// Members of one class must agree on whether `g·x` is defined and on its
/// value. Witnesses are pairs of members `(g,x,g',x')`.
pub fn check_representative_independence(
    cat: &Category,
    act: &PartialAction,
    glob: &Globalization,
) -> Verdict {
    let mut out = Vec::new();
    for class in glob.partition().classes() {
        let (g0, x0) = glob.xbar().get(class[0]);
        for &m in &class[1..] {
            let (g, x) = glob.xbar().get(m);
            if act.act(g0, x0) != act.act(g, x) {
                out.push(Witness::tuple([
                    cat.name(g0),
                    act.point_name(x0),
                    cat.name(g),
                    act.point_name(x),
                ]));
            }
        }
    }
    Verdict::from_witnesses(out)
}

/// For every stored `∼` pair and every `p` composable with both sides,
/// `(pg, x)` and `(pg', x')` must share a class.
pub fn check_left_compatibility(
    cat: &Category,
    act: &PartialAction,
    glob: &Globalization,
) -> Verdict {
    let mut out = Vec::new();
    for pair in glob.sim().pairs() {
        let (g, x) = glob.xbar().get(pair.left);
        let (g2, x2) = glob.xbar().get(pair.right);
        for p in cat.morphisms() {
            if !cat.composable(p, g) || !cat.composable(p, g2) {
                continue;
            }
            let (Some(pg), Some(pg2)) = (cat.compose(p, g), cat.compose(p, g2)) else {
                continue;
            };
            if glob.class_of(pg, x) != glob.class_of(pg2, x2) || glob.class_of(pg, x).is_none() {
                out.push(Witness::tuple([
                    cat.name(p),
                    cat.name(g),
                    act.point_name(x),
                    cat.name(g2),
                    act.point_name(x2),
                ]));
            }
        }
    }
    Verdict::from_witnesses(out)
}

/// Every class equals `g·i(x)` for its representative `(g, x)`.
pub fn check_reachability(cat: &Category, glob: &Globalization) -> Verdict {
    let mut out = Vec::new();
    let y = glob.action();
    for point in y.points() {
        let (g, x) = glob.representative(point);
        if y.act(g, glob.embedding()[x.0]) != Some(point) {
            out.push(Witness::tuple([cat.name(g), y.point_name(point)]));
        }
    }
    Verdict::from_witnesses(out)
}

/// Human-readable tables for a globalization.
pub struct GlobalizationDisplay<'a> {
    pub cat: &'a Category,
    pub act: &'a PartialAction,
    pub glob: &'a Globalization,
}

impl fmt::Display for GlobalizationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let GlobalizationDisplay { cat, act, glob } = self;
        let pairs: Vec<String> = (0..glob.xbar().len())
            .map(|i| glob.pair_label(cat, act, i))
            .collect();
        writeln!(f, "xbar ({}): {}", pairs.len(), pairs.join(" "))?;
        writeln!(f, "classes ({}):", glob.class_count())?;
        for (c, members) in glob.partition().classes().iter().enumerate() {
            let y = glob.class_point(c);
            let ms: Vec<&str> = members.iter().map(|&m| pairs[m].as_str()).collect();
            writeln!(
                f,
                "  {} = {{{}}}",
                glob.action().point_name(y),
                ms.join(", ")
            )?;
        }
        writeln!(f, "action:")?;
        let y = glob.action();
        for (g, p, q) in y.entries() {
            writeln!(
                f,
                "  {} . {} = {}",
                cat.name(g),
                y.point_name(p),
                y.point_name(q)
            )?;
        }
        writeln!(f, "embedding:")?;
        for x in act.points() {
            writeln!(
                f,
                "  {} -> {}",
                act.point_name(x),
                y.point_name(glob.embedding()[x.0])
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::check_g_function;

    fn arrow() -> Category {
        Category::new(&["e", "f"], &[("g", "e", "f")], &[]).unwrap()
    }

    fn iso() -> Category {
        Category::new(
            &["e", "f"],
            &[("g", "e", "f"), ("ginv", "f", "e")],
            &[("g", "ginv", "f"), ("ginv", "g", "e")],
        )
        .unwrap()
    }

    fn arrow_a(cat: &Category) -> PartialAction {
        PartialAction::new(
            cat,
            &["1", "2", "3"],
            &[
                ("e", "1", "1"),
                ("e", "2", "2"),
                ("f", "2", "2"),
                ("f", "3", "3"),
                ("g", "2", "2"),
            ],
        )
        .unwrap()
    }

    fn iso_b(cat: &Category) -> PartialAction {
        PartialAction::new(
            cat,
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
        .unwrap()
    }

    fn labels(glob: &Globalization) -> Vec<String> {
        glob.action().point_names().to_vec()
    }

    fn related(
        cat: &Category,
        act: &PartialAction,
        xbar: &XBar,
        sim: &SimRelation,
        a: (&str, &str),
        b: (&str, &str),
    ) -> bool {
        let pos = |(g, x): (&str, &str)| {
            xbar.position(cat.id(g).unwrap(), act.point(x).unwrap())
                .unwrap()
        };
        sim.contains(pos(a), pos(b))
    }

    #[test]
    fn sim_pairs_of_the_arrow_fixture() {
        let cat = arrow();
        let act = arrow_a(&cat);
        let xbar = build_xbar(&cat, &act).unwrap();
        assert_eq!(xbar.len(), 6);
        let sim = sim_pairs(&cat, &act, &xbar);
        assert!(related(&cat, &act, &xbar, &sim, ("e", "2"), ("f", "2")));
        assert!(related(&cat, &act, &xbar, &sim, ("g", "2"), ("f", "2")));
        assert!(!related(&cat, &act, &xbar, &sim, ("e", "1"), ("g", "1")));
    }

    #[test]
    fn arrow_fixture_classes_and_action() {
        let cat = arrow();
        let act = arrow_a(&cat);
        let glob = build_globalization(&cat, &act).unwrap();
        assert_eq!(labels(&glob), ["[e,1]", "[e,2]", "[f,3]", "[g,1]"]);
        let y = glob.action();
        let e2 = y.point("[e,2]").unwrap();
        assert_eq!(glob.members(e2).len(), 3);
        let named = y.named_entries(&cat);
        assert_eq!(named.len(), 7);
        assert!(named.contains(&("f", "[e,2]", "[e,2]")));
        assert!(named.contains(&("g", "[e,1]", "[g,1]")));
        let emb: Vec<&str> = glob.embedding().iter().map(|&p| y.point_name(p)).collect();
        assert_eq!(emb, ["[e,1]", "[e,2]", "[f,3]"]);
        assert!(check_category_axioms(&cat, y)
            .unwrap()
            .all_hold(crate::action::GLOBAL));
    }

    #[test]
    fn iso_fixture_collapses_to_four_classes() {
        let cat = iso();
        let act = iso_b(&cat);
        let xbar = build_xbar(&cat, &act).unwrap();
        assert_eq!(xbar.len(), 10);
        let sim = sim_pairs(&cat, &act, &xbar);
        assert!(related(&cat, &act, &xbar, &sim, ("g", "1"), ("f", "2")));
        let glob = build_globalization(&cat, &act).unwrap();
        assert_eq!(labels(&glob), ["[e,1]", "[e,2]", "[e,3]", "[g,3]"]);
    }

    #[test]
    fn union_find_matches_naive_closure() {
        for (cat, act) in [(arrow(), arrow_a(&arrow())), (iso(), iso_b(&iso()))] {
            let xbar = build_xbar(&cat, &act).unwrap();
            let sim = sim_pairs(&cat, &act, &xbar);
            assert_eq!(
                equiv_closure(xbar.len(), &sim),
                naive_closure(xbar.len(), &sim)
            );
        }
    }

    #[test]
    fn structural_checks_pass() {
        let cat = iso();
        let act = iso_b(&cat);
        let glob = build_globalization(&cat, &act).unwrap();
        assert!(is_injective_embedding(&glob));
        assert!(check_representative_independence(&cat, &act, &glob).passed());
        assert!(check_left_compatibility(&cat, &act, &glob).passed());
        assert!(check_reachability(&cat, &glob).passed());
        assert!(check_induced(&cat, &act, glob.action(), glob.embedding()).passed());
        assert!(check_g_function(&cat, glob.embedding(), &act, glob.action()).passed());
    }

    fn is_injective_embedding(glob: &Globalization) -> bool {
        crate::action::is_injective(glob.embedding())
    }

    #[test]
    fn corrupted_y_entry_is_caught() {
        let cat = arrow();
        let act = arrow_a(&cat);
        let glob = build_globalization(&cat, &act).unwrap();
        let mut y = glob.action().clone();
        y.set(cat.id("f").unwrap(), y.point("[e,2]").unwrap(), None);
        let v = check_induced(&cat, &act, &y, glob.embedding());
        assert_eq!(v.first(), Some(&Witness::tuple(["f", "2", "2"])));
    }

    #[test]
    fn mutated_embedding_is_not_a_g_function() {
        let cat = arrow();
        let act = arrow_a(&cat);
        let glob = build_globalization(&cat, &act).unwrap();
        let y = glob.action();
        let mut j = glob.embedding().to_vec();
        j[1] = y.point("[e,1]").unwrap();
        let v = check_g_function(&cat, &j, &act, y);
        assert!(v.witnesses.contains(&Witness::tuple(["g", "2"])));
    }

    #[test]
    fn mediator_into_y_itself_is_the_identity() {
        for (cat, act) in [(arrow(), arrow_a(&arrow())), (iso(), iso_b(&iso()))] {
            let glob = build_globalization(&cat, &act).unwrap();
            let m = mediating(&cat, &act, &glob, glob.action(), glob.embedding()).unwrap();
            let ident: Vec<PointId> = glob.action().points().collect();
            assert_eq!(m.k, ident);
            assert!(m.injective && m.factors && m.equivariant.passed());
            assert_eq!(
                mediators_brute_force(&glob, glob.action(), glob.embedding()),
                vec![ident]
            );
        }
    }

    #[test]
    fn mediators_are_unique_for_every_small_extension() {
        let cat = arrow();
        let act = arrow_a(&cat);
        let glob = build_globalization(&cat, &act).unwrap();
        let exts = enumerate_globalizations(&cat, &act, 5).unwrap();
        assert!(!exts.is_empty());
        for ext in &exts {
            let m = mediating(&cat, &act, &glob, &ext.target, &ext.j).unwrap();
            assert!(m.factors && m.equivariant.passed());
            assert_eq!(mediators_brute_force(&glob, &ext.target, &ext.j), vec![m.k]);
        }
    }

    #[test]
    fn enumeration_respects_its_limit() {
        let cat = arrow();
        let act = arrow_a(&cat);
        assert_eq!(
            enumerate_globalizations(&cat, &act, MAX_ENUMERATION_SIZE + 1),
            Err(GlobalizeError::SizeLimit(MAX_ENUMERATION_SIZE + 1))
        );
        let four = enumerate_globalizations(&cat, &act, 4).unwrap();
        assert!(four.iter().any(|e| e.target.len() == 4));
    }

    #[test]
    fn rejects_actions_violating_c3() {
        let cat = arrow();
        let mut act = arrow_a(&cat);
        act.set(
            cat.id("f").unwrap(),
            act.point("2").unwrap(),
            act.point("3"),
        );
        assert!(matches!(
            build_globalization(&cat, &act),
            Err(GlobalizeError::NotPartialAction(_))
        ));
    }
}
