//! Finite topological spaces and continuity of partial category actions.
//!
//! A finite topology is determined by the smallest open set `U_x` around
//! each point, and that is what [`FiniteTopology`] stores. A set is open iff
//! it contains `U_x` for each of its points; the full family of opens is
//! produced on demand by [`FiniteTopology::opens`].

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::action::{check_category_axioms, ActionError, PartialAction, PointId, PARTIAL};
use crate::category::Category;
use crate::globalize::{mediating, Globalization, MediateError};
use crate::report::{AxiomReport, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    labels: Vec<String>,
    nbhd: Vec<FixedBitSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopologyViolation {
    MissingEmpty,
    MissingCarrier,
    Union { a: Vec<String>, b: Vec<String> },
    Intersection { a: Vec<String>, b: Vec<String> },
}

impl fmt::Display for TopologyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &[String]| format!("{{{}}}", s.join(","));
        match self {
            TopologyViolation::MissingEmpty => write!(f, "empty set is not open"),
            TopologyViolation::MissingCarrier => write!(f, "carrier is not open"),
            TopologyViolation::Union { a, b } => {
                write!(f, "union of {} and {} is not open", show(a), show(b))
            }
            TopologyViolation::Intersection { a, b } => {
                write!(f, "intersection of {} and {} is not open", show(a), show(b))
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TopologyReport {
    pub violations: Vec<TopologyViolation>,
}

impl TopologyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopoError {
    #[error("not a topology: {}", .0.violations.first().map(|v| v.to_string()).unwrap_or_default())]
    Invalid(TopologyReport),
    #[error("topology has {got} points, expected {expected}")]
    CarrierMismatch { expected: usize, got: usize },
    #[error("input is not a partial category action")]
    NotPartialAction(AxiomReport),
    #[error("action is not continuous")]
    NotContinuous(ContinuityReport),
    #[error(transparent)]
    Mediate(#[from] MediateError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

fn names(labels: &[String], s: &FixedBitSet) -> Vec<String> {
    s.ones().map(|i| labels[i].clone()).collect()
}

fn full(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

/// Lists every closure failure of `opens` over a carrier with the given
/// labels. Sets must have capacity `labels.len()`.
pub fn validate_topology(labels: &[String], opens: &[FixedBitSet]) -> TopologyReport {
    let n = labels.len();
    let family: BTreeSet<Vec<usize>> = opens.iter().map(|s| s.ones().collect()).collect();
    let has = |s: &FixedBitSet| family.contains(&s.ones().collect::<Vec<_>>());
    let mut violations = Vec::new();
    if !has(&FixedBitSet::with_capacity(n)) {
        violations.push(TopologyViolation::MissingEmpty);
    }
    if !has(&full(n)) {
        violations.push(TopologyViolation::MissingCarrier);
    }
    for (i, a) in opens.iter().enumerate() {
        for b in &opens[i + 1..] {
            let mut u = a.clone();
            u.union_with(b);
            if !has(&u) {
                violations.push(TopologyViolation::Union {
                    a: names(labels, a),
                    b: names(labels, b),
                });
            }
            let mut v = a.clone();
            v.intersect_with(b);
            if !has(&v) {
                violations.push(TopologyViolation::Intersection {
                    a: names(labels, a),
                    b: names(labels, b),
                });
            }
        }
    }
    TopologyReport { violations }
}

impl FiniteTopology {
    /// Builds a topology from its complete family of open sets.
    pub fn from_opens(labels: Vec<String>, opens: &[FixedBitSet]) -> Result<Self, TopoError> {
        let report = validate_topology(&labels, opens);
        if !report.is_valid() {
            return Err(TopoError::Invalid(report));
        }
        let n = labels.len();
        let nbhd = (0..n)
            .map(|x| {
                let mut u = full(n);
                for o in opens.iter().filter(|o| o.contains(x)) {
                    u.intersect_with(o);
                }
                u
            })
            .collect();
        Ok(FiniteTopology { labels, nbhd })
    }

    /// Builds a topology from a minimal neighbourhood for every point.
    ///
    /// Requires `x ∈ U_x` and `U_y ⊆ U_x` whenever `y ∈ U_x`.
    pub fn from_neighbourhoods(labels: Vec<String>, nbhd: Vec<FixedBitSet>) -> Option<Self> {
        let ok = nbhd.len() == labels.len()
            && nbhd
                .iter()
                .enumerate()
                .all(|(x, u)| u.contains(x) && u.ones().all(|y| nbhd[y].is_subset(u)));
        ok.then_some(FiniteTopology { labels, nbhd })
    }

    pub fn discrete(labels: Vec<String>) -> Self {
        let n = labels.len();
        let nbhd = (0..n)
            .map(|x| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(x);
                s
            })
            .collect();
        FiniteTopology { labels, nbhd }
    }

    pub fn indiscrete(labels: Vec<String>) -> Self {
        let n = labels.len();
        FiniteTopology {
            nbhd: vec![full(n); n],
            labels,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The smallest open set containing `x`.
    pub fn neighbourhood(&self, x: usize) -> &FixedBitSet {
        &self.nbhd[x]
    }

    pub fn set_names(&self, s: &FixedBitSet) -> Vec<String> {
        names(&self.labels, s)
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn set_of(&self, points: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut s = self.empty_set();
        s.extend(points);
        s
    }

    pub fn is_open(&self, s: &FixedBitSet) -> bool {
        s.ones().all(|x| self.nbhd[x].is_subset(s))
    }

    pub fn is_discrete(&self) -> bool {
        self.nbhd.iter().all(|u| u.count_ones(..) == 1)
    }

    /// Every open set, ordered by size and then lexicographically by point
    /// index. Exponential in the number of distinct neighbourhoods.
    pub fn opens(&self) -> Vec<FixedBitSet> {
        let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        let mut frontier = vec![self.empty_set()];
        let key = |s: &FixedBitSet| (s.count_ones(..), s.ones().collect::<Vec<_>>());
        found.insert(key(&frontier[0]));
        while let Some(s) = frontier.pop() {
            for u in &self.nbhd {
                let mut t = s.clone();
                t.union_with(u);
                if found.insert(key(&t)) {
                    frontier.push(t);
                }
            }
        }
        found
            .into_iter()
            .map(|(_, members)| self.set_of(members))
            .collect()
    }

    /// `self × other`; the pair `(a, b)` has index `a * other.len() + b`.
    pub fn product(&self, other: &FiniteTopology) -> FiniteTopology {
        let (n, m) = (self.len(), other.len());
        let mut labels = Vec::with_capacity(n * m);
        let mut nbhd = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                labels.push(format!("({},{})", self.labels[a], other.labels[b]));
                let mut u = FixedBitSet::with_capacity(n * m);
                for a2 in self.nbhd[a].ones() {
                    for b2 in other.nbhd[b].ones() {
                        u.insert(a2 * m + b2);
                    }
                }
                nbhd.push(u);
            }
        }
        FiniteTopology { labels, nbhd }
    }

    /// The relative topology on `subset`, with points renumbered in
    /// increasing order.
    pub fn subspace(&self, subset: &FixedBitSet) -> FiniteTopology {
        let members: Vec<usize> = subset.ones().collect();
        let mut index = vec![usize::MAX; self.len()];
        for (i, &p) in members.iter().enumerate() {
            index[p] = i;
        }
        let nbhd = members
            .iter()
            .map(|&p| {
                let mut u = FixedBitSet::with_capacity(members.len());
                u.extend(
                    self.nbhd[p]
                        .ones()
                        .filter(|&q| subset.contains(q))
                        .map(|q| index[q]),
                );
                u
            })
            .collect();
        FiniteTopology {
            labels: members.iter().map(|&p| self.labels[p].clone()).collect(),
            nbhd,
        }
    }

    /// The quotient topology along `q : self -> labels`, which must be
    /// surjective.
    pub fn quotient(&self, labels: Vec<String>, q: &[usize]) -> FiniteTopology {
        let k = labels.len();
        let mut fibres = vec![Vec::new(); k];
        for (p, &c) in q.iter().enumerate() {
            fibres[c].push(p);
        }
        let nbhd = (0..k)
            .map(|c| {
                // smallest V containing c with q⁻¹(V) open
                let mut v = FixedBitSet::with_capacity(k);
                v.insert(c);
                loop {
                    let mut next = v.clone();
                    for d in v.ones() {
                        for &p in &fibres[d] {
                            next.extend(self.nbhd[p].ones().map(|p2| q[p2]));
                        }
                    }
                    if next == v {
                        break v;
                    }
                    v = next;
                }
            })
            .collect();
        FiniteTopology { labels, nbhd }
    }
}

/// Every topology on the given points, one per preorder.
pub fn all_topologies(labels: &[String]) -> Vec<FiniteTopology> {
    let n = labels.len();
    assert!(n <= 4, "exhaustive enumeration is limited to four points");
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0u32..(1 << off.len()) {
        let mut edges = vec![vec![false; n]; n];
        for (i, &(a, b)) in off.iter().enumerate() {
            edges[a][b] = bits & (1 << i) != 0;
        }
        let t = topology_from_relation(labels.to_vec(), &edges);
        let key: Vec<Vec<usize>> = t.nbhd.iter().map(|u| u.ones().collect()).collect();
        if seen.insert(key) {
            out.push(t);
        }
    }
    out
}

/// The topology whose neighbourhood of `x` is everything reachable from `x`
/// along `edges`.
pub fn topology_from_relation(labels: Vec<String>, edges: &[Vec<bool>]) -> FiniteTopology {
    let n = labels.len();
    let nbhd = (0..n)
        .map(|x| {
            let mut u = FixedBitSet::with_capacity(n);
            let mut stack = vec![x];
            u.insert(x);
            while let Some(a) = stack.pop() {
                for (b, _) in edges[a].iter().enumerate().filter(|(_, &e)| e) {
                    if !u.put(b) {
                        stack.push(b);
                    }
                }
            }
            u
        })
        .collect();
    FiniteTopology { labels, nbhd }
}

/// Continuity of a partial map on its domain with the relative topology.
///
/// `f[x]` is the image of `x`, if defined. Each witness is an open set of the
/// codomain whose preimage is not open in the domain of definition.
pub fn check_continuous_partial(
    f: &[Option<usize>],
    dom: &FiniteTopology,
    cod: &FiniteTopology,
) -> Verdict {
    let mut out = Vec::new();
    for (x, fx) in f.iter().enumerate() {
        let Some(y) = *fx else { continue };
        let v = cod.neighbourhood(y);
        let escapes = dom
            .neighbourhood(x)
            .ones()
            .any(|x2| matches!(f[x2], Some(y2) if !v.contains(y2)));
        if escapes {
            out.push(Witness::set(cod.set_names(v)));
        }
    }
    Verdict::from_witnesses(out)
}

fn expect_len(t: &FiniteTopology, expected: usize) -> Result<(), TopoError> {
    if t.len() != expected {
        return Err(TopoError::CarrierMismatch {
            expected,
            got: t.len(),
        });
    }
    Ok(())
}

/// Composition `G² -> mor(G)` is continuous on `G²` inside
/// `mor(G) × mor(G)`.
pub fn check_topological_category(
    cat: &Category,
    top_mor: &FiniteTopology,
) -> Result<Verdict, TopoError> {
    expect_len(top_mor, cat.len())?;
    let n = cat.len();
    let mut f = vec![None; n * n];
    for (g, h) in cat.composable_pairs() {
        f[g.0 * n + h.0] = cat.compose(g, h).map(|k| k.0);
    }
    Ok(check_continuous_partial(
        &f,
        &top_mor.product(top_mor),
        top_mor,
    ))
}

/// The action as a partial map on `mor(G) × X`, indexed `g * |X| + x`.
fn action_map(act: &PartialAction) -> Vec<Option<usize>> {
    let n = act.len();
    let mut f = vec![None; act.morphism_count() * n];
    for (g, x, y) in act.entries() {
        f[g.0 * n + x.0] = Some(y.0);
    }
    f
}

/// (CA1) and (CA2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityReport {
    /// Witnesses are objects `e` with `X_e` not open.
    pub ca1: Verdict,
    /// Witnesses are opens of `X` with non-open preimage in `Γ`.
    pub ca2: Verdict,
}

impl ContinuityReport {
    pub fn passed(&self) -> bool {
        self.ca1.passed() && self.ca2.passed()
    }
}

fn require_partial(cat: &Category, act: &PartialAction) -> Result<(), TopoError> {
    let report = check_category_axioms(cat, act)?;
    if !report.all_hold(PARTIAL) {
        return Err(TopoError::NotPartialAction(report));
    }
    Ok(())
}

fn object_domains_open(cat: &Category, act: &PartialAction, top: &FiniteTopology) -> Verdict {
    let mut out = Vec::new();
    for &e in cat.objects() {
        let xe = top.set_of(act.domain_of(e).into_iter().map(PointId::index));
        if !top.is_open(&xe) {
            out.push(Witness::tuple([cat.name(e)]));
        }
    }
    Verdict::from_witnesses(out)
}

pub fn check_continuous_action(
    cat: &Category,
    act: &PartialAction,
    top_mor: &FiniteTopology,
    top_x: &FiniteTopology,
) -> Result<ContinuityReport, TopoError> {
    require_partial(cat, act)?;
    expect_len(top_mor, cat.len())?;
    expect_len(top_x, act.len())?;
    Ok(ContinuityReport {
        ca1: object_domains_open(cat, act, top_x),
        ca2: check_continuous_partial(&action_map(act), &top_mor.product(top_x), top_x),
    })
}

/// Every `d⁻¹(e)` is open in `mor(G)`. Witnesses are objects.
pub fn check_star_open(cat: &Category, top_mor: &FiniteTopology) -> Result<Verdict, TopoError> {
    expect_len(top_mor, cat.len())?;
    let mut out = Vec::new();
    for &e in cat.objects() {
        let star = top_mor.set_of(cat.morphisms().filter(|&g| cat.dom(g) == e).map(|g| g.0));
        if !top_mor.is_open(&star) {
            out.push(Witness::tuple([cat.name(e)]));
        }
    }
    Ok(Verdict::from_witnesses(out))
}

/// `Γ = {(g, x) : g·x defined}` is open in `mor(G) × X`. Witnesses are
/// pairs `(g,x)` in `Γ` with a neighbourhood leaving `Γ`.
pub fn check_graph_open(
    cat: &Category,
    act: &PartialAction,
    top_mor: &FiniteTopology,
    top_x: &FiniteTopology,
) -> Result<Verdict, TopoError> {
    expect_len(top_mor, cat.len())?;
    expect_len(top_x, act.len())?;
    let prod = top_mor.product(top_x);
    let f = action_map(act);
    let gamma = prod.set_of((0..f.len()).filter(|&i| f[i].is_some()));
    let n = act.len();
    let mut out = Vec::new();
    for i in gamma.ones() {
        if !prod.neighbourhood(i).is_subset(&gamma) {
            out.push(Witness::tuple([
                cat.name(crate::MorId(i / n)),
                act.point_name(PointId(i % n)),
            ]));
        }
    }
    Ok(Verdict::from_witnesses(out))
}

/// A topological global action with a G-function from the source action.
#[derive(Debug, Clone, Copy)]
pub struct TopTarget<'a> {
    pub action: &'a PartialAction,
    pub top: &'a FiniteTopology,
    /// Indexed by point of the source action.
    pub j: &'a [PointId],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetReport {
    /// Hypothesis: `j` is continuous.
    pub j_continuous: Verdict,
    /// Hypothesis: the action on `Z` is continuous.
    pub action_continuous: Verdict,
    pub k: Vec<PointId>,
    pub k_continuous: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalTopoReport {
    pub i_continuous: Verdict,
    pub action_continuous: Verdict,
    /// Informational: `Y_e` open for every object.
    pub ca1_on_y: Verdict,
    pub target: Option<TargetReport>,
}

impl GlobalTopoReport {
    /// The continuity conclusions, ignoring informational entries.
    pub fn passed(&self) -> bool {
        self.i_continuous.passed()
            && self.action_continuous.passed()
            && self.target.as_ref().is_none_or(|t| t.k_continuous.passed())
    }
}

/// The relative topology on `X̄` inside `mor(G) × X`, with `X̄` elements in
/// their canonical order.
pub fn xbar_topology(
    act: &PartialAction,
    top_mor: &FiniteTopology,
    top_x: &FiniteTopology,
    glob: &Globalization,
) -> FiniteTopology {
    let prod = top_mor.product(top_x);
    let n = act.len();
    let members = prod.set_of(glob.xbar().elements().iter().map(|&(g, x)| g.0 * n + x.0));
    prod.subspace(&members)
}

/// The quotient topology on `Y`, indexed by point of `glob.action()`.
pub fn y_topology(
    act: &PartialAction,
    top_mor: &FiniteTopology,
    top_x: &FiniteTopology,
    glob: &Globalization,
) -> FiniteTopology {
    let xbar = xbar_topology(act, top_mor, top_x, glob);
    let q: Vec<usize> = (0..glob.xbar().len())
        .map(|i| glob.class_point(glob.partition().class_of(i)).0)
        .collect();
    xbar.quotient(glob.action().point_names().to_vec(), &q)
}

/// Topologizes `Y` and checks `i`, the action on `Y`, and optionally the
/// mediating map into `target`.
pub fn topologize_globalization(
    cat: &Category,
    act: &PartialAction,
    top_mor: &FiniteTopology,
    top_x: &FiniteTopology,
    glob: &Globalization,
    target: Option<TopTarget<'_>>,
) -> Result<(FiniteTopology, GlobalTopoReport), TopoError> {
    let ca = check_continuous_action(cat, act, top_mor, top_x)?;
    if !ca.passed() {
        return Err(TopoError::NotContinuous(ca));
    }
    let top_y = y_topology(act, top_mor, top_x, glob);
    let y = glob.action();
    let embed: Vec<Option<usize>> = glob.embedding().iter().map(|p| Some(p.0)).collect();
    let target = target
        .map(|t| -> Result<TargetReport, TopoError> {
            expect_len(t.top, t.action.len())?;
            let m = mediating(cat, act, glob, t.action, t.j)?;
            let j: Vec<Option<usize>> = t.j.iter().map(|p| Some(p.0)).collect();
            let k: Vec<Option<usize>> = m.k.iter().map(|p| Some(p.0)).collect();
            Ok(TargetReport {
                j_continuous: check_continuous_partial(&j, top_x, t.top),
                action_continuous: check_continuous_partial(
                    &action_map(t.action),
                    &top_mor.product(t.top),
                    t.top,
                ),
                k_continuous: check_continuous_partial(&k, &top_y, t.top),
                k: m.k,
            })
        })
        .transpose()?;
    let report = GlobalTopoReport {
        i_continuous: check_continuous_partial(&embed, top_x, &top_y),
        action_continuous: check_continuous_partial(
            &action_map(y),
            &top_mor.product(&top_y),
            &top_y,
        ),
        ca1_on_y: object_domains_open(cat, y, &top_y),
        target,
    };
    Ok((top_y, report))
}

/// `i(U)` is open in `Y` for every open `U` of `X`. Checking minimal
/// neighbourhoods suffices since images preserve unions. Witnesses are the
/// offending neighbourhoods in `X`.
pub fn check_embedding_open(
    act: &PartialAction,
    glob: &Globalization,
    top_x: &FiniteTopology,
    top_y: &FiniteTopology,
) -> Verdict {
    let mut out = Vec::new();
    for x in act.points() {
        let u = top_x.neighbourhood(x.0);
        let image = top_y.set_of(u.ones().map(|p| glob.embedding()[p].0));
        if !top_y.is_open(&image) {
            out.push(Witness::set(top_x.set_names(u)));
        }
    }
    Verdict::from_witnesses(out)
}

/// What `Y` looks like once topologized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YSummary {
    pub topology: FiniteTopology,
    pub report: GlobalTopoReport,
    pub embedding_open: Verdict,
}

/// Every topological check on one scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopoSummary {
    pub topological_category: Verdict,
    pub continuity: ContinuityReport,
    pub star_open: Verdict,
    pub graph_open: Verdict,
    /// Absent when (CA1) or (CA2) fails.
    pub y: Option<YSummary>,
}

impl TopoSummary {
    /// Hypotheses hold, the continuity conclusions hold, and `i` is open
    /// whenever the category is star open and the action graph open.
    pub fn passed(&self) -> bool {
        let Some(y) = &self.y else { return false };
        let openness_due = self.star_open.passed() && self.graph_open.passed();
        self.topological_category.passed()
            && self.continuity.passed()
            && y.report.passed()
            && (!openness_due || y.embedding_open.passed())
    }
}

pub fn summarize(
    cat: &Category,
    act: &PartialAction,
    top_mor: &FiniteTopology,
    top_x: &FiniteTopology,
    glob: &Globalization,
) -> Result<TopoSummary, TopoError> {
    let continuity = check_continuous_action(cat, act, top_mor, top_x)?;
    let y = if continuity.passed() {
        let (topology, report) = topologize_globalization(cat, act, top_mor, top_x, glob, None)?;
        let embedding_open = check_embedding_open(act, glob, top_x, &topology);
        Some(YSummary {
            topology,
            report,
            embedding_open,
        })
    } else {
        None
    };
    Ok(TopoSummary {
        topological_category: check_topological_category(cat, top_mor)?,
        star_open: check_star_open(cat, top_mor)?,
        graph_open: check_graph_open(cat, act, top_mor, top_x)?,
        continuity,
        y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::globalize::build_globalization;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn sets(t: &FiniteTopology, family: &[&[usize]]) -> Vec<FixedBitSet> {
        family.iter().map(|s| t.set_of(s.iter().copied())).collect()
    }

    fn arrow_a() -> (Category, PartialAction) {
        let cat = Category::new(&["e", "f"], &[("g", "e", "f")], &[]).unwrap();
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
        (cat, act)
    }

    #[test]
    fn validator_examples() {
        let three = FiniteTopology::discrete(labels(&["1", "2", "3"]));
        assert!(validate_topology(three.labels(), &three.opens()).is_valid());
        let two = FiniteTopology::discrete(labels(&["1", "2"]));
        let fam = sets(&two, &[&[], &[0], &[1], &[0, 1]]);
        assert!(validate_topology(two.labels(), &fam).is_valid());
        let fam = sets(&three, &[&[], &[0], &[1], &[0, 1, 2]]);
        let report = validate_topology(three.labels(), &fam);
        assert_eq!(
            report.violations,
            [TopologyViolation::Union {
                a: labels(&["1"]),
                b: labels(&["2"])
            }]
        );
    }

    #[test]
    fn opens_round_trip() {
        let t = topology_from_relation(
            labels(&["a", "b", "c"]),
            &[
                vec![false, true, false],
                vec![false, false, false],
                vec![false, true, false],
            ],
        );
        let opens = t.opens();
        assert_eq!(opens.len(), 5);
        assert_eq!(
            FiniteTopology::from_opens(t.labels().to_vec(), &opens).unwrap(),
            t
        );
    }

    #[test]
    fn topology_counts_on_small_carriers() {
        let counts: Vec<usize> = (0..=4)
            .map(|n| {
                let ls: Vec<String> = (0..n).map(|i| i.to_string()).collect();
                all_topologies(&ls).len()
            })
            .collect();
        assert_eq!(counts, [1, 1, 4, 29, 355]);
    }

    #[test]
    fn constructors() {
        let d = FiniteTopology::discrete(labels(&["a", "b"]));
        assert!(d.product(&d).is_discrete());
        let i = FiniteTopology::indiscrete(labels(&["a", "b", "c"]));
        let sub = i.subspace(&i.set_of([0, 2]));
        assert_eq!(sub, FiniteTopology::indiscrete(labels(&["a", "c"])));
        let d3 = FiniteTopology::discrete(labels(&["a", "b", "c"]));
        let q = d3.quotient(labels(&["x", "y"]), &[0, 1, 0]);
        assert!(q.is_discrete());
    }

    #[test]
    fn quotient_is_the_finest_making_q_continuous() {
        let base = labels(&["0", "1", "2", "3"]);
        let q = [0, 1, 1, 2];
        for t in all_topologies(&base).iter().step_by(7) {
            let quo = t.quotient(labels(&["a", "b", "c"]), &q);
            for bits in 0u32..8 {
                let v = quo.set_of((0..3).filter(|c| bits & (1 << c) != 0));
                let pre = t.set_of((0..4).filter(|&p| v.contains(q[p])));
                assert_eq!(quo.is_open(&v), t.is_open(&pre));
            }
        }
    }

    #[test]
    fn continuity_examples() {
        let ab = labels(&["a", "b"]);
        let id = [Some(0), Some(1)];
        let d = FiniteTopology::discrete(ab.clone());
        let i = FiniteTopology::indiscrete(ab);
        assert!(check_continuous_partial(&id, &d, &d).passed());
        let v = check_continuous_partial(&id, &i, &d);
        assert_eq!(v.first(), Some(&Witness::set(["a"])));
        assert!(check_continuous_partial(&id, &d, &i).passed());
    }

    #[test]
    fn topological_category_examples() {
        let (cat, _) = arrow_a();
        let names = cat.names().to_vec();
        assert!(
            check_topological_category(&cat, &FiniteTopology::discrete(names.clone()))
                .unwrap()
                .passed()
        );
        assert!(
            check_topological_category(&cat, &FiniteTopology::indiscrete(names))
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn a_monoid_topology_breaks_composition() {
        // {1, a, z}: a·a = z, z absorbing
        let cat = Category::new(
            &["1"],
            &[("a", "1", "1"), ("z", "1", "1")],
            &[
                ("a", "a", "z"),
                ("a", "z", "z"),
                ("z", "a", "z"),
                ("z", "z", "z"),
            ],
        )
        .unwrap();
        assert!(cat.validate().is_valid());
        let failing: Vec<FiniteTopology> = all_topologies(cat.names())
            .into_iter()
            .filter(|t| !check_topological_category(&cat, t).unwrap().passed())
            .collect();
        assert!(!failing.is_empty());
        // only {a} open: (1,a) ↦ a, yet every neighbourhood of (1,a) holds (z,a) ↦ z
        let t = FiniteTopology::from_opens(
            cat.names().to_vec(),
            &[
                FixedBitSet::with_capacity(3),
                {
                    let mut s = FixedBitSet::with_capacity(3);
                    s.insert(cat.id("a").unwrap().0);
                    s
                },
                full(3),
            ],
        )
        .unwrap();
        assert!(failing.contains(&t));
    }

    #[test]
    fn ca1_fails_at_f_for_a_coarse_space() {
        let (cat, act) = arrow_a();
        let top_mor = FiniteTopology::discrete(cat.names().to_vec());
        let fam = [
            FixedBitSet::with_capacity(3),
            act_set(&act, &["3"]),
            act_set(&act, &["1", "2"]),
            act_set(&act, &["1", "2", "3"]),
        ];
        let top_x = FiniteTopology::from_opens(act.point_names().to_vec(), &fam).unwrap();
        let r = check_continuous_action(&cat, &act, &top_mor, &top_x).unwrap();
        assert_eq!(r.ca1.witnesses, [Witness::tuple(["f"])]);
    }

    fn act_set(act: &PartialAction, pts: &[&str]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(act.len());
        s.extend(pts.iter().map(|p| act.point(p).unwrap().0));
        s
    }

    #[test]
    fn discrete_globalization_is_discrete() {
        let (cat, act) = arrow_a();
        let glob = build_globalization(&cat, &act).unwrap();
        let top_mor = FiniteTopology::discrete(cat.names().to_vec());
        let top_x = FiniteTopology::discrete(act.point_names().to_vec());
        let target = TopTarget {
            action: glob.action(),
            top: &FiniteTopology::discrete(glob.action().point_names().to_vec()),
            j: glob.embedding(),
        };
        let (top_y, report) =
            topologize_globalization(&cat, &act, &top_mor, &top_x, &glob, Some(target)).unwrap();
        assert!(top_y.is_discrete());
        assert!(report.passed());
        assert!(check_star_open(&cat, &top_mor).unwrap().passed());
        assert!(check_graph_open(&cat, &act, &top_mor, &top_x)
            .unwrap()
            .passed());
        assert!(check_embedding_open(&act, &glob, &top_x, &top_y).passed());
    }

    #[test]
    fn indiscrete_space_with_discrete_morphisms() {
        let (cat, act) = arrow_a();
        let glob = build_globalization(&cat, &act).unwrap();
        let top_mor = FiniteTopology::discrete(cat.names().to_vec());
        let top_x = FiniteTopology::indiscrete(act.point_names().to_vec());
        let r = check_continuous_action(&cat, &act, &top_mor, &top_x).unwrap();
        assert!(!r.ca1.passed());
        assert!(matches!(
            topologize_globalization(&cat, &act, &top_mor, &top_x, &glob, None),
            Err(TopoError::NotContinuous(_))
        ));
    }

    #[test]
    fn one_object_categories_are_star_open() {
        let cat = Category::new(&["1"], &[("a", "1", "1")], &[("a", "a", "1")]).unwrap();
        for t in all_topologies(cat.names()) {
            assert!(check_star_open(&cat, &t).unwrap().passed());
        }
    }
}
