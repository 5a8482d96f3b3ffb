//! Mediating G-functions out of the universal globalization.

use thiserror::Error;

use crate::action::{
    check_category_axioms, check_g_function, is_injective, ActionError, PartialAction, PointId,
    GLOBAL,
};
use crate::category::Category;
use crate::report::{AxiomReport, Verdict, Witness};

use super::Globalization;

/// `k : Y -> Z` with `k([g, x]) = g·j(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mediator {
    /// Indexed by point of `Y`.
    pub k: Vec<PointId>,
    pub injective: bool,
    /// G-function check of `k` itself.
    pub equivariant: Verdict,
    /// `k ∘ i = j`
    pub factors: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MediateError {
    #[error("target action is not global")]
    TargetNotGlobal(AxiomReport),
    #[error("j is not a G-function")]
    NotGFunction(Verdict),
    #[error("j has {got} values, expected {expected}")]
    WrongArity { got: usize, expected: usize },
    #[error("{0} is undefined in the target")]
    Undefined(String),
    #[error(transparent)]
    Action(#[from] ActionError),
}

pub fn mediating(
    cat: &Category,
    act: &PartialAction,
    glob: &Globalization,
    target: &PartialAction,
    j: &[PointId],
) -> Result<Mediator, MediateError> {
    if j.len() != act.len() {
        return Err(MediateError::WrongArity {
            got: j.len(),
            expected: act.len(),
        });
    }
    let report = check_category_axioms(cat, target)?;
    if !report.all_hold(GLOBAL) {
        return Err(MediateError::TargetNotGlobal(report));
    }
    let jv = check_g_function(cat, j, act, target);
    if !jv.passed() {
        return Err(MediateError::NotGFunction(jv));
    }
    let y = glob.action();
    let mut k = Vec::with_capacity(y.len());
    for point in y.points() {
        let (g, x) = glob.representative(point);
        let value = target.act(g, j[x.0]).ok_or_else(|| {
            MediateError::Undefined(format!("{}·j({})", cat.name(g), act.point_name(x)))
        })?;
        k.push(value);
    }
    let equivariant = check_g_function(cat, &k, y, target);
    let factors = act.points().all(|x| k[glob.embedding()[x.0].0] == j[x.0]);
    Ok(Mediator {
        injective: is_injective(&k),
        k,
        equivariant,
        factors,
    })
}

/// Every G-function `k' : Y -> Z` with `k' ∘ i = j`, by exhaustive search.
///
/// Values on `i(X)` are forced; the rest are enumerated with pruning on
/// the G-function condition.
pub fn mediators_brute_force(
    glob: &Globalization,
    target: &PartialAction,
    j: &[PointId],
) -> Vec<Vec<PointId>> {
    let y = glob.action();
    let mut fixed: Vec<Option<PointId>> = vec![None; y.len()];
    for (x, &yx) in glob.embedding().iter().enumerate() {
        match fixed[yx.0] {
            Some(prev) if prev != j[x] => return Vec::new(),
            _ => fixed[yx.0] = Some(j[x]),
        }
    }
    let entries: Vec<_> = y.entries().collect();
    let mut found = Vec::new();
    let mut current: Vec<Option<PointId>> = fixed.clone();
    let consistent = |cur: &[Option<PointId>]| {
        entries.iter().all(|&(g, p, q)| match (cur[p.0], cur[q.0]) {
            (Some(kp), Some(kq)) => target.act(g, kp) == Some(kq),
            _ => true,
        })
    };
    if !consistent(&current) {
        return found;
    }
    let free: Vec<usize> = (0..y.len()).filter(|&i| fixed[i].is_none()).collect();
    fn go(
        depth: usize,
        free: &[usize],
        current: &mut Vec<Option<PointId>>,
        choices: usize,
        consistent: &dyn Fn(&[Option<PointId>]) -> bool,
        found: &mut Vec<Vec<PointId>>,
    ) {
        if depth == free.len() {
            found.push(current.iter().map(|v| v.expect("assigned")).collect());
            return;
        }
        for z in 0..choices {
            current[free[depth]] = Some(PointId(z));
            if consistent(current) {
                go(depth + 1, free, current, choices, consistent, found);
            }
        }
        current[free[depth]] = None;
    }
    go(
        0,
        &free,
        &mut current,
        target.len(),
        &consistent,
        &mut found,
    );
    found
}

/// The action on `Y` restricted to `i(X)` gives back the input action:
/// `g·i(y) = i(z)` iff `g·y = z`. Witnesses are `(g,y,z)`.
pub fn check_induced(
    cat: &Category,
    act: &PartialAction,
    y_action: &PartialAction,
    embed: &[PointId],
) -> Verdict {
    let mut out = Vec::new();
    for g in cat.morphisms() {
        for y in act.points() {
            for z in act.points() {
                let up = y_action.act(g, embed[y.0]) == Some(embed[z.0]);
                let down = act.act(g, y) == Some(z);
                if up != down {
                    out.push(Witness::tuple([
                        cat.name(g),
                        act.point_name(y),
                        act.point_name(z),
                    ]));
                }
            }
        }
    }
    Verdict::from_witnesses(out)
}
