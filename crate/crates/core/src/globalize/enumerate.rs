//! Brute-force enumeration of small globalizations, used as an oracle for
//! the universal property.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::action::{PartialAction, PointId};
use crate::category::{Category, MorId};

use super::{require_partial, GlobalizeError};

/// Upper bound on the carrier size accepted by
/// [`enumerate_globalizations`].
pub const MAX_ENUMERATION_SIZE: usize = 8;

/// A global action `Z` with an injective G-function `j : X -> Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub target: PartialAction,
    /// Indexed by point of the source action.
    pub j: Vec<PointId>,
}

/// Search state: point `z` of `Z` is `X`'s point `z` for `z < |X|`, an extra
/// point otherwise.
struct Search<'a> {
    cat: &'a Category,
    act: &'a PartialAction,
    n: usize,
    movers: Vec<MorId>,
    object_bit: Vec<Option<u32>>,
    triples: Vec<(MorId, MorId, MorId)>,
}

#[derive(Clone)]
struct Table {
    masks: Vec<u32>,
    // values[g][z]; identities are implicit
    values: Vec<Vec<Option<usize>>>,
}

impl Search<'_> {
    fn has(&self, t: &Table, g: MorId, z: usize) -> bool {
        let bit = self.object_bit[self.cat.dom(g).0].expect("domain is an object");
        t.masks[z] & (1 << bit) != 0
    }

    fn value(&self, t: &Table, g: MorId, z: usize) -> Option<usize> {
        if self.cat.is_object(g) {
            self.has(t, g, z).then_some(z)
        } else {
            t.values[g.0][z]
        }
    }

    fn consistent(&self, t: &Table) -> bool {
        for &(g, h, gh) in &self.triples {
            for z in 0..self.n {
                if !self.has(t, h, z) {
                    continue;
                }
                let Some(hz) = self.value(t, h, z) else {
                    continue;
                };
                let (Some(left), Some(right)) = (self.value(t, gh, z), self.value(t, g, hz)) else {
                    continue;
                };
                if left != right {
                    return false;
                }
            }
        }
        true
    }

    fn base_mask(&self, x: PointId) -> u32 {
        self.cat
            .objects()
            .iter()
            .filter(|&&e| self.act.is_defined(e, x))
            .map(|&e| 1u32 << self.object_bit[e.0].expect("object"))
            .fold(0, |a, b| a | b)
    }

    fn fill(&self, t: &mut Table, vars: &[(MorId, usize)], depth: usize, out: &mut Vec<Table>) {
        if depth == vars.len() {
            out.push(t.clone());
            return;
        }
        let (g, z) = vars[depth];
        let cbit = 1u32 << self.object_bit[self.cat.cod(g).0].expect("object");
        for w in 0..self.n {
            if t.masks[w] & cbit == 0 {
                continue;
            }
            t.values[g.0][z] = Some(w);
            if self.consistent(t) {
                self.fill(t, vars, depth + 1, out);
            }
        }
        t.values[g.0][z] = None;
    }

    fn tables(&self) -> Vec<Table> {
        let nx = self.act.len();
        let full = (1u32 << self.cat.objects().len()) - 1;
        let choices: Vec<Vec<u32>> = (0..self.n)
            .map(|z| {
                let base = if z < nx {
                    self.base_mask(PointId(z))
                } else {
                    0
                };
                (1..=full).filter(|m| m & base == base).collect()
            })
            .collect();
        let mut out = Vec::new();
        for masks in choices.into_iter().multi_cartesian_product() {
            let mut t = Table {
                masks,
                values: vec![vec![None; self.n]; self.cat.len()],
            };
            let mut vars = Vec::new();
            for z in 0..self.n {
                for &g in &self.movers {
                    if !self.has(&t, g, z) {
                        continue;
                    }
                    let fixed = (z < nx).then(|| self.act.act(g, PointId(z))).flatten();
                    match fixed {
                        Some(y) => t.values[g.0][z] = Some(y.0),
                        None => vars.push((g, z)),
                    }
                }
            }
            if self.consistent(&t) {
                self.fill(&mut t, &vars, 0, &mut out);
            }
        }
        out
    }

    /// Smallest encoding over all relabelings of the extra points.
    fn canonical_key(&self, t: &Table) -> Vec<u32> {
        let nx = self.act.len();
        let m = self.n - nx;
        let mut best: Option<Vec<u32>> = None;
        for perm in (0..m).permutations(m) {
            let relabel = |z: usize| if z < nx { z } else { nx + perm[z - nx] };
            let mut masks = vec![0; self.n];
            let mut values = vec![vec![u32::MAX; self.n]; self.movers.len()];
            for z in 0..self.n {
                masks[relabel(z)] = t.masks[z];
                for (i, &g) in self.movers.iter().enumerate() {
                    if let Some(w) = t.values[g.0][z] {
                        values[i][relabel(z)] = relabel(w) as u32;
                    }
                }
            }
            let key: Vec<u32> = masks
                .into_iter()
                .chain(values.into_iter().flatten())
                .collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        best.expect("at least the identity permutation")
    }

    fn extension(&self, t: &Table) -> Extension {
        let nx = self.act.len();
        let taken: BTreeSet<&str> = self.act.point_names().iter().map(String::as_str).collect();
        let mut names: Vec<String> = self.act.point_names().to_vec();
        let mut i = 0;
        while names.len() < self.n {
            let candidate = format!("z{i}");
            if !taken.contains(candidate.as_str()) {
                names.push(candidate);
            }
            i += 1;
        }
        let mut target =
            PartialAction::empty(self.cat.len(), names.iter().cloned()).expect("distinct names");
        let id: Vec<PointId> = names
            .iter()
            .map(|s| target.point(s).expect("name"))
            .collect();
        for g in self.cat.morphisms() {
            for z in 0..self.n {
                if let Some(w) = self.value(t, g, z) {
                    if self.has(t, g, z) {
                        target.set(g, id[z], Some(id[w]));
                    }
                }
            }
        }
        Extension {
            target,
            j: id[..nx].to_vec(),
        }
    }
}

/// Every global action `Z` with `|Z| <= max_size` that receives `X` through
/// an injective G-function, listed once per isomorphism class of the pair
/// `(Z, j)`.
///
/// `j` is always the inclusion of `X`'s points; extra points are named
/// `z0`, `z1`, ... (skipping names already used by `X`).
pub fn enumerate_globalizations(
    cat: &Category,
    act: &PartialAction,
    max_size: usize,
) -> Result<Vec<Extension>, GlobalizeError> {
    if max_size > MAX_ENUMERATION_SIZE {
        return Err(GlobalizeError::SizeLimit(max_size));
    }
    require_partial(cat, act)?;
    if cat.objects().len() > 16 {
        return Err(GlobalizeError::SizeLimit(cat.objects().len()));
    }
    let mut object_bit = vec![None; cat.len()];
    for (i, &e) in cat.objects().iter().enumerate() {
        object_bit[e.0] = Some(i as u32);
    }
    let movers: Vec<MorId> = cat.morphisms().filter(|&g| !cat.is_object(g)).collect();
    let triples: Vec<_> = cat
        .composable_pairs()
        .into_iter()
        .filter_map(|(g, h)| cat.compose(g, h).map(|gh| (g, h, gh)))
        .collect();

    let mut out = Vec::new();
    if cat.objects().is_empty() {
        return Ok(out);
    }
    for n in act.len().max(1)..=max_size {
        let search = Search {
            cat,
            act,
            n,
            movers: movers.clone(),
            object_bit: object_bit.clone(),
            triples: triples.clone(),
        };
        let mut seen = BTreeSet::new();
        for t in search.tables() {
            if seen.insert(search.canonical_key(&t)) {
                out.push(search.extension(&t));
            }
        }
    }
    Ok(out)
}
