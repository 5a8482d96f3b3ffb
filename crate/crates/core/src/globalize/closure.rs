//! Equivalence closure of the generating relation on `X̄`.

use petgraph::unionfind::UnionFind;

use super::SimRelation;

/// A partition of `0..n` with classes ordered by their least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl Partition {
    /// Canonical partition from arbitrary per-element labels.
    pub fn from_labels<L: Ord + Copy>(labels: &[L]) -> Self {
        let mut by_label: std::collections::BTreeMap<L, Vec<usize>> = Default::default();
        for (i, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(i);
        }
        let mut classes: Vec<Vec<usize>> = by_label.into_values().collect();
        classes.sort_by_key(|c| c[0]);
        let mut class_of = vec![0; labels.len()];
        for (ci, c) in classes.iter().enumerate() {
            for &i in c {
                class_of[i] = ci;
            }
        }
        Partition { classes, class_of }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// The least member of class `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Union-find closure of `sim` over `n` elements.
pub fn equiv_closure(n: usize, sim: &SimRelation) -> Partition {
    let mut uf = UnionFind::<usize>::new(n);
    for p in sim.pairs() {
        uf.union(p.left, p.right);
    }
    Partition::from_labels(&uf.into_labeling())
}

/// Fixpoint closure by chain search: `a ≃ b` iff a chain of `∼` steps, taken
/// in either direction, links them. Quadratic memory; meant as an oracle.
pub fn naive_closure(n: usize, sim: &SimRelation) -> Partition {
    let mut related = vec![vec![false; n]; n];
    for (i, row) in related.iter_mut().enumerate() {
        row[i] = true;
    }
    for p in sim.pairs() {
        related[p.left][p.right] = true;
        related[p.right][p.left] = true;
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if !related[a][b] {
                    continue;
                }
                let (row_a, row_b) = if a < b {
                    let (lo, hi) = related.split_at_mut(b);
                    (&mut lo[a], &hi[0])
                } else if a > b {
                    let (lo, hi) = related.split_at_mut(a);
                    (&mut hi[0], &lo[b])
                } else {
                    continue;
                };
                for (ac, &bc) in row_a.iter_mut().zip(row_b.iter()) {
                    if bc && !*ac {
                        *ac = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    // label each element by the least element it is related to
    let labels: Vec<usize> = related
        .iter()
        .map(|row| row.iter().position(|&r| r).expect("reflexive"))
        .collect();
    Partition::from_labels(&labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::globalize::{Clause, SimPair};

    fn rel(pairs: &[(usize, usize)]) -> SimRelation {
        SimRelation::from_pairs(
            pairs
                .iter()
                .map(|&(left, right)| SimPair {
                    left,
                    right,
                    clause: Clause::Objects,
                })
                .collect(),
        )
    }

    #[test]
    fn empty_relation_gives_singletons() {
        let p = equiv_closure(4, &rel(&[]));
        assert_eq!(p.classes(), &[vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(p, naive_closure(4, &rel(&[])));
    }

    #[test]
    fn chains_merge_in_both_directions() {
        let r = rel(&[(3, 1), (4, 3), (2, 0)]);
        let p = equiv_closure(5, &r);
        assert_eq!(p.classes(), &[vec![0, 2], vec![1, 3, 4]]);
        assert_eq!(p.representative(1), 1);
        assert_eq!(p, naive_closure(5, &r));
    }
}
