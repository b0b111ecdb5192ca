//! Meets, joins and the subposet generated by joins of atoms.
//!
//! Meets are exact under truncation: every lower bound of `p` has rank at
//! most `ρ(p)`, so it is present. Joins are not: a truncation can hide upper
//! bounds, which is why [`GradedPoset::atom_join_subposet`] refuses joins that
//! land on the top rank.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use super::{ElementId, GradedPoset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("no common bound inside the truncation")]
    NoBound,
    #[error("bound is not unique: extremal candidates {0:?}")]
    NotUnique(Vec<ElementId>),
}

fn intersect(a: &[ElementId], b: &[ElementId]) -> Vec<ElementId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl GradedPoset {
    /// `{p} ∪ {q : q < p}`, ascending.
    fn closed_lower_set(&self, p: ElementId) -> Vec<ElementId> {
        let mut v = self.lower_set(p).to_vec();
        v.push(p);
        v
    }

    /// `{p} ∪ {q : q > p}`, ascending.
    fn closed_upper_set(&self, p: ElementId) -> Vec<ElementId> {
        let mut v = Vec::with_capacity(self.upper_set(p).len() + 1);
        v.push(p);
        v.extend_from_slice(self.upper_set(p));
        v
    }

    /// Greatest lower bound of `p` and `q`.
    pub fn meet(&self, p: ElementId, q: ElementId) -> Result<ElementId, BoundError> {
        if self.leq(p, q) {
            return Ok(p);
        }
        if self.leq(q, p) {
            return Ok(q);
        }
        let common = intersect(self.lower_set(p), self.lower_set(q));
        // `common` is a down-set containing 0̂; its last id has the top rank
        let top = *common.last().expect("0̂ is a common lower bound");
        if self.lower_set(top).len() + 1 == common.len() {
            return Ok(top);
        }
        let maximal = common.iter().copied().filter(|&x| !common.iter().any(|&y| y != x && self.less(x, y))).collect();
        Err(BoundError::NotUnique(maximal))
    }

    /// Least upper bound of a set of elements, within the truncation.
    pub fn join_of_set(&self, set: &[ElementId]) -> Result<ElementId, BoundError> {
        let Some((&first, rest)) = set.split_first() else {
            return Ok(self.min_id());
        };
        let mut common = self.closed_upper_set(first);
        for &s in rest {
            if common.is_empty() {
                break;
            }
            common = intersect(&common, &self.closed_upper_set(s));
        }
        // an up-set: its first id has the lowest rank
        let Some(&bottom) = common.first() else {
            return Err(BoundError::NoBound);
        };
        if self.upper_set(bottom).len() + 1 == common.len() {
            return Ok(bottom);
        }
        let minimal = common.iter().copied().filter(|&x| !common.iter().any(|&y| y != x && self.less(y, x))).collect();
        Err(BoundError::NotUnique(minimal))
    }

    /// Joins of all sets of atoms that have one, keyed by join, each with
    /// one generating atom set. The empty set contributes `0̂`.
    pub fn atom_joins(&self) -> Result<BTreeMap<ElementId, Vec<ElementId>>, PosetError> {
        let top = self.trunc_rank();
        let mut joins: BTreeMap<ElementId, Vec<ElementId>> = BTreeMap::new();
        joins.insert(self.min_id(), Vec::new());
        let mut queue = VecDeque::from([self.min_id()]);
        // Every join of a set of atoms is reached by joining one atom at a
        // time: if join(T) exists then ub(T ∪ {a}) = ub({join(T), a}).
        while let Some(u) = queue.pop_front() {
            for a in self.atoms() {
                if self.leq(a, u) {
                    continue;
                }
                let mut atoms = joins[&u].clone();
                atoms.push(a);
                atoms.sort_unstable();
                match self.join_of_set(&[u, a]) {
                    Ok(w) if self.rank(w) >= top => {
                        return Err(PosetError::TruncationTooShallow { atoms, bounds: vec![w] });
                    }
                    Ok(w) => {
                        if let std::collections::btree_map::Entry::Vacant(e) = joins.entry(w) {
                            e.insert(atoms);
                            queue.push_back(w);
                        }
                    }
                    Err(BoundError::NoBound) => {}
                    Err(BoundError::NotUnique(bounds)) => {
                        return Err(PosetError::JoinNotDefined { atoms, bounds });
                    }
                }
            }
        }
        Ok(joins)
    }

    /// The down-closure of all joins of atoms, as a subposet with the same
    /// truncation rank (so its rank sizes are zero-padded).
    pub fn atom_join_subposet(&self) -> Result<GradedPoset, PosetError> {
        let keep = self.atom_join_elements()?;
        Ok(self.induced_convex(&keep, 0, self.trunc_rank()))
    }

    /// Ids (in `self`) of the elements of the atom-join subposet.
    pub fn atom_join_elements(&self) -> Result<Vec<ElementId>, PosetError> {
        let joins = self.atom_joins()?;
        let mut keep: Vec<ElementId> = joins.keys().flat_map(|&w| self.closed_lower_set(w)).collect();
        keep.sort_unstable();
        keep.dedup();
        Ok(keep)
    }
}
