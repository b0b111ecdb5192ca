//! Constructors: validation and transitive closure.

use std::collections::HashSet;

use super::{Csr, Element, ElementId, GradedPoset, PosetError};

/// Transitive closure of an upward edge set. `lower[v]` must only name ids
/// smaller than `v`.
fn close(lower: &[Vec<ElementId>]) -> Csr {
    let n = lower.len();
    let mut stamp = vec![ElementId::MAX; n];
    let mut down = Csr::with_rows(n);
    let mut buf: Vec<ElementId> = Vec::new();
    for (v, covers) in lower.iter().enumerate() {
        let tag = v as ElementId;
        buf.clear();
        for &u in covers {
            if stamp[u as usize] != tag {
                stamp[u as usize] = tag;
                buf.push(u);
            }
            for &w in down.row(u as usize) {
                if stamp[w as usize] != tag {
                    stamp[w as usize] = tag;
                    buf.push(w);
                }
            }
        }
        buf.sort_unstable();
        down.push_row(&buf);
    }
    down
}

fn rank_starts(ranks: &[u32], trunc_rank: u32) -> Vec<usize> {
    let mut starts = vec![0usize; trunc_rank as usize + 2];
    for &r in ranks {
        starts[r as usize + 1] += 1;
    }
    for i in 0..=trunc_rank as usize {
        starts[i + 1] += starts[i];
    }
    starts
}

impl GradedPoset {
    /// Fast path for generators: ids are already sorted by rank and every
    /// listed lower cover sits exactly one rank below.
    pub(crate) fn from_rank_sorted_covers(
        trunc_rank: u32,
        ranks: Vec<u32>,
        labels: Vec<String>,
        lower_covers: &[Vec<ElementId>],
    ) -> Result<GradedPoset, PosetError> {
        if ranks.is_empty() {
            return Err(PosetError::Empty);
        }
        debug_assert_eq!(ranks.len(), labels.len());
        debug_assert_eq!(ranks.len(), lower_covers.len());
        if ranks[0] != 0 || ranks.get(1) == Some(&0) {
            let zeros = (0..ranks.len() as ElementId).filter(|&p| ranks[p as usize] == 0).collect();
            return Err(PosetError::NoMinimum(zeros));
        }
        for (v, covers) in lower_covers.iter().enumerate() {
            let rv = ranks[v];
            if rv > trunc_rank {
                return Err(PosetError::RankOutOfRange { element: v as ElementId, rank: rv, trunc_rank });
            }
            if v > 0 && ranks[v - 1] > rv {
                return Err(PosetError::BadElementIds {
                    len: ranks.len(),
                    detail: format!("id {v} is out of rank order"),
                });
            }
            if rv > 0 && covers.is_empty() {
                return Err(PosetError::NoMinimum(vec![0, v as ElementId]));
            }
            for &u in covers {
                if u as usize >= ranks.len() {
                    return Err(PosetError::UnknownElement(u));
                }
                if ranks[u as usize] + 1 != rv {
                    return Err(PosetError::NotGraded(u, v as ElementId));
                }
            }
        }
        let down = close(lower_covers);
        let up = down.transpose(ranks.len());
        let rank_starts = rank_starts(&ranks, trunc_rank);
        Ok(GradedPoset { trunc_rank, ranks, labels, rank_starts, down, up })
    }

    /// Builds a poset from a (not necessarily reduced) set of cover pairs
    /// `(lower, upper)`. The order is the transitive closure of the pairs.
    ///
    /// Element ids in the input are positions in `elements`; the result
    /// renumbers them by `(rank, input id)`. Errors name input ids.
    pub fn from_covers(
        trunc_rank: u32,
        elements: Vec<Element>,
        covers: &[(ElementId, ElementId)],
    ) -> Result<GradedPoset, PosetError> {
        let n = elements.len();
        if n == 0 {
            return Err(PosetError::Empty);
        }
        for (i, e) in elements.iter().enumerate() {
            if e.rank > trunc_rank {
                return Err(PosetError::RankOutOfRange { element: i as ElementId, rank: e.rank, trunc_rank });
            }
        }
        let zeros: Vec<ElementId> = (0..n as ElementId).filter(|&p| elements[p as usize].rank == 0).collect();
        if zeros.len() != 1 {
            return Err(PosetError::NoMinimum(zeros));
        }
        for &(a, b) in covers {
            for x in [a, b] {
                if x as usize >= n {
                    return Err(PosetError::UnknownElement(x));
                }
            }
            if a == b {
                return Err(PosetError::NotAntisymmetric(a, b));
            }
        }
        for &(a, b) in covers {
            if elements[b as usize].rank <= elements[a as usize].rank {
                if reaches(n, covers, b, a) {
                    return Err(PosetError::NotAntisymmetric(a, b));
                }
                return Err(PosetError::NotGraded(a, b));
            }
        }

        // new id -> input id
        let mut order: Vec<ElementId> = (0..n as ElementId).collect();
        order.sort_by_key(|&p| (elements[p as usize].rank, p));
        let mut new_id = vec![0 as ElementId; n];
        for (new, &old) in order.iter().enumerate() {
            new_id[old as usize] = new as ElementId;
        }
        let mut lower: Vec<Vec<ElementId>> = vec![Vec::new(); n];
        for &(a, b) in covers {
            lower[new_id[b as usize] as usize].push(new_id[a as usize]);
        }
        for row in &mut lower {
            row.sort_unstable();
            row.dedup();
        }
        let ranks: Vec<u32> = order.iter().map(|&p| elements[p as usize].rank).collect();
        let mut elements = elements;
        let labels: Vec<String> = order.iter().map(|&p| std::mem::take(&mut elements[p as usize].label)).collect();
        let down = close(&lower);
        let up = down.transpose(n);
        let rank_starts = rank_starts(&ranks, trunc_rank);
        let poset = GradedPoset { trunc_rank, ranks, labels, rank_starts, down, up };

        // An input pair spanning several ranks must be implied by a chain
        // through some intermediate element, otherwise it is a cover that
        // skips a rank.
        for (b, row) in lower.iter().enumerate() {
            for &a in row {
                if poset.ranks[b] - poset.ranks[a as usize] > 1 {
                    let b = b as ElementId;
                    let between = poset.lower_set(b).iter().any(|&c| poset.rank(c) > poset.rank(a) && poset.less(a, c));
                    if !between {
                        return Err(PosetError::NotGraded(order[a as usize], order[b as usize]));
                    }
                }
            }
        }
        let minimal: Vec<ElementId> =
            (0..n as ElementId).filter(|&p| poset.lower_set(p).is_empty()).map(|p| order[p as usize]).collect();
        if minimal.len() != 1 {
            return Err(PosetError::NoMinimum(minimal));
        }
        Ok(poset)
    }

    /// Builds a poset from an explicit strict order relation, which must
    /// already be irreflexive, antisymmetric and transitive.
    pub fn from_relation(
        trunc_rank: u32,
        elements: Vec<Element>,
        pairs: &[(ElementId, ElementId)],
    ) -> Result<GradedPoset, PosetError> {
        let n = elements.len();
        let rel: HashSet<(ElementId, ElementId)> = pairs.iter().copied().collect();
        let mut above: Vec<Vec<ElementId>> = vec![Vec::new(); n];
        for &(a, b) in pairs {
            for x in [a, b] {
                if x as usize >= n {
                    return Err(PosetError::UnknownElement(x));
                }
            }
            if a == b || rel.contains(&(b, a)) {
                return Err(PosetError::NotAntisymmetric(a, b));
            }
            above[a as usize].push(b);
        }
        let mut sorted: Vec<&(ElementId, ElementId)> = pairs.iter().collect();
        sorted.sort_unstable();
        for &&(a, b) in &sorted {
            for &c in &above[b as usize] {
                if !rel.contains(&(a, c)) {
                    return Err(PosetError::NotTransitive(a, c));
                }
            }
        }
        let covers: Vec<(ElementId, ElementId)> = sorted
            .iter()
            .filter(|&&&(a, b)| !above[a as usize].iter().any(|&c| rel.contains(&(c, b))))
            .map(|&&p| p)
            .collect();
        Self::from_covers(trunc_rank, elements, &covers)
    }
}

fn reaches(n: usize, edges: &[(ElementId, ElementId)], from: ElementId, to: ElementId) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a as usize].push(b);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        if !std::mem::replace(&mut seen[v as usize], true) {
            stack.extend(&adj[v as usize]);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(ranks: &[u32]) -> Vec<Element> {
        ranks.iter().enumerate().map(|(i, &r)| Element::new(r, format!("e{i}"))).collect()
    }

    #[test]
    fn single_element_is_valid() {
        let p = GradedPoset::from_covers(0, el(&[0]), &[]).unwrap();
        assert_eq!(p.len(), 1);
        p.validate().unwrap();
        assert_eq!(GradedPoset::point(3).rank_sizes(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn two_rank_zero_elements_have_no_minimum() {
        assert_eq!(GradedPoset::from_covers(1, el(&[0, 0]), &[]), Err(PosetError::NoMinimum(vec![0, 1])));
        assert_eq!(GradedPoset::from_covers(1, el(&[1]), &[]), Err(PosetError::NoMinimum(vec![])));
    }

    #[test]
    fn skipped_rank_is_not_graded() {
        assert_eq!(GradedPoset::from_covers(2, el(&[0, 2]), &[(0, 1)]), Err(PosetError::NotGraded(0, 1)));
        // 0 < 1 < 2 plus a redundant 0 < 2 is fine
        let ok = GradedPoset::from_covers(2, el(&[0, 1, 2]), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(ok.cover_pairs().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn orphan_element_means_no_minimum() {
        let err = GradedPoset::from_covers(2, el(&[0, 1, 1, 2]), &[(0, 1), (2, 3)]).unwrap_err();
        assert_eq!(err, PosetError::NoMinimum(vec![0, 2]));
    }

    #[test]
    fn cycles_and_rank_inversions() {
        let err = GradedPoset::from_covers(2, el(&[0, 1, 1]), &[(0, 1), (1, 2), (2, 1)]).unwrap_err();
        assert_eq!(err, PosetError::NotAntisymmetric(1, 2));
        let err = GradedPoset::from_covers(2, el(&[0, 2, 1]), &[(0, 2), (1, 2)]).unwrap_err();
        assert_eq!(err, PosetError::NotGraded(1, 2));
        assert_eq!(GradedPoset::from_covers(1, el(&[0]), &[(0, 0)]), Err(PosetError::NotAntisymmetric(0, 0)));
    }

    #[test]
    fn relation_must_be_transitive() {
        let err = GradedPoset::from_relation(2, el(&[0, 1, 2]), &[(0, 1), (1, 2)]).unwrap_err();
        assert_eq!(err, PosetError::NotTransitive(0, 2));
        let ok = GradedPoset::from_relation(2, el(&[0, 1, 2]), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(ok.relation_size(), 3);
    }

    #[test]
    fn input_is_renumbered_by_rank() {
        // input: 0 = top, 1 = atom, 2 = bottom
        let p = GradedPoset::from_covers(2, el(&[2, 1, 0]), &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(p.labels(), &["e2", "e1", "e0"]);
        assert!(p.less(0, 2));
        assert_eq!(p.lower_covers(2), &[1]);
        assert_eq!(p.upper_covers(0), &[1]);
        p.validate().unwrap();
    }

    #[test]
    fn rank_out_of_range() {
        let err = GradedPoset::from_covers(1, el(&[0, 1, 2]), &[(0, 1), (1, 2)]).unwrap_err();
        assert_eq!(err, PosetError::RankOutOfRange { element: 2, rank: 2, trunc_rank: 1 });
    }
}
