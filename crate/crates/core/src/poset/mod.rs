//! Rank-truncated, finite-type graded posets with a minimum element.
//!
//! Elements are dense ids `0..len` sorted by `(rank, insertion order)`, so the
//! minimum is always id 0 and every rank occupies a contiguous id range. The
//! strict order is stored transitively closed in two CSR tables (lower sets
//! and upper sets), each row sorted by id. Because ids are rank-sorted, the
//! lower covers of `p` are the tail of its lower set and the upper covers are
//! the head of its upper set; no separate cover table is kept.

mod build;
mod chains;
mod iso;
pub mod json;
mod lattice;
mod upho;

use std::ops::Range;

use thiserror::Error;

use crate::series::TruncatedSeries;

pub use chains::MobiusVector;
pub use iso::{find_isomorphism, is_isomorphic};
pub use lattice::BoundError;

pub type ElementId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("a poset needs at least one element")]
    Empty,
    #[error("no unique minimum: minimal elements {0:?}")]
    NoMinimum(Vec<ElementId>),
    #[error("not graded: {0} < {1} is a cover but ranks differ by other than one")]
    NotGraded(ElementId, ElementId),
    #[error("not transitive: missing {0} < {1}")]
    NotTransitive(ElementId, ElementId),
    #[error("not antisymmetric: {0} < {1} closes a cycle")]
    NotAntisymmetric(ElementId, ElementId),
    #[error("element {element} has rank {rank} above the truncation rank {trunc_rank}")]
    RankOutOfRange { element: ElementId, rank: u32, trunc_rank: u32 },
    #[error("unknown element id {0}")]
    UnknownElement(ElementId),
    #[error("element ids must be exactly 0..{len}: {detail}")]
    BadElementIds { len: usize, detail: String },
    #[error("atoms {atoms:?} have several minimal upper bounds {bounds:?}")]
    JoinNotDefined { atoms: Vec<ElementId>, bounds: Vec<ElementId> },
    #[error("atoms {atoms:?} only have upper bounds {bounds:?} at the truncation boundary")]
    TruncationTooShallow { atoms: Vec<ElementId>, bounds: Vec<ElementId> },
}

/// One element as supplied to a constructor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub rank: u32,
    pub label: String,
}

impl Element {
    pub fn new(rank: u32, label: impl Into<String>) -> Self {
        Element { rank, label: label.into() }
    }
}

/// Compressed rows of sorted ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct Csr {
    offsets: Vec<usize>,
    items: Vec<ElementId>,
}

impl Csr {
    pub(crate) fn with_rows(rows: usize) -> Self {
        let mut offsets = Vec::with_capacity(rows + 1);
        offsets.push(0);
        Csr { offsets, items: Vec::new() }
    }

    pub(crate) fn push_row(&mut self, row: &[ElementId]) {
        self.items.extend_from_slice(row);
        self.offsets.push(self.items.len());
    }

    pub(crate) fn row(&self, i: usize) -> &[ElementId] {
        &self.items[self.offsets[i]..self.offsets[i + 1]]
    }

    pub(crate) fn rows(&self) -> usize {
        self.offsets.len() - 1
    }

    pub(crate) fn nnz(&self) -> usize {
        self.items.len()
    }

    /// Row `j` of the result lists every `i` whose row contains `j`, ascending.
    pub(crate) fn transpose(&self, cols: usize) -> Csr {
        let mut counts = vec![0usize; cols + 1];
        for &j in &self.items {
            counts[j as usize + 1] += 1;
        }
        for k in 0..cols {
            counts[k + 1] += counts[k];
        }
        let offsets = counts.clone();
        let mut fill = counts;
        let mut items = vec![0; self.items.len()];
        for i in 0..self.rows() {
            for &j in self.row(i) {
                items[fill[j as usize]] = i as ElementId;
                fill[j as usize] += 1;
            }
        }
        Csr { offsets, items }
    }
}

/// A finite graded poset, truncated at `trunc_rank`, with minimum id 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoset {
    trunc_rank: u32,
    ranks: Vec<u32>,
    labels: Vec<String>,
    rank_starts: Vec<usize>,
    down: Csr,
    up: Csr,
}

impl GradedPoset {
    /// The one-element poset, truncated at `trunc_rank`.
    pub fn point(trunc_rank: u32) -> Self {
        Self::from_rank_sorted_covers(trunc_rank, vec![0], vec!["0".into()], &[vec![]])
            .expect("a point is a valid graded poset")
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn trunc_rank(&self) -> u32 {
        self.trunc_rank
    }

    /// Id of the minimum element; always 0.
    pub fn min_id(&self) -> ElementId {
        0
    }

    pub fn rank(&self, p: ElementId) -> u32 {
        self.ranks[p as usize]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn label(&self, p: ElementId) -> &str {
        &self.labels[p as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Ids of the elements of rank `r` (empty past the truncation).
    pub fn rank_range(&self, r: u32) -> Range<ElementId> {
        if r > self.trunc_rank {
            let n = self.len() as ElementId;
            return n..n;
        }
        self.rank_starts[r as usize] as ElementId..self.rank_starts[r as usize + 1] as ElementId
    }

    /// Number of elements of rank at most `r`.
    pub fn count_up_to_rank(&self, r: u32) -> usize {
        self.rank_starts[(r.min(self.trunc_rank) + 1) as usize]
    }

    /// All `q < p`, ascending.
    pub fn lower_set(&self, p: ElementId) -> &[ElementId] {
        self.down.row(p as usize)
    }

    /// All `q > p`, ascending.
    pub fn upper_set(&self, p: ElementId) -> &[ElementId] {
        self.up.row(p as usize)
    }

    /// Elements covered by `p`.
    pub fn lower_covers(&self, p: ElementId) -> &[ElementId] {
        let row = self.lower_set(p);
        let r = self.rank(p);
        if r == 0 {
            return row;
        }
        let start = self.rank_starts[r as usize - 1] as ElementId;
        &row[row.partition_point(|&q| q < start)..]
    }

    /// Elements covering `p`.
    pub fn upper_covers(&self, p: ElementId) -> &[ElementId] {
        let row = self.upper_set(p);
        let r = self.rank(p);
        if r >= self.trunc_rank {
            return &row[..0];
        }
        let end = self.rank_starts[r as usize + 2] as ElementId;
        &row[..row.partition_point(|&q| q < end)]
    }

    /// `p < q`
    pub fn less(&self, p: ElementId, q: ElementId) -> bool {
        self.ranks[p as usize] < self.ranks[q as usize] && self.lower_set(q).binary_search(&p).is_ok()
    }

    /// `p <= q`
    pub fn leq(&self, p: ElementId, q: ElementId) -> bool {
        p == q || self.less(p, q)
    }

    /// Number of strictly comparable pairs.
    pub fn relation_size(&self) -> usize {
        self.down.nnz()
    }

    /// Every `(p, q)` with `p < q`.
    pub fn relation_pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        (0..self.len() as ElementId).flat_map(move |q| self.lower_set(q).iter().map(move |&p| (p, q)))
    }

    /// Every cover `p ⋖ q`, ordered by `q` then `p`.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        (0..self.len() as ElementId).flat_map(move |q| self.lower_covers(q).iter().map(move |&p| (p, q)))
    }

    /// Elements of rank 1.
    pub fn atoms(&self) -> Range<ElementId> {
        self.rank_range(1)
    }

    /// `#P_i` for `i = 0..=trunc_rank`.
    pub fn rank_sizes(&self) -> Vec<usize> {
        self.rank_starts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// The rank generating function `sum_i #P_i x^i`.
    pub fn rank_generating_series(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.rank_sizes().into_iter().map(|c| c as u64), self.trunc_rank as usize)
    }

    /// Re-checks every structural invariant from scratch.
    pub fn validate(&self) -> Result<(), PosetError> {
        if self.is_empty() {
            return Err(PosetError::Empty);
        }
        let n = self.len() as ElementId;
        let minimal: Vec<ElementId> = (0..n).filter(|&p| self.lower_set(p).is_empty()).collect();
        if minimal != [0] || self.rank(0) != 0 {
            return Err(PosetError::NoMinimum(minimal));
        }
        for q in 0..n {
            if self.rank(q) > self.trunc_rank {
                return Err(PosetError::RankOutOfRange { element: q, rank: self.rank(q), trunc_rank: self.trunc_rank });
            }
            let below = self.lower_set(q);
            for &p in below {
                if p == q || self.lower_set(p).binary_search(&q).is_ok() {
                    return Err(PosetError::NotAntisymmetric(p, q));
                }
                if self.rank(p) >= self.rank(q) {
                    return Err(PosetError::NotGraded(p, q));
                }
                for &o in self.lower_set(p) {
                    if below.binary_search(&o).is_err() {
                        return Err(PosetError::NotTransitive(o, q));
                    }
                }
                if self.rank(q) - self.rank(p) > 1 {
                    let between = below.iter().any(|&c| self.rank(c) > self.rank(p) && self.less(p, c));
                    if !between {
                        return Err(PosetError::NotGraded(p, q));
                    }
                }
            }
        }
        Ok(())
    }

    /// Induced subposet on `keep`, which must be sorted and convex (closed
    /// under taking elements between two members), so that its covers are
    /// exactly the covers of `self` inside it. Ranks are shifted down by
    /// `rank_shift`.
    pub(crate) fn induced_convex(&self, keep: &[ElementId], rank_shift: u32, trunc_rank: u32) -> GradedPoset {
        let local = |x: ElementId| keep.binary_search(&x).ok().map(|i| i as ElementId);
        let mut ranks = Vec::with_capacity(keep.len());
        let mut labels = Vec::with_capacity(keep.len());
        let mut covers = Vec::with_capacity(keep.len());
        for &p in keep {
            ranks.push(self.rank(p) - rank_shift);
            labels.push(self.labels[p as usize].clone());
            covers.push(self.lower_covers(p).iter().filter_map(|&c| local(c)).collect::<Vec<_>>());
        }
        Self::from_rank_sorted_covers(trunc_rank, ranks, labels, &covers)
            .expect("convex subsets of a graded poset with its minimum are graded posets")
    }

    /// The principal filter `{q : q >= p}`, re-ranked so that `p` has rank 0.
    pub fn principal_filter(&self, p: ElementId) -> GradedPoset {
        let mut keep = Vec::with_capacity(self.upper_set(p).len() + 1);
        keep.push(p);
        keep.extend_from_slice(self.upper_set(p));
        let r = self.rank(p);
        self.induced_convex(&keep, r, self.trunc_rank - r)
    }

    /// Induced subposet on the ranks `<= n`.
    pub fn truncate(&self, n: u32) -> GradedPoset {
        assert!(n <= self.trunc_rank, "cannot truncate rank {} poset at {}", self.trunc_rank, n);
        let keep: Vec<ElementId> = (0..self.count_up_to_rank(n) as ElementId).collect();
        self.induced_convex(&keep, 0, n)
    }

    /// Induced subposet on an arbitrary set of elements, validated.
    pub fn induced_subposet(&self, keep: &[ElementId]) -> Result<GradedPoset, PosetError> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&p| p as usize >= self.len()) {
            return Err(PosetError::UnknownElement(bad));
        }
        let elements = keep.iter().map(|&p| Element::new(self.rank(p), self.label(p))).collect();
        let mut pairs = Vec::new();
        for (j, &q) in keep.iter().enumerate() {
            for (i, &p) in keep.iter().enumerate() {
                if self.less(p, q) {
                    pairs.push((i as ElementId, j as ElementId));
                }
            }
        }
        Self::from_relation(self.trunc_rank, elements, &pairs)
    }

    /// The poset with element `p` removed, if that is still a valid graded
    /// poset with a minimum.
    pub fn without_element(&self, p: ElementId) -> Result<GradedPoset, PosetError> {
        let keep: Vec<ElementId> = (0..self.len() as ElementId).filter(|&q| q != p).collect();
        self.induced_subposet(&keep)
    }
}
