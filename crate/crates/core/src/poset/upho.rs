//! Depth-limited test of upper homogeneity.
//!
//! A finite truncation can only refute the property: for each `p` of rank
//! `1..=depth` it compares the filter `V_p` (which is known through
//! `N - ρ(p)` ranks) with the truncation of `P` at the same depth. Filters of
//! elements close to the top carry too few ranks to say much, so callers
//! usually stop at `N - 2`.

use super::iso::{find_isomorphism_graphs, CoverGraph};
use super::{ElementId, GradedPoset};
use crate::report::VerificationReport;
use crate::series::TruncatedSeries;

fn sizes_series(sizes: &[usize], trunc: usize) -> TruncatedSeries {
    TruncatedSeries::new(sizes.iter().map(|&c| c as u64), trunc)
}

impl GradedPoset {
    /// First element (in id order) whose filter is not isomorphic to the
    /// truncation of the whole poset at the same depth.
    pub fn first_non_homogeneous(&self, depth: u32) -> Option<ElementId> {
        let n = self.trunc_rank();
        for r in 1..=depth.min(n) {
            let target = CoverGraph::truncation(self, n - r);
            for e in self.rank_range(r) {
                if find_isomorphism_graphs(&CoverGraph::filter(self, e), &target).is_none() {
                    return Some(e);
                }
            }
        }
        None
    }

    /// Checks `V_p ≅ P` (both truncated) for every `p` with `1 <= ρ(p) <= depth`.
    ///
    /// On failure `first_discrepancy` is the smallest depth `k` at which the
    /// filter and the poset, both truncated at `k`, are already
    /// non-isomorphic; `lhs`/`rhs` are their rank generating series.
    pub fn is_upho_truncation(&self, depth: u32) -> VerificationReport {
        let n = self.trunc_rank();
        let depth = depth.min(n);
        let Some(e) = self.first_non_homogeneous(depth) else {
            let f = self.rank_generating_series();
            return VerificationReport::compare("upho_truncation", f.clone(), f)
                .with("depth", depth)
                .with("verdict", "consistent-with-upho");
        };
        let r = self.rank(e);
        let filter = CoverGraph::filter(self, e);
        let target = CoverGraph::truncation(self, n - r);
        let k = (0..=n - r)
            .find(|&k| find_isomorphism_graphs(&filter.truncated(k), &target.truncated(k)).is_none())
            .expect("the full truncations are known to differ");
        let trunc = (n - r) as usize;
        VerificationReport::with_outcome(
            "upho_truncation",
            sizes_series(&filter.rank_sizes(), trunc),
            sizes_series(&target.rank_sizes(), trunc),
            Some(k as usize),
        )
        .with("depth", depth)
        .with("verdict", "refuted")
        .with("failing_element", e)
        .with("failing_label", self.label(e))
    }
}
