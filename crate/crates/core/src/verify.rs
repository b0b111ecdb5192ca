//! Checks of the rank/characteristic identities on a concrete truncation.
//!
//! Every check returns a [`VerificationReport`]. The poset-level checks add
//! `N` (the truncation rank) to the context; callers add family parameters
//! with [`VerificationReport::with_context`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poset::{BoundError, ElementId, GradedPoset, PosetError};
use crate::report::VerificationReport;
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("not a meet semilattice: {p_label} and {q_label} have no unique meet")]
    NotMeetSemilattice { p: ElementId, q: ElementId, p_label: String, q_label: String },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// What is known about upper homogeneity of the poset handed to
/// [`check_chain_identity`]; recorded in each report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UphoStatus {
    Consistent,
    Refuted,
    Unchecked,
}

impl UphoStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            UphoStatus::Consistent => "upho-consistent",
            UphoStatus::Refuted => "precondition-unverified",
            UphoStatus::Unchecked => "unchecked",
        }
    }
}

fn base(report: VerificationReport, poset: &GradedPoset) -> VerificationReport {
    report.with("N", poset.trunc_rank())
}

/// `χ_P · F_P = 1`.
pub fn check_main_identity(poset: &GradedPoset) -> VerificationReport {
    let n = poset.trunc_rank() as usize;
    let lhs = &poset.characteristic_series() * &poset.rank_generating_series();
    base(VerificationReport::compare("main_identity", lhs, TruncatedSeries::one(n)), poset)
}

/// `count_chains(P, m) = (F_P - 1)^m` for `m = 0..=m_max`.
pub fn check_chain_identity(poset: &GradedPoset, m_max: usize, status: UphoStatus) -> Vec<VerificationReport> {
    let f = poset.rank_generating_series();
    let shifted = &f - &TruncatedSeries::one(f.trunc());
    poset
        .chain_counts(m_max)
        .into_iter()
        .enumerate()
        .map(|(m, counts)| {
            base(VerificationReport::compare("chain_identity", counts, shifted.pow(m)), poset)
                .with("m", m)
                .with("precondition", status.as_str())
        })
        .collect()
}

/// `χ_P = Σ_m (-1)^m count_chains(P, m)`. Chains from `0̂` in a graded
/// truncation have length at most `N`, so the sum is finite.
pub fn check_hall(poset: &GradedPoset) -> VerificationReport {
    let n = poset.trunc_rank() as usize;
    let rhs = poset.chain_counts(n).iter().enumerate().fold(TruncatedSeries::zero(n), |acc, (m, c)| {
        if m % 2 == 0 {
            &acc + c
        } else {
            &acc - c
        }
    });
    base(VerificationReport::compare("hall", poset.characteristic_series(), rhs), poset)
}

/// `F_P · χ_P = 1`, plus a direct check that `Σ_{r ≥ q} x^{ρ(r)}` equals
/// `x^{ρ(q)} F_P` (through the truncation) for every `q` with `ρ(q) <= N/2`.
///
/// A failing element is reported in the context; `first_discrepancy` is
/// the smallest degree at which either part disagrees.
pub fn check_mobius_inversion(poset: &GradedPoset) -> VerificationReport {
    let n = poset.trunc_rank();
    let f = poset.rank_sizes();
    let lhs = &poset.rank_generating_series() * &poset.characteristic_series();
    let rhs = TruncatedSeries::one(n as usize);
    let identity_gap = lhs.first_difference(&rhs);

    let mut filter_gap: Option<(ElementId, usize)> = None;
    let mut sizes = vec![0usize; n as usize + 1];
    let mut checked = 0usize;
    'outer: for r in 0..=n / 2 {
        for q in poset.rank_range(r) {
            sizes.iter_mut().for_each(|s| *s = 0);
            sizes[r as usize] = 1;
            for &above in poset.upper_set(q) {
                sizes[poset.rank(above) as usize] += 1;
            }
            checked += 1;
            if let Some(k) = (r..=n).find(|&k| sizes[k as usize] != f[(k - r) as usize]) {
                filter_gap = Some((q, k as usize));
                break 'outer;
            }
        }
    }

    let first = [identity_gap, filter_gap.map(|(_, k)| k)].into_iter().flatten().min();
    let mut report = base(VerificationReport::with_outcome("mobius_inversion", lhs, rhs, first), poset)
        .with("filters_checked", checked);
    if let Some((q, _)) = filter_gap {
        report = report.with("failing_element", q).with("failing_label", poset.label(q));
    }
    report
}

struct TupleCounter<'a> {
    poset: &'a GradedPoset,
    /// `(z, k, budget)` -> counts by total rank of `k` further elements whose
    /// meet with `z` is `0̂`
    memo: HashMap<(ElementId, usize, u32), Vec<BigInt>>,
    meets: HashMap<(ElementId, ElementId), ElementId>,
}

impl TupleCounter<'_> {
    fn meet(&mut self, z: ElementId, q: ElementId) -> Result<ElementId, VerifyError> {
        let key = (z.min(q), z.max(q));
        if let Some(&w) = self.meets.get(&key) {
            return Ok(w);
        }
        match self.poset.meet(z, q) {
            Ok(w) => {
                self.meets.insert(key, w);
                Ok(w)
            }
            Err(BoundError::NotUnique(_) | BoundError::NoBound) => Err(VerifyError::NotMeetSemilattice {
                p: z,
                q,
                p_label: self.poset.label(z).to_owned(),
                q_label: self.poset.label(q).to_owned(),
            }),
        }
    }

    fn count(&mut self, z: ElementId, k: usize, budget: u32) -> Result<Vec<BigInt>, VerifyError> {
        if k == 0 {
            let mut out = vec![BigInt::zero(); budget as usize + 1];
            if z == self.poset.min_id() {
                out[0] = BigInt::one();
            }
            return Ok(out);
        }
        if let Some(v) = self.memo.get(&(z, k, budget)) {
            return Ok(v.clone());
        }
        let mut out = vec![BigInt::zero(); budget as usize + 1];
        // ids are sorted by rank, so stop at the first one over budget
        let end = self.poset.count_up_to_rank(budget) as ElementId;
        for q in 0..end {
            let r = self.poset.rank(q);
            let w = self.meet(z, q)?;
            let rest = self.count(w, k - 1, budget - r)?;
            for (i, c) in rest.iter().enumerate() {
                out[i + r as usize] += c;
            }
        }
        self.memo.insert((z, k, budget), out.clone());
        Ok(out)
    }
}

/// Counts `m`-tuples with meet `0̂` by total rank, against
/// `F(x)^m · F(x^m)^{-1}`.
///
/// The enumeration fixes `p_1`, then extends one coordinate at a time,
/// memoized on (running meet, coordinates left, rank budget left). Every
/// pairwise meet it needs must exist; the first one that does not is
/// returned as [`VerifyError::NotMeetSemilattice`].
pub fn check_meet_corollary(poset: &GradedPoset, m: usize) -> Result<VerificationReport, VerifyError> {
    assert!(m >= 1, "tuples need at least one coordinate");
    let n = poset.trunc_rank();
    let mut counter = TupleCounter { poset, memo: HashMap::new(), meets: HashMap::new() };
    let mut lhs = vec![BigInt::zero(); n as usize + 1];
    for p in 0..poset.len() as ElementId {
        let r = poset.rank(p);
        let rest = counter.count(p, m - 1, n - r)?;
        for (i, c) in rest.iter().enumerate() {
            lhs[i + r as usize] += c;
        }
    }
    let f = poset.rank_generating_series();
    let rhs = &f.pow(m) * &f.compose_power(m).invert()?;
    Ok(base(VerificationReport::compare("meet_corollary", TruncatedSeries::from_coeffs(lhs), rhs), poset).with("m", m))
}

/// Necessary conditions on a candidate `χ` for an upho lattice with
/// characteristic polynomial `chi`, for `m = 1..=m_max`:
///
/// * `m = 1`: every coefficient of `chi^{-1}` (the would-be rank sizes) is `>= 1`;
/// * `m >= 2`: every coefficient of `chi^{-m} · chi(x^m)` (the would-be tuple
///   counts) is `>= 0`.
///
/// `lhs` is the obstruction series and `rhs` the threshold it must stay on
/// or above; `first_discrepancy` is the first degree below it. The context
/// also records whether every coefficient is strictly positive.
pub fn check_positivity_obstructions(
    chi: &TruncatedSeries,
    m_max: usize,
) -> Result<Vec<VerificationReport>, SeriesError> {
    let inverse = chi.invert()?;
    let n = chi.trunc();
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let (series, floor) = if m == 1 { (inverse.clone(), 1) } else { (&inverse.pow(m) * &chi.compose_power(m), 0) };
        let threshold = TruncatedSeries::new(std::iter::repeat_n(floor, n + 1), n);
        let first = series.coeffs().iter().position(|c| c < &BigInt::from(floor));
        let strictly_positive = series.coeffs().iter().all(Signed::is_positive);
        out.push(
            VerificationReport::with_outcome("positivity", series, threshold, first)
                .with("m", m)
                .with("N", n)
                .with("threshold", if m == 1 { ">= 1" } else { ">= 0" })
                .with("strictly_positive", strictly_positive),
        );
    }
    Ok(out)
}

/// `μ(0̂,p) = 0` for every `p` outside the atom-join subposet `P'`, and
/// `χ_P` equals the characteristic polynomial of `P'`.
///
/// `lhs` is `χ_P`, `rhs` is `χ_{P'}`. A non-vanishing value outside `P'` sets
/// `first_discrepancy` to its rank if that is earlier than any series gap.
pub fn check_atom_join_vanishing(poset: &GradedPoset) -> Result<VerificationReport, VerifyError> {
    let keep = poset.atom_join_elements()?;
    let sub = poset.atom_join_subposet()?;
    let mu = poset.mobius();
    let lhs = poset.series_from_mobius(&mu);
    let rhs = sub.characteristic_series();
    let outside = (0..poset.len() as ElementId).find(|p| keep.binary_search(p).is_err() && !mu.get(*p).is_zero());
    let first = [lhs.first_difference(&rhs), outside.map(|p| poset.rank(p) as usize)].into_iter().flatten().min();
    let sizes: Vec<usize> = sub.rank_sizes();
    let top = sizes.iter().rposition(|&s| s > 0).unwrap_or(0);
    let mut report = base(VerificationReport::with_outcome("atom_join_vanishing", lhs, rhs, first), poset)
        .with("atom_join_size", sub.len())
        .with("atom_join_rank_sizes", sizes[..=top].to_vec());
    if let Some(p) = outside {
        report = report.with("failing_element", p).with("failing_label", poset.label(p));
    }
    Ok(report)
}
