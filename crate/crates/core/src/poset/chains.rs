//! Möbius values `μ(0̂, p)` and chain counts from the minimum.
//!
//! Both are sums over lower sets. They run in `i128` with checked arithmetic
//! and fall back to `BigInt` if any intermediate value overflows.

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedSub, One, Zero};

use super::{ElementId, GradedPoset};
use crate::series::TruncatedSeries;

/// `μ(0̂, p)` for every element `p`, indexed by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusVector {
    pub values: Vec<BigInt>,
}

impl MobiusVector {
    pub fn get(&self, p: ElementId) -> &BigInt {
        &self.values[p as usize]
    }

    /// Checks `μ(0̂,0̂) = 1` and `Σ_{q ≤ p} μ(0̂,q) = 0` for every `p ≠ 0̂`.
    /// Returns the first element where the recurrence fails.
    pub fn recurrence_violation(&self, poset: &GradedPoset) -> Option<ElementId> {
        if !self.values.first().is_some_and(One::is_one) {
            return Some(0);
        }
        (1..poset.len() as ElementId).find(|&p| {
            let below: BigInt = poset.lower_set(p).iter().map(|&q| &self.values[q as usize]).sum();
            !(below + &self.values[p as usize]).is_zero()
        })
    }
}

trait Exact: Clone + Zero + One + CheckedAdd + CheckedSub + Into<BigInt> {}
impl Exact for i128 {}
impl Exact for BigInt {}

fn mobius_in<T: Exact>(poset: &GradedPoset) -> Option<Vec<T>> {
    let mut mu: Vec<T> = Vec::with_capacity(poset.len());
    mu.push(T::one());
    for p in 1..poset.len() as ElementId {
        let mut acc = T::zero();
        for &q in poset.lower_set(p) {
            acc = acc.checked_add(&mu[q as usize])?;
        }
        mu.push(T::zero().checked_sub(&acc)?);
    }
    Some(mu)
}

/// `next[p] = Σ_{q < p} prev[q]`
fn step_chains<T: Exact>(poset: &GradedPoset, prev: &[T]) -> Option<Vec<T>> {
    let mut next = Vec::with_capacity(poset.len());
    for p in 0..poset.len() as ElementId {
        let mut acc = T::zero();
        for &q in poset.lower_set(p) {
            acc = acc.checked_add(&prev[q as usize])?;
        }
        next.push(acc);
    }
    Some(next)
}

fn chains_in<T: Exact>(poset: &GradedPoset, m_max: usize) -> Option<Vec<TruncatedSeries>> {
    let mut per_element: Vec<T> = vec![T::zero(); poset.len()];
    per_element[0] = T::one();
    let mut out = vec![poset.sum_by_rank(per_element.clone())];
    for _ in 0..m_max {
        per_element = step_chains(poset, &per_element)?;
        out.push(poset.sum_by_rank(per_element.clone()));
    }
    Some(out)
}

impl GradedPoset {
    /// `μ(0̂, p)` for all `p`, by `μ(0̂,0̂) = 1`, `μ(0̂,p) = -Σ_{q<p} μ(0̂,q)`.
    pub fn mobius(&self) -> MobiusVector {
        let values = match mobius_in::<i128>(self) {
            Some(v) => v.into_iter().map(BigInt::from).collect(),
            None => mobius_in::<BigInt>(self).expect("BigInt arithmetic does not overflow"),
        };
        MobiusVector { values }
    }

    /// `χ_P(x) = Σ_p μ(0̂,p) x^{ρ(p)}`.
    pub fn characteristic_series(&self) -> TruncatedSeries {
        self.series_from_mobius(&self.mobius())
    }

    pub fn series_from_mobius(&self, mu: &MobiusVector) -> TruncatedSeries {
        self.sum_by_rank(mu.values.clone())
    }

    /// Number of chains `0̂ = p_0 < p_1 < ... < p_m`, by rank of `p_m`.
    pub fn count_chains(&self, m: usize) -> TruncatedSeries {
        self.chain_counts(m).pop().expect("chain_counts returns m + 1 series")
    }

    /// `count_chains(k)` for every `k = 0..=m_max`.
    pub fn chain_counts(&self, m_max: usize) -> Vec<TruncatedSeries> {
        chains_in::<i128>(self, m_max)
            .unwrap_or_else(|| chains_in::<BigInt>(self, m_max).expect("BigInt arithmetic does not overflow"))
    }

    /// `Σ_p values[p] x^{ρ(p)}`
    pub(crate) fn sum_by_rank<T: Into<BigInt>>(&self, values: Vec<T>) -> TruncatedSeries {
        let mut coeffs = vec![BigInt::zero(); self.trunc_rank() as usize + 1];
        for (p, v) in values.into_iter().enumerate() {
            coeffs[self.rank(p as ElementId) as usize] += v.into();
        }
        TruncatedSeries::from_coeffs(coeffs)
    }
}
