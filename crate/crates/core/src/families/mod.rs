//! Generators for rank-truncated instances of the known upho families, with
//! their closed-form rank and characteristic generating functions.
//!
//! | family               | elements                                   | order               |
//! |----------------------|--------------------------------------------|---------------------|
//! | `grid`               | `N^n`                                      | componentwise       |
//! | `prime_subgroups`    | subgroups of `Z^n` of index a power of `p` | reverse inclusion   |
//! | `partitions_n_blocks`| partitions of `{1..k}` into `n` blocks     | blockwise inclusion |
//! | `nary_tree`          | words over an `n`-letter alphabet          | prefix              |
//! | `bowtie`             | `1, n, n, n, ...` per rank                 | everything between adjacent ranks |
//! | `boolean_extension`  | finite `A ⊂ {1,2,..}` with `max A < #A + n`| inclusion           |

pub mod hnf;
pub(crate) mod partitions;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{ElementId, GradedPoset};
use crate::series::TruncatedSeries;

/// Generators refuse to build anything larger than this many elements.
pub const MAX_ELEMENTS: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Grid,
    PrimeSubgroups,
    PartitionsNBlocks,
    NaryTree,
    Bowtie,
    BooleanExtension,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Grid,
        Family::PrimeSubgroups,
        Family::PartitionsNBlocks,
        Family::NaryTree,
        Family::Bowtie,
        Family::BooleanExtension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::PrimeSubgroups => "prime_subgroups",
            Family::PartitionsNBlocks => "partitions_n_blocks",
            Family::NaryTree => "nary_tree",
            Family::Bowtie => "bowtie",
            Family::BooleanExtension => "boolean_extension",
        }
    }

    pub fn takes_prime(self) -> bool {
        self == Family::PrimeSubgroups
    }

    /// Whether every pair of elements has a meet.
    pub fn is_meet_semilattice(self) -> bool {
        self != Family::Bowtie
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let short = match s {
            "prime" => Some(Family::PrimeSubgroups),
            "partitions" => Some(Family::PartitionsNBlocks),
            "tree" => Some(Family::NaryTree),
            _ => None,
        };
        short
            .or_else(|| Family::ALL.into_iter().find(|f| f.name() == s))
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: u32,
    /// Only for `prime_subgroups`.
    pub p: Option<u32>,
    pub trunc_rank: u32,
}

impl FamilySpec {
    pub fn new(family: Family, n: u32, trunc_rank: u32) -> Self {
        FamilySpec { family, n, p: None, trunc_rank }
    }

    pub fn prime(n: u32, p: u32, trunc_rank: u32) -> Self {
        FamilySpec { family: Family::PrimeSubgroups, n, p: Some(p), trunc_rank }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let bad = |msg: String| Err(FamilyError::ParamOutOfRange(msg));
        // N^0 is a point; every other family needs at least one generator
        if self.n == 0 && self.family != Family::Grid {
            return bad(format!("{} needs n >= 1", self.family));
        }
        match (self.family.takes_prime(), self.p) {
            (true, None) => return bad("prime_subgroups needs p".into()),
            (true, Some(p)) if !is_prime(p) => return bad(format!("p = {p} is not prime")),
            (true, Some(p)) => {
                let fits = (p as i64).checked_pow(self.trunc_rank + 1).is_some_and(|v| v < 1 << 60);
                if !fits {
                    return bad(format!("p^(N+1) = {p}^{} is too large", self.trunc_rank + 1));
                }
            }
            (false, Some(_)) => return bad(format!("{} takes no p", self.family)),
            (false, None) => {}
        }
        if self.family == Family::PartitionsNBlocks && self.n as u64 + self.trunc_rank as u64 > 200 {
            return bad("partitions are limited to sets of at most 200 elements".into());
        }
        let size: BigInt = self.golden().f_series(self.trunc_rank as usize).coeffs().iter().sum();
        if size.to_u64().is_none_or(|s| s > MAX_ELEMENTS) {
            return bad(format!("{size} elements exceeds the limit of {MAX_ELEMENTS}"));
        }
        Ok(())
    }

    /// Closed forms of `F_P` and `χ_P` as ratios of integer polynomials.
    pub fn golden(&self) -> GoldenForm {
        let n = self.n as i64;
        let one = || vec![BigInt::from(1)];
        let product = |roots: &mut dyn Iterator<Item = BigInt>| {
            roots.fold(one(), |acc, r| poly_mul(&acc, &[BigInt::from(1), -r]))
        };
        let (f_num, f_den) = match self.family {
            Family::Grid | Family::BooleanExtension => (one(), product(&mut (0..n).map(|_| BigInt::from(1)))),
            Family::PrimeSubgroups => {
                let p = BigInt::from(self.p.unwrap_or(2));
                (one(), product(&mut (0..self.n).map(|i| p.pow(i))))
            }
            Family::PartitionsNBlocks => (one(), product(&mut (1..=n).map(BigInt::from))),
            Family::NaryTree => (one(), vec![BigInt::from(1), BigInt::from(-n)]),
            Family::Bowtie => (vec![BigInt::from(1), BigInt::from(n - 1)], vec![BigInt::from(1), BigInt::from(-1)]),
        };
        GoldenForm { chi_num: f_den.clone(), chi_den: f_num.clone(), f_num, f_den }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.family, self.n)?;
        if let Some(p) = self.p {
            write!(f, " p={p}")?;
        }
        write!(f, " N={}", self.trunc_rank)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `F_P = f_num / f_den` and `χ_P = chi_num / chi_den`, coefficient lists
/// in increasing degree. Every denominator has constant term 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenForm {
    pub f_num: Vec<BigInt>,
    pub f_den: Vec<BigInt>,
    pub chi_num: Vec<BigInt>,
    pub chi_den: Vec<BigInt>,
}

impl GoldenForm {
    fn expand(num: &[BigInt], den: &[BigInt], trunc: usize) -> TruncatedSeries {
        let num = TruncatedSeries::new(num.iter().cloned(), trunc);
        let den = TruncatedSeries::new(den.iter().cloned(), trunc);
        &num * &den.invert().expect("closed-form denominators have constant term 1")
    }

    pub fn f_series(&self, trunc: usize) -> TruncatedSeries {
        Self::expand(&self.f_num, &self.f_den, trunc)
    }

    pub fn chi_series(&self, trunc: usize) -> TruncatedSeries {
        Self::expand(&self.chi_num, &self.chi_den, trunc)
    }

    /// `χ_P` as a polynomial, when its denominator is 1.
    pub fn chi_polynomial(&self) -> Option<TruncatedSeries> {
        (self.chi_den == [BigInt::from(1)])
            .then(|| TruncatedSeries::new(self.chi_num.iter().cloned(), self.chi_num.len() - 1))
    }
}

/// Builds the truncation described by `spec`.
pub fn generate(spec: &FamilySpec) -> Result<GradedPoset, FamilyError> {
    spec.validate()?;
    let n = spec.n as usize;
    let top = spec.trunc_rank;
    let poset = match spec.family {
        Family::Grid => grid(n, top),
        Family::PrimeSubgroups => prime_subgroups(n, spec.p.expect("validated") as i64, top),
        Family::PartitionsNBlocks => partitions::generate(n, top),
        Family::NaryTree => nary_tree(n, top),
        Family::Bowtie => bowtie(n, top),
        Family::BooleanExtension => boolean_extension(n, top),
    };
    Ok(poset)
}

/// Shared shape of the generators: elements are produced rank by rank with
/// a hashable key, and each one lists the keys it covers.
struct Builder<K> {
    ids: HashMap<K, ElementId>,
    ranks: Vec<u32>,
    labels: Vec<String>,
    covers: Vec<Vec<ElementId>>,
}

impl<K: std::hash::Hash + Eq> Builder<K> {
    fn new() -> Self {
        Builder { ids: HashMap::new(), ranks: Vec::new(), labels: Vec::new(), covers: Vec::new() }
    }

    fn push(&mut self, key: K, rank: u32, label: String, lower: impl IntoIterator<Item = K>) {
        let mut lower: Vec<ElementId> = lower.into_iter().map(|k| self.ids[&k]).collect();
        lower.sort_unstable();
        lower.dedup();
        self.ids.insert(key, self.ranks.len() as ElementId);
        self.ranks.push(rank);
        self.labels.push(label);
        self.covers.push(lower);
    }

    fn finish(self, trunc_rank: u32) -> GradedPoset {
        GradedPoset::from_rank_sorted_covers(trunc_rank, self.ranks, self.labels, &self.covers)
            .expect("family generators produce graded posets with a minimum")
    }
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == parts {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in (0..=left).rev() {
            cur.push(v);
            rec(left - v, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
    } else {
        rec(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

fn grid(n: usize, top: u32) -> GradedPoset {
    let mut b = Builder::new();
    for r in 0..=top {
        for t in compositions(r, n) {
            let lower: Vec<Vec<u32>> = (0..n)
                .filter(|&i| t[i] > 0)
                .map(|i| {
                    let mut s = t.clone();
                    s[i] -= 1;
                    s
                })
                .collect();
            let label = format!("({})", t.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
            b.push(t, r, label, lower);
        }
    }
    b.finish(top)
}

fn prime_subgroups(n: usize, p: i64, top: u32) -> GradedPoset {
    let mut ranks = Vec::new();
    let mut labels = Vec::new();
    let mut covers: Vec<Vec<ElementId>> = Vec::new();
    let mut prev: HashMap<hnf::Hnf, ElementId> = HashMap::new();
    let mut prev_list: Vec<hnf::Hnf> = Vec::new();
    for k in 0..=top {
        let level = hnf::enumerate_index(n, p, k);
        let base = ranks.len() as ElementId;
        let ids: HashMap<hnf::Hnf, ElementId> =
            level.iter().enumerate().map(|(i, h)| (h.clone(), base + i as ElementId)).collect();
        let mut lower: Vec<Vec<ElementId>> = vec![Vec::new(); level.len()];
        // each index-p sublattice of a rank k-1 lattice is a rank k element
        // covering it
        for h in &prev_list {
            let hid = prev[h];
            for s in h.index_p_sublattices(p) {
                lower[(ids[&s] - base) as usize].push(hid);
            }
        }
        for (h, mut l) in level.iter().zip(lower) {
            l.sort_unstable();
            ranks.push(k);
            labels.push(h.to_string());
            covers.push(l);
        }
        prev = ids;
        prev_list = level;
    }
    GradedPoset::from_rank_sorted_covers(top, ranks, labels, &covers)
        .expect("subgroup posets are graded with a minimum")
}

fn word_label(word: &[u32], n: usize) -> String {
    if word.is_empty() {
        return "ε".into();
    }
    if n <= 26 {
        word.iter().map(|&c| char::from(b'a' + c as u8)).collect()
    } else {
        word.iter().map(u32::to_string).collect::<Vec<_>>().join(".")
    }
}

fn nary_tree(n: usize, top: u32) -> GradedPoset {
    let mut ranks = vec![0];
    let mut labels = vec![word_label(&[], n)];
    let mut covers = vec![Vec::new()];
    let mut level_start = 0usize;
    let mut level_len = 1usize;
    let mut word = Vec::new();
    for r in 1..=top {
        let start = ranks.len();
        for idx in 0..level_len * n {
            // idx is the word read in base n
            word.clear();
            let mut x = idx;
            for _ in 0..r {
                word.push((x % n) as u32);
                x /= n;
            }
            word.reverse();
            ranks.push(r);
            labels.push(word_label(&word, n));
            covers.push(vec![(level_start + idx / n) as ElementId]);
        }
        level_start = start;
        level_len *= n;
    }
    GradedPoset::from_rank_sorted_covers(top, ranks, labels, &covers).expect("trees are graded with a minimum")
}

fn bowtie(n: usize, top: u32) -> GradedPoset {
    let mut ranks = vec![0];
    let mut labels = vec!["0".to_string()];
    let mut covers = vec![Vec::new()];
    let mut prev: Vec<ElementId> = vec![0];
    for r in 1..=top {
        let start = ranks.len() as ElementId;
        for j in 0..n {
            ranks.push(r);
            labels.push(format!("{r}.{}", j + 1));
            covers.push(prev.clone());
        }
        prev = (start..start + n as ElementId).collect();
    }
    GradedPoset::from_rank_sorted_covers(top, ranks, labels, &covers).expect("bowties are graded with a minimum")
}

/// `k`-subsets of `{1..m}` in lexicographic order.
fn subsets(m: u32, k: usize) -> Vec<Vec<u32>> {
    fn rec(from: u32, m: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = (k - cur.len()) as u32;
        for x in from..=m {
            if m - x + 1 < need {
                break;
            }
            cur.push(x);
            rec(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, m, k, &mut Vec::new(), &mut out);
    out
}

fn boolean_extension(n: usize, top: u32) -> GradedPoset {
    let qualifies = |a: &[u32]| a.last().copied().unwrap_or(0) < a.len() as u32 + n as u32;
    let mut b = Builder::new();
    for k in 0..=top as usize {
        // max A < k + n, so A ⊆ {1..k+n-1}
        for a in subsets((k + n - 1) as u32, k) {
            let lower: Vec<Vec<u32>> = (0..k)
                .map(|i| {
                    let mut s = a.clone();
                    s.remove(i);
                    s
                })
                .filter(|s| qualifies(s))
                .collect();
            let label = format!("{{{}}}", a.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
            b.push(a, k as u32, label, lower);
        }
    }
    b.finish(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(spec: FamilySpec) -> Vec<usize> {
        generate(&spec).unwrap().rank_sizes()
    }

    #[test]
    fn rank_sizes_of_small_members() {
        assert_eq!(sizes(FamilySpec::new(Family::Grid, 2, 3)), vec![1, 2, 3, 4]);
        assert_eq!(sizes(FamilySpec::new(Family::NaryTree, 2, 3)), vec![1, 2, 4, 8]);
        assert_eq!(sizes(FamilySpec::new(Family::Bowtie, 2, 3)), vec![1, 2, 2, 2]);
        assert_eq!(sizes(FamilySpec::prime(2, 2, 3)), vec![1, 3, 7, 15]);
        assert_eq!(sizes(FamilySpec::new(Family::PartitionsNBlocks, 2, 3)), vec![1, 3, 7, 15]);
        assert_eq!(sizes(FamilySpec::new(Family::BooleanExtension, 2, 3)), vec![1, 2, 3, 4]);
        assert_eq!(generate(&FamilySpec::new(Family::Grid, 2, 3)).unwrap().len(), 10);
        assert_eq!(generate(&FamilySpec::new(Family::Bowtie, 2, 2)).unwrap().len(), 5);
        assert_eq!(generate(&FamilySpec::new(Family::Grid, 0, 3)).unwrap().len(), 1);
    }

    #[test]
    fn golden_forms() {
        let bowtie = FamilySpec::new(Family::Bowtie, 2, 4).golden();
        assert_eq!(bowtie.f_series(4), TruncatedSeries::from_coeffs(vec![1, 2, 2, 2, 2]));
        assert_eq!(bowtie.chi_series(4), TruncatedSeries::from_coeffs(vec![1, -2, 2, -2, 2]));
        let tree = FamilySpec::new(Family::NaryTree, 3, 4).golden();
        assert_eq!(tree.chi_polynomial().unwrap(), TruncatedSeries::from_coeffs(vec![1, -3]));
        // (1-x)(1-3x) = 1 - 4x + 3x^2
        let prime = FamilySpec::prime(2, 3, 4).golden();
        assert_eq!(prime.chi_polynomial().unwrap(), TruncatedSeries::from_coeffs(vec![1, -4, 3]));
        assert_eq!(bowtie.chi_polynomial(), None);
    }

    #[test]
    fn parameter_checks() {
        let err = |spec: FamilySpec| matches!(spec.validate(), Err(FamilyError::ParamOutOfRange(_)));
        assert!(err(FamilySpec::new(Family::NaryTree, 0, 3)));
        assert!(err(FamilySpec::prime(2, 4, 3)));
        assert!(err(FamilySpec { p: None, ..FamilySpec::prime(2, 2, 3) }));
        assert!(err(FamilySpec { p: Some(2), ..FamilySpec::new(Family::Grid, 2, 3) }));
        assert!(err(FamilySpec::new(Family::NaryTree, 3, 40)));
        assert!(err(FamilySpec::prime(1, 1_000_003, 10)));
        assert!(FamilySpec::prime(3, 3, 6).validate().is_ok());
        assert_eq!("nary_tree".parse::<Family>(), Ok(Family::NaryTree));
        assert_eq!("tree".parse::<Family>(), Ok(Family::NaryTree));
        assert!("hexagon".parse::<Family>().is_err());
    }

    #[test]
    fn boolean_extension_atoms_are_one_to_n() {
        let p = generate(&FamilySpec::new(Family::BooleanExtension, 3, 2)).unwrap();
        let atoms: Vec<&str> = p.atoms().map(|a| p.label(a)).collect();
        assert_eq!(atoms, vec!["{1}", "{2}", "{3}"]);
        assert_eq!(p.label(0), "{}");
    }

    /// Every pair is compared against `below`, a direct definition of the order.
    fn assert_order<T>(p: &GradedPoset, elems: &[T], below: impl Fn(&T, &T) -> bool) {
        assert_eq!(p.len(), elems.len());
        for a in 0..p.len() {
            for b in 0..p.len() {
                let expected = a != b && below(&elems[a], &elems[b]);
                assert_eq!(
                    p.less(a as ElementId, b as ElementId),
                    expected,
                    "{} < {}",
                    p.label(a as ElementId),
                    p.label(b as ElementId)
                );
            }
        }
    }

    #[test]
    fn prime_order_is_reverse_inclusion() {
        for (n, prime, top) in [(2, 2, 4), (3, 2, 3), (2, 3, 3)] {
            let p = generate(&FamilySpec::prime(n, prime, top)).unwrap();
            let elems: Vec<hnf::Hnf> =
                (0..=top).flat_map(|k| hnf::enumerate_index(n as usize, prime as i64, k)).collect();
            assert_order(&p, &elems, |a, b| a.contains(b));
            for (id, h) in elems.iter().enumerate() {
                assert_eq!(p.label(id as ElementId), h.to_string());
                assert_eq!(h.index(), (prime as i128).pow(p.rank(id as ElementId)));
            }
        }
    }

    #[test]
    fn partition_order_is_block_containment() {
        for (n, top) in [(1, 4), (2, 3), (3, 2)] {
            let p = generate(&FamilySpec::new(Family::PartitionsNBlocks, n, top)).unwrap();
            let elems: Vec<partitions::Rgs> =
                (0..=top as usize).flat_map(|k| partitions::enumerate(n as usize + k, n as usize)).collect();
            assert_order(&p, &elems, partitions::below);
            // atoms: n + 1 elements in n blocks, so exactly one pair shares a block
            assert_eq!(p.atoms().len(), (n * (n + 1) / 2) as usize);
        }
    }

    fn parse_tuple(label: &str) -> Vec<u32> {
        let inner = label.trim_matches(|c| "(){}".contains(c));
        inner.split(',').filter(|t| !t.is_empty()).map(|t| t.parse().unwrap()).collect()
    }

    #[test]
    fn grid_and_subset_orders() {
        let grid = generate(&FamilySpec::new(Family::Grid, 3, 3)).unwrap();
        let points: Vec<Vec<u32>> = grid.labels().iter().map(|l| parse_tuple(l)).collect();
        assert_order(&grid, &points, |a, b| a.iter().zip(b).all(|(x, y)| x <= y));
        let ext = generate(&FamilySpec::new(Family::BooleanExtension, 2, 4)).unwrap();
        let sets: Vec<Vec<u32>> = ext.labels().iter().map(|l| parse_tuple(l)).collect();
        for s in &sets {
            assert!(s.last().copied().unwrap_or(0) < s.len() as u32 + 2, "{s:?}");
        }
        assert_order(&ext, &sets, |a, b| a.iter().all(|x| b.contains(x)));
    }

    #[test]
    fn tree_and_bowtie_orders() {
        let tree = generate(&FamilySpec::new(Family::NaryTree, 3, 3)).unwrap();
        let words: Vec<String> = tree.labels().iter().map(|l| l.replace('ε', "")).collect();
        assert_order(&tree, &words, |a, b| b.starts_with(a.as_str()));
        let bowtie = generate(&FamilySpec::new(Family::Bowtie, 3, 4)).unwrap();
        let ranks = bowtie.ranks().to_vec();
        assert_order(&bowtie, &ranks, |a, b| a < b);
    }

    #[test]
    fn generated_rank_sizes_match_closed_forms() {
        let mut specs = Vec::new();
        for n in 1..=3 {
            for f in Family::ALL {
                if f.takes_prime() {
                    specs.extend([2, 3].map(|p| FamilySpec::prime(n, p, 4)));
                } else {
                    specs.push(FamilySpec::new(f, n, 6));
                }
            }
        }
        for spec in specs {
            let p = generate(&spec).unwrap();
            assert_eq!(p.rank_generating_series(), spec.golden().f_series(spec.trunc_rank as usize), "{spec}");
        }
    }

    #[test]
    fn boolean_extension_is_not_a_grid_from_rank_three() {
        // both have rank sizes 1, 2, 3, 4, ... for n = 2, and they agree
        // through rank 2, but at rank 3 {1,2,3} covers three elements while
        // no point of N^2 covers more than two
        let grid = |top| generate(&FamilySpec::new(Family::Grid, 2, top)).unwrap();
        let ext = |top| generate(&FamilySpec::new(Family::BooleanExtension, 2, top)).unwrap();
        assert!(crate::poset::is_isomorphic(&grid(2), &ext(2)));
        assert!(!crate::poset::is_isomorphic(&grid(3), &ext(3)));
        let e = ext(3);
        let widest = (0..e.len() as ElementId).map(|v| e.lower_covers(v).len()).max().unwrap();
        assert_eq!(widest, 3);
    }
}
