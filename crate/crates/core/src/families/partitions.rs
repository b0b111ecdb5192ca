//! Set partitions of `{1..k}` into exactly `n` blocks, as restricted growth
//! strings (`rgs[i]` is the block of element `i + 1`, blocks numbered in
//! order of their smallest element).

use std::collections::HashMap;

use crate::poset::{ElementId, GradedPoset};

pub(crate) type Rgs = Vec<u8>;

/// All restricted growth strings of length `k` using exactly `n` blocks, in
/// lexicographic order.
pub(crate) fn enumerate(k: usize, n: usize) -> Vec<Rgs> {
    fn rec(pos: usize, used: usize, k: usize, n: usize, cur: &mut Rgs, out: &mut Vec<Rgs>) {
        if pos == k {
            if used == n {
                out.push(cur.clone());
            }
            return;
        }
        // not enough positions left to open the remaining blocks
        if n - used > k - pos {
            return;
        }
        for b in 0..=used.min(n - 1) {
            cur.push(b as u8);
            rec(pos + 1, used.max(b + 1), k, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, 0, k, n, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Relabels arbitrary block labels into restricted growth form.
pub(crate) fn canonical(labels: &[u8]) -> Rgs {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    labels
        .iter()
        .map(|&l| {
            if map[l as usize] == u8::MAX {
                map[l as usize] = next;
                next += 1;
            }
            map[l as usize]
        })
        .collect()
}

pub(crate) fn label(rgs: &Rgs) -> String {
    let blocks = rgs.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
    let mut out = String::new();
    for b in 0..blocks {
        let members: Vec<String> =
            rgs.iter().enumerate().filter(|&(_, &x)| x as usize == b).map(|(i, _)| (i + 1).to_string()).collect();
        out.push('{');
        out.push_str(&members.join(","));
        out.push('}');
    }
    if out.is_empty() {
        out.push_str("{}");
    }
    out
}

/// Partitions of `{1..k-1}` into `n` blocks lying below `rgs` (a partition
/// of `{1..k}`): every block must sit inside a block of `rgs`.
///
/// Dropping `k` from `rgs` leaves either `n` blocks (the only candidate) or
/// `n - 1` blocks when `k` was a singleton; then each candidate splits one
/// remaining block in two.
pub(crate) fn lower_covers(rgs: &Rgs, n: usize) -> Vec<Rgs> {
    let k = rgs.len();
    let head = &rgs[..k - 1];
    let last = rgs[k - 1];
    if head.contains(&last) {
        return vec![head.to_vec()];
    }
    let fresh = (n - 1) as u8;
    let mut out = Vec::new();
    for b in 0..fresh {
        let members: Vec<usize> = (0..k - 1).filter(|&i| head[i] == b).collect();
        let rest = &members[1..];
        for mask in 1u64..(1u64 << rest.len()) {
            let mut split = head.to_vec();
            for (t, &i) in rest.iter().enumerate() {
                if mask >> t & 1 == 1 {
                    split[i] = fresh;
                }
            }
            out.push(canonical(&split));
        }
    }
    out
}

/// `a <= b` straight from the definition: every block of `a` lies inside a
/// block of `b`.
#[cfg(test)]
pub(crate) fn below(a: &Rgs, b: &Rgs) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut image = [u8::MAX; 256];
    a.iter().zip(b).all(|(&ba, &bb)| {
        let slot = &mut image[ba as usize];
        if *slot == u8::MAX {
            *slot = bb;
        }
        *slot == bb
    })
}

pub(crate) fn generate(n: usize, trunc_rank: u32) -> GradedPoset {
    let mut ranks = Vec::new();
    let mut labels = Vec::new();
    let mut ids: HashMap<Rgs, ElementId> = HashMap::new();
    let mut covers: Vec<Vec<ElementId>> = Vec::new();
    for r in 0..=trunc_rank {
        for rgs in enumerate(n + r as usize, n) {
            let mut lower: Vec<ElementId> =
                if r == 0 { Vec::new() } else { lower_covers(&rgs, n).iter().map(|c| ids[c]).collect() };
            lower.sort_unstable();
            lower.dedup();
            ids.insert(rgs.clone(), ranks.len() as ElementId);
            ranks.push(r);
            labels.push(label(&rgs));
            covers.push(lower);
        }
    }
    GradedPoset::from_rank_sorted_covers(trunc_rank, ranks, labels, &covers)
        .expect("partition posets are graded with a minimum")
}
