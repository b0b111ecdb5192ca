//! Random graded posets with a minimum, for property tests and negative
//! controls.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poset::{ElementId, GradedPoset};

/// A random graded poset with at most `max_elements` elements (at least 1).
///
/// Rank sizes are drawn first; each element of rank `r >= 1` then covers a
/// random non-empty set of rank `r - 1` elements. The truncation rank is the
/// top non-empty rank.
pub fn random_graded<R: Rng + ?Sized>(rng: &mut R, max_elements: usize) -> GradedPoset {
    assert!(max_elements >= 1);
    let total = rng.gen_range(1..=max_elements);
    let mut sizes = vec![1usize];
    let mut left = total - 1;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(4));
        sizes.push(s);
        left -= s;
    }
    let mut ranks = Vec::with_capacity(total);
    let mut covers: Vec<Vec<ElementId>> = Vec::with_capacity(total);
    let mut prev_start = 0usize;
    for (r, &s) in sizes.iter().enumerate() {
        let start = ranks.len();
        for _ in 0..s {
            let mut lower = Vec::new();
            if r > 0 {
                let width = start - prev_start;
                let k = rng.gen_range(1..=width);
                lower = sample(rng, width, k).into_iter().map(|i| (prev_start + i) as ElementId).collect();
                lower.sort_unstable();
            }
            ranks.push(r as u32);
            covers.push(lower);
        }
        prev_start = start;
    }
    let labels = (0..total).map(|i| format!("v{i}")).collect();
    GradedPoset::from_rank_sorted_covers(sizes.len() as u32 - 1, ranks, labels, &covers)
        .expect("random covers join adjacent ranks")
}

/// [`random_graded`] driven by a ChaCha stream with the given seed.
pub fn random_graded_seeded(seed: u64, max_elements: usize) -> GradedPoset {
    random_graded(&mut ChaCha8Rng::seed_from_u64(seed), max_elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_posets_are_valid_and_reproducible() {
        for seed in 0..50 {
            let p = random_graded_seeded(seed, 15);
            assert!(p.len() <= 15);
            p.validate().unwrap();
            assert_eq!(p, random_graded_seeded(seed, 15));
        }
    }
}
