//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p upho-core --test acceptance`.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use upho_core::random::random_graded_seeded;
use upho_core::verify::{self, UphoStatus, VerifyError};
use upho_core::{generate, Family, FamilySpec, GradedPoset, TruncatedSeries};

const MAIN_LIMIT: Duration = Duration::from_secs(30);
const MEET_LIMIT: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;

/// Every family with n in 1..=3 (and p in {2, 3} for prime subgroups).
fn specs(trunc_rank: u32) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for n in 1..=3 {
            if family.takes_prime() {
                out.extend([2, 3].map(|p| FamilySpec::prime(n, p, trunc_rank)));
            } else {
                out.push(FamilySpec::new(family, n, trunc_rank));
            }
        }
    }
    out
}

struct Corpus {
    posets: Vec<(FamilySpec, GradedPoset)>,
    generation: Duration,
}

impl Corpus {
    fn build(trunc_rank: u32) -> Self {
        let start = Instant::now();
        let posets = specs(trunc_rank).into_iter().map(|s| (s, generate(&s).expect("valid spec"))).collect();
        Corpus { posets, generation: start.elapsed() }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn series(coeffs: &[i128], trunc: usize) -> TruncatedSeries {
    TruncatedSeries::new(coeffs.iter().map(|&c| BigInt::from(c)), trunc)
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `prod (1 - r x)` over `roots`.
fn linear_product(roots: impl IntoIterator<Item = i128>) -> Vec<i128> {
    roots.into_iter().fold(vec![1], |acc, r| poly_mul(&acc, &[1, -r]))
}

fn binomial(n: i128, k: i128) -> i128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank sizes from counting formulas, independent of the generators and of
/// the library's closed forms.
fn counted_rank_sizes(spec: &FamilySpec) -> Vec<i128> {
    let (n, top) = (spec.n as i128, spec.trunc_rank as usize);
    match spec.family {
        // multisets of size k from n letters
        Family::Grid | Family::BooleanExtension => (0..=top as i128).map(|k| binomial(n + k - 1, k)).collect(),
        // complete homogeneous symmetric polynomials in 1, p, ..., p^{n-1}
        Family::PrimeSubgroups => {
            let p = spec.p.unwrap() as i128;
            let mut h = vec![1i128; top + 1];
            h[1..].fill(0);
            for i in 0..spec.n {
                let r = p.pow(i);
                for k in 1..=top {
                    h[k] += r * h[k - 1];
                }
            }
            h
        }
        Family::PartitionsNBlocks => {
            let rows = spec.n as usize + top;
            let mut s = vec![vec![0i128; rows + 1]; rows + 1];
            s[0][0] = 1;
            for a in 1..=rows {
                for b in 1..=a {
                    s[a][b] = b as i128 * s[a - 1][b] + s[a - 1][b - 1];
                }
            }
            (0..=top).map(|k| s[spec.n as usize + k][spec.n as usize]).collect()
        }
        Family::NaryTree => (0..=top as u32).map(|k| n.pow(k)).collect(),
        Family::Bowtie => (0..=top).map(|k| if k == 0 { 1 } else { n }).collect(),
    }
}

fn c1_main_identity(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    for (spec, poset) in &corpus.posets {
        let r = verify::check_main_identity(poset);
        ensure(r.passed, || format!("{spec}: first discrepancy at x^{:?}", r.first_discrepancy))?;
    }
    let total = corpus.generation + start.elapsed();
    ensure(total < MAIN_LIMIT, || format!("took {total:.1?}, limit {MAIN_LIMIT:?}"))?;
    Ok(format!("{} posets at N=6 in {total:.1?} including generation", corpus.posets.len()))
}

fn c2_golden_forms(corpus: &Corpus) -> Outcome {
    for (spec, poset) in &corpus.posets {
        let f = poset.rank_generating_series();
        let golden = spec.golden().f_series(6);
        ensure(f == golden, || format!("{spec}: F = {f}, closed form {golden}"))?;
        let counted = series(&counted_rank_sizes(spec), 6);
        ensure(f == counted, || format!("{spec}: F = {f}, counted {counted}"))?;
    }
    let mersenne = series(&[1, 3, 7, 15, 31, 63, 127], 6);
    for spec in [FamilySpec::new(Family::PartitionsNBlocks, 2, 6), FamilySpec::prime(2, 2, 6)] {
        let (_, poset) = corpus.posets.iter().find(|(s, _)| *s == spec).unwrap();
        ensure(poset.rank_generating_series() == mersenne, || format!("{spec}: rank sizes {:?}", poset.rank_sizes()))?;
    }
    Ok(format!("{} posets match closed forms and counts; 1,3,7,...,127 for partitions and prime", corpus.posets.len()))
}

fn c3_chain_identity(corpus: &Corpus) -> Outcome {
    let mut reports = 0;
    for (spec, poset) in &corpus.posets {
        for r in verify::check_chain_identity(poset, 4, UphoStatus::Unchecked) {
            ensure(r.passed, || {
                format!("{spec} m={}: first discrepancy at x^{:?}", r.context["m"], r.first_discrepancy)
            })?;
            reports += 1;
        }
    }
    Ok(format!("{reports} reports, m = 0..=4"))
}

fn c4_hall(corpus: &Corpus) -> Outcome {
    for (spec, poset) in &corpus.posets {
        let r = verify::check_hall(poset);
        ensure(r.passed, || format!("{spec}: first discrepancy at x^{:?}", r.first_discrepancy))?;
    }
    for seed in 0..200 {
        let poset = random_graded_seeded(seed, 15);
        ensure(poset.len() <= 15, || format!("seed {seed}: {} elements", poset.len()))?;
        let r = verify::check_hall(&poset);
        ensure(r.passed, || format!("random seed {seed}: first discrepancy at x^{:?}", r.first_discrepancy))?;
    }
    Ok(format!("{} family posets and 200 random posets", corpus.posets.len()))
}

fn c5_meet_corollary() -> Outcome {
    let start = Instant::now();
    let mut cases = vec![
        FamilySpec::new(Family::Grid, 1, 5),
        FamilySpec::new(Family::Grid, 2, 5),
        FamilySpec::new(Family::PartitionsNBlocks, 2, 5),
        FamilySpec::prime(2, 2, 5),
        FamilySpec::new(Family::BooleanExtension, 2, 5),
    ];
    cases.extend((1..=3).map(|n| FamilySpec::new(Family::NaryTree, n, 5)));
    for spec in &cases {
        let poset = generate(spec).unwrap();
        for m in [2, 3] {
            let r = verify::check_meet_corollary(&poset, m).map_err(|e| format!("{spec} m={m}: {e}"))?;
            ensure(r.passed, || format!("{spec} m={m}: lhs {} rhs {}", r.lhs, r.rhs))?;
        }
    }
    let bowtie = generate(&FamilySpec::new(Family::Bowtie, 2, 5)).unwrap();
    match verify::check_meet_corollary(&bowtie, 2) {
        Err(VerifyError::NotMeetSemilattice { .. }) => {}
        other => return Err(format!("bowtie n=2 N=5: expected NotMeetSemilattice, got {other:?}")),
    }
    let took = start.elapsed();
    ensure(took < MEET_LIMIT, || format!("took {took:.1?}, limit {MEET_LIMIT:?}"))?;
    Ok(format!("{} posets, m = 2 and 3, bowtie rejected, {took:.1?}", cases.len()))
}

fn c6_vanishing() -> Outcome {
    let specs: Vec<FamilySpec> = specs(5).into_iter().filter(|s| s.family.is_meet_semilattice()).collect();
    for spec in &specs {
        let poset = generate(spec).unwrap();
        let r = verify::check_atom_join_vanishing(&poset).map_err(|e| format!("{spec}: {e}"))?;
        ensure(r.passed, || format!("{spec}: first discrepancy at x^{:?}, {:?}", r.first_discrepancy, r.context))?;
        let size = r.context["atom_join_size"].as_u64().unwrap();
        let sizes: Vec<u64> =
            r.context["atom_join_rank_sizes"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        match (spec.family, spec.n) {
            (Family::Grid, 2) => {
                ensure(size == 4 && sizes == [1, 2, 1], || format!("{spec}: atom-join part {sizes:?}"))?
            }
            (Family::NaryTree, n) => {
                ensure(size == n as u64 + 1 && sizes == [1, n as u64], || format!("{spec}: atom-join part {sizes:?}"))?
            }
            _ => {}
        }
    }
    Ok(format!("{} meet-semilattice posets at N=5; grid n=2 part has 4 elements, tree parts are claws", specs.len()))
}

fn c7_positivity() -> Outcome {
    let mut candidates: Vec<(String, Vec<i128>)> = Vec::new();
    for n in 1..=3i128 {
        candidates.push((format!("(1-x)^{n}"), linear_product((0..n).map(|_| 1))));
        for p in [2i128, 3] {
            candidates.push((format!("prod (1-{p}^i x), i<{n}"), linear_product((0..n as u32).map(|i| p.pow(i)))));
        }
        candidates.push((format!("prod (1-ix), i<={n}"), linear_product(1..=n)));
        candidates.push((format!("1-{n}x"), vec![1, -n]));
    }
    for (name, chi) in &candidates {
        let reports = verify::check_positivity_obstructions(&series(chi, 10), 4).map_err(|e| format!("{name}: {e}"))?;
        for r in &reports {
            let m = r.context["m"].as_u64().unwrap();
            ensure(r.passed, || format!("{name} m={m}: below threshold at x^{:?}: {}", r.first_discrepancy, r.lhs))?;
            if m == 1 {
                ensure(r.context["strictly_positive"] == true, || format!("{name}: inverse not strictly positive"))?;
            }
        }
    }
    Ok(format!("{} candidates through x^10, m = 1..=4", candidates.len()))
}

fn c8_negative_controls() -> Outcome {
    let grid = generate(&FamilySpec::new(Family::Grid, 2, 4)).unwrap();
    let mut valid = 0;
    for p in 1..grid.len() as u32 {
        // most deletions leave something ungraded; those are not posets we can test
        let Ok(damaged) = grid.without_element(p) else { continue };
        valid += 1;
        let r = verify::check_main_identity(&damaged);
        ensure(!r.passed && r.first_discrepancy.is_some(), || {
            format!("deleting {} left the main identity intact", grid.label(p))
        })?;
    }
    ensure(valid > 0, || "no deletion left a graded poset".to_owned())?;

    let mut rejected = 0;
    for batch in 0..10u64 {
        let in_batch = (0..10)
            .filter(|i| {
                let poset = random_graded_seeded(batch * 10 + i, 15);
                !poset.is_upho_truncation(poset.trunc_rank()).passed
            })
            .count();
        ensure(in_batch > 0, || format!("batch {batch}: all 10 random posets accepted"))?;
        rejected += in_batch;
    }
    Ok(format!("{valid} valid deletions all fail; {rejected}/100 random posets rejected, every batch of 10 has one"))
}

fn c9_upho(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    for (spec, poset) in &corpus.posets {
        let r = poset.is_upho_truncation(spec.trunc_rank - 2);
        ensure(r.passed, || format!("{spec}: {:?}", r.context))?;
    }
    Ok(format!("{} posets at depth 4, {:.1?}", corpus.posets.len(), start.elapsed()))
}

fn run(id: u32, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    match &outcome {
        Ok(detail) => println!("PASS  {id}  {title}: {detail}"),
        Err(why) => println!("FAIL  {id}  {title}: {why}"),
    }
    outcome.is_ok()
}

fn main() {
    let corpus = Corpus::build(6);
    let results = [
        run(1, "chi * F = 1", || c1_main_identity(&corpus)),
        run(2, "rank series match closed forms", || c2_golden_forms(&corpus)),
        run(3, "chain counts equal (F - 1)^m", || c3_chain_identity(&corpus)),
        run(4, "Mobius recurrence agrees with chain sums", || c4_hall(&corpus)),
        run(5, "meet-0 tuple counts", c5_meet_corollary),
        run(6, "Mobius vanishes off the atom-join part", c6_vanishing),
        run(7, "positivity obstructions", c7_positivity),
        run(8, "negative controls", c8_negative_controls),
        run(9, "upper homogeneity at depth N-2", || c9_upho(&corpus)),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
