use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use upho_core::series::polynomial_string;
use upho_core::TruncatedSeries;

use crate::checks::{Check, Outcome, RunOptions};
use crate::{Format, Source};

fn coeff_list(s: &TruncatedSeries) -> String {
    format!("[{}]", s.to_decimal_strings().join(", "))
}

fn closed_form(num: &[BigInt], den: &[BigInt]) -> String {
    let wrap = |c: &[BigInt]| {
        let s = polynomial_string(c);
        if c.iter().filter(|x| !x.is_zero()).count() > 1 {
            format!("({s})")
        } else {
            s
        }
    };
    if den.len() == 1 && den[0].is_one() {
        polynomial_string(num)
    } else {
        format!("{}/{}", wrap(num), wrap(den))
    }
}

fn describe<'a>(pairs: impl Iterator<Item = (&'a str, &'a Value)>) -> String {
    pairs
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// F and χ of the source, plus the closed forms when it is a named family.
/// The flag is false when either series disagrees with its closed form.
pub fn series(source: &Source, format: Format) -> (String, bool) {
    let poset = &source.poset;
    let n = poset.trunc_rank() as usize;
    let f = poset.rank_generating_series();
    let chi = poset.characteristic_series();
    let golden = source.spec.map(|spec| {
        let g = spec.golden();
        let (gf, gchi) = (g.f_series(n), g.chi_series(n));
        let (f_ok, chi_ok) = (gf == f, gchi == chi);
        (closed_form(&g.f_num, &g.f_den), closed_form(&g.chi_num, &g.chi_den), gf, gchi, f_ok, chi_ok)
    });
    let matched = golden.as_ref().is_none_or(|g| g.4 && g.5);
    let mark = |ok: bool| if ok { "match" } else { "MISMATCH" };

    let text = match format {
        Format::Json => {
            let mut doc = json!({
                "source": source.context.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<serde_json::Map<_, _>>(),
                "N": n,
                "elements": poset.len(),
                "F": f,
                "chi": chi,
            });
            if let Some((f_form, chi_form, gf, gchi, f_ok, chi_ok)) = &golden {
                doc["golden"] = json!({
                    "F": f_form,
                    "chi": chi_form,
                    "F_series": gf,
                    "chi_series": gchi,
                    "F_matches": f_ok,
                    "chi_matches": chi_ok,
                });
            }
            format!("{doc}\n")
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{} N={n}: {} elements",
                describe(source.context.iter().map(|(k, v)| (*k, v))),
                poset.len()
            );
            let _ = writeln!(out, "F    {}  {}", f.to_polynomial_string(), coeff_list(&f));
            let _ = writeln!(out, "chi  {}  {}", chi.to_polynomial_string(), coeff_list(&chi));
            if let Some((f_form, chi_form, _, _, f_ok, chi_ok)) = &golden {
                let _ = writeln!(out, "closed form F    {f_form}  {}", mark(*f_ok));
                let _ = writeln!(out, "closed form chi  {chi_form}  {}", mark(*chi_ok));
            }
            out
        }
    };
    (text, matched)
}

fn outcome_text(o: &Outcome, out: &mut String) {
    let v = o.to_json();
    let check = v["check"].as_str().unwrap_or_default();
    let ctx = v["context"].as_object().map(|m| describe(m.iter().map(|(k, v)| (k.as_str(), v)))).unwrap_or_default();
    let tag = match o.status() {
        "pass" => "PASS",
        "fail" => "FAIL",
        "skipped-by-design" => "SKIP",
        _ => "ERROR",
    };
    let _ = writeln!(out, "{tag:<5} {check:<20} {ctx}");
    match o {
        Outcome::Report(_, r) => {
            let _ = writeln!(out, "      lhs  {}  {}", r.lhs.to_polynomial_string(), coeff_list(&r.lhs));
            let _ = writeln!(out, "      rhs  {}  {}", r.rhs.to_polynomial_string(), coeff_list(&r.rhs));
            if let Some(k) = r.first_discrepancy {
                let _ = writeln!(out, "      first discrepancy at x^{k}");
            }
        }
        Outcome::Skipped { reason, .. } => {
            let _ = writeln!(out, "      skipped by design: {reason}");
        }
        Outcome::Error { error, .. } => {
            let _ = writeln!(out, "      {error}");
        }
    }
}

pub fn outcomes(outcomes: &[Outcome], format: Format) -> String {
    let mut out = String::new();
    for o in outcomes {
        match format {
            Format::Json => {
                let _ = writeln!(out, "{}", o.to_json());
            }
            Format::Text => outcome_text(o, &mut out),
        }
    }
    if format == Format::Text {
        let passed = outcomes.iter().filter(|o| o.status() == "pass").count();
        let skipped = outcomes.iter().filter(|o| o.status() == "skipped-by-design").count();
        let bad = outcomes.len() - passed - skipped;
        let _ = writeln!(out, "{passed} passed, {skipped} skipped by design, {bad} failed");
    }
    out
}

fn cell(outcomes: &[Outcome], check: Check) -> &'static str {
    let mine: Vec<&Outcome> = outcomes.iter().filter(|o| o.check() == check).collect();
    if mine.iter().any(|o| o.status() == "error") {
        "ERROR"
    } else if mine.iter().any(|o| o.status() == "fail") {
        "FAIL"
    } else if mine.iter().any(|o| o.status() == "skipped-by-design") {
        "skip"
    } else {
        "ok"
    }
}

pub type SuiteRow = (Vec<(&'static str, Value)>, usize, Vec<Outcome>);

pub fn suite(rows: &[SuiteRow], opts: &RunOptions, trunc_rank: u32, format: Format) -> String {
    let mut out = String::new();
    if format == Format::Json {
        for (_, _, outcomes) in rows {
            for o in outcomes {
                let _ = writeln!(out, "{}", o.to_json());
            }
        }
        return out;
    }
    let _ = write!(out, "{:<20} {:>2} {:>2} {:>2} {:>9}", "family", "n", "p", "N", "elements");
    for c in &opts.checks {
        let _ = write!(out, "  {:<10}", c.name());
    }
    out.truncate(out.trim_end_matches(' ').len());
    out.push('\n');
    let mut bad_rows = 0;
    for (context, len, outcomes) in rows {
        let get = |key: &str| context.iter().find(|(k, _)| *k == key).map(|(_, v)| v.clone());
        let family = get("family").and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        let n = get("n").map_or("-".to_owned(), |v| v.to_string());
        let p = get("p").map_or("-".to_owned(), |v| v.to_string());
        let _ = write!(out, "{family:<20} {n:>2} {p:>2} {trunc_rank:>2} {len:>9}");
        for &c in &opts.checks {
            let _ = write!(out, "  {:<10}", cell(outcomes, c));
        }
        out.truncate(out.trim_end_matches(' ').len());
        out.push('\n');
        if !outcomes.iter().all(Outcome::ok) {
            bad_rows += 1;
        }
    }
    let reports: usize = rows.iter().map(|r| r.2.len()).sum();
    if bad_rows == 0 {
        let _ = writeln!(out, "all passed: {} posets, {reports} reports", rows.len());
    } else {
        let _ = writeln!(out, "FAILED: {bad_rows} of {} posets have failing checks", rows.len());
    }
    out
}
