use std::collections::BTreeMap;

use clap::ValueEnum;
use serde_json::{json, Value};
use upho_core::verify::{self, UphoStatus, VerifyError};
use upho_core::{PosetError, VerificationReport};

use crate::Source;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Main,
    Chains,
    Hall,
    Inversion,
    Meet,
    Positivity,
    Vanishing,
    Upho,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Main,
        Check::Chains,
        Check::Hall,
        Check::Inversion,
        Check::Meet,
        Check::Positivity,
        Check::Vanishing,
        Check::Upho,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Main => "main",
            Check::Chains => "chains",
            Check::Hall => "hall",
            Check::Inversion => "inversion",
            Check::Meet => "meet",
            Check::Positivity => "positivity",
            Check::Vanishing => "vanishing",
            Check::Upho => "upho",
        }
    }

    fn report_name(self) -> &'static str {
        match self {
            Check::Main => "main_identity",
            Check::Chains => "chain_identity",
            Check::Hall => "hall",
            Check::Inversion => "mobius_inversion",
            Check::Meet => "meet_corollary",
            Check::Positivity => "positivity",
            Check::Vanishing => "atom_join_vanishing",
            Check::Upho => "upho_truncation",
        }
    }
}

pub struct RunOptions {
    pub checks: Vec<Check>,
    pub meet_m: Vec<usize>,
    pub m_max: usize,
    pub depth: u32,
}

pub enum Outcome {
    Report(Check, VerificationReport),
    /// The check does not apply to this family by construction.
    Skipped {
        check: Check,
        reason: String,
        context: BTreeMap<String, Value>,
    },
    /// The poset does not meet the check's precondition.
    Error {
        check: Check,
        error: String,
        context: BTreeMap<String, Value>,
    },
}

impl Outcome {
    pub fn ok(&self) -> bool {
        match self {
            Outcome::Report(_, r) => r.passed,
            Outcome::Skipped { .. } => true,
            Outcome::Error { .. } => false,
        }
    }

    pub fn check(&self) -> Check {
        match self {
            Outcome::Report(c, _) | Outcome::Skipped { check: c, .. } | Outcome::Error { check: c, .. } => *c,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Outcome::Report(_, r) if r.passed => "pass",
            Outcome::Report(..) => "fail",
            Outcome::Skipped { .. } => "skipped-by-design",
            Outcome::Error { .. } => "error",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Outcome::Report(_, r) => {
                let mut v = serde_json::to_value(r).expect("reports serialize");
                v["status"] = json!(self.status());
                v
            }
            Outcome::Skipped { check, reason, context } => json!({
                "check": check.report_name(),
                "status": self.status(),
                "reason": reason,
                "context": context,
            }),
            Outcome::Error { check, error, context } => json!({
                "check": check.report_name(),
                "status": self.status(),
                "error": error,
                "context": context,
            }),
        }
    }
}

/// Runs `opts.checks` in order. The upho check, when selected, runs first so
/// that chain reports can record its verdict.
pub fn run_all(source: &Source, opts: &RunOptions) -> Vec<Outcome> {
    let poset = &source.poset;
    let context: BTreeMap<String, Value> = source
        .context
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .chain([("N".to_owned(), json!(poset.trunc_rank()))])
        .collect();
    let upho = opts.checks.contains(&Check::Upho).then(|| poset.is_upho_truncation(opts.depth));
    let status = match &upho {
        Some(r) if r.passed => UphoStatus::Consistent,
        Some(_) => UphoStatus::Refuted,
        None => UphoStatus::Unchecked,
    };
    let by_design = source.spec.is_some_and(|s| !s.family.is_meet_semilattice());
    let failed = |check: Check, e: VerifyError, out: &mut Vec<Outcome>| {
        let skip = by_design
            && matches!(
                e,
                VerifyError::NotMeetSemilattice { .. } | VerifyError::Poset(PosetError::JoinNotDefined { .. })
            );
        let context = context.clone();
        out.push(if skip {
            Outcome::Skipped { check, reason: e.to_string(), context }
        } else {
            Outcome::Error { check, error: e.to_string(), context }
        });
    };

    let mut out = Vec::new();
    for &check in &opts.checks {
        let report = |r: VerificationReport| Outcome::Report(check, r.with_context(&context));
        match check {
            Check::Main => out.push(report(verify::check_main_identity(poset))),
            Check::Chains => {
                out.extend(verify::check_chain_identity(poset, opts.m_max, status).into_iter().map(report))
            }
            Check::Hall => out.push(report(verify::check_hall(poset))),
            Check::Inversion => out.push(report(verify::check_mobius_inversion(poset))),
            Check::Meet => {
                for &m in &opts.meet_m {
                    match verify::check_meet_corollary(poset, m) {
                        Ok(r) => out.push(report(r)),
                        Err(e) => {
                            failed(check, e, &mut out);
                            break;
                        }
                    }
                }
            }
            Check::Positivity => {
                // for m >= 2 the obstruction counts tuples by their meet
                let m_max = if by_design { opts.m_max.min(1) } else { opts.m_max };
                match verify::check_positivity_obstructions(&poset.characteristic_series(), m_max) {
                    Ok(rs) => out.extend(rs.into_iter().map(report)),
                    Err(e) => failed(check, e.into(), &mut out),
                }
                if m_max < opts.m_max {
                    out.push(Outcome::Skipped {
                        check,
                        reason: format!("m = 2..={} needs a meet semilattice", opts.m_max),
                        context: context.clone(),
                    });
                }
            }
            Check::Vanishing => match verify::check_atom_join_vanishing(poset) {
                Ok(r) => out.push(report(r)),
                Err(e) => failed(check, e, &mut out),
            },
            Check::Upho => out.push(report(upho.clone().expect("computed above"))),
        }
    }
    out
}
