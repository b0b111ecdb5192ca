mod checks;
mod render;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use upho_core::{generate, Family, FamilySpec, GradedPoset};

use checks::{Check, Outcome, RunOptions};

/// Generate graded poset families and check their rank/characteristic identities.
#[derive(Debug, Parser)]
#[command(name = "upho", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a truncated family member as poset JSON.
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the rank generating series F and the characteristic series χ.
    Series {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run selected checks on one poset.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        select: SelectArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run every check over all families, n = 1..=3 and p in {2, 3}.
    Suite {
        /// Truncation rank.
        #[arg(long = "N", default_value_t = 6)]
        trunc_rank: u32,
        #[command(flatten)]
        select: SelectArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<u32>,
    /// Prime, for prime_subgroups only.
    #[arg(long)]
    p: Option<u32>,
    /// Truncation rank.
    #[arg(long = "N", default_value_t = 6)]
    trunc_rank: u32,
}

#[derive(Debug, Args)]
struct SourceArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Poset JSON file, instead of a family.
    #[arg(long, conflicts_with_all = ["family", "n", "p"])]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SelectArgs {
    /// Comma-separated; defaults to all checks.
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Vec<Check>,
    /// Tuple lengths for the meet check.
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3])]
    m: Vec<usize>,
    /// Largest m for the chain and positivity checks.
    #[arg(long = "m-max", default_value_t = 3)]
    m_max: usize,
    /// Filter depth for the upho check; defaults to N - 2.
    #[arg(long)]
    depth: Option<u32>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exit status 2 (bad arguments or input) versus 1 (anything that went wrong
/// while running).
enum CliError {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Runtime(e.into())
    }
}

fn usage(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Usage(e.into())
}

/// Where a poset came from; rendered into report contexts.
struct Source {
    poset: GradedPoset,
    spec: Option<FamilySpec>,
    context: Vec<(&'static str, Value)>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, CliError> {
        let family = self.family.ok_or_else(|| usage(anyhow!("--family or --input is required")))?;
        let n = self.n.ok_or_else(|| usage(anyhow!("--n is required with --family")))?;
        let spec = FamilySpec { family, n, p: self.p, trunc_rank: self.trunc_rank };
        spec.validate().map_err(usage)?;
        Ok(spec)
    }
}

fn family_source(spec: FamilySpec) -> Result<Source, CliError> {
    let poset = generate(&spec).map_err(usage)?;
    let mut context = vec![("family", json!(spec.family.name())), ("n", json!(spec.n))];
    if let Some(p) = spec.p {
        context.push(("p", json!(p)));
    }
    Ok(Source { poset, spec: Some(spec), context })
}

impl SourceArgs {
    fn load(&self) -> Result<Source, CliError> {
        let Some(path) = &self.input else {
            return family_source(self.family.spec()?);
        };
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)?;
        let poset =
            GradedPoset::from_json(&text).with_context(|| format!("parsing {}", path.display())).map_err(usage)?;
        Ok(Source { poset, spec: None, context: vec![("input", json!(path.display().to_string()))] })
    }
}

impl SelectArgs {
    fn options(&self, trunc_rank: u32) -> Result<RunOptions, CliError> {
        let depth = self.depth.unwrap_or(trunc_rank.saturating_sub(2));
        if depth > trunc_rank {
            return Err(usage(anyhow!("--depth {depth} exceeds N = {trunc_rank}")));
        }
        if let Some(&m) = self.m.iter().find(|&&m| m == 0) {
            return Err(usage(anyhow!("--m must be positive, got {m}")));
        }
        let checks = if self.checks.is_empty() { Check::ALL.to_vec() } else { self.checks.clone() };
        Ok(RunOptions { checks, meet_m: self.m.clone(), m_max: self.m_max, depth })
    }
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display())).map_err(CliError::Runtime)
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Generate { family, output } => {
            let source = family_source(family.spec()?)?;
            let mut text = source.poset.to_json();
            text.push('\n');
            emit(&OutputArgs { format: Format::Json, output }, &text)?;
            Ok(true)
        }
        Command::Series { source, out } => {
            let source = source.load()?;
            let (text, matched) = render::series(&source, out.format);
            emit(&out, &text)?;
            Ok(matched)
        }
        Command::Verify { source, select, out } => {
            let source = source.load()?;
            let opts = select.options(source.poset.trunc_rank())?;
            let outcomes = checks::run_all(&source, &opts);
            let ok = outcomes.iter().all(Outcome::ok);
            emit(&out, &render::outcomes(&outcomes, out.format))?;
            Ok(ok)
        }
        Command::Suite { trunc_rank, select, out } => {
            let opts = select.options(trunc_rank)?;
            let mut rows = Vec::new();
            for family in Family::ALL {
                let primes: &[Option<u32>] = if family.takes_prime() { &[Some(2), Some(3)] } else { &[None] };
                for n in 1..=3 {
                    for &p in primes {
                        let spec = FamilySpec { family, n, p, trunc_rank };
                        spec.validate().map_err(usage)?;
                        let source = family_source(spec)?;
                        let outcomes = checks::run_all(&source, &opts);
                        rows.push((source.context, source.poset.len(), outcomes));
                    }
                }
            }
            let ok = rows.iter().all(|(_, _, o)| o.iter().all(Outcome::ok));
            emit(&out, &render::suite(&rows, &opts, trunc_rank, out.format))?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
