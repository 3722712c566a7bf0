//! Command dispatch for the `blf` binary.
//!
//! Exit codes: 0 when the computation succeeded and the verdict is positive
//! (certified, completable, twist power, checks pass), 2 when it succeeded
//! with a negative verdict, 1 on input or resource errors.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use thiserror::Error;

use crate::certifier::{certify_stable_gcs, check_completable, invariants, surface_log_admissible};
use crate::fibration::{
    hurwitz_canonical, search_factorizations_with, total_monodromy, Convention, FibrationError,
    Quotient, SearchLimits, VanishingCycleWord,
};
use crate::input::{parse_fibration, FibrationFile};
use crate::ledger::ConventionLedger;
use crate::mcg::{classify, CurveClass, UnimodularMatrix};
use crate::niloracle::{euler_class, nil_monodromy};
use crate::report::{reference_check, CommandResult, ErrorInfo, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Classify,
    Complete,
    Invariants,
    Certify,
    Search,
    HurwitzCanon,
    Nilcheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Complete => "complete",
            Command::Invariants => "invariants",
            Command::Certify => "certify",
            Command::Search => "search",
            Command::HurwitzCanon => "hurwitz-canon",
            Command::Nilcheck => "nilcheck",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuotientArg {
    None,
    Conj,
    Hurwitz,
}

impl From<QuotientArg> for Quotient {
    fn from(q: QuotientArg) -> Self {
        match q {
            QuotientArg::None => Quotient::None,
            QuotientArg::Conj => Quotient::Conjugation,
            QuotientArg::Hurwitz => Quotient::Hurwitz,
        }
    }
}

/// Monodromy toolkit for genus-one Lefschetz fibrations over the disk.
#[derive(Debug, Clone, Parser)]
#[command(name = "blf", version)]
pub struct Args {
    pub command: Command,
    /// Fibration description file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Euler number for `nilcheck`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Search target: a product of twists `(p,q)(p,q)...` or a matrix
    /// `[[a,b],[c,d]]`. Defaults to the monodromy of the file's cycles.
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<String>,
    /// Factorization length; defaults to the file's cycle count.
    #[arg(long)]
    pub length: Option<usize>,
    /// Coefficient bound for search.
    #[arg(long, default_value_t = 2)]
    pub bound: u32,
    #[arg(long, value_enum, default_value_t = QuotientArg::None)]
    pub quotient: QuotientArg,
    /// Node budget for Hurwitz orbit exploration.
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
}

impl Args {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            file: None,
            n: None,
            target: None,
            length: None,
            bound: 2,
            quotient: QuotientArg::None,
            budget: 1000,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}")]
    Parse(#[from] crate::input::ParseError),
    #[error("missing argument: {0}")]
    Missing(&'static str),
    #[error("invalid --{0}: {1}")]
    BadArgument(&'static str, String),
    #[error(transparent)]
    Certifier(#[from] crate::certifier::CertifierError),
    #[error(transparent)]
    Search(FibrationError),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io(..) => "io",
            CliError::Parse(_) => "parse",
            CliError::Missing(_) | CliError::BadArgument(..) => "usage",
            CliError::Certifier(_) => "unsupported_input",
            CliError::Search(FibrationError::ResourceLimit { .. }) => "resource_limit",
            CliError::Search(_) => "search",
        }
    }
}

/// Rendered report and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub json: String,
    pub exit_code: i32,
}

pub fn run(args: &Args) -> Outcome {
    let text = match &args.file {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => Some(t),
            Err(e) => return error_outcome(args.command, CliError::Io(path.clone(), e)),
        },
        None => None,
    };
    execute(args, text.as_deref())
}

/// Runs a command against file contents already in memory.
pub fn execute(args: &Args, file_text: Option<&str>) -> Outcome {
    match dispatch(args, file_text) {
        Ok(report) => Outcome {
            json: report.to_json(),
            exit_code: report.exit_code,
        },
        Err(e) => error_outcome(args.command, e),
    }
}

fn base_report(command: Command, exit_code: i32) -> Report {
    Report {
        tool: "blf",
        version: env!("CARGO_PKG_VERSION"),
        command: command.name(),
        exit_code,
        ledger: ConventionLedger::realize(Convention::STANDARD),
        result: None,
        reference: None,
        discrepancies: Vec::new(),
        error: None,
    }
}

fn error_outcome(command: Command, err: CliError) -> Outcome {
    let partial = match &err {
        CliError::Search(FibrationError::ResourceLimit { partial, .. }) => Some(partial.clone()),
        _ => None,
    };
    let mut report = base_report(command, EXIT_INPUT_ERROR);
    report.error = Some(ErrorInfo {
        kind: err.kind(),
        message: err.to_string(),
        partial,
    });
    Outcome {
        json: report.to_json(),
        exit_code: EXIT_INPUT_ERROR,
    }
}

fn require_file(file_text: Option<&str>) -> Result<FibrationFile, CliError> {
    let text = file_text.ok_or(CliError::Missing("--file"))?;
    Ok(parse_fibration(text)?)
}

fn verdict_code(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn dispatch(args: &Args, file_text: Option<&str>) -> Result<Report, CliError> {
    let command = args.command;
    let mut report = base_report(command, EXIT_OK);
    match command {
        Command::Classify => {
            let file = require_file(file_text)?;
            let monodromy = total_monodromy(&file.cycles);
            let class = classify(&monodromy);
            report.exit_code = verdict_code(class.is_twist_power_or_identity());
            report.result = Some(CommandResult::Classify {
                word: file.cycles,
                monodromy,
                class,
            });
        }
        Command::Complete | Command::Invariants => {
            let file = require_file(file_text)?;
            let cert = check_completable(&file.spec())?;
            let (reference, discrepancies) = reference_check(&file.cycles, &cert);
            report.reference = reference;
            report.discrepancies = discrepancies;
            report.exit_code = verdict_code(cert.completable);
            report.result = Some(if command == Command::Complete {
                CommandResult::Complete { certificate: cert }
            } else {
                let inv = invariants(&cert).ok();
                CommandResult::Invariants {
                    certificate: cert,
                    invariants: inv,
                }
            });
        }
        Command::Certify => {
            let file = require_file(file_text)?;
            let verdict = certify_stable_gcs(&file.spec());
            let surface = match file.surface_pair() {
                Some(pair) => Some(surface_log_admissible(&pair)?),
                None => None,
            };
            if let Ok(cert) = check_completable(&file.spec()) {
                let (reference, discrepancies) = reference_check(&file.cycles, &cert);
                report.reference = reference;
                report.discrepancies = discrepancies;
            }
            report.exit_code = verdict_code(verdict.is_certified() && surface != Some(false));
            report.result = Some(CommandResult::Certify {
                stable_gcs: verdict,
                surface_log_admissible: surface,
            });
        }
        Command::Search => {
            let file = file_text.map(parse_fibration).transpose()?;
            let target = match (&args.target, &file) {
                (Some(t), _) => parse_target(t)?,
                (None, Some(f)) => total_monodromy(&f.cycles),
                (None, None) => return Err(CliError::Missing("--target or --file")),
            };
            let length = match (args.length, &file) {
                (Some(l), _) => l,
                (None, Some(f)) => f.cycles.len(),
                (None, None) => return Err(CliError::Missing("--length")),
            };
            let limits = SearchLimits {
                hurwitz_budget: args.budget,
                ..SearchLimits::default()
            };
            let search = search_factorizations_with(
                &target,
                length,
                args.bound,
                args.quotient.into(),
                Convention::STANDARD,
                limits,
            )
            .map_err(CliError::Search)?;
            report.exit_code = verdict_code(!search.words.is_empty());
            report.result = Some(CommandResult::Search {
                target,
                length,
                bound: args.bound,
                quotient: args.quotient.into(),
                search,
            });
        }
        Command::HurwitzCanon => {
            let file = require_file(file_text)?;
            if args.budget == 0 {
                return Err(CliError::BadArgument("budget", "must be positive".into()));
            }
            let canonical = hurwitz_canonical(&file.cycles, args.budget);
            let monodromy = total_monodromy(&file.cycles);
            let monodromy_preserved = total_monodromy(&canonical.word) == monodromy;
            report.exit_code = verdict_code(monodromy_preserved);
            report.result = Some(CommandResult::HurwitzCanon {
                word: file.cycles,
                canonical,
                monodromy,
                monodromy_preserved,
            });
        }
        Command::Nilcheck => {
            let raw = args.n.as_deref().ok_or(CliError::Missing("--n"))?;
            let n: BigInt = raw
                .trim()
                .parse()
                .map_err(|_| CliError::BadArgument("n", raw.to_string()))?;
            let monodromy = nil_monodromy(n.clone());
            let class = classify(&monodromy);
            let sigma = report.ledger.sigma_cap.map(BigInt::from);
            let exponent_matches = match (&class, &sigma) {
                (crate::mcg::MonodromyClass::Identity, _) => n == BigInt::from(0),
                (crate::mcg::MonodromyClass::TwistPower { exponent, .. }, Some(s)) => {
                    *exponent == s * &n
                }
                _ => false,
            };
            let euler =
                euler_class(n.clone()).map_err(|e| CliError::BadArgument("n", e.to_string()))?;
            let euler_class_matches = euler == n;
            report.exit_code = verdict_code(exponent_matches && euler_class_matches);
            report.result = Some(CommandResult::Nilcheck {
                n,
                monodromy,
                class,
                euler_class: euler,
                exponent_matches,
                euler_class_matches,
            });
        }
    }
    Ok(report)
}

/// Parses `(p,q)(p,q)...` as a product of twists, or `[[a,b],[c,d]]`.
pub fn parse_target(text: &str) -> Result<UnimodularMatrix, CliError> {
    let bad = |msg: &str| CliError::BadArgument("target", format!("{text}: {msg}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.starts_with("[[") {
        let inner = compact
            .strip_prefix("[[")
            .and_then(|s| s.strip_suffix("]]"))
            .ok_or_else(|| bad("expected [[a,b],[c,d]]"))?;
        let rows: Vec<&str> = inner.split("],[").collect();
        if rows.len() != 2 {
            return Err(bad("expected two rows"));
        }
        let mut entries = Vec::new();
        for row in rows {
            for e in row.split(',') {
                entries.push(e.parse::<BigInt>().map_err(|_| bad("bad integer"))?);
            }
        }
        if entries.len() != 4 {
            return Err(bad("expected four entries"));
        }
        let mut it = entries.into_iter();
        let (a, b, c, d) = (
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        );
        return UnimodularMatrix::new(a, b, c, d).map_err(|e| bad(&e.to_string()));
    }
    let mut cycles = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let close = body.find(')').ok_or_else(|| bad("expected `)`"))?;
        let (pair, tail) = (&body[..close], &body[close + 1..]);
        let (p, q) = pair.split_once(',').ok_or_else(|| bad("expected `p,q`"))?;
        let p: BigInt = p.parse().map_err(|_| bad("bad integer"))?;
        let q: BigInt = q.parse().map_err(|_| bad("bad integer"))?;
        cycles.push(CurveClass::new(p, q).map_err(|e| bad(&e.to_string()))?);
        rest = tail;
    }
    Ok(total_monodromy(&VanishingCycleWord::new(cycles)))
}
