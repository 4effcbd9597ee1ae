//! Command-line front end. Every subcommand prints one answer (or one
//! record per result) to stdout in the negotiated format; progress and
//! notices go to stderr; exit code 0 means "produced an answer", 1 means
//! "bad invocation", 2 means "the computation could not finish".

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::json;

use crate::abundancy::{abundancy_from_factorization, Classification};
use crate::arith::{factorize, sigma_of_factorization, Factorization, Ratio};
use crate::constraints::{check_friend_of_14, CheckReport};
use crate::error::{Error, Result};
use crate::search::{
    find_friend_of, friend_pairs, load_checkpoint, search_ratio_observed, verify_theorem,
    SearchConfig, SearchObserver, SearchOutcome, TheoremId, VerificationReport, VerifyBudget,
    ALL_THEOREMS, DEFAULT_CHUNK_SIZE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// One JSON object per line; arbitrary-size integers are decimal strings.
    Json,
    /// Tab-separated values, one record per line.
    Tsv,
    /// Prose for people.
    Human,
}

#[derive(Debug, Parser)]
#[command(
    name = "abundancy",
    version,
    about = "Exact abundancy-index arithmetic, friend searches, and candidate screening"
)]
struct Cli {
    /// Output format. Defaults to human on a terminal, json otherwise.
    #[arg(long, global = true, value_enum, env = "ABUNDANCY_FORMAT")]
    format: Option<OutputFormat>,

    /// Suppress progress and notices on stderr.
    #[arg(long, global = true, env = "ABUNDANCY_QUIET", value_parser = clap::builder::FalseyValueParser::new())]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sum of divisors of N (exact, any size within factoring reach)
    Sigma { n: BigUint },
    /// Abundancy index I(N) = sigma(N)/N as an exact reduced fraction
    Abundancy { n: BigUint },
    /// Classify N as perfect, abundant, or deficient
    Classify { n: BigUint },
    /// Try to certify that N is solitary via gcd(N, sigma(N)) = 1
    Solitary { n: BigUint },
    /// Screen a friend-of-14 candidate against all 14 necessary conditions
    #[command(name = "check14")]
    Check14 {
        /// Candidate value (will be factorized)
        n: Option<BigUint>,
        /// Explicit factorization like "3^1*7^2*11^2*13^2" for candidates
        /// beyond factoring reach
        #[arg(long)]
        factors: Option<String>,
    },
    /// Find every n in a range whose abundancy index equals a target ratio
    Search {
        /// Target ratio, e.g. 12/7 or 2
        #[arg(long)]
        ratio: String,
        /// Range start (inclusive, >= 1)
        #[arg(long)]
        min: u64,
        /// Range end (inclusive)
        #[arg(long)]
        max: u64,
        /// Worker threads; 0 or omitted = all available cores
        #[arg(long, env = "ABUNDANCY_WORKERS")]
        workers: Option<usize>,
        /// Integers per work chunk
        #[arg(long, env = "ABUNDANCY_CHUNK")]
        chunk: Option<u64>,
        /// Persist progress here and resume from it if it exists
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Apply the cheap friend-of-14 prefilters (only meaningful with
        /// --ratio 12/7; 14 itself always bypasses them)
        #[arg(long = "use-friend14-filters")]
        use_friend14_filters: bool,
    },
    /// List all groups of mutual friends up to a bound
    Pairs {
        /// Scan 1..=MAX
        #[arg(long)]
        max: u64,
    },
    /// Find the smallest friend of N up to a limit
    Friend {
        n: u64,
        /// Scan 1..=LIMIT
        #[arg(long)]
        limit: u64,
    },
    /// Re-check a structural statement by brute force over a bounded domain
    Verify {
        /// Statement id (L2.1, L2.2, L2.4, L2.5, T3.1, T3.2-core,
        /// T3.4-core, T3.5-core, T3.10-core) or "all"
        #[arg(long)]
        theorem: String,
        /// Override the statement's primary bound (samples for L2.1/L2.4,
        /// n for L2.2/L2.5/T3.1, prime bound for the T3.x-core family)
        #[arg(long)]
        bound: Option<u64>,
    },
}

/// Entry point for the binary: real stdio, format auto-detection.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let interactive = std::io::stdout().is_terminal();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    run_with_io(args, &mut stdout, &mut stderr, interactive)
}

/// Testable entry point: output sinks and terminal-ness are injected.
pub fn run_with_io<I, S>(
    args: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
    interactive: bool,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    1
                }
            };
        }
    };
    let format = cli
        .format
        .unwrap_or(if interactive { OutputFormat::Human } else { OutputFormat::Json });
    let quiet = cli.quiet;

    match dispatch(cli.command, format, quiet, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        // The invocation itself was wrong.
        Error::InvalidInput(_)
        | Error::InvalidRatio(_)
        | Error::InvalidFactorization(_)
        | Error::ZeroDenominator
        | Error::EmptyFactorization => 1,
        // The computation could not be completed.
        Error::FactorizationGaveUp { .. }
        | Error::RangeTooLarge(_)
        | Error::CorruptCheckpoint(_)
        | Error::BudgetTooLarge(_)
        | Error::Io(_) => 2,
    }
}

fn dispatch(
    command: Command,
    format: OutputFormat,
    quiet: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    match command {
        Command::Sigma { n } => cmd_sigma(&n, format, out),
        Command::Abundancy { n } => cmd_abundancy(&n, format, out),
        Command::Classify { n } => cmd_classify(&n, format, out),
        Command::Solitary { n } => cmd_solitary(&n, format, out),
        Command::Check14 { n, factors } => cmd_check14(n, factors, format, out),
        Command::Search { ratio, min, max, workers, chunk, checkpoint, use_friend14_filters } => {
            cmd_search(
                &ratio,
                min,
                max,
                workers,
                chunk,
                checkpoint,
                use_friend14_filters,
                format,
                quiet,
                out,
                err,
            )
        }
        Command::Pairs { max } => cmd_pairs(max, format, quiet, out, err),
        Command::Friend { n, limit } => cmd_friend(n, limit, format, out),
        Command::Verify { theorem, bound } => cmd_verify(&theorem, bound, format, out),
    }
}

/// Factorizes after rejecting 0, so every numeric command shares one
/// validation path.
fn factorization_of(n: &BigUint) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    factorize(n)
}

fn cmd_sigma(n: &BigUint, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let sigma = sigma_of_factorization(&factorization_of(n)?);
    let line = match format {
        OutputFormat::Json => json!({ "n": n.to_string(), "sigma": sigma.to_string() }).to_string(),
        OutputFormat::Tsv => format!("{n}\t{sigma}"),
        OutputFormat::Human => format!("sigma({n}) = {sigma}"),
    };
    let _ = writeln!(out, "{line}");
    Ok(())
}

fn cmd_abundancy(n: &BigUint, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let f = factorization_of(n)?;
    let sigma = sigma_of_factorization(&f);
    let index = abundancy_from_factorization(&f);
    let line = match format {
        OutputFormat::Json => json!({
            "n": n.to_string(),
            "sigma": sigma.to_string(),
            "abundancy": index.to_string(),
        })
        .to_string(),
        OutputFormat::Tsv => format!("{n}\t{sigma}\t{index}"),
        OutputFormat::Human => {
            format!("I({n}) = {index} \u{2248} {:.6} (sigma = {sigma})", index.approx_f64())
        }
    };
    let _ = writeln!(out, "{line}");
    Ok(())
}

fn cmd_classify(n: &BigUint, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let f = factorization_of(n)?;
    let index = abundancy_from_factorization(&f);
    let class = match index.partial_cmp(&2u64).expect("total order") {
        std::cmp::Ordering::Equal => Classification::Perfect,
        std::cmp::Ordering::Greater => Classification::Abundant,
        std::cmp::Ordering::Less => Classification::Deficient,
    };
    let line = match format {
        OutputFormat::Json => json!({
            "n": n.to_string(),
            "abundancy": index.to_string(),
            "classification": class.to_string(),
        })
        .to_string(),
        OutputFormat::Tsv => format!("{n}\t{index}\t{class}"),
        OutputFormat::Human => {
            format!("{n} is {class} (I = {index} \u{2248} {:.6})", index.approx_f64())
        }
    };
    let _ = writeln!(out, "{line}");
    Ok(())
}

fn cmd_solitary(n: &BigUint, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let f = factorization_of(n)?;
    let sigma = sigma_of_factorization(&f);
    let gcd = n.gcd(&sigma);
    let proved = gcd.is_one();
    let status = if proved { "proved" } else { "unknown" };
    let line = match format {
        OutputFormat::Json => json!({
            "n": n.to_string(),
            "sigma": sigma.to_string(),
            "gcd": gcd.to_string(),
            "solitary": status,
        })
        .to_string(),
        OutputFormat::Tsv => format!("{n}\t{sigma}\t{gcd}\t{status}"),
        OutputFormat::Human => {
            if proved {
                format!("{n} is solitary: gcd({n}, sigma({n})) = gcd({n}, {sigma}) = 1")
            } else {
                format!(
                    "{n}: unknown \u{2014} gcd({n}, {sigma}) = {gcd}, \
                     the coprimality certificate does not apply"
                )
            }
        }
    };
    let _ = writeln!(out, "{line}");
    Ok(())
}

fn cmd_check14(
    n: Option<BigUint>,
    factors: Option<String>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<()> {
    let f = match (n, factors) {
        (Some(n), None) => factorization_of(&n)?,
        (None, Some(text)) => Factorization::from_str(&text)?,
        (Some(_), Some(_)) => {
            return Err(Error::InvalidInput(
                "give either a candidate value or --factors, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Error::InvalidInput(
                "give a candidate value or --factors \"p^a*q^b*...\"".into(),
            ))
        }
    };
    let report = check_friend_of_14(&f);
    render_check_report(&report, format, out);
    Ok(())
}

fn render_check_report(report: &CheckReport, format: OutputFormat, out: &mut dyn Write) {
    match format {
        OutputFormat::Json => {
            let _ = writeln!(out, "{}", report.to_json());
        }
        OutputFormat::Tsv => {
            for v in &report.verdicts {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}",
                    v.id,
                    v.verdict,
                    v.witness.as_deref().unwrap_or("")
                );
            }
            let _ = writeln!(out, "OVERALL\t{}\t", report.overall);
        }
        OutputFormat::Human => {
            let _ = writeln!(
                out,
                "candidate {} = {}",
                report.candidate.value(),
                report.candidate
            );
            for v in &report.verdicts {
                match &v.witness {
                    Some(w) => {
                        let _ = writeln!(out, "  {:<20} {}  ({w})", v.id.to_string(), v.verdict);
                    }
                    None => {
                        let _ = writeln!(out, "  {:<20} {}", v.id.to_string(), v.verdict);
                    }
                }
            }
            let failing = report.failing().len();
            if failing == 0 {
                let _ = writeln!(out, "passes all 14 necessary conditions (not disqualified)");
            } else {
                let _ = writeln!(out, "ruled out: {failing} of 14 conditions fail");
            }
        }
    }
}

struct StreamObserver<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    format: OutputFormat,
    quiet: bool,
    ratio: String,
}

impl SearchObserver for StreamObserver<'_> {
    fn on_match(&mut self, n: u64, sigma: u128) {
        let line = match self.format {
            OutputFormat::Json => json!({
                "n": n.to_string(),
                "sigma": sigma.to_string(),
                "ratio": self.ratio,
            })
            .to_string(),
            OutputFormat::Tsv => format!("{n}\t{sigma}\t{}", self.ratio),
            OutputFormat::Human => format!("match: n = {n}, sigma = {sigma}, I = {}", self.ratio),
        };
        let _ = writeln!(self.out, "{line}");
    }

    fn on_chunk(&mut self, completed: u64, total: u64, matches: u64) -> ControlFlow<()> {
        if !self.quiet {
            let _ = writeln!(self.err, "chunk {completed}/{total} complete, matches so far: {matches}");
        }
        ControlFlow::Continue(())
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    ratio_text: &str,
    min: u64,
    max: u64,
    workers: Option<usize>,
    chunk: Option<u64>,
    checkpoint: Option<PathBuf>,
    use_friend14_filters: bool,
    format: OutputFormat,
    quiet: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let ratio = Ratio::from_str(ratio_text)?;
    if use_friend14_filters && ratio != Ratio::from_u64(12, 7) && !quiet {
        let _ = writeln!(
            err,
            "note: --use-friend14-filters only applies to ratio 12/7; ignoring it"
        );
    }
    if let Some(path) = &checkpoint {
        if path.exists() {
            if let Ok(cp) = load_checkpoint(path) {
                if !quiet {
                    let _ = writeln!(
                        err,
                        "resuming from checkpoint: {} chunks already complete, {} matches recorded",
                        cp.completed_chunks,
                        cp.matches.len()
                    );
                }
            }
        }
    }
    let config = SearchConfig {
        workers: workers.unwrap_or(0),
        chunk_size: chunk.unwrap_or(DEFAULT_CHUNK_SIZE),
        checkpoint_path: checkpoint,
        friend14_filters: use_friend14_filters,
    };

    let outcome: SearchOutcome = {
        let mut observer =
            StreamObserver { out, err, format, quiet, ratio: ratio.to_string() };
        search_ratio_observed(&ratio, min, max, &config, &mut observer)?
    };

    if !quiet {
        let resumed = outcome
            .resumed_from
            .map(|k| format!(" (resumed past {k} chunks)"))
            .unwrap_or_default();
        let _ = writeln!(
            err,
            "search complete: range {}..={}, chunks {}/{}, matches {}{resumed}",
            outcome.lo,
            outcome.hi,
            outcome.chunks_completed,
            outcome.chunks_total,
            outcome.matches.len()
        );
    }
    Ok(())
}

fn cmd_pairs(
    max: u64,
    format: OutputFormat,
    quiet: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let groups = friend_pairs(max)?;
    for (ratio, members) in &groups {
        let line = match format {
            OutputFormat::Json => {
                json!({ "ratio": ratio.to_string(), "members": members }).to_string()
            }
            OutputFormat::Tsv => format!(
                "{ratio}\t{}",
                members.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            ),
            OutputFormat::Human => format!(
                "I = {ratio}: {}",
                members.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
            ),
        };
        let _ = writeln!(out, "{line}");
    }
    if !quiet {
        let _ = writeln!(err, "{} friendly groups up to {max}", groups.len());
    }
    Ok(())
}

fn cmd_friend(n: u64, limit: u64, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let friend = find_friend_of(n, limit)?;
    let line = match format {
        OutputFormat::Json => json!({
            "n": n.to_string(),
            "limit": limit.to_string(),
            "friend": friend.map(|m| m.to_string()),
        })
        .to_string(),
        OutputFormat::Tsv => format!(
            "{n}\t{limit}\t{}",
            friend.map(|m| m.to_string()).unwrap_or_else(|| "-".into())
        ),
        OutputFormat::Human => match friend {
            Some(m) => format!("smallest friend of {n} up to {limit}: {m}"),
            None => format!("no friend of {n} found up to {limit}"),
        },
    };
    let _ = writeln!(out, "{line}");
    Ok(())
}

fn budget_with_bound(id: TheoremId, bound: Option<u64>) -> Result<VerifyBudget> {
    let mut budget = VerifyBudget::default();
    if let Some(b) = bound {
        match id {
            TheoremId::SigmaMultiplicative | TheoremId::PrimeSubstitution => budget.samples = b,
            TheoremId::MultiplierRaisesIndex
            | TheoremId::SupportBound
            | TheoremId::FriendOf14Screen => budget.n_bound = b,
            TheoremId::SigmaDivisibleBy8Mod8Primes
            | TheoremId::SigmaDivisibleBy8Exp7
            | TheoremId::SigmaEvenOddExp
            | TheoremId::PrimePowerCoprimality => budget.prime_bound = b,
        }
    }
    Ok(budget)
}

fn cmd_verify(
    theorem: &str,
    bound: Option<u64>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<()> {
    let ids: Vec<TheoremId> = if theorem == "all" {
        ALL_THEOREMS.to_vec()
    } else {
        vec![TheoremId::from_str(theorem)?]
    };
    for id in ids {
        let budget = budget_with_bound(id, bound)?;
        let report = verify_theorem(id, &budget)?;
        render_verification(&report, format, out);
    }
    Ok(())
}

fn render_verification(report: &VerificationReport, format: OutputFormat, out: &mut dyn Write) {
    match format {
        OutputFormat::Json => {
            let _ = writeln!(
                out,
                "{}",
                json!({
                    "theorem": report.theorem.as_str(),
                    "domain": report.domain,
                    "cases_checked": report.cases_checked,
                    "counterexamples": report.counterexamples,
                    "first_counterexample": report.first_counterexample,
                })
            );
        }
        OutputFormat::Tsv => {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                report.theorem,
                report.cases_checked,
                report.counterexamples,
                report.first_counterexample.as_deref().unwrap_or("-"),
                report.domain
            );
        }
        OutputFormat::Human => {
            let _ = writeln!(
                out,
                "{}: {} cases checked, {} counterexamples ({})",
                report.theorem, report.cases_checked, report.counterexamples, report.domain
            );
            if let Some(first) = &report.first_counterexample {
                let _ = writeln!(out, "  first counterexample: {first}");
            }
        }
    }
}
