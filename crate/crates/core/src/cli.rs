//! The `polyconj` command line.
//!
//! Exit codes: `0` yes / solved / valid, `1` no / unsolvable / invalid,
//! `2` usage or internal error. Witnesses and certificates go to standard
//! output in the instance file format; diagnostics go to standard error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench;
use crate::conjugacy::{verify_certificate, Certificate, ConjugacySolver, DEFAULT_MAX_STATES};
use crate::error::{Error, Result};
use crate::format::{parse_instance, serialize_instance, InstanceFile, Witness};
use crate::generate::{generate, GenSpec, Kind};
use crate::reductions::{
    pullback_conjugacy_to_tssp, pullback_sspprime_to_ssp, pullback_tssp_to_sspprime, solve_ssp_brute,
    solve_sspprime_brute, ssp_search_via_decision, ssp_to_sspprime, sspprime_to_tssp, tssp_to_conjugacy,
    ConjugacyInstance, ReductionChain, SspInstance, SspPrimeInstance,
};
use crate::tssp::{solve_tssp_brute, solve_tssp_dp_limited, Assignment, TsspInstance, DEFAULT_MAX_CELLS};

#[derive(Debug, Parser)]
#[command(name = "polyconj", version, about = "Subset-sum variants and conjugacy in the groups G_n")]
struct Cli {
    /// Largest dynamic-programming table, counted as (n + 1)(2S + 1) cells.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: u128,

    /// Largest number of reachable g_1 exponents kept by the conjugacy solver.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an ssp, sspp or tssp instance and print a witness.
    Solve {
        problem: Problem,
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Dp)]
        method: Method,
        /// Build the ssp witness from yes/no answers alone.
        #[arg(long)]
        search: bool,
    },
    /// Map an instance along the reduction chain.
    Reduce { hop: Hop, file: PathBuf },
    /// Carry a witness for a reduced instance back to its source.
    Pullback {
        hop: Hop,
        /// The instance the reduction started from.
        source: PathBuf,
        /// A sol file, or a cert file for hops ending in conj.
        witness: PathBuf,
    },
    /// Conjugacy decision, search and verification.
    Conj {
        #[command(subcommand)]
        action: ConjAction,
    },
    /// Generate a seeded random instance.
    Gen {
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Derive the target from a random witness.
        #[arg(long)]
        solvable: bool,
    },
    /// Time the TSSP table on growing magnitudes and bit lengths.
    Bench {
        #[arg(value_enum, default_value_t = Series::All)]
        series: Series,
        /// Smaller sizes and fewer repetitions.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum ConjAction {
    Decide { file: PathBuf },
    Search { file: PathBuf },
    Verify { file: PathBuf, cert: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    Ssp,
    Sspp,
    Tssp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Dp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Hop {
    SspToSspp,
    SsppToTssp,
    SspToTssp,
    TsspToConj,
    SspToConj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Series {
    Scaling,
    Blowup,
    All,
}

/// Exit status of a successful command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Answer {
    Yes,
    No,
}

impl Answer {
    fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    fn code(self) -> i32 {
        match self {
            Answer::Yes => 0,
            Answer::No => 1,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                2
            } else {
                let _ = write!(stdout, "{rendered}");
                0
            };
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(answer) => answer.code(),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn read_file(path: &Path) -> Result<InstanceFile> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidParameter(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("reading {}: {e}", path.display())))?
    };
    parse_instance(&text).map_err(|e| match e {
        Error::Parse { location, message } => {
            Error::Parse { location, message: format!("{}: {message}", path.display()) }
        }
        other => other,
    })
}

fn wrong_kind(path: &Path, expected: &str, found: &InstanceFile) -> Error {
    Error::InvalidParameter(format!(
        "{} holds a {} file, expected {expected}",
        path.display(),
        found.kind()
    ))
}

macro_rules! load {
    ($path:expr, $variant:ident, $tag:literal) => {{
        let path: &Path = $path;
        match read_file(path)? {
            InstanceFile::$variant(x) => x,
            other => return Err(wrong_kind(path, $tag, &other)),
        }
    }};
}

fn load_cert(path: &Path) -> Result<Certificate> {
    match read_file(path)? {
        InstanceFile::Cert { cert, .. } => Ok(cert),
        other => Err(wrong_kind(path, "cert", &other)),
    }
}

fn emit(out: &mut dyn Write, file: &InstanceFile) -> Result<()> {
    out.write_all(serialize_instance(file).as_bytes())
        .map_err(|e| Error::InvalidParameter(format!("writing output: {e}")))
}

fn say(out: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| Error::InvalidParameter(format!("writing output: {e}")))
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Answer> {
    match &cli.command {
        Command::Solve { problem, file, method, search } => solve(cli, *problem, file, *method, *search, out, err),
        Command::Reduce { hop, file } => {
            let target = match hop {
                Hop::SspToSspp => InstanceFile::SspPrime(ssp_to_sspprime(&load!(file, Ssp, "ssp"))),
                Hop::SsppToTssp => InstanceFile::Tssp(sspprime_to_tssp(&load!(file, SspPrime, "sspp"))),
                Hop::SspToTssp => InstanceFile::Tssp(ReductionChain::new(&load!(file, Ssp, "ssp")).tssp),
                Hop::TsspToConj => InstanceFile::Conj(tssp_to_conjugacy(&load!(file, Tssp, "tssp"))),
                Hop::SspToConj => InstanceFile::Conj(ReductionChain::new(&load!(file, Ssp, "ssp")).conjugacy),
            };
            emit(out, &target)?;
            Ok(Answer::Yes)
        }
        Command::Pullback { hop, source, witness } => {
            let pulled = pullback(*hop, source, witness)?;
            emit(out, &InstanceFile::Sol(pulled))?;
            Ok(Answer::Yes)
        }
        Command::Conj { action } => conj(cli, action, out),
        Command::Gen { kind, n, bound, seed, solvable } => {
            let spec = GenSpec::new(kind.parse::<Kind>()?, *n, *bound, *seed, *solvable)?;
            emit(out, &generate(&spec))?;
            Ok(Answer::Yes)
        }
        Command::Bench { series, quick, seed } => run_bench(cli, *series, *quick, *seed, out),
    }
}

fn ssp_dp(inst: &SspInstance, max_cells: u128) -> Result<Option<Assignment>> {
    let chain = ReductionChain::new(inst);
    match solve_tssp_dp_limited(&chain.tssp, max_cells)? {
        Some(y) => chain.pullback_tssp(&y).map(Some),
        None => Ok(None),
    }
}

fn solve(
    cli: &Cli,
    problem: Problem,
    file: &Path,
    method: Method,
    search: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Answer> {
    if search && problem != Problem::Ssp {
        return Err(Error::InvalidParameter("--search applies to ssp instances only".into()));
    }
    let witness = match problem {
        Problem::Ssp => {
            let inst = load!(file, Ssp, "ssp");
            let solver = |i: &SspInstance| match method {
                Method::Brute => solve_ssp_brute(i),
                Method::Dp => ssp_dp(i, cli.max_cells),
            };
            if search {
                if solver(&inst)?.is_none() {
                    None
                } else {
                    let outcome = ssp_search_via_decision(|i| solver(i).map(|x| x.is_some()), &inst)?;
                    let _ = writeln!(err, "oracle calls: {}", outcome.oracle_calls);
                    Some(Witness::from_assignment(&outcome.subset))
                }
            } else {
                solver(&inst)?.map(|x| Witness::from_assignment(&x))
            }
        }
        Problem::Sspp => {
            let inst: SspPrimeInstance = load!(file, SspPrime, "sspp");
            let sol = match method {
                Method::Brute => solve_sspprime_brute(&inst)?,
                Method::Dp => match solve_tssp_dp_limited(&sspprime_to_tssp(&inst), cli.max_cells)? {
                    Some(y) => Some(pullback_tssp_to_sspprime(&inst, &y)?),
                    None => None,
                },
            };
            sol.map(|s| Witness::from_sspprime(&s))
        }
        Problem::Tssp => {
            let inst: TsspInstance = load!(file, Tssp, "tssp");
            let x = match method {
                Method::Brute => solve_tssp_brute(&inst)?,
                Method::Dp => solve_tssp_dp_limited(&inst, cli.max_cells)?,
            };
            x.map(|x| Witness::from_assignment(&x))
        }
    };
    match witness {
        Some(w) => {
            emit(out, &InstanceFile::Sol(w))?;
            Ok(Answer::Yes)
        }
        None => Ok(Answer::No),
    }
}

fn load_sol(path: &Path) -> Result<Witness> {
    Ok(load!(path, Sol, "sol"))
}

fn pullback(hop: Hop, source: &Path, witness: &Path) -> Result<Witness> {
    match hop {
        Hop::SspToSspp => {
            let src = load!(source, Ssp, "ssp");
            let sol = load_sol(witness)?.to_sspprime()?;
            Ok(Witness::from_assignment(&pullback_sspprime_to_ssp(&src, &sol)?))
        }
        Hop::SsppToTssp => {
            let src = load!(source, SspPrime, "sspp");
            let y = load_sol(witness)?.to_assignment()?;
            Ok(Witness::from_sspprime(&pullback_tssp_to_sspprime(&src, &y)?))
        }
        Hop::SspToTssp => {
            let chain = ReductionChain::new(&load!(source, Ssp, "ssp"));
            let y = load_sol(witness)?.to_assignment()?;
            Ok(Witness::from_assignment(&chain.pullback_tssp(&y)?))
        }
        Hop::TsspToConj => {
            let src = load!(source, Tssp, "tssp");
            let cert = load_cert(witness)?;
            Ok(Witness::from_assignment(&pullback_conjugacy_to_tssp(&src, &cert.w)?))
        }
        Hop::SspToConj => {
            let chain = ReductionChain::new(&load!(source, Ssp, "ssp"));
            let cert = load_cert(witness)?;
            Ok(Witness::from_assignment(&chain.pullback_conjugator(&cert.w)?))
        }
    }
}

fn conj(cli: &Cli, action: &ConjAction, out: &mut dyn Write) -> Result<Answer> {
    let solver = ConjugacySolver::with_max_states(cli.max_states);
    match action {
        ConjAction::Decide { file } => {
            let ConjugacyInstance { ctx, u, v } = load!(file, Conj, "conj");
            let answer = Answer::from_bool(solver.decide(&ctx, &u, &v)?);
            say(out, if answer == Answer::Yes { "yes" } else { "no" })?;
            Ok(answer)
        }
        ConjAction::Search { file } => {
            let ConjugacyInstance { ctx, u, v } = load!(file, Conj, "conj");
            match solver.search(&ctx, &u, &v)? {
                Some(cert) => {
                    emit(out, &InstanceFile::Cert { ctx, cert })?;
                    Ok(Answer::Yes)
                }
                None => Ok(Answer::No),
            }
        }
        ConjAction::Verify { file, cert } => {
            let ConjugacyInstance { ctx, u, v } = load!(file, Conj, "conj");
            let cert = load_cert(cert)?;
            let answer = Answer::from_bool(verify_certificate(&ctx, &u, &v, &cert)?);
            say(out, if answer == Answer::Yes { "valid" } else { "invalid" })?;
            Ok(answer)
        }
    }
}

/// Tolerance factor of the quadratic envelope in the scaling series.
pub const ENVELOPE_TOLERANCE: f64 = 4.0;
/// Timings are clamped to at least this much before taking ratios.
pub const TIMER_FLOOR: Duration = Duration::from_micros(20);

fn run_bench(cli: &Cli, series: Series, quick: bool, seed: u64, out: &mut dyn Write) -> Result<Answer> {
    let reps = if quick { 3 } else { 7 };
    let mut ok = true;
    let mut text = String::new();
    if matches!(series, Series::Scaling | Series::All) {
        let sizes: &[u64] = if quick { &[1_000, 10_000, 100_000] } else { &[1_000, 10_000, 100_000, 1_000_000] };
        let rows = bench::scaling_series(10, sizes, seed, reps, cli.max_cells)?;
        text.push_str("# DP time against S at n = 10\n");
        text.push_str(&bench::format_scaling(&rows));
        for (w, (ratio, limit, pass)) in rows.windows(2).zip(bench::quadratic_envelope(&rows, ENVELOPE_TOLERANCE, TIMER_FLOOR)) {
            ok &= pass;
            text.push_str(&format!(
                "S {} -> {}: time ratio {ratio:.2}, envelope {limit:.0} [{}]\n",
                w[0].s,
                w[1].s,
                if pass { "ok" } else { "exceeded" }
            ));
        }
        text.push('\n');
    }
    if matches!(series, Series::Blowup | Series::All) {
        let bits: &[u32] = if quick { &[2, 4, 8] } else { &[2, 4, 8, 16] };
        let rows = bench::blowup_series(16, bits, seed, reps, cli.max_cells)?;
        text.push_str("# DP states against coefficient bit length at n = 16\n");
        text.push_str(&bench::format_blowup(&rows));
        for (b1, b2, factor, pass) in bench::states_double(&rows) {
            ok &= pass;
            text.push_str(&format!(
                "bits {b1} -> {b2}: states x{factor:.2} [{}]\n",
                if pass { "ok" } else { "below 2x" }
            ));
        }
    }
    say(out, text.trim_end())?;
    Ok(Answer::from_bool(ok))
}
