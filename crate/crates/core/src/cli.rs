//! Command-line front end.
//!
//! Exit codes: `0` the property holds or the object was found, `1` it fails
//! or is absent, `2` usage, input or capacity error. Output format never
//! changes the exit code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::catalog::{build_exception, ExceptionName};
use crate::conditions::{self, ConditionId};
use crate::digraph::BalancedBipartiteDigraph;
use crate::error::{Error, Result};
use crate::factors::{cycle_factor, hall_violation, MatchingDirection};
use crate::format;
use crate::ham::is_hamiltonian;
use crate::search::{
    explore_problem1, reverify_candidate, reverify_counterexample, verify, GeneratorProfile, Mode,
    RandomSpec, TheoremId, DEFAULT_PROBABILITIES, SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bbd", version, about = "Balanced bipartite digraph toolkit")]
pub struct Cli {
    /// Emit JSON reports instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Suppress text output and timing notes; rely on the exit code.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a degree condition on a BBD file.
    Check {
        file: PathBuf,
        /// b<k>, sharp, nonadjacent3a or dompairs3a.
        #[arg(long)]
        condition: ConditionId,
    },
    /// Search for a Hamiltonian cycle.
    Hamilton { file: PathBuf },
    /// Build a cycle factor, or report a Hall-condition violation.
    Factor { file: PathBuf },
    /// Print a catalog digraph (h1, h2, h2x, h3) in BBD format.
    Catalog {
        name: ExceptionName,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a theorem exhaustively or on random samples.
    Verify {
        /// main, sharp, adamus3a, prop1, lemma1 or lemma3.
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        a: usize,
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        #[arg(long)]
        random: bool,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Look for strong non-Hamiltonian digraphs satisfying B_k, 2 <= k <= a/2.
    Explore {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Debug, Args)]
pub struct Sampling {
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Defaults to a clock-derived seed, echoed in the report.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, env = "BBD_WORKERS")]
    workers: Option<usize>,
    #[arg(long, default_value = "mixed")]
    profile: GeneratorProfile,
    /// Comma-separated arc probabilities for the sweep generator.
    #[arg(long, value_delimiter = ',')]
    probabilities: Option<Vec<f64>>,
}

impl Sampling {
    fn spec(&self) -> RandomSpec {
        RandomSpec {
            samples: self.samples,
            seed: self.seed.unwrap_or_else(clock_seed),
            profile: self.profile,
            probabilities: self
                .probabilities
                .clone()
                .unwrap_or_else(|| DEFAULT_PROBABILITIES.to_vec()),
        }
    }

    fn workers(&self) -> usize {
        self.workers.unwrap_or_else(|| {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        })
    }
}

fn clock_seed() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_nanos() as u64)
}

/// What a command printed and how it exited.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new(code: i32) -> Self {
        Outcome {
            code,
            ..Default::default()
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let mut out = Outcome::new(code);
            if e.use_stderr() {
                out.stderr = text;
            } else {
                out.stdout = text;
            }
            out
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(out) => out,
        Err(e) => Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_digraph(path: &Path) -> Result<BalancedBipartiteDigraph> {
    let text = std::fs::read_to_string(path)?;
    format::parse(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA_VERSION, "command": command });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    v
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let mut out = match &cli.command {
        Command::Check { file, condition } => check(cli, file, *condition)?,
        Command::Hamilton { file } => hamilton(cli, file)?,
        Command::Factor { file } => factor(cli, file)?,
        Command::Catalog { name, out } => catalog(cli, *name, out.as_deref())?,
        Command::Verify {
            theorem,
            a,
            exhaustive,
            random,
            sampling,
        } => {
            if *exhaustive == *random {
                return Err(Error::InvalidInput(
                    "choose exactly one of --exhaustive and --random".into(),
                ));
            }
            run_verify(cli, *theorem, *a, *random, sampling)?
        }
        Command::Explore { a, k, sampling } => run_explore(cli, *a, *k, sampling)?,
    };
    if cli.quiet {
        out.stderr.clear();
        if !cli.json && !matches!(cli.command, Command::Catalog { out: None, .. }) {
            out.stdout.clear();
        }
    }
    Ok(out)
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn check(cli: &Cli, file: &Path, id: ConditionId) -> Result<Outcome> {
    let d = read_digraph(file)?;
    let report = conditions::check(&d, id)?;
    let mut out = Outcome::new(verdict(report.holds));
    out.stdout = if cli.json {
        to_json(&envelope("check", json!({ "report": report })))
    } else {
        match &report.witness {
            None => format!("condition {id}: holds\n"),
            Some(w) => format!(
                "condition {id}: fails\nwitness: {{{}, {}}} ({:?}) with degrees {} and {}\n",
                w.pair.u, w.pair.v, w.pair.kind, w.degrees.0, w.degrees.1
            ),
        }
    };
    Ok(out)
}

fn hamilton(cli: &Cli, file: &Path) -> Result<Outcome> {
    let d = read_digraph(file)?;
    let cycle = is_hamiltonian(&d)?;
    let mut out = Outcome::new(verdict(cycle.is_some()));
    out.stdout = if cli.json {
        to_json(&envelope(
            "hamilton",
            json!({ "hamiltonian": cycle.is_some(), "cycle": cycle }),
        ))
    } else {
        match &cycle {
            Some(c) => format!("hamiltonian cycle: {c}\n"),
            None => "no hamiltonian cycle\n".to_string(),
        }
    };
    Ok(out)
}

fn factor(cli: &Cli, file: &Path) -> Result<Outcome> {
    let d = read_digraph(file)?;
    let f = cycle_factor(&d);
    let violations: Vec<(MatchingDirection, Vec<String>)> = MatchingDirection::BOTH
        .iter()
        .filter_map(|&dir| {
            hall_violation(&d, dir).map(|s| (dir, s.iter().map(|v| v.to_string()).collect()))
        })
        .collect();
    let mut out = Outcome::new(verdict(f.is_some()));
    out.stdout = if cli.json {
        let hall: serde_json::Map<String, Value> = violations
            .iter()
            .map(|(dir, s)| (format!("{dir:?}"), json!(s)))
            .collect();
        to_json(&envelope(
            "factor",
            json!({ "cycle_factor": f, "hall_violations": hall }),
        ))
    } else {
        match &f {
            Some(f) => format!("cycle factor: {f}\n"),
            None => {
                let mut s = "no cycle factor\n".to_string();
                for (dir, set) in &violations {
                    writeln!(s, "hall violation {dir:?}: {{{}}}", set.join(", ")).unwrap();
                }
                s
            }
        }
    };
    Ok(out)
}

fn catalog(cli: &Cli, name: ExceptionName, path: Option<&Path>) -> Result<Outcome> {
    let text = format::render(&build_exception(name));
    let mut out = Outcome::new(EXIT_OK);
    if let Some(path) = path {
        std::fs::write(path, &text)?;
        if cli.json {
            out.stdout = to_json(&envelope(
                "catalog",
                json!({ "name": name, "out": path.display().to_string() }),
            ));
        } else {
            out.stdout = format!("wrote {name} to {}\n", path.display());
        }
    } else if cli.json {
        out.stdout = to_json(&envelope("catalog", json!({ "name": name, "bbd": text })));
    } else {
        out.stdout = text;
    }
    Ok(out)
}

fn run_verify(cli: &Cli, theorem: TheoremId, a: usize, random: bool, s: &Sampling) -> Result<Outcome> {
    let mode = if random {
        Mode::Random(s.spec())
    } else {
        Mode::Exhaustive
    };
    let report = verify(theorem, a, &mode, s.workers())?;
    let mut out = Outcome::new(verdict(report.passed()));
    out.stderr = format!("elapsed: {:.3}s\n", report.elapsed.as_secs_f64());
    if cli.json {
        out.stdout = to_json(&report);
        return Ok(out);
    }
    let mut t = String::new();
    match &report.mode {
        Mode::Exhaustive => writeln!(t, "verify {theorem} a={a} exhaustive").unwrap(),
        Mode::Random(spec) => writeln!(
            t,
            "verify {theorem} a={a} random samples={} seed={} profile={:?}",
            spec.samples, spec.seed, spec.profile
        )
        .unwrap(),
    }
    writeln!(
        t,
        "generated {}  strong {}  premise {}  checked {}",
        report.generated, report.strong_count, report.premise_count, report.checked
    )
    .unwrap();
    for (name, count) in &report.exception_matches {
        writeln!(t, "matched {name}: {count}").unwrap();
    }
    writeln!(t, "counterexamples: {}", report.counterexamples.len()).unwrap();
    for (i, ce) in report.counterexamples.iter().enumerate() {
        let again = reverify_counterexample(theorem, ce)?;
        writeln!(t, "--- counterexample {} (re-verified: {again})", i + 1).unwrap();
        t.push_str(ce);
    }
    out.stdout = t;
    Ok(out)
}

fn run_explore(cli: &Cli, a: usize, k: usize, s: &Sampling) -> Result<Outcome> {
    let spec = s.spec();
    let report = explore_problem1(a, k, &spec, s.workers())?;
    // Exploration makes no claim either way, so it exits 0 once it completes.
    let mut out = Outcome::new(EXIT_OK);
    out.stderr = format!("elapsed: {:.3}s\n", report.elapsed.as_secs_f64());
    if cli.json {
        out.stdout = to_json(&report);
        return Ok(out);
    }
    let mut t = String::new();
    writeln!(
        t,
        "explore a={a} k={k} samples={} seed={} profile={:?}",
        report.samples, report.seed, report.profile
    )
    .unwrap();
    writeln!(
        t,
        "generated {}  strong {}  B_{k} {}  candidates {}",
        report.generated,
        report.strong_count,
        report.premise_count,
        report.found.len()
    )
    .unwrap();
    for (i, cand) in report.found.iter().enumerate() {
        let d = format::parse(cand)?;
        writeln!(t, "=== CANDIDATE {} (non-hamiltonian, satisfies B_{k})", i + 1).unwrap();
        writeln!(t, "re-verification from serialized form:").unwrap();
        writeln!(t, "  strong: {}", d.is_strong()).unwrap();
        writeln!(t, "  B_{k}: {}", conditions::satisfies_bk(&d, k)?.holds).unwrap();
        writeln!(t, "  hamiltonian cycle: {}", match is_hamiltonian(&d)? {
            Some(c) => c.to_string(),
            None => "none".into(),
        })
        .unwrap();
        writeln!(t, "  re-verified: {}", reverify_candidate(k, cand)?).unwrap();
        t.push_str(cand);
    }
    out.stdout = t;
    Ok(out)
}
