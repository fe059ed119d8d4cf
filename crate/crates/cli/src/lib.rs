//! The `mtoh` command line: run solvers, print move counts and tables,
//! and cross-check solvers, count formulas and exhaustive search.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use mtoh::algorithms::{self, AlgorithmError, ExecutionReport};
use mtoh::counts::{self, BigCount, CountFamily, CountsError, Equivalence, SeqKind};
use mtoh::model::{CountVector, Move};
use mtoh::oracle::{self, OracleError, MAX_BFS_DISKS, MAX_FORWARD_DISKS};
use mtoh::sequence_io::{self, SequenceIoError, TableId, TableSpec};
use mtoh::{AlgorithmId, PreColoring, RoutePolicy};
use serde_json::{json, Value};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Solutions kept by the forward-solution experiment of `verify --determinism`.
pub const FORWARD_CAP: u64 = 1_000;

/// Expected move counts by kind, family and index.
pub type Expected<'a> = &'a dyn Fn(SeqKind, CountFamily, u32) -> Result<BigCount, CountsError>;

#[derive(Debug, Parser)]
#[command(
    name = "mtoh",
    version,
    about = "Magnetic Tower of Hanoi solvers, move counts and optimality checks"
)]
pub struct CliConfig {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, value_name = "PATH", global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Moves,
    Trace,
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Exact recurrences of the optimal families.
    Recurrence,
    /// Certified closed forms of the optimal families.
    Closed,
    /// Closed formulas of the non-optimal families.
    Formula,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a solver and print its report, move list or disk-count trace.
    Solve {
        /// Solver name, e.g. SRNB727 or up606.
        #[arg(long)]
        alg: AlgorithmId,
        #[arg(long)]
        disks: u32,
        #[arg(long, value_enum, default_value_t = Emit::Report)]
        emit: Emit,
    },
    /// Print one term of a move-count sequence.
    Count {
        /// Family code such as 606, RNN67 or toh.
        #[arg(long)]
        family: CountFamily,
        /// `s` for total moves, `p` for moves of one disk.
        #[arg(long)]
        kind: SeqKind,
        #[arg(long, value_enum, default_value_t = Mode::Recurrence)]
        mode: Mode,
        #[arg(long)]
        index: u32,
    },
    /// Solve a pre-colored puzzle and check the result against the counts.
    Verify {
        #[arg(long)]
        disks: u32,
        /// Post colours of S, I and D over R, B and N, e.g. RBN.
        #[arg(long)]
        config: PreColoring,
        /// Also compare with an exhaustive shortest-path search.
        #[arg(long)]
        oracle: bool,
        /// Also enumerate the solutions that never revisit a position.
        #[arg(long)]
        determinism: bool,
    },
    /// Print a count table as CSV.
    Table {
        /// 2 or 3 for the non-optimal families, 4 or 5 for the optimal ones.
        #[arg(long)]
        id: TableId,
        #[arg(long, default_value_t = 20)]
        max: u32,
    },
    /// Print a sequence in b-file form.
    Bfile {
        #[arg(long)]
        family: CountFamily,
        #[arg(long)]
        kind: SeqKind,
        #[arg(long)]
        max: u32,
        #[arg(long, default_value_t = 1)]
        offset: u32,
    },
    /// Print the normalized durations of the optimal families.
    Duration {
        #[arg(long)]
        max_n: u32,
    },
    /// Compare free-puzzle routes chosen by route policies.
    Routes {
        #[arg(long)]
        disks: u32,
        /// `table16` or a comma list of policies such as u,d01,u11.
        #[arg(long, default_value = "table16")]
        policies: PolicySet,
    },
}

/// The policies named by `routes --policies`.
#[derive(Debug, Clone)]
pub enum PolicySet {
    Table16,
    List(Vec<RoutePolicy>),
}

impl PolicySet {
    fn named(&self) -> Vec<(String, RoutePolicy)> {
        match self {
            PolicySet::Table16 => RoutePolicy::table16()
                .into_iter()
                .map(|(name, p)| (name.to_string(), p))
                .collect(),
            PolicySet::List(list) => list.iter().map(|p| (p.to_string(), p.clone())).collect(),
        }
    }
}

impl FromStr for PolicySet {
    type Err = AlgorithmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("table16") {
            return Ok(PolicySet::Table16);
        }
        let list: Vec<RoutePolicy> = s.split(',').map(str::parse).collect::<Result<_, _>>()?;
        Ok(PolicySet::List(list))
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Algorithm(#[from] AlgorithmError),
    #[error(transparent)]
    Counts(#[from] CountsError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Table(#[from] SequenceIoError),
    #[error("{flag}: {message}")]
    Input { flag: &'static str, message: String },
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

/// Rendered output plus any verification failures found while producing it.
struct Output {
    body: String,
    failures: Vec<String>,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            failures: Vec::new(),
        }
    }
}

/// Expected counts from the exact recurrences.
pub fn recurrence_counts(
    kind: SeqKind,
    family: CountFamily,
    index: u32,
) -> Result<BigCount, CountsError> {
    match kind {
        SeqKind::Total => counts::total_moves(family, index),
        SeqKind::PerDisk => counts::disk_moves(family, index),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, out, err, &recurrence_counts)
}

/// As [`run`], checking solvers and search results against `expected`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, expected: Expected) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match CliConfig::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.exit_code() == 0 {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            } else {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            };
        }
    };
    let result = dispatch(&cli, expected).and_then(|output| {
        match &cli.out {
            Some(path) => fs::write(path, &output.body)?,
            None => out.write_all(output.body.as_bytes())?,
        }
        Ok(output.failures)
    });
    match result {
        Ok(failures) if failures.is_empty() => EXIT_OK,
        Ok(failures) => {
            for f in failures {
                let _ = writeln!(err, "verification failed: {f}");
            }
            EXIT_FAILED
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &CliConfig, expected: Expected) -> Result<Output, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Solve { alg, disks, emit } => match emit {
            Emit::Report => solve_report(*alg, *disks, format, expected),
            Emit::Moves => solve_moves(*alg, *disks, format),
            Emit::Trace => solve_trace(*alg, *disks, format),
        },
        Command::Count {
            family,
            kind,
            mode,
            index,
        } => count(*family, *kind, *mode, *index, format),
        Command::Verify {
            disks,
            config,
            oracle,
            determinism,
        } => verify(*disks, *config, *oracle, *determinism, format, expected),
        Command::Table { id, max } => {
            let csv = sequence_io::emit_table(TableSpec {
                table_id: *id,
                max_index: *max,
            })?;
            Ok(Output::ok(csv_output(csv, format)))
        }
        Command::Bfile {
            family,
            kind,
            max,
            offset,
        } => bfile(*family, *kind, *max, *offset, format),
        Command::Duration { max_n } => {
            let csv = sequence_io::emit_duration_curve(*max_n)?;
            Ok(Output::ok(csv_output(csv, format)))
        }
        Command::Routes { disks, policies } => routes(*disks, policies, format, expected),
    }
}

fn json_body(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn csv_output(csv: String, format: Format) -> String {
    if format != Format::Json {
        return csv;
    }
    let mut lines = csv.lines();
    let columns: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    json_body(&json!({ "columns": columns, "rows": rows }))
}

fn kind_code(kind: SeqKind) -> &'static str {
    match kind {
        SeqKind::Total => "s",
        SeqKind::PerDisk => "p",
    }
}

fn equivalence_name(e: Equivalence) -> &'static str {
    match e {
        Equivalence::Identical => "identical",
        Equivalence::ImpliedColor => "implied_color",
        Equivalence::Relaxed => "relaxed",
    }
}

fn move_text(m: &Move) -> String {
    format!("{}:{}{}", m.disk, m.from.letter(), m.to.letter())
}

/// Faults of the solver itself count as failed verification.
fn solver_fault(e: &AlgorithmError) -> bool {
    matches!(
        e,
        AlgorithmError::IllegalStep { .. }
            | AlgorithmError::NotSolved { .. }
            | AlgorithmError::CountMismatch { .. }
    )
}

fn key_values(pairs: &[(String, String)], format: Format) -> String {
    let mut s = String::new();
    if format == Format::Csv {
        s.push_str("field,value\n");
    }
    for (k, v) in pairs {
        match format {
            Format::Csv => writeln!(s, "{k},{v}"),
            _ => writeln!(s, "{k}: {v}"),
        }
        .expect("writing to a String");
    }
    s
}

fn solve_report(
    alg: AlgorithmId,
    n: u32,
    format: Format,
    expected: Expected,
) -> Result<Output, CliError> {
    let report = match algorithms::execute(alg, n) {
        Ok(r) => r,
        Err(e) if solver_fault(&e) => {
            return Ok(Output {
                body: String::new(),
                failures: vec![e.to_string()],
            })
        }
        Err(e) => return Err(e.into()),
    };
    let failures = match algorithms::check_report_with(&report, expected) {
        Ok(()) => Vec::new(),
        Err(e) if solver_fault(&e) => vec![e.to_string()],
        Err(e) => return Err(e.into()),
    };
    let verified = failures.is_empty();
    let body = render_report(&report, verified, format);
    Ok(Output { body, failures })
}

fn render_report(r: &ExecutionReport, verified: bool, format: Format) -> String {
    if format == Format::Json {
        let per_disk: serde_json::Map<String, Value> = r
            .per_disk_moves
            .iter()
            .map(|(k, m)| (k.to_string(), json!(m)))
            .collect();
        return json_body(&json!({
            "algorithm": r.algorithm.name(),
            "config": r.config.to_string(),
            "family": r.algorithm.family().code(),
            "n_disks": r.n_disks,
            "total_moves": r.total_moves,
            "per_disk_moves": per_disk,
            "solved": r.solved,
            "verified": verified,
        }));
    }
    let mut pairs = vec![
        ("algorithm".to_string(), r.algorithm.name().to_string()),
        ("config".to_string(), r.config.to_string()),
        (
            "family".to_string(),
            r.algorithm.family().code().to_string(),
        ),
        ("n_disks".to_string(), r.n_disks.to_string()),
        ("total_moves".to_string(), r.total_moves.to_string()),
    ];
    for (k, m) in &r.per_disk_moves {
        pairs.push((format!("disk_{k}_moves"), m.to_string()));
    }
    pairs.push(("solved".to_string(), r.solved.to_string()));
    pairs.push(("verified".to_string(), verified.to_string()));
    key_values(&pairs, format)
}

fn solve_moves(alg: AlgorithmId, n: u32, format: Format) -> Result<Output, CliError> {
    let seq = algorithms::generate(alg, n)?;
    let body = match format {
        Format::Text => algorithms::format_moves(&seq.moves),
        Format::Csv => {
            let mut s = String::from("step,disk,from,to\n");
            for (i, m) in seq.moves.iter().enumerate() {
                writeln!(
                    s,
                    "{},{},{},{}",
                    i + 1,
                    m.disk,
                    m.from.letter(),
                    m.to.letter()
                )
                .expect("writing to a String");
            }
            s
        }
        Format::Json => {
            let moves: Vec<String> = seq.moves.iter().map(move_text).collect();
            json_body(&json!({
                "algorithm": alg.name(),
                "config": seq.config.to_string(),
                "n_disks": n,
                "moves": moves,
            }))
        }
    };
    Ok(Output::ok(body))
}

fn solve_trace(alg: AlgorithmId, n: u32, format: Format) -> Result<Output, CliError> {
    let trace: Vec<CountVector> = algorithms::trace(alg, n)?;
    let body = match format {
        Format::Text => trace.iter().map(|c| format!("{c}\n")).collect(),
        Format::Csv => {
            let mut s = String::from("step,S,I,D\n");
            for (i, c) in trace.iter().enumerate() {
                writeln!(s, "{i},{},{},{}", c.source, c.intermediate, c.destination)
                    .expect("writing to a String");
            }
            s
        }
        Format::Json => {
            let rows: Vec<[u32; 3]> = trace
                .iter()
                .map(|c| [c.source, c.intermediate, c.destination])
                .collect();
            json_body(&json!({
                "algorithm": alg.name(),
                "config": alg.pre_coloring().to_string(),
                "n_disks": n,
                "trace": rows,
            }))
        }
    };
    Ok(Output::ok(body))
}

fn count(
    family: CountFamily,
    kind: SeqKind,
    mode: Mode,
    index: u32,
    format: Format,
) -> Result<Output, CliError> {
    let pick = |(s, p): (BigCount, BigCount)| match kind {
        SeqKind::Total => s,
        SeqKind::PerDisk => p,
    };
    let mut certificate = None;
    let value = match (mode, family) {
        (Mode::Recurrence, CountFamily::Toh) => pick(counts::toh_recurrence(index)?),
        (_, CountFamily::Toh) => pick(counts::toh_counts(index)?),
        (Mode::Recurrence, f) if f.is_optimal() => match kind {
            SeqKind::Total => counts::s_recurrence(f, index)?,
            SeqKind::PerDisk => counts::p_recurrence(f, index)?,
        },
        (Mode::Closed, f) if f.is_optimal() => {
            let eval = match kind {
                SeqKind::Total => counts::s_closed_eval(f, index)?,
                SeqKind::PerDisk => counts::p_closed_eval(f, index)?,
            };
            certificate = Some((eval.margin, eval.error_bound));
            eval.value
        }
        (Mode::Formula, f) if !f.is_optimal() => match kind {
            SeqKind::Total => counts::nonoptimal_s(f, index)?,
            SeqKind::PerDisk => counts::nonoptimal_p(f, index)?,
        },
        (mode, f) => {
            let hint = if f.is_optimal() {
                "recurrence or closed"
            } else {
                "formula"
            };
            return Err(CliError::Input {
                flag: "--mode",
                message: format!(
                    "{} is not available for family {}; use {hint}",
                    mode.to_possible_value()
                        .expect("no skipped variants")
                        .get_name(),
                    f.designation()
                ),
            });
        }
    };
    let mode_name = mode.to_possible_value().expect("no skipped variants");
    let body = match format {
        Format::Text => format!("{value}\n"),
        Format::Csv => format!(
            "family,kind,mode,index,value\n{},{},{},{index},{value}\n",
            family.code(),
            kind_code(kind),
            mode_name.get_name()
        ),
        Format::Json => {
            let mut v = json!({
                "family": family.code(),
                "kind": kind_code(kind),
                "mode": mode_name.get_name(),
                "index": index,
                "value": value.to_string(),
            });
            if let Some((margin, error_bound)) = certificate {
                v["margin"] = json!(margin);
                v["error_bound"] = json!(error_bound);
            }
            json_body(&v)
        }
    };
    Ok(Output::ok(body))
}

fn bfile(
    family: CountFamily,
    kind: SeqKind,
    max: u32,
    offset: u32,
    format: Format,
) -> Result<Output, CliError> {
    let text = sequence_io::emit_bfile(family, kind, max, offset)?;
    let pairs: Vec<(&str, &str)> = text.lines().filter_map(|l| l.split_once(' ')).collect();
    let body = match format {
        Format::Text => text,
        Format::Csv => {
            let mut s = String::from("n,value\n");
            for (n, v) in &pairs {
                writeln!(s, "{n},{v}").expect("writing to a String");
            }
            s
        }
        Format::Json => {
            let values: Vec<Value> = pairs
                .iter()
                .map(|(n, v)| json!({ "n": n.parse::<u32>().expect("b-file index"), "value": v }))
                .collect();
            json_body(&json!({
                "family": family.code(),
                "kind": kind_code(kind),
                "values": values,
            }))
        }
    };
    Ok(Output::ok(body))
}

/// One comparison made by `verify`.
struct Check {
    name: String,
    expected: String,
    actual: String,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

struct SearchSummary {
    shortest: usize,
    states_explored: u64,
}

struct ForwardSummary {
    solutions: u64,
    complete: bool,
    lengths: Vec<(usize, u64)>,
    shortest_routes: u64,
}

fn verify(
    n: u32,
    config: PreColoring,
    with_oracle: bool,
    with_determinism: bool,
    format: Format,
    expected: Expected,
) -> Result<Output, CliError> {
    if with_oracle && (n == 0 || n > MAX_BFS_DISKS) {
        return Err(CliError::Input {
            flag: "--disks",
            message: format!("--oracle searches towers of 1 to {MAX_BFS_DISKS} disks"),
        });
    }
    if with_determinism && (n == 0 || n > MAX_FORWARD_DISKS) {
        return Err(CliError::Input {
            flag: "--disks",
            message: format!("--determinism enumerates towers of 1 to {MAX_FORWARD_DISKS} disks"),
        });
    }
    let (family, transform) = counts::normalize_config(config)?;
    let alg =
        AlgorithmId::for_pre_coloring(config).expect("every solvable pre-coloring has a solver");
    let expected_total = expected(SeqKind::Total, family, n)?;
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    match algorithms::execute_under(alg, n, config) {
        Ok(report) => {
            checks.push(Check::new("solved", true, report.solved));
            checks.push(Check::new(
                "total_moves",
                &expected_total,
                report.total_moves,
            ));
            for (&k, &moves) in &report.per_disk_moves {
                let want = expected(SeqKind::PerDisk, family, k)?;
                checks.push(Check::new(format!("disk_{k}_moves"), want, moves));
            }
        }
        Err(e) if solver_fault(&e) => checks.push(Check::new("solver", "a legal solution", e)),
        Err(e) => return Err(e.into()),
    }

    match counts::s_closed_eval(family, n) {
        Ok(eval) => checks.push(Check::new("closed_form", &expected_total, eval.value)),
        Err(CountsError::PrecisionExceeded { .. }) => notes.push(format!(
            "closed form for {family} is not certified at {n} disks"
        )),
        Err(e) => return Err(e.into()),
    }

    let search = if with_oracle {
        let r = oracle::bfs_shortest(n, config)?;
        checks.push(Check::new(
            "oracle_shortest",
            &expected_total,
            r.shortest_length,
        ));
        Some(SearchSummary {
            shortest: r.shortest_length,
            states_explored: r.states_explored,
        })
    } else {
        None
    };

    let forward = if with_determinism {
        let all = oracle::enumerate_forward_solutions(n, config, FORWARD_CAP)?;
        let bound = u64::try_from(&expected_total).ok().map(|b| b as usize);
        let short = oracle::enumerate_forward_solutions_bounded(n, config, FORWARD_CAP, bound)?;
        let shortest = short
            .shortest()
            .map_or("none".to_string(), |s| s.to_string());
        checks.push(Check::new("forward_shortest", &expected_total, shortest));
        Some(ForwardSummary {
            solutions: all.solutions,
            complete: !all.cap_reached,
            lengths: all.lengths.into_iter().collect(),
            shortest_routes: short.solutions,
        })
    } else {
        None
    };

    let failures: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: expected {}, actual {}", c.name, c.expected, c.actual))
        .collect();
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };

    let body = match format {
        Format::Json => {
            let checks: Vec<Value> = checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "expected": c.expected,
                        "actual": c.actual,
                        "passed": c.passed(),
                    })
                })
                .collect();
            let search = search.as_ref().map(
                |s| json!({ "shortest_length": s.shortest, "states_explored": s.states_explored }),
            );
            let forward = forward.as_ref().map(|f| {
                let lengths: serde_json::Map<String, Value> = f
                    .lengths
                    .iter()
                    .map(|(len, count)| (len.to_string(), json!(count)))
                    .collect();
                json!({
                    "solutions": f.solutions,
                    "complete": f.complete,
                    "lengths": lengths,
                    "shortest_routes": f.shortest_routes,
                })
            });
            json_body(&json!({
                "config": config.to_string(),
                "family": family.code(),
                "canonical": transform.canonical.to_string(),
                "mirrored": transform.mirrored,
                "equivalence": equivalence_name(transform.equivalence),
                "algorithm": alg.name(),
                "n_disks": n,
                "checks": checks,
                "oracle": search,
                "determinism": forward,
                "notes": notes,
                "verdict": verdict.to_ascii_lowercase(),
            }))
        }
        Format::Csv => {
            let mut s = String::from("check,expected,actual,result\n");
            for c in &checks {
                let result = if c.passed() { "PASS" } else { "FAIL" };
                writeln!(s, "{},{},{},{result}", c.name, c.expected, c.actual)
                    .expect("writing to a String");
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let w = &mut s;
            writeln!(w, "config: {config}").unwrap();
            writeln!(w, "family: {}", family.designation()).unwrap();
            writeln!(
                w,
                "canonical: {} (mirrored: {}, {})",
                transform.canonical,
                transform.mirrored,
                equivalence_name(transform.equivalence)
            )
            .unwrap();
            writeln!(w, "algorithm: {}", alg.name()).unwrap();
            writeln!(w, "n_disks: {n}").unwrap();
            for c in &checks {
                let result = if c.passed() { "PASS" } else { "FAIL" };
                writeln!(
                    w,
                    "{result} {}: expected {}, actual {}",
                    c.name, c.expected, c.actual
                )
                .unwrap();
            }
            if let Some(r) = &search {
                writeln!(
                    w,
                    "oracle: shortest {}, states explored {}",
                    r.shortest, r.states_explored
                )
                .unwrap();
            }
            if let Some(f) = &forward {
                let lengths: Vec<String> =
                    f.lengths.iter().map(|(l, c)| format!("{l}:{c}")).collect();
                let extent = if f.complete { "complete" } else { "capped" };
                writeln!(
                    w,
                    "determinism: {} forward solutions ({extent}), lengths {}",
                    f.solutions,
                    lengths.join(" ")
                )
                .unwrap();
                writeln!(w, "determinism: {} shortest routes", f.shortest_routes).unwrap();
            }
            for note in &notes {
                writeln!(w, "note: {note}").unwrap();
            }
            writeln!(w, "verdict: {verdict}").unwrap();
            s
        }
    };
    Ok(Output { body, failures })
}

fn routes(
    n: u32,
    policies: &PolicySet,
    format: Format,
    expected: Expected,
) -> Result<Output, CliError> {
    let named = policies.named();
    let list: Vec<RoutePolicy> = named.iter().map(|(_, p)| p.clone()).collect();
    let found = algorithms::enumerate_routes(n, &list)?;
    let want = expected(SeqKind::Total, CountFamily::F606, n)?;
    let mut distinct: Vec<&[Move]> = found.iter().map(|(_, s)| s.moves.as_slice()).collect();
    distinct.sort_by_key(|m| algorithms::format_moves(m));
    distinct.dedup();
    let failures: Vec<String> = named
        .iter()
        .zip(&found)
        .filter(|(_, (_, s))| BigCount::from(s.len()) != want)
        .map(|((name, _), (_, s))| {
            format!("route {name}: expected {want} moves, actual {}", s.len())
        })
        .collect();
    let body = match format {
        Format::Json => {
            let rows: Vec<Value> = named
                .iter()
                .zip(&found)
                .map(|((name, p), (_, s))| {
                    json!({ "name": name, "policy": p.to_string(), "length": s.len() })
                })
                .collect();
            json_body(&json!({ "n_disks": n, "routes": rows, "distinct": distinct.len() }))
        }
        Format::Csv => {
            let mut s = String::from("name,policy,length\n");
            for ((name, p), (_, seq)) in named.iter().zip(&found) {
                writeln!(s, "{name},{p},{}", seq.len()).expect("writing to a String");
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for ((name, p), (_, seq)) in named.iter().zip(&found) {
                writeln!(s, "{name} {p} {} moves", seq.len()).expect("writing to a String");
            }
            writeln!(s, "distinct routes: {}", distinct.len()).expect("writing to a String");
            s
        }
    };
    Ok(Output { body, failures })
}
