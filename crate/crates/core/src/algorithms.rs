//! The ten optimal recursive solvers and tools to run and check them.
//!
//! Every procedure is a function `f(n, s, d, i)` that moves the `n` smallest
//! disks from `s` to `d` using `i`; the disk it moves directly is
//! `j = N + 1 − n` for an `N`-disk tower. Moves are streamed through a
//! callback so that very long sequences never need to be stored. Legality is
//! checked by a separate replay through [`TowerState`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::counts::{self, BigCount, CountFamily, CountsError};
use crate::model::{
    CountVector, ModelError, Move, Post, PostColor, PreColoring, TowerState, MAX_DISKS,
};

/// Largest tower for which whole move lists are materialised.
pub const MAX_MATERIALIZED_DISKS: u32 = 15;

/// Largest tower for which [`execute_and_verify`] keeps the full trace.
pub const MAX_TRACE_DISKS: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AlgorithmId {
    Srbb1000,
    Srrb1000,
    Srbn909,
    Snrb909,
    Srnb727,
    Sbnr727,
    Srnn636,
    Snnb636,
    Up606,
    Down606,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 10] = [
        AlgorithmId::Srbb1000,
        AlgorithmId::Srrb1000,
        AlgorithmId::Srbn909,
        AlgorithmId::Snrb909,
        AlgorithmId::Srnb727,
        AlgorithmId::Sbnr727,
        AlgorithmId::Srnn636,
        AlgorithmId::Snnb636,
        AlgorithmId::Up606,
        AlgorithmId::Down606,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Srbb1000 => "SRBB1000",
            AlgorithmId::Srrb1000 => "SRRB1000",
            AlgorithmId::Srbn909 => "SRBN909",
            AlgorithmId::Snrb909 => "SNRB909",
            AlgorithmId::Srnb727 => "SRNB727",
            AlgorithmId::Sbnr727 => "SBNR727",
            AlgorithmId::Srnn636 => "SRNN636",
            AlgorithmId::Snnb636 => "SNNB636",
            AlgorithmId::Up606 => "UP606",
            AlgorithmId::Down606 => "DOWN606",
        }
    }

    /// The start configuration the procedure solves.
    pub fn pre_coloring(self) -> PreColoring {
        use PostColor::*;
        match self {
            AlgorithmId::Srbb1000 => PreColoring::new(Red, Blue, Blue),
            AlgorithmId::Srrb1000 => PreColoring::new(Red, Red, Blue),
            AlgorithmId::Srbn909 => PreColoring::new(Red, Blue, Neutral),
            AlgorithmId::Snrb909 => PreColoring::new(Neutral, Red, Blue),
            AlgorithmId::Srnb727 | AlgorithmId::Sbnr727 => PreColoring::new(Red, Neutral, Blue),
            AlgorithmId::Srnn636 => PreColoring::new(Red, Neutral, Neutral),
            AlgorithmId::Snnb636 => PreColoring::new(Neutral, Neutral, Blue),
            AlgorithmId::Up606 | AlgorithmId::Down606 => {
                PreColoring::new(Neutral, Neutral, Neutral)
            }
        }
    }

    pub fn family(self) -> CountFamily {
        match self {
            AlgorithmId::Srbb1000 | AlgorithmId::Srrb1000 => CountFamily::F1000,
            AlgorithmId::Srbn909 | AlgorithmId::Snrb909 => CountFamily::F909,
            AlgorithmId::Srnb727 | AlgorithmId::Sbnr727 => CountFamily::F727,
            AlgorithmId::Srnn636 | AlgorithmId::Snnb636 => CountFamily::F636,
            AlgorithmId::Up606 | AlgorithmId::Down606 => CountFamily::F606,
        }
    }

    /// The time-reversal partner.
    pub fn brother(self) -> AlgorithmId {
        match self {
            AlgorithmId::Srbb1000 => AlgorithmId::Srrb1000,
            AlgorithmId::Srrb1000 => AlgorithmId::Srbb1000,
            AlgorithmId::Srbn909 => AlgorithmId::Snrb909,
            AlgorithmId::Snrb909 => AlgorithmId::Srbn909,
            AlgorithmId::Srnb727 => AlgorithmId::Sbnr727,
            AlgorithmId::Sbnr727 => AlgorithmId::Srnb727,
            AlgorithmId::Srnn636 => AlgorithmId::Snnb636,
            AlgorithmId::Snnb636 => AlgorithmId::Srnn636,
            AlgorithmId::Up606 => AlgorithmId::Down606,
            AlgorithmId::Down606 => AlgorithmId::Up606,
        }
    }

    /// A procedure that solves `pc` optimally. Configurations that merely
    /// relax a coloured post reuse the stricter procedure, whose moves stay
    /// legal under the relaxed rules.
    pub fn for_pre_coloring(pc: PreColoring) -> Option<AlgorithmId> {
        Some(match pc.to_string().as_str() {
            "RBB" | "NBB" => AlgorithmId::Srbb1000,
            "RRB" | "RRN" => AlgorithmId::Srrb1000,
            "RBN" | "NBN" => AlgorithmId::Srbn909,
            "NRB" | "NRN" => AlgorithmId::Snrb909,
            "RNB" => AlgorithmId::Srnb727,
            "RNN" => AlgorithmId::Srnn636,
            "NNB" => AlgorithmId::Snnb636,
            "NNN" => AlgorithmId::Up606,
            _ => return None,
        })
    }

    fn task(self) -> Task {
        match self {
            AlgorithmId::Srbb1000 => Task::Srbb,
            AlgorithmId::Srrb1000 => Task::Srrb,
            AlgorithmId::Srbn909 => Task::Srbn,
            AlgorithmId::Snrb909 => Task::Snrb,
            AlgorithmId::Srnb727 => Task::Srnb,
            AlgorithmId::Sbnr727 => Task::Sbnr,
            AlgorithmId::Srnn636 => Task::Srnn,
            AlgorithmId::Snnb636 => Task::Snnb,
            AlgorithmId::Up606 => Task::Up,
            AlgorithmId::Down606 => Task::Down,
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = AlgorithmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim();
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| AlgorithmError::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgorithmError {
    #[error("move {step} ({mv}) is illegal: {source}")]
    IllegalStep {
        step: u64,
        mv: Move,
        #[source]
        source: ModelError,
    },
    #[error("sequence of {moves} moves ends without solving the puzzle")]
    NotSolved { moves: u64 },
    #[error("{what}: expected {expected}, measured {actual}")]
    CountMismatch {
        what: String,
        expected: BigCount,
        actual: BigCount,
    },
    #[error("{n} disks exceeds the limit of {limit} for {what}")]
    TooLarge {
        n: u32,
        limit: u32,
        what: &'static str,
    },
    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),
    #[error("at least one route policy is required")]
    EmptyPolicies,
    #[error("cannot parse route policy {0:?}; expected u or d followed by 0/1 bits")]
    BadPolicy(String),
    #[error("cannot parse move line {0:?}")]
    BadMoveLine(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Counts(#[from] CountsError),
}

/// A move list together with the puzzle it claims to solve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveSequence {
    pub n_disks: u32,
    pub config: PreColoring,
    pub moves: Vec<Move>,
}

impl MoveSequence {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replays every move from the start position and returns the final
    /// state, naming the first illegal step if there is one.
    pub fn replay(&self) -> Result<TowerState, AlgorithmError> {
        let mut state = TowerState::new(self.n_disks, self.config)?;
        for (idx, &mv) in self.moves.iter().enumerate() {
            state
                .apply_in_place(mv)
                .map_err(|source| illegal(idx as u64 + 1, mv, source))?;
        }
        Ok(state)
    }

    /// Disk counts per post, starting with the initial position.
    pub fn trace(&self) -> Result<Vec<CountVector>, AlgorithmError> {
        let mut state = TowerState::new(self.n_disks, self.config)?;
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(state.count_vector());
        for (idx, &mv) in self.moves.iter().enumerate() {
            state
                .apply_in_place(mv)
                .map_err(|source| illegal(idx as u64 + 1, mv, source))?;
            out.push(state.count_vector());
        }
        Ok(out)
    }

    /// Replays and requires the goal at the end.
    pub fn verify_solves(&self) -> Result<(), AlgorithmError> {
        if self.replay()?.is_goal() {
            Ok(())
        } else {
            Err(AlgorithmError::NotSolved {
                moves: self.moves.len() as u64,
            })
        }
    }
}

fn illegal(step: u64, mv: Move, source: ModelError) -> AlgorithmError {
    AlgorithmError::IllegalStep { step, mv, source }
}

/// Renders moves as `<ordinal> <disk>:<FROM><TO>` lines.
pub fn format_moves(moves: &[Move]) -> String {
    let mut out = String::with_capacity(moves.len() * 8);
    for (idx, mv) in moves.iter().enumerate() {
        out.push_str(&format!("{} {}\n", idx + 1, mv));
    }
    out
}

/// Parses the output of [`format_moves`]. Ordinals must run 1, 2, 3, ...
pub fn parse_moves(text: &str) -> Result<Vec<Move>, AlgorithmError> {
    let mut moves = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let bad = || AlgorithmError::BadMoveLine(line.to_string());
        let (ordinal, body) = line.trim().split_once(' ').ok_or_else(bad)?;
        if ordinal.parse::<usize>().map_err(|_| bad())? != moves.len() + 1 {
            return Err(bad());
        }
        let (disk, posts) = body.split_once(':').ok_or_else(bad)?;
        let disk: u32 = disk.parse().map_err(|_| bad())?;
        let mut chars = posts.chars();
        let (from, to) = match (chars.next(), chars.next(), chars.next()) {
            (Some(a), Some(b), None) => (
                Post::from_letter(a).ok_or_else(bad)?,
                Post::from_letter(b).ok_or_else(bad)?,
            ),
            _ => return Err(bad()),
        };
        moves.push(Move::new(disk, from, to));
    }
    Ok(moves)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Task {
    Srbb,
    Srrb,
    Srbn,
    Snrb,
    Srnb,
    Sbnr,
    Srnn,
    Snnb,
    Up,
    Down,
    /// Moves all but the largest of its disks for the upward free solver.
    HelperUp,
    HelperDown,
}

struct Generator<'a, F: FnMut(Move)> {
    n_total: u32,
    choices: &'a [bool],
    site: usize,
    emit: F,
}

impl<F: FnMut(Move)> Generator<'_, F> {
    fn mv(&mut self, disk: u32, from: Post, to: Post) {
        (self.emit)(Move::new(disk, from, to));
    }

    /// A call to one of the two 727 procedures. Calls with at least two
    /// disks are the interchangeable sites counted by route policies.
    fn run_727(&mut self, task: Task, n: u32, s: Post, d: Post, i: Post) {
        let mut task = task;
        if n >= 2 {
            let flip = self.choices.get(self.site).copied().unwrap_or(false);
            self.site += 1;
            if flip {
                task = if task == Task::Srnb {
                    Task::Sbnr
                } else {
                    Task::Srnb
                };
            }
        }
        self.run(task, n, s, d, i);
    }

    fn run(&mut self, task: Task, n: u32, s: Post, d: Post, i: Post) {
        use Task::*;
        if n == 0 {
            return;
        }
        let j = self.n_total + 1 - n;
        match task {
            Srbb => {
                self.run(Srbb, n - 1, s, i, d);
                self.mv(j, s, d);
                self.run(Srrb, n - 1, i, s, d);
                self.run(Srbb, n - 1, s, d, i);
            }
            Srrb => {
                self.run(Srrb, n - 1, s, d, i);
                self.run(Srbb, n - 1, d, i, s);
                self.mv(j, s, d);
                self.run(Srrb, n - 1, i, d, s);
            }
            Srbn => {
                self.run_727(Srnb, n - 1, s, i, d);
                self.mv(j, s, d);
                self.run(Srrb, n - 1, i, s, d);
                self.run(Srbb, n - 1, s, d, i);
            }
            Snrb => {
                self.run(Srrb, n - 1, s, d, i);
                self.run(Srbb, n - 1, d, i, s);
                self.mv(j, s, d);
                self.run_727(Sbnr, n - 1, i, d, s);
            }
            Srnb | Srnn if n == 1 => self.mv(j, s, d),
            Srnb | Srnn => {
                if task == Srnb {
                    self.run(Srbn, n - 1, s, i, d);
                } else {
                    self.run(Srnn, n - 1, s, i, d);
                }
                self.mv(j, s, d);
                self.run(Srrb, n - 2, i, s, d);
                self.run(Srbb, n - 2, s, d, i);
                self.mv(j + 1, i, s);
                self.run(Srbn, n - 2, d, i, s);
                self.mv(j + 1, s, d);
                self.run(Snrb, n - 2, i, d, s);
            }
            Sbnr | Snnb if n == 1 => self.mv(j, s, d),
            Sbnr | Snnb => {
                self.run(Srbn, n - 2, s, i, d);
                self.mv(j + 1, s, d);
                self.run(Snrb, n - 2, i, s, d);
                self.mv(j + 1, d, i);
                self.run(Srrb, n - 2, s, d, i);
                self.run(Srbb, n - 2, d, i, s);
                self.mv(j, s, d);
                if task == Sbnr {
                    self.run(Snrb, n - 1, i, d, s);
                } else {
                    self.run(Snnb, n - 1, i, d, s);
                }
            }
            Up => {
                self.run(Srnn, n - 1, s, i, d);
                self.mv(j, s, d);
                self.run(HelperUp, n - 1, i, d, s);
            }
            HelperUp => {
                self.run(Srrb, n - 1, s, i, d);
                self.run(Srbb, n - 1, i, d, s);
                self.mv(j, s, i);
                self.run(Srbn, n - 1, d, s, i);
                self.mv(j, i, d);
                self.run(Snnb, n - 1, s, d, i);
            }
            Down => {
                self.run(HelperDown, n - 1, s, i, d);
                self.mv(j, s, d);
                self.run(Snnb, n - 1, i, d, s);
            }
            HelperDown => {
                self.run(Srnn, n - 1, s, d, i);
                self.mv(j, s, i);
                self.run(Snrb, n - 1, d, s, i);
                self.mv(j, i, d);
                self.run(Srrb, n - 1, s, i, d);
                self.run(Srbb, n - 1, i, d, s);
            }
        }
    }
}

fn check_disks(n: u32) -> Result<(), AlgorithmError> {
    if n == 0 || n > MAX_DISKS {
        Err(ModelError::BadDiskCount(n).into())
    } else {
        Ok(())
    }
}

/// Streams the moves of `alg` on `n` disks. `choices` selects the 727
/// variant at successive call sites (see [`RoutePolicy`]); pass `&[]` for
/// the plain procedure.
pub fn for_each_move<F: FnMut(Move)>(
    alg: AlgorithmId,
    n: u32,
    choices: &[bool],
    emit: F,
) -> Result<(), AlgorithmError> {
    check_disks(n)?;
    let mut g = Generator {
        n_total: n,
        choices,
        site: 0,
        emit,
    };
    g.run(
        alg.task(),
        n,
        Post::Source,
        Post::Destination,
        Post::Intermediate,
    );
    Ok(())
}

fn generate_with_choices(
    alg: AlgorithmId,
    n: u32,
    choices: &[bool],
) -> Result<MoveSequence, AlgorithmError> {
    check_disks(n)?;
    if n > MAX_MATERIALIZED_DISKS {
        return Err(AlgorithmError::TooLarge {
            n,
            limit: MAX_MATERIALIZED_DISKS,
            what: "materialised move lists",
        });
    }
    let mut moves = Vec::new();
    for_each_move(alg, n, choices, |m| moves.push(m))?;
    let seq = MoveSequence {
        n_disks: n,
        config: alg.pre_coloring(),
        moves,
    };
    seq.verify_solves()?;
    Ok(seq)
}

/// The full move list of `alg`, replayed and checked to solve its puzzle.
pub fn generate(alg: AlgorithmId, n: u32) -> Result<MoveSequence, AlgorithmError> {
    generate_with_choices(alg, n, &[])
}

/// Measured behaviour of one solver run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExecutionReport {
    pub algorithm: AlgorithmId,
    pub n_disks: u32,
    pub config: PreColoring,
    pub total_moves: u64,
    /// Moves made by each disk, keyed by disk index (1 is the largest).
    pub per_disk_moves: BTreeMap<u32, u64>,
    pub solved: bool,
    /// Present for towers of at most [`MAX_TRACE_DISKS`] disks.
    pub trace: Option<Vec<CountVector>>,
}

/// Streams `alg` through the rules engine without materialising the moves.
pub fn execute(alg: AlgorithmId, n: u32) -> Result<ExecutionReport, AlgorithmError> {
    execute_under(alg, n, alg.pre_coloring())
}

/// As [`execute`], with the posts coloured by `config` instead. Neutral posts
/// accept everything a coloured post does, so a solver also runs under any
/// pre-coloring that relaxes its own.
pub fn execute_under(
    alg: AlgorithmId,
    n: u32,
    config: PreColoring,
) -> Result<ExecutionReport, AlgorithmError> {
    check_disks(n)?;
    let mut state = TowerState::new(n, config)?;
    let mut per_disk = vec![0u64; n as usize + 1];
    let mut trace = (n <= MAX_TRACE_DISKS).then(|| vec![state.count_vector()]);
    let mut step = 0u64;
    let mut fault = None;
    for_each_move(alg, n, &[], |mv| {
        if fault.is_some() {
            return;
        }
        step += 1;
        match state.apply_in_place(mv) {
            Ok(()) => {
                per_disk[mv.disk as usize] += 1;
                if let Some(t) = trace.as_mut() {
                    t.push(state.count_vector());
                }
            }
            Err(source) => fault = Some(illegal(step, mv, source)),
        }
    })?;
    if let Some(err) = fault {
        return Err(err);
    }
    Ok(ExecutionReport {
        algorithm: alg,
        n_disks: n,
        config,
        total_moves: step,
        per_disk_moves: (1..=n).map(|k| (k, per_disk[k as usize])).collect(),
        solved: state.is_goal(),
        trace,
    })
}

/// Compares a report with the counts of its family.
pub fn check_report(report: &ExecutionReport) -> Result<(), AlgorithmError> {
    check_report_with(report, |kind, family, index| match kind {
        counts::SeqKind::Total => counts::s_recurrence(family, index),
        counts::SeqKind::PerDisk => counts::p_recurrence(family, index),
    })
}

/// As [`check_report`], with the expected counts supplied by the caller.
pub fn check_report_with<E>(report: &ExecutionReport, expected: E) -> Result<(), AlgorithmError>
where
    E: Fn(counts::SeqKind, CountFamily, u32) -> Result<BigCount, CountsError>,
{
    if !report.solved {
        return Err(AlgorithmError::NotSolved {
            moves: report.total_moves,
        });
    }
    let family = report.algorithm.family();
    let mismatch = |what: String, expected: BigCount, actual: u64| {
        let actual = BigUint::from(actual);
        if expected == actual {
            Ok(())
        } else {
            Err(AlgorithmError::CountMismatch {
                what,
                expected,
                actual,
            })
        }
    };
    mismatch(
        format!(
            "total moves of {} on {} disks",
            report.algorithm, report.n_disks
        ),
        expected(counts::SeqKind::Total, family, report.n_disks)?,
        report.total_moves,
    )?;
    for (&k, &moves) in &report.per_disk_moves {
        mismatch(
            format!("moves of disk {k} under {}", report.algorithm),
            expected(counts::SeqKind::PerDisk, family, k)?,
            moves,
        )?;
    }
    Ok(())
}

/// Runs `alg`, checks every move, the goal, and the counts of its family.
pub fn execute_and_verify(alg: AlgorithmId, n: u32) -> Result<ExecutionReport, AlgorithmError> {
    let report = execute(alg, n)?;
    check_report(&report)?;
    Ok(report)
}

/// Disk counts per post after each move of `alg`, starting position first.
pub fn trace(alg: AlgorithmId, n: u32) -> Result<Vec<CountVector>, AlgorithmError> {
    generate(alg, n)?.trace()
}

/// Plays a solution backwards with colours swapped and the source and
/// destination exchanged, giving a solution of the mirrored puzzle.
pub fn time_reverse(seq: &MoveSequence) -> Result<MoveSequence, AlgorithmError> {
    seq.verify_solves()?;
    let moves = seq
        .moves
        .iter()
        .rev()
        .map(|m| Move::new(m.disk, m.to.mirrored(), m.from.mirrored()))
        .collect();
    Ok(MoveSequence {
        n_disks: seq.n_disks,
        config: seq.config.mirrored(),
        moves,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Up,
    Down,
}

/// Picks one of the equally short free-puzzle solutions: the outer solver
/// (up or down) and, per 727 call site in depth-first order, whether to
/// swap in the other 727 procedure. Missing bits count as 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RoutePolicy {
    pub direction: Direction,
    pub variant_choices: Vec<bool>,
}

impl RoutePolicy {
    pub fn new(direction: Direction, variant_choices: Vec<bool>) -> Self {
        RoutePolicy {
            direction,
            variant_choices,
        }
    }

    pub fn algorithm(&self) -> AlgorithmId {
        match self.direction {
            Direction::Up => AlgorithmId::Up606,
            Direction::Down => AlgorithmId::Down606,
        }
    }

    /// The eight named routes of the seven-disk example, in column order
    /// U11, U21, U12, U22, D11, D21, D12, D22. The first digit of a name
    /// picks the procedure at the first call site (1 keeps it) and the
    /// second digit at the second site (2 keeps it).
    pub fn table16() -> Vec<(&'static str, RoutePolicy)> {
        const ROUTES: [(&str, Direction, [bool; 2]); 8] = [
            ("U11", Direction::Up, [false, true]),
            ("U21", Direction::Up, [true, true]),
            ("U12", Direction::Up, [false, false]),
            ("U22", Direction::Up, [true, false]),
            ("D11", Direction::Down, [false, true]),
            ("D21", Direction::Down, [true, true]),
            ("D12", Direction::Down, [false, false]),
            ("D22", Direction::Down, [true, false]),
        ];
        ROUTES
            .iter()
            .map(|&(name, dir, bits)| (name, RoutePolicy::new(dir, bits.to_vec())))
            .collect()
    }
}

impl fmt::Display for RoutePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.direction {
            Direction::Up => "u",
            Direction::Down => "d",
        })?;
        for &b in &self.variant_choices {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for RoutePolicy {
    type Err = AlgorithmError;

    /// `u`, `d01`, `U110`: a direction letter followed by choice bits.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgorithmError::BadPolicy(s.to_string());
        let t = s.trim();
        let mut chars = t.chars();
        let direction = match chars.next().map(|c| c.to_ascii_lowercase()) {
            Some('u') => Direction::Up,
            Some('d') => Direction::Down,
            _ => return Err(bad()),
        };
        let variant_choices = chars
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(bad()),
            })
            .collect::<Result<_, _>>()?;
        Ok(RoutePolicy::new(direction, variant_choices))
    }
}

/// One free-puzzle solution per policy, each replayed and checked.
pub fn enumerate_routes(
    n: u32,
    policies: &[RoutePolicy],
) -> Result<Vec<(RoutePolicy, MoveSequence)>, AlgorithmError> {
    if policies.is_empty() {
        return Err(AlgorithmError::EmptyPolicies);
    }
    policies
        .iter()
        .map(|p| {
            generate_with_choices(p.algorithm(), n, &p.variant_choices).map(|s| (p.clone(), s))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(s: &str) -> CountVector {
        s.parse().unwrap()
    }

    #[test]
    fn names_round_trip() {
        for a in AlgorithmId::ALL {
            assert_eq!(a.name().parse::<AlgorithmId>().unwrap(), a);
            assert_eq!(a.brother().brother(), a);
            assert_eq!(a.brother().family(), a.family());
            assert_eq!(a.brother().pre_coloring(), a.pre_coloring().mirrored());
        }
        assert_eq!("up606".parse::<AlgorithmId>().unwrap(), AlgorithmId::Up606);
        assert!("SRBB".parse::<AlgorithmId>().is_err());
    }

    #[test]
    fn small_lengths() {
        assert_eq!(generate(AlgorithmId::Srbb1000, 3).unwrap().len(), 13);
        assert_eq!(generate(AlgorithmId::Srnb727, 3).unwrap().len(), 11);
        assert_eq!(generate(AlgorithmId::Up606, 5).unwrap().len(), 83);
        assert_eq!(generate(AlgorithmId::Up606, 1).unwrap().len(), 1);
    }

    #[test]
    fn colored_trace() {
        let t = trace(AlgorithmId::Srbb1000, 3).unwrap();
        let want: Vec<_> = "300 201 111 210 120 021 111 012 102 201 111 012 102 003"
            .split(' ')
            .map(cv)
            .collect();
        assert_eq!(t, want);
    }

    #[test]
    fn execution_report_basics() {
        let r = execute_and_verify(AlgorithmId::Srrb1000, 1).unwrap();
        assert_eq!(r.total_moves, 1);
        assert_eq!(r.per_disk_moves, BTreeMap::from([(1, 1)]));
        let t = r.trace.unwrap();
        assert_eq!((t[0], t[1]), (cv("100"), cv("001")));
    }

    #[test]
    fn corrupted_expectation_is_reported() {
        let r = execute(AlgorithmId::Srnn636, 4).unwrap();
        let err = check_report_with(&r, |_, _, _| Ok(BigUint::from(7u32))).unwrap_err();
        assert!(matches!(err, AlgorithmError::CountMismatch { .. }), "{err}");
    }

    #[test]
    fn time_reverse_is_involution() {
        let seq = generate(AlgorithmId::Srbn909, 4).unwrap();
        let back = time_reverse(&time_reverse(&seq).unwrap()).unwrap();
        assert_eq!(back, seq);
    }

    #[test]
    fn time_reverse_rejects_non_solutions() {
        let mut seq = generate(AlgorithmId::Srbb1000, 2).unwrap();
        seq.moves.pop();
        assert!(matches!(
            time_reverse(&seq),
            Err(AlgorithmError::NotSolved { .. })
        ));
        seq.moves.swap(0, 1);
        assert!(matches!(
            time_reverse(&seq),
            Err(AlgorithmError::IllegalStep { step: 1, .. })
        ));
    }

    #[test]
    fn move_text_round_trip() {
        let seq = generate(AlgorithmId::Up606, 3).unwrap();
        let text = format_moves(&seq.moves);
        assert!(text.starts_with("1 "));
        assert_eq!(parse_moves(&text).unwrap(), seq.moves);
        assert!(parse_moves("2 1:SD\n").is_err());
        assert!(parse_moves("1 1:SX\n").is_err());
    }

    #[test]
    fn policy_text() {
        let p: RoutePolicy = "d01".parse().unwrap();
        assert_eq!(p, RoutePolicy::new(Direction::Down, vec![false, true]));
        assert_eq!(p.to_string(), "d01");
        assert!("x1".parse::<RoutePolicy>().is_err());
        assert!("u2".parse::<RoutePolicy>().is_err());
        assert_eq!(RoutePolicy::table16().len(), 8);
    }

    #[test]
    fn routes_need_policies() {
        assert_eq!(
            enumerate_routes(3, &[]).unwrap_err(),
            AlgorithmError::EmptyPolicies
        );
        let one = enumerate_routes(1, &["u".parse().unwrap(), "d11".parse().unwrap()]).unwrap();
        assert_eq!(one[0].1.moves, one[1].1.moves);
    }

    #[test]
    fn relaxed_configurations_reuse_stricter_solvers() {
        for pc in PreColoring::all().filter(PreColoring::is_solvable) {
            let alg = AlgorithmId::for_pre_coloring(pc).unwrap();
            let mut seq = generate(alg, 4).unwrap();
            seq.config = pc;
            seq.verify_solves().unwrap();
        }
    }

    #[test]
    fn oversize_generation_is_refused() {
        assert!(matches!(
            generate(AlgorithmId::Srbb1000, MAX_MATERIALIZED_DISKS + 1),
            Err(AlgorithmError::TooLarge { .. })
        ));
        assert!(generate(AlgorithmId::Srbb1000, 0).is_err());
    }

    #[test]
    fn relaxed_configurations_run_their_stricter_solver() {
        for config in ["NBB", "RRN", "NBN", "NRN"] {
            let pc: PreColoring = config.parse().unwrap();
            let alg = AlgorithmId::for_pre_coloring(pc).unwrap();
            let r = execute_under(alg, 5, pc).unwrap();
            assert_eq!(r.config, pc);
            check_report(&r).unwrap();
        }
    }
}
