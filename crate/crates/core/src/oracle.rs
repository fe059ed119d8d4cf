//! Brute-force checks on small towers.
//!
//! [`bfs_shortest`] searches the whole state graph for a shortest solution,
//! independent of the recursive solvers. [`enumerate_forward_solutions`]
//! counts solutions that never revisit a state.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::algorithms::{self, AlgorithmError, AlgorithmId, MoveSequence};
use crate::model::{ModelError, Move, PreColoring, StateKey, TowerState};

/// Largest tower accepted by [`bfs_shortest`].
pub const MAX_BFS_DISKS: u32 = 10;

/// Largest tower accepted by the forward-solution enumerator.
pub const MAX_FORWARD_DISKS: u32 = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{n} disks is outside the supported range 1..={max}")]
    TooManyDisks { n: u32, max: u32 },
    #[error("pre-coloring {0} has no solution")]
    Unsolvable(PreColoring),
    #[error("search exhausted {explored} states without reaching the goal")]
    GoalUnreachable { explored: u64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Algorithm(#[from] AlgorithmError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub shortest_length: usize,
    /// First shortest solution found under the fixed move ordering.
    pub witness: MoveSequence,
    pub states_explored: u64,
}

fn check_input(n: u32, max: u32, pc: PreColoring) -> Result<(), OracleError> {
    if n == 0 || n > max {
        return Err(OracleError::TooManyDisks { n, max });
    }
    if !pc.is_solvable() {
        return Err(OracleError::Unsolvable(pc));
    }
    Ok(())
}

/// Breadth-first search from the start position to the goal.
pub fn bfs_shortest(n: u32, pc: PreColoring) -> Result<SearchResult, OracleError> {
    check_input(n, MAX_BFS_DISKS, pc)?;
    const UNSEEN: u32 = u32::MAX;
    let space = TowerState::key_space(n) as usize;
    // parent key and the move that led here, per discovered state
    let mut parent = vec![UNSEEN; space];
    let mut via: Vec<Option<Move>> = vec![None; space];

    let start = TowerState::new(n, pc)?;
    let start_key = start.key()?.0 as usize;
    parent[start_key] = start_key as u32;
    let mut queue = VecDeque::from([start]);
    let mut explored = 0u64;

    while let Some(state) = queue.pop_front() {
        explored += 1;
        let key = state.key()?.0 as usize;
        if state.is_goal() {
            let mut moves = Vec::new();
            let mut at = key;
            while at != start_key {
                moves.push(via[at].expect("discovered states record their move"));
                at = parent[at] as usize;
            }
            moves.reverse();
            let witness = MoveSequence {
                n_disks: n,
                config: pc,
                moves,
            };
            return Ok(SearchResult {
                shortest_length: witness.len(),
                witness,
                states_explored: explored,
            });
        }
        for mv in state.legal_moves() {
            let next = state.apply_move(mv)?;
            let next_key = next.key()?.0 as usize;
            if parent[next_key] == UNSEEN {
                parent[next_key] = key as u32;
                via[next_key] = Some(mv);
                queue.push_back(next);
            }
        }
    }
    Err(OracleError::GoalUnreachable { explored })
}

/// Outcome of a forward-solution enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForwardReport {
    pub solutions: u64,
    /// Number of solutions of each length.
    pub lengths: BTreeMap<usize, u64>,
    /// True when the search stopped at `cap` solutions, so the count is a
    /// lower bound rather than exact.
    pub cap_reached: bool,
}

impl ForwardReport {
    pub fn shortest(&self) -> Option<usize> {
        self.lengths.keys().next().copied()
    }
}

/// Counts solutions that never repeat a state, stopping at `cap`.
pub fn enumerate_forward_solutions(
    n: u32,
    pc: PreColoring,
    cap: u64,
) -> Result<ForwardReport, OracleError> {
    enumerate_forward_solutions_bounded(n, pc, cap, None)
}

/// As [`enumerate_forward_solutions`], ignoring solutions longer than
/// `max_length` moves. For puzzles with neutral posts the unbounded count
/// is astronomically large, so a bound makes exact counts of the short
/// solutions practical.
pub fn enumerate_forward_solutions_bounded(
    n: u32,
    pc: PreColoring,
    cap: u64,
    max_length: Option<usize>,
) -> Result<ForwardReport, OracleError> {
    check_input(n, MAX_FORWARD_DISKS, pc)?;
    let mut search = ForwardSearch {
        on_path: vec![false; TowerState::key_space(n) as usize],
        depth: 0,
        cap,
        max_length: max_length.unwrap_or(usize::MAX),
        report: ForwardReport {
            solutions: 0,
            lengths: BTreeMap::new(),
            cap_reached: false,
        },
    };
    if cap == 0 {
        search.report.cap_reached = true;
        return Ok(search.report);
    }
    let start = TowerState::new(n, pc)?;
    search.visit(&start)?;
    Ok(search.report)
}

struct ForwardSearch {
    on_path: Vec<bool>,
    depth: usize,
    cap: u64,
    max_length: usize,
    report: ForwardReport,
}

impl ForwardSearch {
    fn visit(&mut self, state: &TowerState) -> Result<(), OracleError> {
        if state.is_goal() {
            self.report.solutions += 1;
            *self.report.lengths.entry(self.depth).or_default() += 1;
            if self.report.solutions >= self.cap {
                self.report.cap_reached = true;
            }
            return Ok(());
        }
        if self.depth >= self.max_length {
            return Ok(());
        }
        let StateKey(key) = state.key()?;
        self.on_path[key as usize] = true;
        for mv in state.legal_moves() {
            if self.report.cap_reached {
                break;
            }
            let next = state.apply_move(mv)?;
            if self.on_path[next.key()?.0 as usize] {
                continue;
            }
            self.depth += 1;
            self.visit(&next)?;
            self.depth -= 1;
        }
        self.on_path[key as usize] = false;
        Ok(())
    }
}

/// True when the procedure's move count equals the search minimum for its
/// own start configuration.
pub fn certify_algorithm(alg: AlgorithmId, n: u32) -> Result<bool, OracleError> {
    let best = bfs_shortest(n, alg.pre_coloring())?;
    let seq = algorithms::generate(alg, n)?;
    Ok(seq.len() == best.shortest_length)
}
