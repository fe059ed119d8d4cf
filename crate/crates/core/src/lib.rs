//! Magnetic Tower of Hanoi.
//!
//! Disks carry a red face and a blue face and flip on every move. Posts may
//! be pre-coloured red, blue or neutral, and a disk may only land where its
//! new up-face agrees with the colour showing on the target post.
//!
//! * [`model`] holds the rules and the state machine.
//! * [`algorithms`] generates the optimal move sequences.
//! * [`counts`] evaluates exact move counts and durations.
//! * [`oracle`] checks optimality by exhaustive search on small towers.
//! * [`sequence_io`] renders tables, b-files and duration curves.

pub mod algorithms;
pub mod counts;
pub mod model;
pub mod oracle;
pub mod sequence_io;

pub use algorithms::{AlgorithmId, MoveSequence, RoutePolicy};
pub use counts::{BigCount, CountFamily};
pub use model::{FaceColor, Move, Post, PostColor, PreColoring, TowerState};
