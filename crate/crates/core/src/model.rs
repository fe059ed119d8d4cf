//! Puzzle state, the two move rules and goal testing.
//!
//! Disks are numbered `1..=N` with disk 1 the largest. Every disk has a red and
//! a blue face and is flipped each time it is moved. A placement is legal when
//! the moved disk is smaller than the disk it lands on (size rule) and the two
//! touching faces differ in colour (magnetic rule). The second condition is the
//! same as requiring the moved disk's new up-face to match the up-face already
//! showing on the target post, so every nonempty post shows a single colour.
//! An empty pre-coloured post accepts only disks whose new up-face matches its
//! pre-colour; an empty neutral post accepts anything.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest stack the state model accepts.
pub const MAX_DISKS: u32 = 64;

/// Largest stack that fits the packed [`StateKey`] encoding.
pub const MAX_KEY_DISKS: u32 = 38;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FaceColor {
    Red,
    Blue,
}

impl FaceColor {
    pub fn opposite(self) -> Self {
        match self {
            FaceColor::Red => FaceColor::Blue,
            FaceColor::Blue => FaceColor::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            FaceColor::Red => 'R',
            FaceColor::Blue => 'B',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PostColor {
    Red,
    Blue,
    Neutral,
}

impl PostColor {
    pub fn letter(self) -> char {
        match self {
            PostColor::Red => 'R',
            PostColor::Blue => 'B',
            PostColor::Neutral => 'N',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'R' => Some(PostColor::Red),
            'B' => Some(PostColor::Blue),
            'N' => Some(PostColor::Neutral),
            _ => None,
        }
    }

    /// The face colour a disk must show to rest on this post, if any.
    pub fn face(self) -> Option<FaceColor> {
        match self {
            PostColor::Red => Some(FaceColor::Red),
            PostColor::Blue => Some(FaceColor::Blue),
            PostColor::Neutral => None,
        }
    }

    /// Red and blue exchanged, neutral unchanged.
    pub fn swapped(self) -> Self {
        match self {
            PostColor::Red => PostColor::Blue,
            PostColor::Blue => PostColor::Red,
            PostColor::Neutral => PostColor::Neutral,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Post {
    Source,
    Intermediate,
    Destination,
}

impl Post {
    pub const ALL: [Post; 3] = [Post::Source, Post::Intermediate, Post::Destination];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Post> {
        Post::ALL.get(i).copied()
    }

    pub fn letter(self) -> char {
        match self {
            Post::Source => 'S',
            Post::Intermediate => 'I',
            Post::Destination => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Post> {
        match c.to_ascii_uppercase() {
            'S' => Some(Post::Source),
            'I' => Some(Post::Intermediate),
            'D' => Some(Post::Destination),
            _ => None,
        }
    }

    /// Source and destination exchanged; used by time reversal.
    pub fn mirrored(self) -> Post {
        match self {
            Post::Source => Post::Destination,
            Post::Intermediate => Post::Intermediate,
            Post::Destination => Post::Source,
        }
    }
}

impl fmt::Display for Post {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Post colours in (S, I, D) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PreColoring {
    pub source: PostColor,
    pub intermediate: PostColor,
    pub destination: PostColor,
}

impl PreColoring {
    pub const fn new(source: PostColor, intermediate: PostColor, destination: PostColor) -> Self {
        PreColoring {
            source,
            intermediate,
            destination,
        }
    }

    pub fn get(&self, post: Post) -> PostColor {
        match post {
            Post::Source => self.source,
            Post::Intermediate => self.intermediate,
            Post::Destination => self.destination,
        }
    }

    /// A red-up stack can start on the source and a blue-up stack can finish
    /// on the destination.
    pub fn is_solvable(&self) -> bool {
        self.source != PostColor::Blue && self.destination != PostColor::Red
    }

    /// Colour swap combined with exchanging source and destination: the
    /// configuration solved by the time-reversed procedure.
    pub fn mirrored(&self) -> PreColoring {
        PreColoring::new(
            self.destination.swapped(),
            self.intermediate.swapped(),
            self.source.swapped(),
        )
    }

    pub fn all() -> impl Iterator<Item = PreColoring> {
        const C: [PostColor; 3] = [PostColor::Red, PostColor::Blue, PostColor::Neutral];
        C.into_iter().flat_map(|s| {
            C.into_iter()
                .flat_map(move |i| C.into_iter().map(move |d| PreColoring::new(s, i, d)))
        })
    }
}

impl fmt::Display for PreColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            self.source.letter(),
            self.intermediate.letter(),
            self.destination.letter()
        )
    }
}

impl std::str::FromStr for PreColoring {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let colors: Vec<PostColor> = s.chars().filter_map(PostColor::from_letter).collect();
        if colors.len() != 3 || s.chars().count() != 3 {
            return Err(ModelError::BadPreColoring(s.to_string()));
        }
        Ok(PreColoring::new(colors[0], colors[1], colors[2]))
    }
}

/// One disk transport. The flip is implied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Move {
    pub disk: u32,
    pub from: Post,
    pub to: Post,
}

impl Move {
    pub const fn new(disk: u32, from: Post, to: Post) -> Self {
        Move { disk, from, to }
    }

    pub fn reversed(self) -> Move {
        Move::new(self.disk, self.to, self.from)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}{}", self.disk, self.from, self.to)
    }
}

/// Number of disks on (S, I, D).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CountVector {
    pub source: u32,
    pub intermediate: u32,
    pub destination: u32,
}

impl CountVector {
    pub const fn new(source: u32, intermediate: u32, destination: u32) -> Self {
        CountVector {
            source,
            intermediate,
            destination,
        }
    }

    pub fn total(&self) -> u32 {
        self.source + self.intermediate + self.destination
    }

    /// The triple read right to left (S and D exchanged).
    pub fn reversed(&self) -> CountVector {
        CountVector::new(self.destination, self.intermediate, self.source)
    }
}

impl fmt::Display for CountVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.total() <= 9 {
            write!(
                f,
                "{}{}{}",
                self.source, self.intermediate, self.destination
            )
        } else {
            write!(
                f,
                "{} {} {}",
                self.source, self.intermediate, self.destination
            )
        }
    }
}

impl std::str::FromStr for CountVector {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::BadCountVector(s.to_string());
        let s = s.trim();
        let parts: Vec<u32> = if s.contains(' ') {
            s.split_whitespace()
                .map(|p| p.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        match parts[..] {
            [a, b, c] => Ok(CountVector::new(a, b, c)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RuleViolation {
    /// The named disk is not on top of the source post.
    NotTop,
    /// The target's top disk is smaller than the moved disk.
    Size,
    /// The flipped disk's new up-face does not match the target.
    Magnet,
    /// Source and target posts coincide.
    SamePost,
}

impl fmt::Display for RuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleViolation::NotTop => "not-top",
            RuleViolation::Size => "size",
            RuleViolation::Magnet => "magnet",
            RuleViolation::SamePost => "same-post",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("number of disks must be in 1..={max}, got {0}", max = MAX_DISKS)]
    BadDiskCount(u32),
    #[error(
        "illegal pre-coloring {0}: the source must not be blue and the destination must not be red"
    )]
    UnsolvablePreColoring(PreColoring),
    #[error("cannot parse pre-coloring {0:?}; expected three letters over R, B, N")]
    BadPreColoring(String),
    #[error("cannot parse count vector {0:?}")]
    BadCountVector(String),
    #[error("illegal move {mv}: {rule} rule violated")]
    IllegalMove { mv: Move, rule: RuleViolation },
    #[error("inconsistent tower state: {0}")]
    InvalidState(String),
    #[error("state key {0} is out of range for this tower")]
    BadKey(u64),
}

/// Packed state: base-3 post digit per disk followed by three colour bits,
/// one per post. Colour bits are set only for nonempty neutral posts showing
/// blue, so the key is canonical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey(pub u64);

/// Full puzzle configuration. Values are immutable from the outside; moves
/// produce new states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TowerState {
    n_disks: u32,
    pre_coloring: PreColoring,
    stacks: [Vec<u32>; 3],
    up: [Option<FaceColor>; 3],
}

impl TowerState {
    /// All disks red-up on the source.
    pub fn new(n: u32, pre_coloring: PreColoring) -> Result<Self, ModelError> {
        if n == 0 || n > MAX_DISKS {
            return Err(ModelError::BadDiskCount(n));
        }
        if !pre_coloring.is_solvable() {
            return Err(ModelError::UnsolvablePreColoring(pre_coloring));
        }
        Ok(TowerState {
            n_disks: n,
            pre_coloring,
            stacks: [(1..=n).collect(), Vec::new(), Vec::new()],
            up: [Some(FaceColor::Red), None, None],
        })
    }

    /// Builds an arbitrary state and checks every structural invariant.
    /// Stacks are listed bottom to top.
    pub fn from_parts(
        pre_coloring: PreColoring,
        stacks: [Vec<u32>; 3],
        up: [Option<FaceColor>; 3],
    ) -> Result<Self, ModelError> {
        let n = stacks.iter().map(Vec::len).sum::<usize>() as u32;
        if n == 0 || n > MAX_DISKS {
            return Err(ModelError::BadDiskCount(n));
        }
        let mut seen = vec![false; n as usize + 1];
        for (p, stack) in stacks.iter().enumerate() {
            for w in stack.windows(2) {
                if w[0] >= w[1] {
                    return Err(ModelError::InvalidState(format!(
                        "post {} is not in size order",
                        Post::ALL[p]
                    )));
                }
            }
            for &d in stack {
                if d == 0 || d > n || seen[d as usize] {
                    return Err(ModelError::InvalidState(format!("disk {d} misplaced")));
                }
                seen[d as usize] = true;
            }
            match (stack.is_empty(), up[p]) {
                (true, Some(_)) | (false, None) => {
                    return Err(ModelError::InvalidState(format!(
                        "post {} up colour does not match occupancy",
                        Post::ALL[p]
                    )))
                }
                (false, Some(c)) => {
                    if let Some(pc) = pre_coloring.get(Post::ALL[p]).face() {
                        if pc != c {
                            return Err(ModelError::InvalidState(format!(
                                "post {} shows {:?} against its pre-colour",
                                Post::ALL[p],
                                c
                            )));
                        }
                    }
                }
                (true, None) => {}
            }
        }
        Ok(TowerState {
            n_disks: n,
            pre_coloring,
            stacks,
            up,
        })
    }

    pub fn n_disks(&self) -> u32 {
        self.n_disks
    }

    pub fn pre_coloring(&self) -> PreColoring {
        self.pre_coloring
    }

    /// Disks on `post`, bottom to top.
    pub fn stack(&self, post: Post) -> &[u32] {
        &self.stacks[post.index()]
    }

    pub fn top(&self, post: Post) -> Option<u32> {
        self.stacks[post.index()].last().copied()
    }

    /// Up-face shared by the disks on `post`; `None` when empty.
    pub fn up_color(&self, post: Post) -> Option<FaceColor> {
        self.up[post.index()]
    }

    /// Colour a disk must show on arrival; `None` means unconstrained.
    pub fn effective_color(&self, post: Post) -> Option<FaceColor> {
        self.up[post.index()].or_else(|| self.pre_coloring.get(post).face())
    }

    pub fn check_move(&self, m: Move) -> Result<(), RuleViolation> {
        if m.from == m.to {
            return Err(RuleViolation::SamePost);
        }
        if self.top(m.from) != Some(m.disk) {
            return Err(RuleViolation::NotTop);
        }
        if let Some(t) = self.top(m.to) {
            if t > m.disk {
                return Err(RuleViolation::Size);
            }
        }
        let arriving = self.up[m.from.index()]
            .expect("nonempty post has an up colour")
            .opposite();
        match self.effective_color(m.to) {
            Some(c) if c != arriving => Err(RuleViolation::Magnet),
            _ => Ok(()),
        }
    }

    pub fn is_legal(&self, m: Move) -> bool {
        self.check_move(m).is_ok()
    }

    /// Every legal move, ordered by (disk, from, to).
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut tops: Vec<(u32, Post)> = Post::ALL
            .into_iter()
            .filter_map(|p| self.top(p).map(|d| (d, p)))
            .collect();
        tops.sort_unstable();
        let mut out = Vec::with_capacity(6);
        for (disk, from) in tops {
            for to in Post::ALL {
                let m = Move::new(disk, from, to);
                if self.is_legal(m) {
                    out.push(m);
                }
            }
        }
        out
    }

    pub fn apply_move(&self, m: Move) -> Result<TowerState, ModelError> {
        let mut next = self.clone();
        next.apply_in_place(m)?;
        Ok(next)
    }

    /// Mutating variant used by replay loops.
    pub(crate) fn apply_in_place(&mut self, m: Move) -> Result<(), ModelError> {
        self.check_move(m)
            .map_err(|rule| ModelError::IllegalMove { mv: m, rule })?;
        let (from, to) = (m.from.index(), m.to.index());
        let arriving = self.up[from].map(FaceColor::opposite);
        self.stacks[from].pop();
        if self.stacks[from].is_empty() {
            self.up[from] = None;
        }
        self.stacks[to].push(m.disk);
        self.up[to] = arriving;
        Ok(())
    }

    /// All disks on the destination showing blue.
    pub fn is_goal(&self) -> bool {
        self.stacks[Post::Destination.index()].len() == self.n_disks as usize
            && self.up[Post::Destination.index()] == Some(FaceColor::Blue)
    }

    pub fn count_vector(&self) -> CountVector {
        CountVector::new(
            self.stacks[0].len() as u32,
            self.stacks[1].len() as u32,
            self.stacks[2].len() as u32,
        )
    }

    /// Post holding `disk`.
    pub fn position(&self, disk: u32) -> Option<Post> {
        Post::ALL
            .into_iter()
            .find(|p| self.stacks[p.index()].contains(&disk))
    }

    pub fn key(&self) -> Result<StateKey, ModelError> {
        if self.n_disks > MAX_KEY_DISKS {
            return Err(ModelError::BadDiskCount(self.n_disks));
        }
        let mut assignment = 0u64;
        for disk in (1..=self.n_disks).rev() {
            let p = self.position(disk).expect("every disk is placed");
            assignment = assignment * 3 + p.index() as u64;
        }
        let mut bits = 0u64;
        for p in Post::ALL {
            if self.pre_coloring.get(p) == PostColor::Neutral
                && self.up[p.index()] == Some(FaceColor::Blue)
            {
                bits |= 1 << p.index();
            }
        }
        Ok(StateKey(assignment * 8 + bits))
    }

    /// Size of the key space for `n` disks (exclusive upper bound).
    pub fn key_space(n: u32) -> u64 {
        3u64.pow(n) * 8
    }

    pub fn from_key(n: u32, pre_coloring: PreColoring, key: StateKey) -> Result<Self, ModelError> {
        if n == 0 || n > MAX_KEY_DISKS {
            return Err(ModelError::BadDiskCount(n));
        }
        if key.0 >= Self::key_space(n) {
            return Err(ModelError::BadKey(key.0));
        }
        let bits = key.0 % 8;
        let mut assignment = key.0 / 8;
        let mut stacks: [Vec<u32>; 3] = Default::default();
        for disk in 1..=n {
            stacks[(assignment % 3) as usize].push(disk);
            assignment /= 3;
        }
        let mut up = [None; 3];
        for p in Post::ALL {
            if stacks[p.index()].is_empty() {
                if bits & (1 << p.index()) != 0 {
                    return Err(ModelError::BadKey(key.0));
                }
                continue;
            }
            up[p.index()] = Some(match pre_coloring.get(p).face() {
                Some(c) => {
                    if bits & (1 << p.index()) != 0 {
                        return Err(ModelError::BadKey(key.0));
                    }
                    c
                }
                None if bits & (1 << p.index()) != 0 => FaceColor::Blue,
                None => FaceColor::Red,
            });
        }
        TowerState::from_parts(pre_coloring, stacks, up)
    }
}

impl fmt::Display for TowerState {
    /// One line per post: `post=S pre=R up=R: 1,2,3`, bottom to top.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in Post::ALL.into_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let up = self.up[p.index()].map_or('-', FaceColor::letter);
            write!(
                f,
                "post={} pre={} up={}:",
                p,
                self.pre_coloring.get(p).letter(),
                up
            )?;
            let disks: Vec<String> = self.stacks[p.index()].iter().map(u32::to_string).collect();
            if !disks.is_empty() {
                write!(f, " {}", disks.join(","))?;
            }
        }
        Ok(())
    }
}
