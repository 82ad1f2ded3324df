//! Multi-room navigation domain.
//!
//! The agent moves in continuous coordinates; its observed state is the cell
//! obtained by truncating both coordinates. Every action is a unit move
//! followed by independent uniform noise on each axis. A move whose
//! discretized destination is a wall (or outside the map) leaves the agent
//! where it was. Entering a goal cell yields reward 1 and ends the episode.
//!
//! Map text uses one character per cell, rows top to bottom:
//!
//! ```text
//! #####
//! #..G#
//! #...#
//! #####
//! ```
//!
//! `x` grows to the right and `y` grows downward, so `Up` decreases `y`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::{Error, Result};

pub const DEFAULT_NOISE: f64 = 0.2;
pub const GOAL_REWARD: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CellKind {
    Wall,
    Free,
    Goal,
}

impl CellKind {
    fn from_char(c: char) -> Option<Self> {
        match c {
            '#' => Some(CellKind::Wall),
            '.' => Some(CellKind::Free),
            'G' => Some(CellKind::Goal),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            CellKind::Wall => '#',
            CellKind::Free => '.',
            CellKind::Goal => 'G',
        }
    }
}

/// The four compass moves, in table column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Action {
    Up = 0,
    Down = 1,
    Left = 2,
    Right = 3,
}

impl Action {
    pub const COUNT: usize = 4;
    pub const ALL: [Action; 4] = [Action::Up, Action::Down, Action::Left, Action::Right];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Panics if `i >= 4`.
    #[inline]
    pub fn from_index(i: usize) -> Action {
        Self::ALL[i]
    }

    #[inline]
    pub fn delta(self) -> (f64, f64) {
        match self {
            Action::Up => (0.0, -1.0),
            Action::Down => (0.0, 1.0),
            Action::Left => (-1.0, 0.0),
            Action::Right => (1.0, 0.0),
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Action {
        Self::ALL[rng.gen_range(0..Self::COUNT)]
    }

    pub fn name(self) -> &'static str {
        match self {
            Action::Up => "up",
            Action::Down => "down",
            Action::Left => "left",
            Action::Right => "right",
        }
    }

    pub fn short(self) -> char {
        match self {
            Action::Up => 'U',
            Action::Down => 'D',
            Action::Left => 'L',
            Action::Right => 'R',
        }
    }

    pub fn from_short(c: char) -> Option<Action> {
        match c {
            'U' => Some(Action::Up),
            'D' => Some(Action::Down),
            'L' => Some(Action::Left),
            'R' => Some(Action::Right),
            _ => None,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Continuous agent position. Both coordinates are non-negative inside a map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Integer part of each coordinate.
    #[inline]
    pub fn cell(self) -> (usize, usize) {
        (self.x as usize, self.y as usize)
    }
}

/// Flattened cell index, `y * width + x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StateId(pub usize);

impl StateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub next: Position,
    pub reward: f64,
    pub terminal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridMap {
    width: usize,
    height: usize,
    cells: Vec<CellKind>,
    free: Vec<StateId>,
    noise: f64,
}

impl GridMap {
    /// Parses map text and checks the layout invariants: walled border, at
    /// least one free cell, and exactly one 4-connected goal region.
    pub fn parse(text: &str) -> Result<GridMap> {
        let mut rows: Vec<&str> = text
            .split('\n')
            .map(|l| l.trim_end_matches(['\r', ' ', '\t']))
            .collect();
        while rows.last().is_some_and(|l| l.is_empty()) {
            rows.pop();
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: String::from("empty map"),
            });
        }

        let width = rows[0].chars().count();
        let height = rows.len();
        let mut cells = Vec::with_capacity(width * height);
        for (li, row) in rows.iter().enumerate() {
            let mut n = 0;
            for (ci, c) in row.chars().enumerate() {
                let kind = CellKind::from_char(c).ok_or_else(|| Error::Parse {
                    line: li + 1,
                    column: ci + 1,
                    message: format!("unexpected character {c:?}"),
                })?;
                cells.push(kind);
                n += 1;
            }
            if n != width {
                return Err(Error::Parse {
                    line: li + 1,
                    column: n.min(width) + 1,
                    message: format!("row has {n} cells, expected {width}"),
                });
            }
        }

        Self::from_cells(width, height, cells)
    }

    pub fn from_cells(width: usize, height: usize, cells: Vec<CellKind>) -> Result<GridMap> {
        if width < 3 || height < 3 {
            return Err(Error::Invariant(format!(
                "map must be at least 3x3, got {width}x{height}"
            )));
        }
        assert_eq!(cells.len(), width * height, "cell count mismatch");
        let mut map = GridMap {
            width,
            height,
            cells,
            free: Vec::new(),
            noise: DEFAULT_NOISE,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&mut self) -> Result<()> {
        for y in 0..self.height {
            for x in 0..self.width {
                let border = x == 0 || y == 0 || x + 1 == self.width || y + 1 == self.height;
                if border && self.kind_at(x, y) != CellKind::Wall {
                    return Err(Error::Invariant(format!(
                        "border cell ({x}, {y}) is not a wall"
                    )));
                }
            }
        }

        self.free = (0..self.cells.len())
            .filter(|&i| self.cells[i] == CellKind::Free)
            .map(StateId)
            .collect();
        if self.free.is_empty() {
            return Err(Error::Invariant(String::from("map has no free cell")));
        }

        let goals: Vec<usize> = (0..self.cells.len())
            .filter(|&i| self.cells[i] == CellKind::Goal)
            .collect();
        if goals.is_empty() {
            return Err(Error::Invariant(String::from("map has no goal cell")));
        }
        if self.flood(goals[0], CellKind::Goal) != goals.len() {
            return Err(Error::Invariant(String::from(
                "goal cells do not form a single connected region",
            )));
        }
        Ok(())
    }

    /// Number of cells of `kind` 4-connected to `start`.
    fn flood(&self, start: usize, kind: CellKind) -> usize {
        let mut seen = vec![false; self.cells.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut count = 0;
        while let Some(i) = queue.pop_front() {
            count += 1;
            let (x, y) = (i % self.width, i / self.width);
            let mut visit = |nx: usize, ny: usize| {
                let j = ny * self.width + nx;
                if !seen[j] && self.cells[j] == kind {
                    seen[j] = true;
                    queue.push_back(j);
                }
            };
            if x > 0 {
                visit(x - 1, y);
            }
            if y > 0 {
                visit(x, y - 1);
            }
            if x + 1 < self.width {
                visit(x + 1, y);
            }
            if y + 1 < self.height {
                visit(x, y + 1);
            }
        }
        count
    }

    /// Same layout with the goal moved to `goal_cells`. Previous goal cells
    /// become free.
    pub fn with_goal(&self, goal_cells: &[(usize, usize)]) -> Result<GridMap> {
        if goal_cells.is_empty() {
            return Err(Error::Invariant(String::from("empty goal region")));
        }
        let mut cells: Vec<CellKind> = self
            .cells
            .iter()
            .map(|&k| if k == CellKind::Goal { CellKind::Free } else { k })
            .collect();
        for &(x, y) in goal_cells {
            if x >= self.width || y >= self.height {
                return Err(Error::Invariant(format!("goal ({x}, {y}) outside the map")));
            }
            let i = y * self.width + x;
            if cells[i] == CellKind::Wall {
                return Err(Error::Invariant(format!("goal ({x}, {y}) is a wall cell")));
            }
            cells[i] = CellKind::Goal;
        }
        let mut map = GridMap {
            width: self.width,
            height: self.height,
            cells,
            free: Vec::new(),
            noise: self.noise,
        };
        map.validate()?;
        Ok(map)
    }

    /// Sets the half-width of the uniform per-axis motion noise. Zero makes
    /// the dynamics deterministic.
    pub fn with_noise(mut self, noise: f64) -> GridMap {
        assert!((0.0..0.5).contains(&noise), "noise must be in [0, 0.5)");
        self.noise = noise;
        self
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn noise(&self) -> f64 {
        self.noise
    }

    #[inline]
    pub fn state_count(&self) -> usize {
        self.cells.len()
    }

    #[inline]
    pub fn state(&self, x: usize, y: usize) -> StateId {
        debug_assert!(x < self.width && y < self.height);
        StateId(y * self.width + x)
    }

    #[inline]
    pub fn coords(&self, s: StateId) -> (usize, usize) {
        (s.0 % self.width, s.0 / self.width)
    }

    #[inline]
    pub fn kind(&self, s: StateId) -> CellKind {
        self.cells[s.0]
    }

    #[inline]
    pub fn kind_at(&self, x: usize, y: usize) -> CellKind {
        self.cells[y * self.width + x]
    }

    /// Free cells, excluding goal cells. This is the support of the start
    /// distribution.
    pub fn free_cells(&self) -> &[StateId] {
        &self.free
    }

    /// Every cell that is not a wall, goals included.
    pub fn open_cells(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.cells.len())
            .filter(|&i| self.cells[i] != CellKind::Wall)
            .map(StateId)
    }

    pub fn goal_cells(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.cells.len())
            .filter(|&i| self.cells[i] == CellKind::Goal)
            .map(StateId)
    }

    #[inline]
    pub fn discretize(&self, p: Position) -> StateId {
        let (x, y) = p.cell();
        self.state(x, y)
    }

    #[inline]
    fn blocked(&self, p: Position) -> bool {
        if !(p.x >= 0.0 && p.y >= 0.0) {
            return true;
        }
        let (x, y) = p.cell();
        x >= self.width || y >= self.height || self.kind_at(x, y) == CellKind::Wall
    }

    /// Applies `action` from `p`. Noise is drawn from `rng` only when the
    /// map's noise amplitude is non-zero.
    pub fn step<R: Rng + ?Sized>(&self, p: Position, action: Action, rng: &mut R) -> Transition {
        let (nx, ny) = if self.noise > 0.0 {
            (
                rng.gen_range(-self.noise..self.noise),
                rng.gen_range(-self.noise..self.noise),
            )
        } else {
            (0.0, 0.0)
        };
        self.step_with_noise(p, action, nx, ny)
    }

    /// Deterministic core of [`GridMap::step`] with an explicit noise draw.
    pub fn step_with_noise(&self, p: Position, action: Action, nx: f64, ny: f64) -> Transition {
        let (dx, dy) = action.delta();
        let candidate = Position::new(p.x + dx + nx, p.y + dy + ny);
        let next = if self.blocked(candidate) { p } else { candidate };
        if self.kind(self.discretize(next)) == CellKind::Goal {
            Transition {
                next,
                reward: GOAL_REWARD,
                terminal: true,
            }
        } else {
            Transition {
                next,
                reward: 0.0,
                terminal: false,
            }
        }
    }

    /// Uniform free cell, uniform offset inside it.
    pub fn sample_initial<R: Rng + ?Sized>(&self, rng: &mut R) -> Position {
        let s = self.free[rng.gen_range(0..self.free.len())];
        let (x, y) = self.coords(s);
        let ox: f64 = rng.gen();
        let oy: f64 = rng.gen();
        Position::new(x as f64 + ox, y as f64 + oy)
    }

    /// Neighbouring cell reached by `action` under noise-free dynamics.
    pub fn deterministic_next(&self, s: StateId, action: Action) -> StateId {
        let (x, y) = self.coords(s);
        let (tx, ty) = match action {
            Action::Up => (x as isize, y as isize - 1),
            Action::Down => (x as isize, y as isize + 1),
            Action::Left => (x as isize - 1, y as isize),
            Action::Right => (x as isize + 1, y as isize),
        };
        if tx < 0 || ty < 0 || tx as usize >= self.width || ty as usize >= self.height {
            return s;
        }
        let t = self.state(tx as usize, ty as usize);
        if self.kind(t) == CellKind::Wall {
            s
        } else {
            t
        }
    }
}

impl fmt::Display for GridMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for y in 0..self.height {
            for x in 0..self.width {
                write!(f, "{}", self.kind_at(x, y).as_char())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
