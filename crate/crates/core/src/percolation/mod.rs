//! Bootstrap percolation on permutation matrices.
//!
//! A 0-cell becomes 1 once at least two of its four orthogonal neighbours
//! hold a 1, and 1s never revert. Cells are addressed `(row, col)`, 1-based,
//! with row 1 at the top. The value `p(j)` in column `j` sits at row
//! `n - p(j) + 1`, i.e. value 1 is on the bottom row.

mod layers;
mod tiles;

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::PercolationError;
use crate::perm::Permutation;

pub use layers::{mutation_layers, MutationLayers, StateSpace, LAYER_ORACLE_MAX_N};
pub use tiles::{final_configuration, is_full, tiles_of_grid, FinalConfiguration, Tile};

/// Largest side length a [`Grid`] can hold (one `u64` per row).
pub const MAX_SIDE: usize = 64;

/// A 1-based, top-origin cell address.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// An `n x n` 0/1 matrix stored as one bit row per matrix row. Bit `j - 1`
/// of `rows[i - 1]` is cell `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    n: usize,
    rows: Vec<u64>,
}

impl Grid {
    pub fn zeros(n: usize) -> Result<Self, PercolationError> {
        if n == 0 || n > MAX_SIDE {
            return Err(PercolationError::TooLarge { n, max: MAX_SIDE });
        }
        Ok(Grid {
            n,
            rows: vec![0; n],
        })
    }

    pub fn ones(n: usize) -> Result<Self, PercolationError> {
        let mut g = Grid::zeros(n)?;
        let full = g.full_mask();
        g.rows.iter_mut().for_each(|r| *r = full);
        Ok(g)
    }

    /// Builds a grid from `n` strings of `0`/`1` characters, top row first.
    pub fn from_rows<S: AsRef<str>>(lines: &[S]) -> Result<Self, PercolationError> {
        let n = lines.len();
        let mut g = Grid::zeros(n)?;
        for (i, line) in lines.iter().enumerate() {
            let line = line.as_ref();
            if line.len() != n {
                return Err(PercolationError::OutOfGrid {
                    row: i + 1,
                    col: line.len(),
                    n,
                });
            }
            for (j, ch) in line.bytes().enumerate() {
                if ch == b'1' {
                    g.rows[i] |= 1 << j;
                }
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Raw bit rows, top row first.
    pub fn bit_rows(&self) -> &[u64] {
        &self.rows
    }

    fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn check(&self, c: Cell) -> Result<(), PercolationError> {
        if c.row == 0 || c.col == 0 || c.row > self.n || c.col > self.n {
            return Err(PercolationError::OutOfGrid {
                row: c.row,
                col: c.col,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn get(&self, c: Cell) -> bool {
        self.rows[c.row - 1] >> (c.col - 1) & 1 == 1
    }

    fn set(&mut self, c: Cell) {
        self.rows[c.row - 1] |= 1 << (c.col - 1);
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_all_ones(&self) -> bool {
        let full = self.full_mask();
        self.rows.iter().all(|&r| r == full)
    }

    /// All 1-cells in row-major order.
    pub fn one_cells(&self) -> Vec<Cell> {
        self.cells_of(|i| self.rows[i])
    }

    fn cells_of(&self, mask: impl Fn(usize) -> u64) -> Vec<Cell> {
        let mut out = Vec::new();
        for i in 0..self.n {
            let mut bits = mask(i);
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                out.push(Cell::new(i + 1, j + 1));
                bits &= bits - 1;
            }
        }
        out
    }

    /// Bit mask of the mutable cells of row `i` (0-based).
    fn mutable_row(&self, i: usize) -> u64 {
        let full = self.full_mask();
        let here = self.rows[i];
        let north = if i > 0 { self.rows[i - 1] } else { 0 };
        let south = if i + 1 < self.n { self.rows[i + 1] } else { 0 };
        let west = (here << 1) & full;
        let east = here >> 1;
        let two = (north & south)
            | (north & west)
            | (north & east)
            | (south & west)
            | (south & east)
            | (west & east);
        two & !here & full
    }

    pub fn has_mutable_cell(&self) -> bool {
        (0..self.n).any(|i| self.mutable_row(i) != 0)
    }

    pub fn is_mutable(&self, c: Cell) -> bool {
        self.mutable_row(c.row - 1) >> (c.col - 1) & 1 == 1
    }

    fn first_mutable(&self) -> Option<Cell> {
        (0..self.n).find_map(|i| {
            let m = self.mutable_row(i);
            (m != 0).then(|| Cell::new(i + 1, m.trailing_zeros() as usize + 1))
        })
    }

    /// Column `j` (0-based) as a bit mask over rows.
    pub fn column_bits(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | ((r >> j) & 1) << i)
    }

    /// True when every non-empty row and column holds one contiguous run of
    /// 1s, and no row or column is empty.
    pub fn has_single_runs(&self) -> bool {
        fn one_run(x: u64) -> bool {
            if x == 0 {
                return false;
            }
            let shifted = x >> x.trailing_zeros();
            shifted & shifted.wrapping_add(1) == 0
        }
        self.rows.iter().all(|&r| one_run(r)) && (0..self.n).all(|j| one_run(self.column_bits(j)))
    }

    /// `n` lines of `0`/`1`, no trailing newline.
    pub fn render(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n + 1));
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            for j in 0..self.n {
                s.push(if r >> j & 1 == 1 { '1' } else { '0' });
            }
        }
        s
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The permutation matrix of `p`: column `j` holds its 1 at row `n - p(j) + 1`.
pub fn matrix_of(p: &Permutation) -> Grid {
    let n = p.len();
    assert!(n <= MAX_SIDE, "permutation longer than {MAX_SIDE}");
    let mut g = Grid::zeros(n).expect("side checked above");
    for (j, &v) in p.values().iter().enumerate() {
        g.set(Cell::new(n - v as usize + 1, j + 1));
    }
    g
}

/// 0-cells with at least two 1-neighbours (N, S, E, W), in row-major order.
pub fn mutable_cells(g: &Grid) -> Vec<Cell> {
    g.cells_of(|i| g.mutable_row(i))
}

/// One percolation step. Fails unless `c` is currently mutable.
pub fn mutate(g: &Grid, c: Cell) -> Result<Grid, PercolationError> {
    g.check(c)?;
    if !g.is_mutable(c) {
        return Err(PercolationError::NotMutable {
            row: c.row,
            col: c.col,
        });
    }
    let mut next = g.clone();
    next.set(c);
    Ok(next)
}

/// How the next mutable cell is picked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Rows top to bottom, columns left to right; take the first hit.
    FirstScan,
    /// Uniform choice among the mutable cells, from a seeded ChaCha8 stream.
    Random { seed: u64 },
    /// An explicit complete sequence; checked step by step.
    Scripted(Vec<Cell>),
}

/// A complete run from `initial` to a configuration with no mutable cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PercolationTrace {
    pub initial: Grid,
    pub steps: Vec<Cell>,
    pub final_grid: Grid,
}

impl PercolationTrace {
    /// Every intermediate grid, starting with `initial` and ending with the
    /// final grid.
    pub fn frames(&self) -> impl Iterator<Item = Grid> + '_ {
        let mut current = self.initial.clone();
        std::iter::once(current.clone()).chain(self.steps.iter().map(move |&c| {
            current.set(c);
            current.clone()
        }))
    }

    /// Frames of `n` lines each, separated by a blank line; frame 0 is the
    /// initial grid.
    pub fn render(&self) -> String {
        self.frames()
            .map(|g| g.render())
            .collect::<Vec<_>>()
            .join("\n\n")
    }
}

/// Runs percolation to completion under `policy`.
pub fn percolate(g: &Grid, policy: &Policy) -> Result<PercolationTrace, PercolationError> {
    let mut current = g.clone();
    let mut steps = Vec::new();
    match policy {
        Policy::FirstScan => {
            while let Some(c) = current.first_mutable() {
                current.set(c);
                steps.push(c);
            }
        }
        Policy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            loop {
                let candidates = mutable_cells(&current);
                let Some(&c) = candidates.choose(&mut rng) else {
                    break;
                };
                current.set(c);
                steps.push(c);
            }
        }
        Policy::Scripted(script) => {
            for &c in script {
                current = mutate(&current, c)?;
                steps.push(c);
            }
            let remaining = mutable_cells(&current).len();
            if remaining > 0 {
                return Err(PercolationError::Incomplete { remaining });
            }
        }
    }
    Ok(PercolationTrace {
        initial: g.clone(),
        steps,
        final_grid: current,
    })
}
