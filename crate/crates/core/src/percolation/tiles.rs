//! Final configurations: square unitary tiles and the condensed permutation.

use serde::{Deserialize, Serialize};

use super::{matrix_of, percolate, Cell, Grid, Policy};
use crate::perm::{reduce, Permutation, Word};

/// A square block of 1s given by its top-left cell and side length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub row: usize,
    pub col: usize,
    pub size: usize,
}

impl Tile {
    pub fn top_left(&self) -> Cell {
        Cell::new(self.row, self.col)
    }

    pub fn rows(&self) -> std::ops::RangeInclusive<usize> {
        self.row..=self.row + self.size - 1
    }

    pub fn cols(&self) -> std::ops::RangeInclusive<usize> {
        self.col..=self.col + self.size - 1
    }
}

/// Tiles `T_1 .. T_m` ordered left to right and the `m x m` condensed
/// permutation obtained by collapsing each tile to one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinalConfiguration {
    pub tiles: Vec<Tile>,
    pub condensed: Permutation,
}

impl FinalConfiguration {
    pub fn sizes(&self) -> Vec<usize> {
        self.tiles.iter().map(|t| t.size).collect()
    }

    pub fn is_single_tile(&self) -> bool {
        self.tiles.len() == 1
    }

    /// Builds the configuration from tiles alone. `n` is the grid side.
    pub(crate) fn from_tiles(n: usize, tiles: Vec<Tile>) -> Self {
        // Lowest value covered by each tile: bottom row maps back to a value.
        let lows: Vec<u32> = tiles
            .iter()
            .map(|t| (n - (t.row + t.size - 1) + 1) as u32)
            .collect();
        let condensed = reduce(&Word::new(lows).expect("tiles are row-disjoint"));
        FinalConfiguration { tiles, condensed }
    }

    /// Paints the tiles into an `n x n` grid.
    pub fn to_grid(&self) -> Grid {
        let n = self.tiles.iter().map(|t| t.size).sum();
        let mut g = Grid::zeros(n).expect("tile sizes sum to the side");
        for t in &self.tiles {
            for r in t.rows() {
                for c in t.cols() {
                    g.set(Cell::new(r, c));
                }
            }
        }
        g
    }
}

/// Splits a percolated grid into tiles by scanning columns left to right; a
/// new tile begins wherever the column's run of 1s changes.
///
/// Returns `None` if the grid is not made of square unitary tiles, which
/// never happens for the final grid of a permutation matrix.
pub fn tiles_of_grid(g: &Grid) -> Option<Vec<Tile>> {
    let n = g.n();
    let mut tiles: Vec<Tile> = Vec::new();
    let mut prev_run = 0u64;
    let mut used_rows = 0u64;
    let mut width = 0;
    for j in 0..n {
        let run = g.column_bits(j);
        if run == 0 {
            return None;
        }
        if run != prev_run {
            if let Some(last) = tiles.last() {
                if last.size != width {
                    return None;
                }
            }
            let top = run.trailing_zeros() as usize;
            let height = run.count_ones() as usize;
            let shifted = run >> top;
            if shifted & shifted.wrapping_add(1) != 0 || used_rows & run != 0 {
                return None;
            }
            used_rows |= run;
            tiles.push(Tile {
                row: top + 1,
                col: j + 1,
                size: height,
            });
            prev_run = run;
            width = 0;
        }
        width += 1;
    }
    match tiles.last() {
        Some(last) if last.size == width => {}
        _ => return None,
    }
    let covered: usize = tiles.iter().map(|t| t.size * t.size).sum();
    (covered == g.count_ones()).then_some(tiles)
}

/// Percolates the matrix of `p` and reads off its tiles.
pub fn final_configuration(p: &Permutation) -> FinalConfiguration {
    let trace = percolate(&matrix_of(p), &Policy::FirstScan).expect("first-scan never fails");
    let tiles = tiles_of_grid(&trace.final_grid)
        .expect("final configurations consist of square unitary tiles");
    FinalConfiguration::from_tiles(p.len(), tiles)
}

/// True iff the matrix of `p` percolates to all ones.
pub fn is_full(p: &Permutation) -> bool {
    final_configuration(p).is_single_tile()
}
