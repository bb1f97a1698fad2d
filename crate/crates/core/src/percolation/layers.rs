//! Exact state-space search over every mutation order.
//!
//! Exponential in the number of cells, so gated to small grids. It serves as
//! the oracle for mutation layers and for order-independence checks.

use std::collections::{HashMap, VecDeque};

use super::{mutable_cells, Cell, Grid};
use crate::error::PercolationError;

/// Largest side accepted by [`StateSpace::explore`] and [`mutation_layers`].
pub const LAYER_ORACLE_MAX_N: usize = 5;

/// Every grid reachable from an initial grid by percolation steps.
#[derive(Clone, Debug)]
pub struct StateSpace {
    initial: Grid,
    /// Reachable grid -> number of steps taken to reach it. Each step adds
    /// exactly one 1, so all paths to a grid have the same length.
    depth: HashMap<Grid, usize>,
}

impl StateSpace {
    pub fn explore(g: &Grid) -> Result<Self, PercolationError> {
        if g.n() > LAYER_ORACLE_MAX_N {
            return Err(PercolationError::TooLarge {
                n: g.n(),
                max: LAYER_ORACLE_MAX_N,
            });
        }
        let mut depth = HashMap::new();
        depth.insert(g.clone(), 0);
        let mut queue = VecDeque::from([g.clone()]);
        while let Some(state) = queue.pop_front() {
            let d = depth[&state];
            for c in mutable_cells(&state) {
                let mut next = state.clone();
                next.set(c);
                if !depth.contains_key(&next) {
                    depth.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
        Ok(StateSpace {
            initial: g.clone(),
            depth,
        })
    }

    pub fn initial(&self) -> &Grid {
        &self.initial
    }

    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth.is_empty()
    }

    pub fn states(&self) -> impl Iterator<Item = (&Grid, usize)> {
        self.depth.iter().map(|(g, &d)| (g, d))
    }

    /// Reachable grids with no mutable cell. Order-independence means
    /// there is exactly one.
    pub fn terminals(&self) -> Vec<&Grid> {
        self.depth
            .keys()
            .filter(|g| !g.has_mutable_cell())
            .collect()
    }

    /// Number of distinct complete mutation sequences from the initial grid.
    pub fn complete_orders(&self) -> u128 {
        let mut by_depth: Vec<&Grid> = self.depth.keys().collect();
        by_depth.sort_by_key(|g| std::cmp::Reverse(self.depth[*g]));
        let mut paths: HashMap<&Grid, u128> = HashMap::with_capacity(by_depth.len());
        for g in by_depth {
            let cells = mutable_cells(g);
            let count = if cells.is_empty() {
                1
            } else {
                cells
                    .iter()
                    .map(|&c| {
                        let mut next = g.clone();
                        next.set(c);
                        paths[&next]
                    })
                    .sum()
            };
            paths.insert(g, count);
        }
        paths[&self.initial]
    }
}

/// `L(c)` for every cell plus the layers `U_0 ..= U_{n^2 - n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationLayers {
    n: usize,
    levels: Vec<usize>,
    layers: Vec<Vec<Cell>>,
}

impl MutationLayers {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Minimum number of steps needed before `c` holds a 1; `n^2` when no
    /// mutation order ever reaches it.
    pub fn level(&self, c: Cell) -> usize {
        self.levels[(c.row - 1) * self.n + c.col - 1]
    }

    /// Cells of `U_i`, row-major. Empty beyond `n^2 - n`.
    pub fn layer(&self, i: usize) -> &[Cell] {
        self.layers.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn layers(&self) -> &[Vec<Cell>] {
        &self.layers
    }

    /// Union of all layers as a grid.
    pub fn closure(&self) -> Grid {
        let mut g = Grid::zeros(self.n).expect("n validated on construction");
        self.layers.iter().flatten().for_each(|&c| g.set(c));
        g
    }
}

pub fn mutation_layers(g: &Grid) -> Result<MutationLayers, PercolationError> {
    let space = StateSpace::explore(g)?;
    let n = g.n();
    let unreachable = n * n;
    let mut levels = vec![unreachable; n * n];
    for (state, d) in space.states() {
        for c in state.one_cells() {
            let slot = &mut levels[(c.row - 1) * n + c.col - 1];
            *slot = (*slot).min(d);
        }
    }
    let mut layers = vec![Vec::new(); n * n - n + 1];
    for row in 1..=n {
        for col in 1..=n {
            let l = levels[(row - 1) * n + col - 1];
            if l < unreachable {
                layers[l].push(Cell::new(row, col));
            }
        }
    }
    Ok(MutationLayers { n, levels, layers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::percolation::{matrix_of, percolate, Policy};
    use crate::perm::parse_permutation;

    fn grid(s: &str) -> Grid {
        matrix_of(&parse_permutation(s).unwrap())
    }

    fn cells(v: &[(usize, usize)]) -> Vec<Cell> {
        v.iter().map(|&(r, c)| Cell::new(r, c)).collect()
    }

    #[test]
    fn layers_of_213() {
        let l = mutation_layers(&grid("213")).unwrap();
        assert_eq!(l.layer(0), cells(&[(1, 3), (2, 1), (3, 2)]));
        assert_eq!(l.layer(1), cells(&[(2, 2), (3, 1)]));
        assert_eq!(l.layer(2), cells(&[(1, 2), (2, 3)]));
        assert_eq!(l.layer(3), cells(&[(1, 1), (3, 3)]));
        for i in 4..=6 {
            assert!(l.layer(i).is_empty());
        }
        assert_eq!(l.layers().len(), 7);
        assert!(l.closure().is_all_ones());
    }

    #[test]
    fn layers_of_no_growth() {
        let g = grid("2413");
        let l = mutation_layers(&g).unwrap();
        for c in g.one_cells() {
            assert_eq!(l.level(c), 0);
        }
        for r in 1..=4 {
            for c in 1..=4 {
                let cell = Cell::new(r, c);
                if !g.get(cell) {
                    assert_eq!(l.level(cell), 16);
                }
            }
        }
    }

    #[test]
    fn oracle_is_gated() {
        let g = grid("213456");
        assert!(matches!(
            mutation_layers(&g),
            Err(PercolationError::TooLarge { n: 6, max: 5 })
        ));
    }

    #[test]
    fn single_terminal_for_34152() {
        let g = grid("34152");
        let space = StateSpace::explore(&g).unwrap();
        let terminals = space.terminals();
        assert_eq!(terminals.len(), 1);
        let first = percolate(&g, &Policy::FirstScan).unwrap().final_grid;
        assert_eq!(*terminals[0], first);
        assert_eq!(mutation_layers(&g).unwrap().closure(), first);
    }

    #[test]
    fn order_counts() {
        // 21: two mutable cells, either order.
        assert_eq!(StateSpace::explore(&grid("21")).unwrap().complete_orders(), 2);
        assert_eq!(StateSpace::explore(&grid("2413")).unwrap().complete_orders(), 1);
        assert_eq!(StateSpace::explore(&grid("1")).unwrap().complete_orders(), 1);
    }
}
