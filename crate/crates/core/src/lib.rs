//! Bootstrap percolation on permutation matrices.
//!
//! The crate covers the cell-level dynamics ([`percolation`]), the
//! tile-merging and bracketing algorithms ([`tiling`]), the factorization of
//! permutations into indecomposable components ([`perm`]), brute-force
//! enumeration over the symmetric group ([`counting`]) and the exact
//! generating-function side: Schröder numbers, power-series composition and
//! closed formulas for non-attacking kings placements ([`series`]).

pub mod counting;
pub mod error;
pub mod perm;
pub mod percolation;
pub mod series;
pub mod tiling;

pub use error::{CountError, PercolationError, PermError, TilingError};
pub use perm::{comps, is_indecomposable, last_comp, parse_permutation, reduce, reverse, Permutation, Word};
