//! Exact generating-function machinery: integer compositions, Schröder
//! numbers, truncated power-series composition, and two closed formulas for
//! the number of no-growth permutations.

mod compositions;
mod fps;
mod kings;
mod schroeder;

pub use compositions::{all_compositions, compositions, for_each_partition, Composition, Compositions};
pub use fps::{
    a_via_series, composition_sum, series_b, series_compose, series_compose_horner, series_g,
    taylor_g, Series,
};
pub use kings::{
    a_abramson_moser, a_formula, a_formula_terms, binomial, is_dyadic, ExactRational, FormulaTerm,
};
pub use schroeder::{schroeder_large, schroeder_large_upto, schroeder_little, schroeder_little_upto};
