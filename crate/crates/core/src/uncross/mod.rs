//! Uncrossing and joining of path collections in a square box, for lattice
//! paths and for S-paths over Z²≀(Z/2Z).

mod domain;
mod driver;
mod grid;
mod spaths;

pub use domain::{chords_cross, BoxDomain};
pub use grid::{
    crossing_count, essential_crossing, join_bound, join_noncrossing, normalize_endpoints, uncross_all, uncross_pair,
    JOIN_EXACT_MAX,
};
pub use spaths::{neutral_word, s_crossing_free, s_normalize_endpoints, s_uncross_all, total_tau, SUncrossReport};

#[cfg(test)]
mod tests;
