//! Wreath products B≀L with B ∈ {Z, Z²} and L ∈ {Z/2Z, finite F, Z}:
//! arithmetic, generating sets, S-paths and a BFS word-length oracle.

mod bfs;
mod element;
mod genset;
mod lamp;
mod metric;
mod spath;
mod step;

pub use bfs::{generates_within, word_length_bfs, word_length_bfs_budget, Ball, WordLength, DEFAULT_STATE_BUDGET};
pub use element::{WreathElement, WreathGroup};
pub use genset::{GeneratingSet, Move};
pub use lamp::{FiniteGroup, LampConfig, LampGroup};
pub use metric::{is_lamplighter, oned_word_length, sws_line_length, word_length_bounds, OnedLength, SandwichBounds};
pub use spath::{path_end, path_tau, reverse_path, SPath};
pub use step::{Decomposition, WreathStep, WreathStepDistribution};

#[cfg(test)]
mod tests;
