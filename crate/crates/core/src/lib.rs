//! Lamplighter drift lab.
//!
//! Random walks on Z and Z², word metrics on wreath products B≀L, open-path
//! TSP solvers for lattice point sets, the uncrossing procedure for paths in a
//! box, and the Monte Carlo estimators built on top of them.

pub mod error;
pub mod lab;
pub mod lattice;
pub mod rng;
pub mod tsp;
pub mod uncross;
pub mod wreath;

pub use error::{Error, Result};
pub use lattice::Point;
