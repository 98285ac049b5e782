//! Monte Carlo experiments. Every experiment is a pure function of its
//! validated spec: trial seeds are derived from (seed, size, trial) and
//! results are reduced in trial order, whatever the thread count.

pub mod alpha;
pub mod drift;
pub mod good;
pub mod oned;
pub mod record;
pub mod spec;
pub mod stats;
pub mod walks;

pub use record::{fmt_f64, Row, RunRecord, CSV_HEADER};
pub use spec::{validate, ExperimentSpec, Generators, Kind, LampSpec, Schedule, Solver, Validated, WalkSpec};
pub use stats::Summary;

use crate::error::Result;

/// `f(0), …, f(k−1)` in order, in parallel when the feature is on.
pub fn map_trials<T, F>(k: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..k).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..k).map(f).collect()
    }
}

/// Validate, run and package one experiment.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<RunRecord> {
    let v = validate(spec)?;
    run_validated(&v.spec)
}

/// Run a spec that already went through [`validate`].
pub fn run_validated(spec: &ExperimentSpec) -> Result<RunRecord> {
    let (rows, details) = match spec.kind {
        Kind::Alpha => alpha::run_alpha(spec)?,
        Kind::AlphaS => alpha::run_alpha_s(spec)?,
        Kind::Drift => drift::run_drift(spec)?,
        Kind::Zwrapz => drift::run_zwrapz(spec)?,
        Kind::Range | Kind::Boundary | Kind::Flatto | Kind::LocalTime => walks::run(spec)?,
        Kind::GoodUpdate => good::run(spec)?,
        Kind::OnedDist => oned::run_dist(spec)?,
        Kind::OnedConst => oned::run_const(spec)?,
    };
    Ok(RunRecord { kind: spec.kind.name().to_string(), spec_hash: spec.hash(), seed: spec.seed(), rows, details })
}
