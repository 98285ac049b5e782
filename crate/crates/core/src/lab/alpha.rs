//! Diluted-box TSP constants α_p and α_{p,S}.

use super::map_trials;
use super::record::Row;
use super::spec::{ExperimentSpec, Solver};
use super::stats::{t99, Summary, MAX_BATCHES};
use crate::error::{Error, Result};
use crate::lattice::{dilute, Base, Point, PointSet};
use crate::rng::derive;
use crate::tsp::{box_tsp_diluted, exact_tsp, s_path_tsp_exact, strip_heuristic, BoxOptions, DEFAULT_EXACT_CAP};
use crate::wreath::{GeneratingSet, LampConfig};
use serde::{Deserialize, Serialize};
use serde_json::json;

/// Default box side of the box solver in the α experiment.
pub const DEFAULT_ALPHA_BOX: i64 = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideStat {
    pub side: u64,
    pub summary: Summary,
}

/// b_{m+1} ≤ b_m + 9·2^{−m−2} + 3(SE_m + SE_{m+1}) for consecutive dyadic sides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecursionCheck {
    pub m: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaEstimate {
    pub table: Vec<SideStat>,
    pub alpha: f64,
    /// [b_M − t·SE, b_M + t·SE + 9·2^{−M−1}].
    pub band: (f64, f64),
    pub tail: f64,
    pub recursion: Vec<RecursionCheck>,
}

/// Diluted square [0, side)² of one trial.
pub fn diluted_square(side: u64, p: f64, seed: u64, trial: u64) -> PointSet {
    dilute(&PointSet::square(Point::ORIGIN, side as i64), p, derive(&[seed, side, trial]))
}

pub fn diluted_length(points: &PointSet, side: u64, solver: Solver, box_side: i64) -> Result<u64> {
    if points.is_empty() {
        return Ok(0);
    }
    match solver {
        Solver::Exact => exact_tsp(points, DEFAULT_EXACT_CAP).map(|r| r.length).map_err(|e| match e {
            Error::Resource(m) => Error::Resource(format!("{m}; use --solver box or --solver strip")),
            other => other,
        }),
        Solver::Strip => strip_heuristic(points, Point::ORIGIN, side as i64).map(|r| r.length),
        Solver::Box => {
            let square = PointSet::square(Point::ORIGIN, side as i64);
            let c = box_side.min(side as i64).max(2);
            box_tsp_diluted(points, &square, c, BoxOptions::default()).map(|t| t.result.length)
        }
    }
}

fn log2_floor(n: u64) -> u32 {
    63 - n.max(1).leading_zeros()
}

pub fn estimate_alpha(
    p: f64,
    sides: &[u64],
    trials: usize,
    seed: u64,
    solver: Solver,
    box_side: i64,
) -> Result<AlphaEstimate> {
    let mut table = Vec::new();
    for &side in sides {
        let lens: Vec<Result<u64>> = map_trials(trials, |t| {
            let d = diluted_square(side, p, seed, t as u64);
            diluted_length(&d, side, solver, box_side)
        });
        let area = (side * side) as f64;
        let ratios = lens.into_iter().map(|r| r.map(|l| l as f64 / area)).collect::<Result<Vec<f64>>>()?;
        table.push(SideStat { side, summary: Summary::of(&ratios) });
    }
    Ok(summarize(table))
}

fn summarize(table: Vec<SideStat>) -> AlphaEstimate {
    let last = table.last().expect("non-empty schedule").clone();
    let m = log2_floor(last.side);
    let tail = 9.0 * 2f64.powi(-(m as i32) - 1);
    let h = t99(last.summary.count.min(MAX_BATCHES).saturating_sub(1)) * last.summary.std_err;
    let band = (last.summary.mean - h, last.summary.mean + h + tail);
    let recursion = table
        .windows(2)
        .filter(|w| w[1].side == 2 * w[0].side && w[0].side.is_power_of_two())
        .map(|w| {
            let m = log2_floor(w[0].side);
            let lhs = w[1].summary.mean;
            let rhs = w[0].summary.mean
                + 9.0 * 2f64.powi(-(m as i32) - 2)
                + 3.0 * (w[0].summary.std_err + w[1].summary.std_err);
            RecursionCheck { m, lhs, rhs, holds: lhs <= rhs }
        })
        .collect();
    AlphaEstimate { alpha: last.summary.mean, band, tail, recursion, table }
}

/// Exact S-path cost of writing a diluted box, per unit area.
pub fn estimate_alpha_s(
    s: &GeneratingSet,
    p: f64,
    sides: &[u64],
    trials: usize,
    seed: u64,
    budget: usize,
) -> Result<Vec<SideStat>> {
    if s.group.base != Base::Plane {
        return Err(Error::Unsupported("α_{p,S} is defined over the plane".into()));
    }
    let mut out = Vec::new();
    for &side in sides {
        let costs: Vec<Result<u64>> = map_trials(trials, |t| {
            let d = diluted_square(side, p, seed, t as u64);
            let target = LampConfig::from_support(d.sorted());
            s_path_tsp_exact(&target, Point::ORIGIN, side as i64, s, budget)
        });
        let area = (side * side) as f64;
        let ratios = costs.into_iter().map(|r| r.map(|c| c as f64 / area)).collect::<Result<Vec<f64>>>()?;
        out.push(SideStat { side, summary: Summary::of(&ratios) });
    }
    Ok(out)
}

pub(super) fn run_alpha(spec: &ExperimentSpec) -> Result<(Vec<Row>, serde_json::Value)> {
    let seed = spec.seed();
    let box_side = spec.box_side.unwrap_or(DEFAULT_ALPHA_BOX);
    let est = estimate_alpha(spec.p, spec.sizes(), spec.trials(), seed, spec.solver, box_side)?;
    let mut rows: Vec<Row> =
        est.table.iter().map(|s| Row::from_summary("alpha", s.side, "l_TS(D_n)/n^2", &s.summary, seed)).collect();
    let last = est.table.last().expect("non-empty");
    rows.push(Row {
        kind: "alpha".into(),
        n: last.side,
        trials: last.summary.count,
        mean: est.alpha,
        std_err: last.summary.std_err,
        statistic: "alpha_hat".into(),
        lo99: est.band.0,
        hi99: est.band.1,
        seed,
    });
    let details = json!({ "estimate": est, "solver": spec.solver, "box_side": box_side });
    Ok((rows, details))
}

pub(super) fn run_alpha_s(spec: &ExperimentSpec) -> Result<(Vec<Row>, serde_json::Value)> {
    let seed = spec.seed();
    let set = spec.generators().build(Base::Plane, spec.lamps.build()?)?;
    let table = estimate_alpha_s(&set, spec.p, spec.sizes(), spec.trials(), seed, spec.budget)?;
    let rows =
        table.iter().map(|s| Row::from_summary("alpha-s", s.side, "l_TS^S(D_n)/n^2", &s.summary, seed)).collect();
    let above_p: Vec<bool> = table.iter().map(|s| s.summary.hi99 >= spec.p).collect();
    let details = json!({
        "table": table,
        "single_lamp_generators": set.single_lamp(),
        "upper_ci_at_least_p": above_p,
    });
    Ok((rows, details))
}
