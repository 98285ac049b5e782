//! Drift of switch-walk-switch walks on Z²≀(Z/2Z) and the Z-lamp length proxy.

use super::map_trials;
use super::record::Row;
use super::spec::{ExperimentSpec, Solver};
use super::stats::Summary;
use super::walks::cn_schedule;
use crate::error::{Error, Result};
use crate::lattice::{inner_boundary, Point, PointSet, StepDistribution};
use crate::rng::trial_rng;
use crate::tsp::{box_tsp_diluted, exact_tsp, tsp_auto, BoxOptions, TspResult, DEFAULT_EXACT_CAP};
use rand::Rng;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use serde_json::json;

/// One sampled X_n = (x, f) with its length estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftSample {
    pub n: u64,
    pub end: Point,
    pub support: usize,
    pub range: usize,
    /// Heuristic open-path TSP length of supp f.
    pub tsp: u64,
    /// ℓ̂_TS + |supp f|.
    pub lower: u64,
    /// Length of an explicit word for X_n.
    pub lhat: u64,
    /// 3·max_t |X̄_t|.
    pub correction: u64,
    pub box_side: i64,
}

/// State of the walk after n steps.
pub struct SwsState {
    pub end: Point,
    pub lamps: PointSet,
    pub range: PointSet,
    pub max_norm: u64,
}

/// η-switch, base step, η-switch; each switch has probability `eta`.
pub fn simulate_sws(dist: &StepDistribution, eta: f64, n: u64, seed: u64, trial: u64) -> SwsState {
    let mut rng = trial_rng(&[seed, n, trial]);
    let sampler = dist.sampler();
    let mut lamps: FxHashSet<Point> = FxHashSet::default();
    let mut range: FxHashSet<Point> = FxHashSet::default();
    let mut pos = Point::ORIGIN;
    let mut max_norm = 0;
    range.insert(pos);
    let toggle = |set: &mut FxHashSet<Point>, p: Point| {
        if !set.remove(&p) {
            set.insert(p);
        }
    };
    for _ in 0..n {
        if rng.random::<f64>() < eta {
            toggle(&mut lamps, pos);
        }
        pos = pos + sampler.step(&mut rng);
        range.insert(pos);
        max_norm = max_norm.max(pos.l1());
        if rng.random::<f64>() < eta {
            toggle(&mut lamps, pos);
        }
    }
    SwsState { end: pos, lamps: PointSet::from_members(lamps), range: PointSet::from_members(range), max_norm }
}

/// Box side ⌈(4|R|/|∂R|)^{1/3}⌉ for finite-range walks.
pub fn auto_box_side(range: &PointSet) -> i64 {
    let b = inner_boundary(range).len().max(1) as f64;
    ((4.0 * range.len() as f64 / b).cbrt().ceil() as i64).max(2)
}

fn support_tour(st: &SwsState, solver: Solver, c: i64) -> Result<TspResult> {
    if st.lamps.is_empty() {
        return Ok(TspResult::from_order(Vec::new(), true));
    }
    match solver {
        Solver::Box => box_tsp_diluted(&st.lamps, &st.range, c, BoxOptions::default()).map(|t| t.result),
        Solver::Strip => Ok(tsp_auto(&st.lamps)),
        Solver::Exact => exact_tsp(&st.lamps, DEFAULT_EXACT_CAP),
    }
}

/// Word built from a support tour: walk to one end, follow the tour with a
/// switch at every lamp, walk to x. The better orientation is used.
pub fn word_estimate(end: Point, support: usize, tour: &TspResult) -> u64 {
    let (Some(first), Some(last)) = (tour.order.first(), tour.order.last()) else {
        return end.l1();
    };
    let fwd = first.l1() + tour.length + last.dist(end);
    let bwd = last.l1() + tour.length + first.dist(end);
    fwd.min(bwd) + support as u64
}

pub fn drift_sample(spec: &ExperimentSpec, dist: &StepDistribution, n: u64, trial: u64) -> Result<DriftSample> {
    let st = simulate_sws(dist, spec.eta, n, spec.seed(), trial);
    let c = match spec.box_side {
        Some(c) => c,
        None if dist.tail().is_some() => {
            let c = cn_schedule(dist, n, spec.schedule);
            if c.is_finite() {
                (c.ceil() as i64).max(2)
            } else {
                auto_box_side(&st.range)
            }
        }
        None => auto_box_side(&st.range),
    };
    let tour = support_tour(&st, spec.solver, c)?;
    let tsp = if st.lamps.is_empty() { 0 } else { tour.length };
    let support = st.lamps.len();
    Ok(DriftSample {
        n,
        end: st.end,
        support,
        range: st.range.len(),
        tsp,
        lower: tsp + support as u64,
        lhat: word_estimate(st.end, support, &tour),
        correction: 3 * st.max_norm,
        box_side: c,
    })
}

fn per_log(n: u64) -> f64 {
    let nf = n as f64;
    nf / nf.ln()
}

pub(super) fn run_drift(spec: &ExperimentSpec) -> Result<(Vec<Row>, serde_json::Value)> {
    let dist = spec.walk().build()?;
    let seed = spec.seed();
    let mut rows = Vec::new();
    let mut per_size = Vec::new();
    let mut sandwich_ok = true;
    for &n in spec.sizes() {
        let samples = map_trials(spec.trials(), |t| drift_sample(spec, &dist, n, t as u64))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let scale = per_log(n);
        let chat: Vec<f64> = samples.iter().map(|s| s.lhat as f64 / scale).collect();
        let corr: Vec<f64> = samples.iter().map(|s| s.correction as f64 / scale).collect();
        let lower: Vec<f64> = samples.iter().map(|s| s.lower as f64 / scale).collect();
        let held = samples.iter().all(|s| s.lower <= s.lhat && s.lhat <= s.lower + s.correction);
        sandwich_ok &= held;
        let chat_s = Summary::of(&chat);
        rows.push(Row::from_summary("drift", n, "l_hat/(n/log n)", &chat_s, seed));
        rows.push(Row::from_summary("drift", n, "lower/(n/log n)", &Summary::of(&lower), seed));
        rows.push(Row::from_summary("drift", n, "3max|X|/(n/log n)", &Summary::of(&corr), seed));
        let sides: Vec<i64> = samples.iter().map(|s| s.box_side).collect();
        let support_per_range: Vec<f64> = samples.iter().map(|s| s.support as f64 / s.range as f64).collect();
        let tsp_per_range: Vec<f64> = samples.iter().map(|s| s.tsp as f64 / s.range as f64).collect();
        per_size.push(json!({
            "n": n,
            "c_hat": chat_s,
            "implied_alpha": chat_s.mean / std::f64::consts::PI - 0.5,
            "sandwich_holds": held,
            "box_sides": [sides.iter().min(), sides.iter().max()],
            "support_per_range": Summary::of(&support_per_range),
            "tsp_per_range": Summary::of(&tsp_per_range),
        }));
    }
    Ok((rows, json!({ "per_size": per_size, "sandwich_holds": sandwich_ok })))
}

/// Z²≀Z with η uniform on {−1, 0, +1} at each half step. Reports the
/// lower bound Σ|f(x)| and the upper bound Σ|f(x)| + ℓ̂_TS(supp f) + 2|supp f| + |z|.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZLampSample {
    pub n: u64,
    pub norm_sum: u64,
    pub upper: u64,
    pub sqrt_local_time: f64,
}

pub fn zlamp_sample(dist: &StepDistribution, n: u64, seed: u64, trial: u64, solver: Solver) -> Result<ZLampSample> {
    let mut rng = trial_rng(&[seed, n, trial]);
    let sampler = dist.sampler();
    let mut lamps: FxHashMap<Point, i64> = FxHashMap::default();
    let mut visits: FxHashMap<Point, u64> = FxHashMap::default();
    let mut pos = Point::ORIGIN;
    *visits.entry(pos).or_default() += 1;
    for _ in 0..n {
        *lamps.entry(pos).or_default() += rng.random_range(-1..=1);
        pos = pos + sampler.step(&mut rng);
        *visits.entry(pos).or_default() += 1;
        *lamps.entry(pos).or_default() += rng.random_range(-1..=1);
    }
    let support: PointSet = lamps.iter().filter(|e| *e.1 != 0).map(|e| *e.0).collect();
    let norm_sum: u64 = lamps.values().map(|v| v.unsigned_abs()).sum();
    let range: PointSet = visits.keys().copied().collect();
    let tour = if support.is_empty() {
        0
    } else {
        match solver {
            Solver::Box => {
                box_tsp_diluted(&support, &range, auto_box_side(&range), BoxOptions::default())?.result.length
            }
            Solver::Strip => tsp_auto(&support).length,
            Solver::Exact => exact_tsp(&support, DEFAULT_EXACT_CAP)?.length,
        }
    };
    let mut counts: Vec<(Point, u64)> = visits.into_iter().collect();
    counts.sort_unstable();
    let sqrt_local_time = counts.iter().map(|e| (e.1 as f64).sqrt()).sum();
    Ok(ZLampSample { n, norm_sum, upper: norm_sum + tour + 2 * support.len() as u64 + pos.l1(), sqrt_local_time })
}

pub(super) fn run_zwrapz(spec: &ExperimentSpec) -> Result<(Vec<Row>, serde_json::Value)> {
    let dist = spec.walk().build()?;
    if dist.tail().is_some() {
        return Err(Error::Unsupported("the Z-lamp proxy uses finite-range base walks".into()));
    }
    let seed = spec.seed();
    let mut rows = Vec::new();
    for &n in spec.sizes() {
        let samples = map_trials(spec.trials(), |t| zlamp_sample(&dist, n, seed, t as u64, spec.solver))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let nf = n as f64;
        let scale = nf / nf.ln().sqrt();
        let ratio: Vec<f64> = samples.iter().map(|s| s.norm_sum as f64 / s.sqrt_local_time).collect();
        let lower: Vec<f64> = samples.iter().map(|s| s.norm_sum as f64 / scale).collect();
        let upper: Vec<f64> = samples.iter().map(|s| s.upper as f64 / scale).collect();
        rows.push(Row::from_summary("zwrapz", n, "sum|f|/sum l^(1/2)", &Summary::of(&ratio), seed));
        rows.push(Row::from_summary("zwrapz", n, "sum|f|/(n/sqrt(log n))", &Summary::of(&lower), seed));
        rows.push(Row::from_summary("zwrapz", n, "upper/(n/sqrt(log n))", &Summary::of(&upper), seed));
    }
    Ok((rows, json!({})))
}
