//! Range, boundary, thin-point and local-time statistics of base walks.

use super::map_trials;
use super::record::Row;
use super::spec::{ExperimentSpec, Kind, Schedule};
use super::stats::{median, Summary};
use crate::error::Result;
use crate::lattice::{Base, Point, RangeTracker, StepDistribution};
use crate::rng::trial_rng;
use serde_json::json;
use std::f64::consts::PI;

/// Statistics of one walk of n steps (positions at times 0..=n).
#[derive(Clone, Debug, PartialEq)]
pub struct WalkSample {
    pub n: u64,
    pub range: usize,
    pub boundary: usize,
    /// thin[k-1] = |{x : 1 ≤ l(x) ≤ k}|.
    pub thin: Vec<usize>,
    /// Σ_x l(x)^{1/2}.
    pub sqrt_sum: f64,
    /// Σ_x l(x)^alpha.
    pub power_sum: f64,
    pub end: Point,
}

pub fn simulate_walk(dist: &StepDistribution, n: u64, qmax: usize, alpha: f64, seed: u64, trial: u64) -> WalkSample {
    let mut rng = trial_rng(&[seed, n, trial]);
    let sampler = dist.sampler();
    let mut tracker = RangeTracker::with_capacity(qmax.max(1), (n as usize / 2).min(1 << 22));
    let mut pos = Point::ORIGIN;
    tracker.visit(pos);
    for _ in 0..n {
        pos = pos + sampler.step(&mut rng);
        tracker.visit(pos);
    }
    let snap = tracker.snapshot();
    let power_sum = if alpha == 0.5 { snap.sqrt_sum } else { tracker.power_sum(alpha) };
    WalkSample {
        n,
        range: snap.range,
        boundary: snap.boundary,
        thin: snap.thin,
        sqrt_sum: snap.sqrt_sum,
        power_sum,
        end: pos,
    }
}

/// Independent walks for every size, trial seeds derived from (seed, n, trial).
pub fn walk_table(
    dist: &StepDistribution,
    sizes: &[u64],
    trials: usize,
    qmax: usize,
    alpha: f64,
    seed: u64,
) -> Vec<Vec<WalkSample>> {
    sizes.iter().map(|&n| map_trials(trials, |t| simulate_walk(dist, n, qmax, alpha, seed, t as u64))).collect()
}

/// Covariance matrix (xx, xy, yy) of one step, power tail included.
pub fn covariance(dist: &StepDistribution) -> (f64, f64, f64) {
    let (mut xx, mut xy, mut yy) = (0.0, 0.0, 0.0);
    for (v, p) in dist.atoms() {
        xx += (v.x * v.x) as f64 * p;
        xy += (v.x * v.y) as f64 * p;
        yy += (v.y * v.y) as f64 * p;
    }
    let sd = dist.coordinate_sd();
    let atoms_xx: f64 = dist.atoms().iter().map(|(v, p)| (v.x * v.x) as f64 * p).sum();
    // coordinate_sd² − atom part is the tail contribution per axis.
    let tail = sd * sd - atoms_xx;
    (xx + tail, xy, yy + tail)
}

/// Expected range scale: 2π√det Σ · n/log n on the plane, σ√(8n/π) on the line.
pub fn range_scale(dist: &StepDistribution, n: u64) -> f64 {
    let nf = n as f64;
    match dist.base() {
        Base::Plane => {
            let (a, b, c) = covariance(dist);
            2.0 * PI * (a * c - b * b).sqrt() * nf / nf.ln()
        }
        Base::Line => dist.coordinate_sd() * (8.0 * nf / PI).sqrt(),
    }
}

pub fn range_ratio(dist: &StepDistribution, s: &WalkSample) -> f64 {
    s.range as f64 / range_scale(dist, s.n)
}

pub fn boundary_stat(s: &WalkSample) -> f64 {
    let l = (s.n as f64).ln();
    s.boundary as f64 * l * l / s.n as f64
}

/// |T_n^k| log² n / n.
pub fn flatto_stat(s: &WalkSample, k: usize) -> f64 {
    let l = (s.n as f64).ln();
    s.thin[k - 1] as f64 * l * l / s.n as f64
}

/// n^{-3/4} Σ l^α on the line, √(log n)/n · Σ l^α on the plane; 0 at n = 0.
pub fn local_time_stat(base: Base, n: u64, power_sum: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    match base {
        Base::Line => power_sum / nf.powf(0.75),
        Base::Plane => power_sum * nf.ln().max(0.0).sqrt() / nf,
    }
}

/// Truncation level c_n for the long-jump correction.
pub fn cn_schedule(dist: &StepDistribution, n: u64, policy: Schedule) -> f64 {
    let l = (n as f64).ln().max(1.0);
    match policy {
        Schedule::Literal => (dist.tail_second_moment(l) * l).sqrt(),
        Schedule::TailBalanced => {
            let target = 1.0 / (l * l);
            let mut hi = 1.0f64;
            while dist.tail_first_moment(hi) > target {
                hi *= 2.0;
                if hi > 1e15 {
                    return f64::INFINITY;
                }
            }
            let mut lo = (hi / 2.0).floor();
            let mut hi = hi.ceil();
            while hi - lo > 1.0 {
                let mid = ((lo + hi) / 2.0).floor();
                if dist.tail_first_moment(mid) > target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            hi
        }
    }
}

/// E[A_n]/(n/log n) = log n · Σ_{|g| ≥ c_n} |g| μ(g).
pub fn an_ratio(dist: &StepDistribution, n: u64, policy: Schedule) -> f64 {
    let c = cn_schedule(dist, n, policy);
    if !c.is_finite() {
        return f64::INFINITY;
    }
    (n as f64).ln() * dist.tail_first_moment(c)
}

pub(super) fn run(spec: &ExperimentSpec) -> Result<(Vec<Row>, serde_json::Value)> {
    let dist = spec.walk().build()?;
    let kind = spec.kind;
    let name = kind.name();
    let seed = spec.seed();
    let level = (spec.q() as usize).saturating_sub(1).max(1);
    let table = walk_table(&dist, spec.sizes(), spec.trials(), level, spec.alpha, seed);
    let mut rows = Vec::new();
    let mut per_size = Vec::new();
    for (samples, &n) in table.iter().zip(spec.sizes()) {
        let (label, values): (String, Vec<f64>) = match kind {
            Kind::Range => ("R_n/range_scale".into(), samples.iter().map(|s| range_ratio(&dist, s)).collect()),
            Kind::Boundary => ("|dR_n|log^2n/n".into(), samples.iter().map(boundary_stat).collect()),
            Kind::Flatto => (format!("|T_n^{level}|log^2n/n"), samples.iter().map(|s| flatto_stat(s, level)).collect()),
            _ => (
                format!("local_time_alpha={}", spec.alpha),
                samples.iter().map(|s| local_time_stat(dist.base(), n, s.power_sum)).collect(),
            ),
        };
        let summary = Summary::of(&values);
        rows.push(Row::from_summary(name, n, &label, &summary, seed));
        let folner: Vec<f64> = samples.iter().map(|s| s.boundary as f64 / s.range as f64).collect();
        let mut entry = json!({ "n": n, "summary": summary, "folner_median": median(&folner) });
        if dist.tail().is_some() {
            entry["c_n"] = json!(cn_schedule(&dist, n, spec.schedule));
            entry["a_n_ratio"] = json!(an_ratio(&dist, n, spec.schedule));
        }
        per_size.push(entry);
    }
    let means: Vec<f64> = rows.iter().map(|r| r.mean).collect();
    let details = json!({
        "per_size": per_size,
        "last_two_relative_change": relative_change(&means),
    });
    Ok((rows, details))
}

/// |m_last − m_prev| / |m_prev| for the final two entries.
pub fn relative_change(means: &[f64]) -> Option<f64> {
    match means {
        [.., a, b] => Some((b - a).abs() / a.abs()),
        _ => None,
    }
}
