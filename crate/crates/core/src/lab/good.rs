//! Good-update coupling on a torus: μ = a·u + (1−a)·μ′ with u uniform on
//! {id, δ} and μ′ the standard switch-walk-switch law.

use super::map_trials;
use super::record::Row;
use super::spec::ExperimentSpec;
use super::stats::{chi_square_uniform, Summary};
use crate::error::{Error, Result};
use crate::rng::trial_rng;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

/// Step cap per trial.
pub const MAX_STEPS: u64 = 2_000_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoodTrial {
    pub steps: u64,
    /// Sites whose first q step-times carried no good update.
    pub misses: u64,
    /// Lamp values at sites with at least one good update, in site order.
    pub good_lamps: Vec<Option<u8>>,
}

/// Runs until every site of the side×side torus has q step-times.
pub fn good_trial(side: u64, q: u64, a: f64, seed: u64, trial: u64) -> Result<GoodTrial> {
    let mut rng = trial_rng(&[seed, side, trial]);
    let l = side as usize;
    let cells = l * l;
    let mut count = vec![0u64; cells];
    let mut hit = vec![false; cells];
    let mut good = vec![false; cells];
    let mut lamp = vec![0u8; cells];
    let mut remaining = if q == 0 { 0 } else { cells };
    let (mut x, mut y) = (0usize, 0usize);
    let mut steps = 0u64;
    while remaining > 0 {
        if steps >= MAX_STEPS {
            return Err(Error::Resource(format!("torus not covered {q} times within {MAX_STEPS} steps")));
        }
        steps += 1;
        let i = y * l + x;
        let yt = rng.random::<f64>() < a;
        if count[i] < q {
            count[i] += 1;
            hit[i] |= yt;
            if count[i] == q {
                remaining -= 1;
            }
        }
        if yt {
            good[i] = true;
            lamp[i] ^= rng.random::<bool>() as u8;
        } else {
            lamp[i] ^= rng.random::<bool>() as u8;
            match rng.random_range(0..4u8) {
                0 => x = (x + 1) % l,
                1 => x = (x + l - 1) % l,
                2 => y = (y + 1) % l,
                _ => y = (y + l - 1) % l,
            }
            lamp[y * l + x] ^= rng.random::<bool>() as u8;
        }
    }
    let misses = if q == 0 { cells as u64 } else { hit.iter().filter(|h| !**h).count() as u64 };
    let good_lamps = (0..cells).map(|i| good[i].then_some(lamp[i])).collect();
    Ok(GoodTrial { steps, misses, good_lamps })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoodReport {
    pub sites: u64,
    pub misses: u64,
    pub expected_rate: f64,
    pub rate: f64,
    pub sigma: f64,
    pub z: f64,
    pub bad_event_frequency: f64,
    pub chi2_single: (f64, f64),
    pub chi2_pairs: (f64, f64),
    pub mean_steps: f64,
}

pub fn good_report(side: u64, q: u64, a: f64, eps: f64, trials: &[GoodTrial]) -> GoodReport {
    let l = side as usize;
    let cells = (l * l) as u64;
    let sites = cells * trials.len() as u64;
    let misses: u64 = trials.iter().map(|t| t.misses).sum();
    let r = (1.0 - a).powi(q as i32);
    let rate = misses as f64 / sites as f64;
    let sigma = (r * (1.0 - r) / sites as f64).sqrt();
    let z = if sigma > 0.0 { (rate - r) / sigma } else { 0.0 };
    let threshold = (1.0 + eps) * r * cells as f64;
    let bad = trials.iter().filter(|t| t.misses as f64 >= threshold).count() as f64 / trials.len() as f64;
    let mut single = [0u64; 2];
    let mut pairs = [0u64; 4];
    for t in trials {
        for yy in 0..l {
            for xx in 0..l {
                let Some(v) = t.good_lamps[yy * l + xx] else { continue };
                single[v as usize] += 1;
                // Horizontal pairs on even columns, so no site is used twice.
                if xx % 2 == 0 && xx + 1 < l {
                    if let Some(w) = t.good_lamps[yy * l + xx + 1] {
                        pairs[(2 * v + w) as usize] += 1;
                    }
                }
            }
        }
    }
    let mean_steps = trials.iter().map(|t| t.steps as f64).sum::<f64>() / trials.len() as f64;
    GoodReport {
        sites,
        misses,
        expected_rate: r,
        rate,
        sigma,
        z,
        bad_event_frequency: bad,
        chi2_single: chi_square_uniform(&single),
        chi2_pairs: chi_square_uniform(&pairs),
        mean_steps,
    }
}

pub(super) fn run(spec: &ExperimentSpec) -> Result<(Vec<Row>, serde_json::Value)> {
    let seed = spec.seed();
    let q = spec.q();
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for &side in spec.sizes() {
        let trials = map_trials(spec.trials(), |t| good_trial(side, q, spec.a, seed, t as u64))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let cells = (side * side) as f64;
        let per: Vec<f64> = trials.iter().map(|t| t.misses as f64 / cells).collect();
        rows.push(Row::from_summary("good-update", side, "miss_rate", &Summary::of(&per), seed));
        let rep = good_report(side, q, spec.a, spec.eps, &trials);
        reports.push(json!({ "side": side, "report": rep }));
    }
    Ok((rows, json!({ "q": q, "a": spec.a, "per_size": reports })))
}
