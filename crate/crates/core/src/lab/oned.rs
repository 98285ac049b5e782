//! One-dimensional lamplighters Z≀F: the limit law of the drift and the
//! per-site costs c₁ (return mode) and c₂ (through mode).

use super::map_trials;
use super::record::Row;
use super::spec::{ExperimentSpec, Generators};
use super::stats::{ks_critical_1pct, ks_two_sample, Summary};
use crate::error::{Error, Result};
use crate::lattice::{Base, Point, RangeTracker, StepDistribution};
use crate::rng::trial_rng;
use crate::wreath::{sws_line_length, word_length_bfs, GeneratingSet, WordLength, WreathElement};
use rand::Rng;
use rand_distr::StandardNormal;
use rustc_hash::FxHashMap;
use serde_json::json;
use std::f64::consts::PI;

/// Seed word separating the reference sample from the walk sample.
const REFERENCE_TAG: u64 = 0x5245_4600;

/// 2·E𝓡₁ − E|B₁| for standard Brownian motion.
pub fn reference_mean() -> f64 {
    2.0 * (8.0 / PI).sqrt() - (2.0 / PI).sqrt()
}

fn is_line_srw(dist: &StepDistribution) -> bool {
    dist.tail().is_none()
        && dist.atoms().len() == 2
        && dist.atoms().iter().all(|(v, p)| v.x.abs() == 1 && (p - 0.5).abs() < 1e-15)
}

/// (|R_n|, X_n) for one walk on the line.
pub fn line_range(dist: &StepDistribution, n: u64, seed: u64, trial: u64) -> (u64, i64) {
    let mut rng = trial_rng(&[seed, n, trial]);
    if is_line_srw(dist) {
        // One random bit per step.
        let (mut x, mut lo, mut hi) = (0i64, 0i64, 0i64);
        let mut left = n;
        while left > 0 {
            let k = left.min(64);
            let bits: u64 = rng.random();
            for j in 0..k {
                x += if (bits >> j) & 1 == 1 { 1 } else { -1 };
                lo = lo.min(x);
                hi = hi.max(x);
            }
            left -= k;
        }
        return ((hi - lo + 1) as u64, x);
    }
    let s = dist.sampler();
    let mut t = RangeTracker::new(1);
    let mut p = Point::ORIGIN;
    t.visit(p);
    for _ in 0..n {
        p = p + s.step(&mut rng);
        t.visit(p);
    }
    (t.range() as u64, p.x)
}

/// (2𝓡 − |B|)/√m for a Gaussian-increment walk of m steps.
pub fn reference_draw(m: u64, seed: u64, trial: u64) -> f64 {
    let mut rng = trial_rng(&[seed, REFERENCE_TAG, m, trial]);
    let (mut s, mut lo, mut hi) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..m {
        let z: f64 = rng.sample(StandardNormal);
        s += z;
        lo = lo.min(s);
        hi = hi.max(s);
    }
    (2.0 * (hi - lo) - s.abs()) / (m as f64).sqrt()
}

pub struct OnedDistribution {
    pub sample: Vec<f64>,
    pub reference: Vec<f64>,
    pub ks: f64,
    pub critical: f64,
    pub sigma: f64,
}

pub fn oned_distribution(
    dist: &StepDistribution,
    n: u64,
    trials: usize,
    ref_trials: usize,
    ref_steps: u64,
    seed: u64,
) -> OnedDistribution {
    let sigma = dist.coordinate_sd();
    let scale = sigma * (n as f64).sqrt();
    let sample = map_trials(trials, |t| {
        let (r, x) = line_range(dist, n, seed, t as u64);
        (2.0 * r as f64 - x.abs() as f64) / scale
    });
    let reference = map_trials(ref_trials, |t| reference_draw(ref_steps, seed, t as u64));
    let ks = ks_two_sample(&sample, &reference);
    let critical = ks_critical_1pct(sample.len(), reference.len());
    OnedDistribution { sample, reference, ks, critical, sigma }
}

pub(super) fn run_dist(spec: &ExperimentSpec) -> Result<(Vec<Row>, serde_json::Value)> {
    let dist = spec.walk().build()?;
    let seed = spec.seed();
    let ref_trials = spec.reference_trials.unwrap_or(spec.trials());
    let mut rows = Vec::new();
    let mut per_size = Vec::new();
    let mut reference = None;
    for &n in spec.sizes() {
        let d = oned_distribution(&dist, n, spec.trials(), ref_trials, spec.reference_steps, seed);
        rows.push(Row::from_summary("oned-dist", n, "(2R_n-|X_n|)/(sigma sqrt n)", &Summary::of(&d.sample), seed));
        per_size.push(
            json!({ "n": n, "ks": d.ks, "critical_1pct": d.critical, "passes": d.ks <= d.critical, "sigma": d.sigma }),
        );
        reference = Some(Summary::of(&d.reference));
    }
    let reference = reference.expect("non-empty schedule");
    rows.push(Row::from_summary("oned-dist", spec.reference_steps, "reference 2R_1-|B_1|", &reference, seed));
    let details = json!({
        "per_size": per_size,
        "reference_mean_theory": reference_mean(),
        "reference_mean_in_ci": reference.lo99 <= reference_mean() && reference_mean() <= reference.hi99,
    });
    Ok((rows, details))
}

/// Exact shortest-word distances from (1, 0) to every (position, lamp
/// configuration) supported in the window [1 − r, n + r], r the reach of S.
pub struct LineSearch {
    n: i64,
    lo: i64,
    width: usize,
    order: u64,
    dist: Vec<u16>,
}

impl LineSearch {
    pub fn new(s: &GeneratingSet, n: i64, budget: usize) -> Result<Self> {
        if s.group.base != Base::Line {
            return Err(Error::Domain("line search needs the line as base".into()));
        }
        let order = s
            .group
            .lamps
            .order()
            .ok_or_else(|| Error::Unsupported("exact line search needs a finite lamp group".into()))?
            as u64;
        let r = s.reach() as i64;
        let lo = 1 - r;
        let width = (n + 2 * r) as usize;
        let configs = (order as f64).powi(width as i32);
        if configs * width as f64 > budget as f64 {
            return Err(Error::Resource(format!(
                "exact search over {width} sites with {order} lamp values exceeds the state budget {budget}"
            )));
        }
        let configs = order.pow(width as u32) as usize;
        let pow: Vec<u64> = (0..width).map(|j| order.pow(j as u32)).collect();
        let moves: Vec<(i64, Vec<(i64, i64)>)> = s
            .moves()
            .into_iter()
            .map(|m| {
                let e = s.element(m);
                (e.pos.x, e.lamps.iter().map(|(p, v)| (p.x, *v)).collect())
            })
            .collect();
        let lamps = &s.group.lamps;
        let mut dist = vec![u16::MAX; width * configs];
        let start = (1 - lo) as usize * configs;
        dist[start] = 0;
        let mut frontier = vec![start];
        let mut d = 0u16;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &state in &frontier {
                let (pi, cfg) = (state / configs, (state % configs) as u64);
                let pos = lo + pi as i64;
                'm: for (shift, changes) in &moves {
                    let mut c = cfg;
                    for &(off, v) in changes {
                        let j = pos + off - lo;
                        if j < 0 || j >= width as i64 {
                            continue 'm;
                        }
                        let digit = (c / pow[j as usize]) % order;
                        let nd = lamps.op(digit as i64, v) as u64;
                        c = c - digit * pow[j as usize] + nd * pow[j as usize];
                    }
                    let q = pos + shift - lo;
                    if q < 0 || q >= width as i64 {
                        continue;
                    }
                    let idx = q as usize * configs + c as usize;
                    if dist[idx] == u16::MAX {
                        dist[idx] = d;
                        next.push(idx);
                    }
                }
            }
            frontier = next;
        }
        Ok(LineSearch { n, lo, width, order, dist })
    }

    fn encode(&self, values: &[i64]) -> usize {
        // values[i] is the lamp at site i + 1.
        let mut c = 0u64;
        let mut p = 1u64;
        for j in 0..self.width as i64 {
            let site = self.lo + j;
            if (1..=self.n).contains(&site) {
                c += values[(site - 1) as usize] as u64 * p;
            }
            p *= self.order;
        }
        c as usize
    }

    fn lookup(&self, end: i64, values: &[i64]) -> Result<u64> {
        let configs = self.order.pow(self.width as u32) as usize;
        let d = self.dist[(end - self.lo) as usize * configs + self.encode(values)];
        if d == u16::MAX {
            return Err(Error::Domain("configuration unreachable inside the search window".into()));
        }
        Ok(d as u64)
    }

    /// Shortest S-word from (1, 0) to (1, Λ).
    pub fn return_cost(&self, values: &[i64]) -> Result<u64> {
        self.lookup(1, values)
    }

    /// Shortest S-word from (1, 0) to (n, Λ).
    pub fn through_cost(&self, values: &[i64]) -> Result<u64> {
        self.lookup(self.n, values)
    }
}

/// Costs of writing Λ on [1, n]: closed form for the SWS set, exact search otherwise.
pub enum LineCosts {
    Sws,
    Exact(FxHashMap<i64, LineSearch>),
}

impl LineCosts {
    pub fn prepare(s: &GeneratingSet, gens: &Generators, lengths: &[i64], budget: usize) -> Result<Self> {
        if *gens == Generators::Sws {
            return Ok(LineCosts::Sws);
        }
        let mut m = FxHashMap::default();
        for &n in lengths {
            if let std::collections::hash_map::Entry::Vacant(e) = m.entry(n) {
                e.insert(LineSearch::new(s, n, budget)?);
            }
        }
        Ok(LineCosts::Exact(m))
    }

    /// (return, through) for Λ = values on [1, values.len()].
    pub fn costs(&self, values: &[i64]) -> Result<(u64, u64)> {
        let n = values.len() as i64;
        match self {
            LineCosts::Sws => {
                let support: Vec<i64> = (0..n).filter(|&i| values[i as usize] != 0).collect();
                Ok((sws_line_length(0, &support), sws_line_length(n - 1, &support)))
            }
            LineCosts::Exact(m) => {
                let s = m.get(&n).ok_or_else(|| Error::Config(format!("no search prepared for length {n}")))?;
                Ok((s.return_cost(values)?, s.through_cost(values)?))
            }
        }
    }
}

fn random_config(order: u64, n: u64, seed: u64, trial: u64) -> Vec<i64> {
    let mut rng = trial_rng(&[seed, n, trial]);
    (0..n).map(|_| rng.random_range(0..order) as i64).collect()
}

pub(super) fn run_const(spec: &ExperimentSpec) -> Result<(Vec<Row>, serde_json::Value)> {
    let seed = spec.seed();
    let lamps = spec.lamps.build()?;
    let order = lamps.order().ok_or_else(|| Error::Unsupported("finite lamp group required".into()))? as u64;
    let gens = spec.generators();
    let set = gens.build(Base::Line, lamps)?;
    let mut lengths: Vec<i64> = Vec::new();
    for &n in spec.sizes() {
        let n = n as i64;
        lengths.extend([n, n / 2, n - n / 2]);
    }
    lengths.retain(|&k| k >= 1);
    let costs = LineCosts::prepare(&set, &gens, &lengths, spec.budget)?;
    let connector = match word_length_bfs(&WreathElement::shift(Point::E1), &set, 64)? {
        WordLength::Exact(k) => k as u64,
        WordLength::Overflow => return Err(Error::Resource("no short word moves one step".into())),
    };
    let mut rows = Vec::new();
    let mut per_size = Vec::new();
    for &n in spec.sizes() {
        let results = map_trials(spec.trials(), |t| -> Result<(u64, u64, i64)> {
            let v = random_config(order, n, seed, t as u64);
            let (ret, thr) = costs.costs(&v)?;
            let slack = if n >= 2 {
                let y = (n / 2) as usize;
                let (_, left) = costs.costs(&v[..y])?;
                let (_, right) = costs.costs(&v[y..])?;
                thr as i64 - (left + right + connector) as i64
            } else {
                i64::MIN
            };
            Ok((ret, thr, slack))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let nf = n as f64;
        let c1: Vec<f64> = results.iter().map(|r| r.0 as f64 / nf).collect();
        let c2: Vec<f64> = results.iter().map(|r| r.1 as f64 / nf).collect();
        let diff: Vec<f64> = results.iter().map(|r| r.0 as f64 - r.1 as f64).collect();
        let max_slack = results.iter().map(|r| r.2).max().unwrap_or(i64::MIN);
        rows.push(Row::from_summary("oned-const", n, "c1", &Summary::of(&c1), seed));
        rows.push(Row::from_summary("oned-const", n, "c2", &Summary::of(&c2), seed));
        per_size.push(json!({
            "n": n,
            "mean_return_minus_through": Summary::of(&diff).mean,
            "subadditivity_max_slack": if n >= 2 { Some(max_slack) } else { None },
            "subadditivity_holds": n < 2 || max_slack <= 0,
        }));
    }
    let details = json!({
        "connector_length": connector,
        "closed_form": matches!(costs, LineCosts::Sws),
        "per_size": per_size,
    });
    Ok((rows, details))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::MomentTag;
    use crate::wreath::{oned_word_length, GeneratingSet, LampConfig, LampGroup, WreathGroup};

    fn sws() -> GeneratingSet {
        GeneratingSet::sws_line(LampGroup::Cyclic2).unwrap()
    }

    #[test]
    fn exact_search_agrees_with_closed_form_for_sws() {
        let s = sws();
        let costs = LineCosts::Sws;
        for n in 1..=6i64 {
            let search = LineSearch::new(&s, n, 10_000_000).unwrap();
            for mask in 0..(1u32 << n) {
                let v: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
                let (r, t) = costs.costs(&v).unwrap();
                assert_eq!(search.return_cost(&v).unwrap(), r, "n={n} mask={mask:b}");
                assert_eq!(search.through_cost(&v).unwrap(), t, "n={n} mask={mask:b}");
            }
        }
    }

    #[test]
    fn exact_search_agrees_with_bfs_for_standard_set() {
        let s = GeneratingSet::standard(WreathGroup::new(Base::Line, LampGroup::Cyclic2));
        let search = LineSearch::new(&s, 5, 10_000_000).unwrap();
        for mask in 0..32u32 {
            let v: Vec<i64> = (0..5).map(|i| ((mask >> i) & 1) as i64).collect();
            let cfg = LampConfig::from_pairs((0..5).map(|i| (Point::new(i, 0), v[i as usize])));
            for (end, got) in [(0, search.return_cost(&v).unwrap()), (4, search.through_cost(&v).unwrap())] {
                let g = WreathElement::new(Point::new(end, 0), cfg.clone());
                assert_eq!(word_length_bfs(&g, &s, 30).unwrap(), WordLength::Exact(got as u32));
            }
        }
    }

    #[test]
    fn sws_special_configurations() {
        let c = LineCosts::Sws;
        for n in [1usize, 4, 9] {
            assert_eq!(c.costs(&vec![0; n]).unwrap(), (0, n as u64 - 1));
            // All ones: the through walk switches every site on its way.
            assert_eq!(c.costs(&vec![1; n]).unwrap().1, (n as u64 - 1).max(2));
        }
        let g = WreathElement::new(Point::ORIGIN, LampConfig::delta(Point::ORIGIN, 1));
        assert_eq!(oned_word_length(&g, &sws()).unwrap().bfs as u64, c.costs(&[1]).unwrap().0);
    }

    #[test]
    fn reference_mean_value() {
        assert!((reference_mean() - 2.3937).abs() < 1e-4);
        let xs: Vec<f64> = (0..400).map(|t| reference_draw(1024, 3, t)).collect();
        let s = Summary::of(&xs);
        assert!(s.lo99 - 0.05 <= reference_mean() && reference_mean() <= s.hi99 + 0.05, "{s:?}");
    }

    #[test]
    fn fast_path_matches_general_sampler_law() {
        let d = StepDistribution::srw(Base::Line);
        let (r, x) = line_range(&d, 1000, 1, 0);
        assert!(r > x.unsigned_abs());
        let lazy = StepDistribution::new(
            Base::Line,
            vec![(Point::new(1, 0), 0.25), (Point::new(-1, 0), 0.25), (Point::new(0, 0), 0.5)],
            MomentTag::FiniteSupport,
            None,
            true,
        )
        .unwrap();
        assert!((lazy.coordinate_sd() - 0.5f64.sqrt()).abs() < 1e-12);
        let (r, x) = line_range(&lazy, 1000, 1, 0);
        assert!(r > x.unsigned_abs());
    }

    #[test]
    fn degenerate_walk_is_rejected() {
        let e = StepDistribution::new(Base::Line, vec![(Point::new(1, 0), 1.0)], MomentTag::FiniteSupport, None, false);
        assert!(e.unwrap_err().to_string().contains("semigroup"));
    }
}
