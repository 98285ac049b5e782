use super::{Point, PointSet};
use crate::error::{Error, Result};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Base {
    Line,
    Plane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentTag {
    FiniteSupport,
    SecondMoment,
    TwoPlusEps,
}

/// Symmetric axis-aligned jumps of size R with P(R ≥ r) = r^(-exponent), r ≥ 1,
/// mixed in with probability `weight`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerTail {
    pub weight: f64,
    pub exponent: f64,
}

impl PowerTail {
    fn pmf(&self, k: u64) -> f64 {
        let k = k as f64;
        k.powf(-self.exponent) - (k + 1.0).powf(-self.exponent)
    }

    /// Σ_{k ≥ r} k^power P(R = k); infinite when the moment does not exist.
    fn moment_from(&self, r: u64, power: i32) -> f64 {
        let b = self.exponent;
        if b <= power as f64 {
            return f64::INFINITY;
        }
        const CUT: u64 = 200_000;
        let r = r.max(1);
        let mut s = 0.0;
        let mut k = r;
        while k < CUT.max(r) {
            s += (k as f64).powi(power) * self.pmf(k);
            k += 1;
        }
        // Σ_{k ≥ K} k^power · b k^(-b-1) ≈ b K^(power-b) / (b-power)
        let kk = CUT.max(r) as f64;
        s + b * kk.powf(power as f64 - b) / (b - power as f64)
    }
}

/// Step law of a base-lattice walk: finite atoms plus an optional power tail.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepDistribution {
    base: Base,
    atoms: Vec<(Point, f64)>,
    moment_tag: MomentTag,
    tail: Option<PowerTail>,
    centered: bool,
    #[serde(skip)]
    uniform: bool,
}

impl StepDistribution {
    pub fn new(
        base: Base,
        atoms: Vec<(Point, f64)>,
        moment_tag: MomentTag,
        tail: Option<PowerTail>,
        centered: bool,
    ) -> Result<Self> {
        if atoms.is_empty() && tail.is_none() {
            return Err(Error::Config("step distribution has no atoms".into()));
        }
        for (v, p) in &atoms {
            if !(p.is_finite() && *p > 0.0) {
                return Err(Error::Config(format!("atom {v} has non-positive probability {p}")));
            }
            if base == Base::Line && v.y != 0 {
                return Err(Error::Config(format!("atom {v} leaves the line")));
            }
        }
        let tw = match tail {
            Some(t) => {
                if !(t.weight > 0.0 && t.weight <= 1.0 && t.exponent > 0.0) {
                    return Err(Error::Config("power tail needs weight in (0,1] and exponent > 0".into()));
                }
                t.weight
            }
            None => 0.0,
        };
        let total: f64 = atoms.iter().map(|a| a.1).sum::<f64>() + tw;
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Config(format!("probabilities sum to {total}, not 1")));
        }
        if tail.is_none() {
            let support: Vec<Point> = atoms.iter().map(|a| a.0).collect();
            if !generates_semigroup(base, &support) {
                return Err(Error::Config(
                    "degenerate step law: support does not generate the lattice as a semigroup".into(),
                ));
            }
        }
        if centered {
            let mx: f64 = atoms.iter().map(|(v, p)| v.x as f64 * p).sum();
            let my: f64 = atoms.iter().map(|(v, p)| v.y as f64 * p).sum();
            if mx.abs() > 1e-9 || my.abs() > 1e-9 {
                return Err(Error::Config(format!("declared centered but mean is ({mx}, {my})")));
            }
        }
        let uniform = tail.is_none() && atoms.iter().all(|a| (a.1 - atoms[0].1).abs() < 1e-15);
        Ok(StepDistribution { base, atoms, moment_tag, tail, centered, uniform })
    }

    /// Simple random walk on Z or Z².
    pub fn srw(base: Base) -> Self {
        let atoms = match base {
            Base::Line => vec![(Point::new(1, 0), 0.5), (Point::new(-1, 0), 0.5)],
            Base::Plane => vec![
                (Point::new(1, 0), 0.25),
                (Point::new(0, 1), 0.25),
                (Point::new(-1, 0), 0.25),
                (Point::new(0, -1), 0.25),
            ],
        };
        Self::new(base, atoms, MomentTag::FiniteSupport, None, true).expect("srw is valid")
    }

    /// Unchecked constructor for laws that are not walks in their own right
    /// (for example a point mass used as a deterministic drift).
    pub fn point_mass(v: Point) -> Self {
        StepDistribution {
            base: if v.y == 0 { Base::Line } else { Base::Plane },
            atoms: vec![(v, 1.0)],
            moment_tag: MomentTag::FiniteSupport,
            tail: None,
            centered: v == Point::ORIGIN,
            uniform: true,
        }
    }

    pub fn base(&self) -> Base {
        self.base
    }
    pub fn atoms(&self) -> &[(Point, f64)] {
        &self.atoms
    }
    pub fn moment_tag(&self) -> MomentTag {
        self.moment_tag
    }
    pub fn tail(&self) -> Option<PowerTail> {
        self.tail
    }
    pub fn is_centered(&self) -> bool {
        self.centered
    }

    /// Standard deviation of one coordinate step (x on the line).
    pub fn coordinate_sd(&self) -> f64 {
        let m2: f64 = self.atoms.iter().map(|(v, p)| (v.x * v.x) as f64 * p).sum();
        let tail = self.tail.map_or(0.0, |t| {
            let share = if self.base == Base::Line { 1.0 } else { 0.5 };
            t.weight * share * t.moment_from(1, 2)
        });
        (m2 + tail).sqrt()
    }

    /// δ_r = Σ_{|g| ≥ r} |g|² μ(g), |g| the L1 norm.
    pub fn tail_second_moment(&self, r: f64) -> f64 {
        self.tail_moment(r, 2)
    }

    /// Σ_{|g| ≥ r} |g| μ(g).
    pub fn tail_first_moment(&self, r: f64) -> f64 {
        self.tail_moment(r, 1)
    }

    fn tail_moment(&self, r: f64, power: i32) -> f64 {
        let atoms: f64 =
            self.atoms.iter().filter(|(v, _)| v.l1() as f64 >= r).map(|(v, p)| (v.l1() as f64).powi(power) * p).sum();
        let tail = self.tail.map_or(0.0, |t| t.weight * t.moment_from(r.max(1.0).ceil() as u64, power));
        atoms + tail
    }

    pub fn sampler(&self) -> StepSampler {
        let weights = if self.uniform {
            None
        } else {
            Some(WeightedIndex::new(self.atoms.iter().map(|a| a.1)).expect("validated weights"))
        };
        StepSampler { dist: self.clone(), weights }
    }
}

/// Semigroup generation test for a finite support: group generation
/// (gcd of minors / entries is 1) and a positive cone equal to the whole space.
pub fn generates_semigroup(base: Base, support: &[Point]) -> bool {
    let v: Vec<Point> = support.iter().copied().filter(|p| *p != Point::ORIGIN).collect();
    match base {
        Base::Line => {
            let g = v.iter().fold(0i64, |g, p| gcd(g, p.x));
            g == 1 && v.iter().any(|p| p.x > 0) && v.iter().any(|p| p.x < 0)
        }
        Base::Plane => {
            let mut g = 0i64;
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    g = gcd(g, cross(v[i], v[j]));
                }
            }
            if g != 1 {
                return false;
            }
            // Contained in a closed half-plane iff some support vector spans a
            // boundary line with everything on one side.
            for a in &v {
                if v.iter().all(|b| cross(*a, *b) >= 0) || v.iter().all(|b| cross(*a, *b) <= 0) {
                    return false;
                }
            }
            true
        }
    }
}

fn cross(a: Point, b: Point) -> i64 {
    a.x * b.y - a.y * b.x
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Draws steps of a [`StepDistribution`].
#[derive(Clone, Debug)]
pub struct StepSampler {
    dist: StepDistribution,
    weights: Option<WeightedIndex<f64>>,
}

impl StepSampler {
    #[inline]
    pub fn step<R: Rng>(&self, rng: &mut R) -> Point {
        if let Some(t) = self.dist.tail {
            if rng.random::<f64>() < t.weight {
                return self.tail_jump(t, rng);
            }
        }
        let i = match &self.weights {
            None => rng.random_range(0..self.dist.atoms.len()),
            Some(w) => w.sample(rng),
        };
        self.dist.atoms[i].0
    }

    fn tail_jump<R: Rng>(&self, t: PowerTail, rng: &mut R) -> Point {
        let u: f64 = 1.0 - rng.random::<f64>();
        let r = u.powf(-1.0 / t.exponent).floor().min(1e15) as i64;
        let dirs = if self.dist.base == Base::Line { 2 } else { 4 };
        match rng.random_range(0..dirs) {
            0 => Point::new(r, 0),
            1 => Point::new(-r, 0),
            2 => Point::new(0, r),
            _ => Point::new(0, -r),
        }
    }
}

/// A sampled walk with its positions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub start: Point,
    pub steps: Vec<Point>,
    pub positions: Vec<Point>,
    pub seed: u64,
}

impl Trajectory {
    pub fn from_steps(start: Point, steps: Vec<Point>, seed: u64) -> Self {
        let mut positions = Vec::with_capacity(steps.len() + 1);
        let mut p = start;
        positions.push(p);
        for s in &steps {
            p = p + *s;
            positions.push(p);
        }
        Trajectory { start, steps, positions, seed }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> Point {
        *self.positions.last().expect("positions never empty")
    }

    pub fn range(&self) -> PointSet {
        self.positions.iter().copied().collect()
    }
}

/// n steps from the origin. The generator is `ChaCha8Rng::seed_from_u64(seed)`;
/// uniform laws draw `random_range(0..k)` per step, others a `WeightedIndex`.
pub fn sample_walk(dist: &StepDistribution, n: usize, seed: u64) -> Trajectory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = dist.sampler();
    let steps: Vec<Point> = (0..n).map(|_| s.step(&mut rng)).collect();
    Trajectory::from_steps(Point::ORIGIN, steps, seed)
}

/// Local times l(n, x).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VisitCounts {
    counts: FxHashMap<Point, u64>,
}

impl VisitCounts {
    pub fn from_positions(ps: &[Point]) -> Self {
        let mut counts: FxHashMap<Point, u64> = FxHashMap::default();
        for p in ps {
            *counts.entry(*p).or_insert(0) += 1;
        }
        VisitCounts { counts }
    }

    pub fn get(&self, p: &Point) -> u64 {
        self.counts.get(p).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn range_size(&self) -> usize {
        self.counts.len()
    }

    pub fn range(&self) -> PointSet {
        self.counts.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, &u64)> {
        self.counts.iter()
    }

    pub fn max_count(&self) -> u64 {
        self.counts.values().copied().max().unwrap_or(0)
    }
}

pub fn visit_counts(t: &Trajectory) -> VisitCounts {
    VisitCounts::from_positions(&t.positions)
}

/// |{x : 1 ≤ l(x) ≤ q}|.
pub fn thin_points(c: &VisitCounts, q: u64) -> usize {
    c.counts.values().filter(|&&k| k >= 1 && k <= q).count()
}

/// Σ_x l(x)^alpha, summed in sorted point order so the result is reproducible.
pub fn local_time_power_sum(c: &VisitCounts, alpha: f64) -> f64 {
    let mut v: Vec<(&Point, &u64)> = c.counts.iter().collect();
    v.sort_unstable_by_key(|e| *e.0);
    v.into_iter().map(|(_, &k)| (k as f64).powf(alpha)).sum()
}
