use super::bfs::generates_within;
use super::element::{WreathElement, WreathGroup};
use super::genset::GeneratingSet;
use super::lamp::{LampConfig, LampGroup};
use crate::error::{Error, Result};
use crate::lattice::{Point, StepDistribution};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

/// One atom in a form cheap to apply to a mutable state: lamp changes at
/// offsets from the current position, then the move.
#[derive(Clone, Debug, PartialEq)]
pub struct WreathStep {
    pub lamps: Vec<(Point, i64)>,
    pub shift: Point,
}

/// Finitely supported step law μ on B≀L.
#[derive(Clone, Debug)]
pub struct WreathStepDistribution {
    pub group: WreathGroup,
    atoms: Vec<(WreathElement, f64)>,
    steps: Vec<WreathStep>,
    weights: Option<WeightedIndex<f64>>,
}

/// μ = a·u + (1−a)·μ′ with u uniform on {id, δ}.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub a: f64,
    pub residual: Option<WreathStepDistribution>,
}

fn delta() -> WreathElement {
    WreathElement::new(Point::ORIGIN, LampConfig::delta(Point::ORIGIN, 1))
}

impl WreathStepDistribution {
    /// Atoms with equal elements are merged; order is by first occurrence.
    pub fn new(group: WreathGroup, atoms: Vec<(WreathElement, f64)>) -> Result<Self> {
        let mut merged: Vec<(WreathElement, f64)> = Vec::new();
        for (g, p) in atoms {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::Config(format!("atom with probability {p}")));
            }
            group.check(&g)?;
            match merged.iter_mut().find(|e| e.0 == g) {
                Some(e) => e.1 += p,
                None => merged.push((g, p)),
            }
        }
        let total: f64 = merged.iter().map(|e| e.1).sum();
        if merged.is_empty() || (total - 1.0).abs() > 1e-12 {
            return Err(Error::Config(format!("probabilities sum to {total}, not 1")));
        }
        let uniform = merged.iter().all(|e| (e.1 - merged[0].1).abs() < 1e-15);
        let weights =
            if uniform { None } else { Some(WeightedIndex::new(merged.iter().map(|e| e.1)).expect("validated")) };
        let steps =
            merged.iter().map(|(g, _)| WreathStep { lamps: g.lamps.iter().copied().collect(), shift: g.pos }).collect();
        Ok(WreathStepDistribution { group, atoms: merged, steps, weights })
    }

    /// η∗ν∗η where η is a law on lamp values at the origin and ν a base step law.
    pub fn sws(lamps: LampGroup, eta: &[(i64, f64)], nu: &StepDistribution) -> Result<Self> {
        if nu.tail().is_some() {
            return Err(Error::Unsupported("SWS composition needs a finitely supported base law".into()));
        }
        let group = WreathGroup::new(nu.base(), lamps);
        let mut atoms = Vec::new();
        for &(a, pa) in eta {
            for &(v, pv) in nu.atoms() {
                for &(b, pb) in eta {
                    let first = WreathElement::new(Point::ORIGIN, LampConfig::delta(Point::ORIGIN, a));
                    let mv = WreathElement::shift(v);
                    let last = WreathElement::new(Point::ORIGIN, LampConfig::delta(Point::ORIGIN, b));
                    let g = group.mul(&group.mul(&first, &mv), &last);
                    atoms.push((g, pa * pv * pb));
                }
            }
        }
        Self::new(group, atoms)
    }

    /// Standard SWS walk on Z²≀(Z/2Z): η uniform on {id, δ}, ν simple random walk.
    pub fn standard_sws() -> Self {
        let nu = StepDistribution::srw(crate::lattice::Base::Plane);
        Self::sws(LampGroup::Cyclic2, &[(0, 0.5), (1, 0.5)], &nu).expect("standard SWS is valid")
    }

    /// a·u + (1−a)·μ′.
    pub fn mixture(a: f64, residual: &WreathStepDistribution) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::Config(format!("mixing weight {a} outside [0,1]")));
        }
        let mut atoms: Vec<(WreathElement, f64)> = Vec::new();
        if a > 0.0 {
            atoms.push((WreathElement::identity(), a / 2.0));
            atoms.push((delta(), a / 2.0));
        }
        if a < 1.0 {
            atoms.extend(residual.atoms.iter().map(|(g, p)| (g.clone(), p * (1.0 - a))));
        }
        Self::new(residual.group.clone(), atoms)
    }

    pub fn atoms(&self) -> &[(WreathElement, f64)] {
        &self.atoms
    }

    pub fn steps(&self) -> &[WreathStep] {
        &self.steps
    }

    pub fn prob(&self, g: &WreathElement) -> f64 {
        self.atoms.iter().find(|e| &e.0 == g).map_or(0.0, |e| e.1)
    }

    /// a = min{μ(id), μ(δ)} and μ′ = (μ − a·u)/(1−a).
    pub fn decomposition(&self) -> Decomposition {
        let id = WreathElement::identity();
        let d = delta();
        let a = self.prob(&id).min(self.prob(&d));
        if a >= 1.0 - 1e-12 {
            return Decomposition { a, residual: None };
        }
        let mut atoms = Vec::new();
        for (g, p) in &self.atoms {
            let mut q = *p;
            if *g == id || *g == d {
                q -= a / 2.0;
            }
            let q = q / (1.0 - a);
            if q > 1e-15 {
                atoms.push((g.clone(), q));
            }
        }
        let total: f64 = atoms.iter().map(|e| e.1).sum();
        for e in &mut atoms {
            e.1 /= total;
        }
        let residual = Self::new(self.group.clone(), atoms).ok();
        Decomposition { a, residual }
    }

    /// Support generates the group as a semigroup (directed BFS, radius ≤ `radius`).
    pub fn check_nondegenerate(&self, radius: u32) -> Result<()> {
        let support: Vec<WreathElement> =
            self.atoms.iter().map(|e| e.0.clone()).filter(|g| *g != WreathElement::identity()).collect();
        if support.is_empty() {
            return Err(Error::Config("degenerate step law: support does not generate G as a semigroup".into()));
        }
        let labels = (0..support.len()).map(|i| format!("m{i}")).collect();
        let s = GeneratingSet::new(self.group.clone(), support, labels)?;
        if generates_within(&s, radius, 5_000_000)? {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "degenerate step law: support does not generate G as a semigroup (checked to radius {radius})"
            )))
        }
    }

    #[inline]
    pub fn sample_index<R: Rng>(&self, rng: &mut R) -> usize {
        match &self.weights {
            None => rng.random_range(0..self.atoms.len()),
            Some(w) => w.sample(rng),
        }
    }

    /// Law of the walker displacement.
    pub fn base_projection(&self) -> Vec<(Point, f64)> {
        let mut out: Vec<(Point, f64)> = Vec::new();
        for (g, p) in &self.atoms {
            match out.iter_mut().find(|e| e.0 == g.pos) {
                Some(e) => e.1 += p,
                None => out.push((g.pos, *p)),
            }
        }
        out
    }
}
