use super::element::{WreathElement, WreathGroup};
use super::lamp::{LampConfig, LampGroup};
use crate::error::{Error, Result};
use crate::lattice::{Base, Point};
use serde::{Deserialize, Serialize};

/// One edge of the right Cayley graph: generator `gen`, or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub gen: usize,
    pub inverse: bool,
}

impl Move {
    pub fn fwd(gen: usize) -> Self {
        Move { gen, inverse: false }
    }
    pub fn inv(gen: usize) -> Self {
        Move { gen, inverse: true }
    }
    pub fn flipped(self) -> Self {
        Move { gen: self.gen, inverse: !self.inverse }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingSet {
    pub group: WreathGroup,
    pub generators: Vec<WreathElement>,
    pub labels: Vec<String>,
    inverses: Vec<WreathElement>,
}

impl GeneratingSet {
    pub fn new(group: WreathGroup, generators: Vec<WreathElement>, labels: Vec<String>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Config("generating set is empty".into()));
        }
        if labels.len() != generators.len() {
            return Err(Error::Config("one label per generator required".into()));
        }
        for g in &generators {
            group.check(g)?;
        }
        let inverses = generators.iter().map(|g| group.invert(g)).collect();
        Ok(GeneratingSet { group, generators, labels, inverses })
    }

    /// s₁ = (e₁,0), s₂ = (e₂,0), δ = (0, δ₀¹) over Z² (s₂ omitted on the line).
    pub fn standard(group: WreathGroup) -> Self {
        let mut gens = vec![WreathElement::shift(Point::E1)];
        let mut labels = vec!["s1".to_string()];
        if group.base == Base::Plane {
            gens.push(WreathElement::shift(Point::E2));
            labels.push("s2".into());
        }
        gens.push(WreathElement::new(Point::ORIGIN, LampConfig::delta(Point::ORIGIN, 1)));
        labels.push("delta".into());
        Self::new(group, gens, labels).expect("standard set is valid")
    }

    /// SWS set on Z≀F: (e₁, δ₀^γ + δ₁^γ′) for all γ, γ′ ∈ F.
    pub fn sws_line(lamps: LampGroup) -> Result<Self> {
        let els = lamps.elements().ok_or_else(|| Error::Unsupported("SWS set needs a finite lamp group".into()))?;
        let group = WreathGroup::new(Base::Line, lamps);
        let mut gens = Vec::new();
        let mut labels = Vec::new();
        for &a in &els {
            for &b in &els {
                let lamps = LampConfig::from_pairs([(Point::ORIGIN, a), (Point::E1, b)]);
                gens.push(WreathElement::new(Point::E1, lamps));
                labels.push(format!("t[{a},{b}]"));
            }
        }
        Self::new(group, gens, labels)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    #[inline]
    pub fn element(&self, m: Move) -> &WreathElement {
        if m.inverse {
            &self.inverses[m.gen]
        } else {
            &self.generators[m.gen]
        }
    }

    /// Moves of S ∪ S⁻¹ with duplicate elements removed (first occurrence kept).
    pub fn moves(&self) -> Vec<Move> {
        let mut seen: Vec<&WreathElement> = Vec::new();
        let mut out = Vec::new();
        for i in 0..self.len() {
            for m in [Move::fwd(i), Move::inv(i)] {
                let e = self.element(m);
                if !seen.contains(&e) {
                    seen.push(e);
                    out.push(m);
                }
            }
        }
        out
    }

    /// Largest L1 distance from the walker to a lamp it touches or to its
    /// destination, over S ∪ S⁻¹.
    pub fn reach(&self) -> u64 {
        self.generators
            .iter()
            .chain(self.inverses.iter())
            .flat_map(|g| std::iter::once(g.pos.l1()).chain(g.lamps.iter().map(|e| e.0.l1())))
            .max()
            .unwrap_or(0)
    }

    /// Every generator changes at most one lamp.
    pub fn single_lamp(&self) -> bool {
        self.generators.iter().all(|g| g.lamps.len() <= 1)
    }

    /// For each s = (z,f) ∈ S the element (−z, τ_{−z} f) is also in S.
    pub fn is_complete(&self) -> Result<bool> {
        if self.group.lamps.order().is_none() {
            return Err(Error::Unsupported("completeness is defined for finite lamp groups".into()));
        }
        Ok(self.generators.iter().all(|s| {
            let c = WreathElement::new(-s.pos, s.lamps.translate(-s.pos));
            self.generators.contains(&c)
        }))
    }

    /// S with inverses appended where missing.
    pub fn symmetrized(&self) -> Self {
        let mut gens = self.generators.clone();
        let mut labels = self.labels.clone();
        for (i, inv) in self.inverses.iter().enumerate() {
            if !gens.contains(inv) {
                gens.push(inv.clone());
                labels.push(format!("{}^-1", self.labels[i]));
            }
        }
        Self::new(self.group.clone(), gens, labels).expect("inverses are valid")
    }
}
