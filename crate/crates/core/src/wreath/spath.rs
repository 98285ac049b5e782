use super::element::WreathElement;
use super::genset::{GeneratingSet, Move};
use super::lamp::LampConfig;
use crate::error::{Error, Result};
use crate::lattice::Point;
use serde::{Deserialize, Serialize};

/// Path in the right Cayley graph: start, then one generator (or inverse) per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SPath {
    pub start: WreathElement,
    pub moves: Vec<Move>,
}

impl SPath {
    pub fn new(start: WreathElement, moves: Vec<Move>) -> Self {
        SPath { start, moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    fn check(&self, s: &GeneratingSet) -> Result<()> {
        match self.moves.iter().find(|m| m.gen >= s.len()) {
            Some(m) => Err(Error::Domain(format!("move index {} out of range ({} generators)", m.gen, s.len()))),
            None => Ok(()),
        }
    }

    /// x₀, x₁, …, x_ℓ.
    pub fn vertices(&self, s: &GeneratingSet) -> Result<Vec<WreathElement>> {
        self.check(s)?;
        let mut cur = self.start.clone();
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(cur.clone());
        for &m in &self.moves {
            s.group.mul_assign(&mut cur, s.element(m));
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Walker positions along the path (lamps ignored).
    pub fn positions(&self, s: &GeneratingSet) -> Result<Vec<Point>> {
        self.check(s)?;
        let mut p = self.start.pos;
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(p);
        for &m in &self.moves {
            p = p + s.element(m).pos;
            out.push(p);
        }
        Ok(out)
    }

    pub fn head(&self) -> Point {
        self.start.pos
    }
}

pub fn path_end(p: &SPath, s: &GeneratingSet) -> Result<WreathElement> {
    p.check(s)?;
    let mut cur = p.start.clone();
    for &m in &p.moves {
        s.group.mul_assign(&mut cur, s.element(m));
    }
    Ok(cur)
}

/// τ_P: pointwise change lamps(start)⁻¹·lamps(end).
pub fn path_tau(p: &SPath, s: &GeneratingSet) -> Result<LampConfig> {
    let end = path_end(p, s)?;
    Ok(p.start.lamps.difference(&end.lamps, &s.group.lamps))
}

/// Walk the same edges backwards from the end. Only valid when every lamp
/// value is an involution, in which case τ is unchanged.
pub fn reverse_path(p: &SPath, s: &GeneratingSet) -> Result<SPath> {
    if !s.group.lamps.is_involutive() {
        return Err(Error::Unsupported("path reversal needs involutive lamps".into()));
    }
    let end = path_end(p, s)?;
    Ok(SPath { start: end, moves: p.moves.iter().rev().map(|m| m.flipped()).collect() })
}
