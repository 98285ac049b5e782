use super::lamp::{LampConfig, LampGroup};
use crate::error::{Error, Result};
use crate::lattice::{Base, Point};
use serde::{Deserialize, Serialize};

/// (x, f): walker position and lamp configuration.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WreathElement {
    pub pos: Point,
    pub lamps: LampConfig,
}

impl WreathElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(pos: Point, lamps: LampConfig) -> Self {
        WreathElement { pos, lamps }
    }

    pub fn shift(pos: Point) -> Self {
        WreathElement { pos, lamps: LampConfig::new() }
    }
}

/// The group B≀L.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathGroup {
    pub base: Base,
    pub lamps: LampGroup,
}

impl WreathGroup {
    pub fn new(base: Base, lamps: LampGroup) -> Self {
        WreathGroup { base, lamps }
    }

    /// Z²≀(Z/2Z).
    pub fn lamplighter() -> Self {
        Self::new(Base::Plane, LampGroup::Cyclic2)
    }

    pub fn check(&self, g: &WreathElement) -> Result<()> {
        if self.base == Base::Line && (g.pos.y != 0 || g.lamps.iter().any(|e| e.0.y != 0)) {
            return Err(Error::LampMismatch(format!("element {g:?} leaves the line")));
        }
        if let Some((p, v)) = g.lamps.iter().find(|e| !self.lamps.contains(e.1)) {
            return Err(Error::LampMismatch(format!("lamp value {v} at {p} is not in the lamp group")));
        }
        Ok(())
    }

    /// (x,f)·(y,h) = (x+y, f·τ_x h).
    pub fn multiply(&self, g: &WreathElement, h: &WreathElement) -> Result<WreathElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    #[inline]
    pub fn mul(&self, g: &WreathElement, h: &WreathElement) -> WreathElement {
        let mut out = g.clone();
        self.mul_assign(&mut out, h);
        out
    }

    /// In-place right multiplication g ← g·h.
    #[inline]
    pub fn mul_assign(&self, g: &mut WreathElement, h: &WreathElement) {
        for &(y, v) in h.lamps.iter() {
            g.lamps.apply(&self.lamps, g.pos + y, v);
        }
        g.pos = g.pos + h.pos;
    }

    /// (x,f)⁻¹ = (−x, y ↦ f(y+x)⁻¹).
    pub fn invert(&self, g: &WreathElement) -> WreathElement {
        WreathElement { pos: -g.pos, lamps: g.lamps.translate(-g.pos).inverse(&self.lamps) }
    }
}
