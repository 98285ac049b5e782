use super::bfs::{word_length_bfs, WordLength};
use super::element::WreathElement;
use super::genset::GeneratingSet;
use super::lamp::LampGroup;
use crate::error::{Error, Result};
use crate::lattice::{Base, Point, PointSet};
use crate::tsp;

/// Both sides of ℓ_TS(supp f)+|supp f| ≤ l_S(g) ≤ ℓ_TS+|supp f|+|x|+2·Diam(supp f).
///
/// `upper_anchored` uses Diam(supp f ∪ {0}) in place of Diam(supp f); it is the
/// version that holds for every element (see `sandwich` tests).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SandwichBounds {
    pub lower: u64,
    pub upper: u64,
    pub upper_anchored: u64,
    pub tsp_exact: bool,
}

pub fn word_length_bounds(g: &WreathElement) -> Result<SandwichBounds> {
    if g.lamps.iter().any(|e| e.1 != 1) {
        return Err(Error::LampMismatch("bounds are stated for Z/2Z lamps".into()));
    }
    let supp: PointSet = g.lamps.support().into_iter().collect();
    if supp.is_empty() {
        let x = g.pos.l1();
        return Ok(SandwichBounds { lower: 0, upper: x, upper_anchored: x, tsp_exact: true });
    }
    let r = tsp::tsp_auto(&supp);
    let lower = r.length + supp.len() as u64;
    let diam = supp.diameter();
    let mut with_origin = supp.clone();
    with_origin.insert(Point::ORIGIN);
    let diam0 = with_origin.diameter();
    Ok(SandwichBounds {
        lower,
        upper: lower + g.pos.l1() + 2 * diam,
        upper_anchored: lower + g.pos.l1() + 2 * diam0,
        tsp_exact: r.exact,
    })
}

/// Word length on Z≀F for the SWS set, with the two formulas it is compared to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OnedLength {
    pub bfs: u32,
    /// 2·max supp − 2·min supp − |x|.
    pub closed_form: i64,
    /// Shortest walk from 0 to x visiting every lamp site.
    pub covering_walk: u64,
}

impl OnedLength {
    pub fn discrepancy(&self) -> i64 {
        self.bfs as i64 - self.closed_form
    }
}

pub fn oned_word_length(g: &WreathElement, s: &GeneratingSet) -> Result<OnedLength> {
    if s.group.base != Base::Line {
        return Err(Error::Domain("1-D word length needs the line as base".into()));
    }
    s.group.check(g)?;
    let xs: Vec<i64> = g.lamps.iter().map(|e| e.0.x).collect();
    let (lo, hi) = match (xs.iter().min(), xs.iter().max()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::Domain("lamp configuration is empty".into())),
    };
    let x = g.pos.x;
    if x < lo || x > hi {
        return Err(Error::Domain(format!("position {x} outside [{lo}, {hi}]")));
    }
    let walk = sws_line_length(x, &xs);
    // Any word longer than a covering walk of the SWS set is never needed.
    let cap = (walk as u32).max(1) + 2;
    let bfs = match word_length_bfs(g, s, cap)? {
        WordLength::Exact(k) => k,
        WordLength::Overflow => {
            return Err(Error::Resource(format!("BFS radius {cap} exhausted")));
        }
    };
    Ok(OnedLength { bfs, closed_form: 2 * hi - 2 * lo - x.abs(), covering_walk: walk })
}

/// Length of the shortest walk on Z from 0 to x that visits every site in
/// `support`, at least one step when the support is non-empty. With the SWS
/// set every step writes arbitrary values at both of its endpoints, so this is
/// the word length for any finite lamp group.
pub fn sws_line_length(x: i64, support: &[i64]) -> u64 {
    if support.is_empty() {
        return x.unsigned_abs();
    }
    let lo = support.iter().copied().min().unwrap().min(0).min(x);
    let hi = support.iter().copied().max().unwrap().max(0).max(x);
    let span = (hi - lo) as u64;
    let left_first = (0 - lo) as u64 + (hi - x) as u64;
    let right_first = hi as u64 + (x - lo) as u64;
    let len = span + left_first.min(right_first);
    if len == 0 {
        2
    } else {
        len
    }
}

/// The lamp group must be Z/2Z for the standard-case bounds.
pub fn is_lamplighter(s: &GeneratingSet) -> bool {
    s.group.lamps == LampGroup::Cyclic2 && s.group.base == Base::Plane
}
