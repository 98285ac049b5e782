use super::element::WreathElement;
use super::genset::{GeneratingSet, Move};
use crate::error::{Error, Result};
use rustc_hash::FxHashMap;

pub const DEFAULT_STATE_BUDGET: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordLength {
    Exact(u32),
    Overflow,
}

impl WordLength {
    pub fn exact(self) -> Option<u32> {
        match self {
            WordLength::Exact(k) => Some(k),
            WordLength::Overflow => None,
        }
    }
}

/// Ball of the word metric for S ∪ S⁻¹ with a parent move per element.
pub struct Ball {
    pub radius: u32,
    dist: FxHashMap<WreathElement, (u32, Option<Move>)>,
}

impl Ball {
    /// Breadth-first search from the identity until `radius`, or until
    /// `stop` is found (the layer containing it is completed first).
    pub fn explore(s: &GeneratingSet, radius: u32, budget: usize, stop: Option<&WreathElement>) -> Result<Ball> {
        Self::explore_from(s, WreathElement::identity(), radius, budget, stop)
    }

    pub fn explore_from(
        s: &GeneratingSet,
        root: WreathElement,
        radius: u32,
        budget: usize,
        stop: Option<&WreathElement>,
    ) -> Result<Ball> {
        let moves = s.moves();
        let mut dist: FxHashMap<WreathElement, (u32, Option<Move>)> = FxHashMap::default();
        dist.insert(root.clone(), (0, None));
        let mut frontier = vec![root];
        let mut r = 0;
        while r < radius && !frontier.is_empty() {
            if let Some(t) = stop {
                if dist.contains_key(t) {
                    break;
                }
            }
            let mut next = Vec::new();
            for g in &frontier {
                for &m in &moves {
                    let h = s.group.mul(g, s.element(m));
                    if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(h) {
                        next.push(e.key().clone());
                        e.insert((r + 1, Some(m)));
                        if dist.len() > budget {
                            return Err(Error::Resource(format!(
                                "word-metric BFS exceeded the state budget of {budget} at radius {}",
                                r + 1
                            )));
                        }
                    }
                }
            }
            frontier = next;
            r += 1;
        }
        Ok(Ball { radius: r, dist })
    }

    pub fn get(&self, g: &WreathElement) -> Option<u32> {
        self.dist.get(g).map(|e| e.0)
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WreathElement, u32)> {
        self.dist.iter().map(|(k, v)| (k, v.0))
    }

    /// Elements sorted by (distance, element) for reproducible iteration.
    pub fn sorted(&self) -> Vec<(WreathElement, u32)> {
        let mut v: Vec<(WreathElement, u32)> = self.dist.iter().map(|(k, v)| (k.clone(), v.0)).collect();
        v.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        v
    }

    /// A geodesic word from the root to `g`, if `g` is in the ball.
    pub fn word_to(&self, s: &GeneratingSet, g: &WreathElement) -> Option<Vec<Move>> {
        let mut cur = g.clone();
        let mut word = Vec::new();
        loop {
            let &(_, parent) = self.dist.get(&cur)?;
            match parent {
                None => break,
                Some(m) => {
                    word.push(m);
                    cur = s.group.mul(&cur, s.element(m.flipped()));
                }
            }
        }
        word.reverse();
        Some(word)
    }
}

/// l_S(g) for S ∪ S⁻¹, or Overflow when it exceeds `radius_cap`.
pub fn word_length_bfs(g: &WreathElement, s: &GeneratingSet, radius_cap: u32) -> Result<WordLength> {
    word_length_bfs_budget(g, s, radius_cap, DEFAULT_STATE_BUDGET)
}

pub fn word_length_bfs_budget(
    g: &WreathElement,
    s: &GeneratingSet,
    radius_cap: u32,
    budget: usize,
) -> Result<WordLength> {
    s.group.check(g)?;
    let ball = Ball::explore(s, radius_cap, budget, Some(g))?;
    Ok(match ball.get(g) {
        Some(d) => WordLength::Exact(d),
        None => WordLength::Overflow,
    })
}

/// Semigroup generation check: every standard generator and its inverse is
/// a positive word in S of length ≤ radius. `Ok(false)` is inconclusive.
pub fn generates_within(s: &GeneratingSet, radius: u32, budget: usize) -> Result<bool> {
    use super::lamp::LampConfig;
    use crate::lattice::{Base, Point};
    let group = &s.group;
    let mut targets = vec![WreathElement::shift(Point::E1), WreathElement::shift(-Point::E1)];
    if group.base == Base::Plane {
        targets.push(WreathElement::shift(Point::E2));
        targets.push(WreathElement::shift(-Point::E2));
    }
    match group.lamps.elements() {
        Some(els) => {
            for v in els.into_iter().skip(1) {
                targets.push(WreathElement::new(Point::ORIGIN, LampConfig::delta(Point::ORIGIN, v)));
            }
        }
        None => {
            for v in [1, -1] {
                targets.push(WreathElement::new(Point::ORIGIN, LampConfig::delta(Point::ORIGIN, v)));
            }
        }
    }
    // Directed BFS with the forward generators only.
    let mut seen: rustc_hash::FxHashSet<WreathElement> = Default::default();
    seen.insert(WreathElement::identity());
    let mut frontier = vec![WreathElement::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for g in &frontier {
            for h in &s.generators {
                let x = group.mul(g, h);
                if seen.insert(x.clone()) {
                    next.push(x);
                    if seen.len() > budget {
                        return Err(Error::Resource("semigroup check exceeded the state budget".into()));
                    }
                }
            }
        }
        if targets.iter().all(|t| seen.contains(t)) {
            return Ok(true);
        }
        frontier = next;
    }
    Ok(targets.iter().all(|t| seen.contains(t)))
}
