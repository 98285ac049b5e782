use super::domain::BoxDomain;
use super::driver::{self, Chord, Ops};
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::wreath::{path_tau, reverse_path, Ball, GeneratingSet, LampConfig, LampGroup, Move, SPath, WreathElement};
use rustc_hash::FxHashMap;

/// A shortest word for (Δ, ∅): moves the walker by Δ and leaves every lamp
/// as it was.
pub fn neutral_word(s: &GeneratingSet, delta: Point) -> Result<Vec<Move>> {
    if delta == Point::ORIGIN {
        return Ok(Vec::new());
    }
    let target = WreathElement::shift(delta);
    let cap = 4 * delta.l1() as u32 + 8;
    let ball = Ball::explore(s, cap, 5_000_000, Some(&target))?;
    ball.word_to(s, &target)
        .ok_or_else(|| Error::Resource(format!("no lamp-neutral word to {delta} within radius {cap}")))
}

fn inverse_word(w: &[Move]) -> Vec<Move> {
    w.iter().rev().map(|m| m.flipped()).collect()
}

/// Outcome of the S-path pipeline in one box.
#[derive(Clone, Debug)]
pub struct SUncrossReport {
    pub paths: Vec<SPath>,
    pub uncrossings: usize,
    /// Moves added by connectors (normalisation and uncrossing).
    pub added: usize,
    /// added / |∂D|: the measured constant for this run.
    pub c_s: f64,
}

struct SOps<'a> {
    s: &'a GeneratingSet,
    cache: FxHashMap<Point, Vec<Move>>,
    added: usize,
}

impl SOps<'_> {
    fn connector(&mut self, delta: Point) -> Result<Vec<Move>> {
        if let Some(w) = self.cache.get(&delta) {
            return Ok(w.clone());
        }
        let w = neutral_word(self.s, delta)?;
        self.cache.insert(delta, w.clone());
        Ok(w)
    }

    fn tail(&self, p: &SPath) -> Result<Point> {
        Ok(*p.positions(self.s)?.last().expect("non-empty"))
    }
}

impl Ops<SPath> for SOps<'_> {
    fn reverse(&mut self, p: SPath) -> Result<SPath> {
        reverse_path(&p, self.s)
    }

    fn join(&mut self, a: SPath, b: SPath) -> Result<SPath> {
        let w = self.connector(b.head() - self.tail(&a)?)?;
        self.added += w.len();
        let mut moves = a.moves;
        moves.extend(w);
        moves.extend(b.moves);
        Ok(SPath::new(a.start, moves))
    }

    /// Splice at the closest pair of positions (first on P, then first on R),
    /// bridging with lamp-neutral words so that Σ τ is unchanged.
    fn uncross(&mut self, p: SPath, r: SPath) -> Result<(SPath, SPath)> {
        let pp = p.positions(self.s)?;
        let rp = r.positions(self.s)?;
        let mut best = (u64::MAX, 0, 0);
        for (i, a) in pp.iter().enumerate() {
            for (j, b) in rp.iter().enumerate() {
                let dd = a.dist(*b);
                if dd < best.0 {
                    best = (dd, i, j);
                }
            }
        }
        let (_, i, j) = best;
        let w = self.connector(rp[j] - pp[i])?;
        self.added += 2 * w.len();
        let q1 = [&p.moves[..i], &w[..], &r.moves[j..]].concat();
        let q2 = [&r.moves[..j], &inverse_word(&w)[..], &p.moves[i..]].concat();
        Ok((SPath::new(p.start, q1), SPath::new(r.start, q2)))
    }
}

fn s_chords(paths: Vec<SPath>, s: &GeneratingSet, d: &BoxDomain) -> Result<Vec<Chord<SPath>>> {
    let k = s.reach();
    paths
        .into_iter()
        .map(|p| {
            let pos = p.positions(s)?;
            let ends = (d.project(pos[0], k)?, d.project(*pos.last().unwrap(), k)?);
            Ok(Chord { path: p, ends })
        })
        .collect()
}

/// Concatenate S-paths whose projected endpoints coincide; a lamp-neutral
/// connector bridges the gap between the actual positions.
pub fn s_normalize_endpoints(paths: Vec<SPath>, s: &GeneratingSet, d: &BoxDomain) -> Result<Vec<SPath>> {
    let mut ops = SOps { s, cache: FxHashMap::default(), added: 0 };
    let items = driver::normalize(s_chords(paths, s, d)?, &mut ops)?;
    Ok(items.into_iter().map(|c| c.path).collect())
}

/// Normalise, then remove all essential crossings. Z/2Z lamps only.
pub fn s_uncross_all(paths: Vec<SPath>, s: &GeneratingSet, d: &BoxDomain) -> Result<SUncrossReport> {
    if s.group.lamps != LampGroup::Cyclic2 {
        return Err(Error::Unsupported("S-path uncrossing needs Z/2Z lamps".into()));
    }
    let mut ops = SOps { s, cache: FxHashMap::default(), added: 0 };
    let items = driver::normalize(s_chords(paths, s, d)?, &mut ops)?;
    let (items, uncrossings) = driver::uncross_all(items, d.perimeter(), &mut ops)?;
    Ok(SUncrossReport {
        paths: items.into_iter().map(|c| c.path).collect(),
        uncrossings,
        added: ops.added,
        c_s: ops.added as f64 / d.perimeter() as f64,
    })
}

/// Essential crossing of the projected endpoint chords.
pub fn s_crossing_free(paths: &[SPath], s: &GeneratingSet, d: &BoxDomain) -> Result<bool> {
    driver::crossing_free(&s_chords(paths.to_vec(), s, d)?, d.perimeter())
}

/// Σ τ_P over the collection.
pub fn total_tau(paths: &[SPath], s: &GeneratingSet) -> Result<LampConfig> {
    let mut acc = LampConfig::new();
    for p in paths {
        acc = acc.combine(&path_tau(p, s)?, &s.group.lamps);
    }
    Ok(acc)
}
