//! Endpoint bookkeeping shared by grid paths and S-paths. Each path is
//! carried with the cycle positions of its two ends.

use super::domain::{chords_cross, minimal_arc, next_clockwise};
use crate::error::Result;

pub(crate) struct Chord<T> {
    pub path: T,
    pub ends: (usize, usize),
}

pub(crate) trait Ops<T> {
    fn reverse(&mut self, p: T) -> Result<T>;
    /// Join `a` then `b`, where tail(a) and head(b) share a cycle position.
    fn join(&mut self, a: T, b: T) -> Result<T>;
    /// Given P from u to w and R from z to v, return (u→v, z→w).
    fn uncross(&mut self, p: T, r: T) -> Result<(T, T)>;
}

fn flip<T, O: Ops<T>>(ops: &mut O, c: Chord<T>) -> Result<Chord<T>> {
    Ok(Chord { path: ops.reverse(c.path)?, ends: (c.ends.1, c.ends.0) })
}

/// Merge paths that share an endpoint until all endpoints of distinct paths
/// are distinct.
pub(crate) fn normalize<T, O: Ops<T>>(mut items: Vec<Chord<T>>, ops: &mut O) -> Result<Vec<Chord<T>>> {
    'outer: loop {
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                let (a, b) = (items[i].ends, items[j].ends);
                if a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1 {
                    continue;
                }
                let second = items.remove(j);
                let first = items.remove(i);
                let (first, second) = if a.1 == b.0 {
                    (first, second)
                } else if a.1 == b.1 {
                    (first, flip(ops, second)?)
                } else if a.0 == b.1 {
                    (second, first)
                } else {
                    (flip(ops, first)?, second)
                };
                let ends = (first.ends.0, second.ends.1);
                let path = ops.join(first.path, second.path)?;
                items.insert(i, Chord { path, ends });
                continue 'outer;
            }
        }
        return Ok(items);
    }
}

pub(crate) fn crossing_free<T>(items: &[Chord<T>], n: usize) -> Result<bool> {
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if chords_cross(items[i].ends, items[j].ends, n)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Repeatedly set aside paths without essential crossings; otherwise take the
/// path whose smaller side holds the fewest endpoints, and uncross it with
/// the path owning the first endpoint on that side. The new path joining the
/// two adjacent endpoints crosses nothing, so each uncrossing retires a path.
pub(crate) fn uncross_all<T, O: Ops<T>>(items: Vec<Chord<T>>, n: usize, ops: &mut O) -> Result<(Vec<Chord<T>>, usize)> {
    let mut active = items;
    let mut done: Vec<Chord<T>> = Vec::new();
    let mut count = 0;
    loop {
        let mut crossing = vec![false; active.len()];
        for i in 0..active.len() {
            for j in i + 1..active.len() {
                if chords_cross(active[i].ends, active[j].ends, n)? {
                    crossing[i] = true;
                    crossing[j] = true;
                }
            }
        }
        let mut keep = Vec::new();
        for (c, x) in active.into_iter().zip(crossing) {
            if x {
                keep.push(c);
            } else {
                done.push(c);
            }
        }
        active = keep;
        if active.is_empty() {
            return Ok((done, count));
        }
        let endpoints = |skip: usize, items: &[Chord<T>]| -> Vec<usize> {
            items.iter().enumerate().filter(|e| e.0 != skip).flat_map(|e| [e.1.ends.0, e.1.ends.1]).collect()
        };
        let (pi, _, u, _) = (0..active.len())
            .map(|i| {
                let (k, u, w) = minimal_arc(active[i].ends, &endpoints(i, &active), n);
                (i, k, u, w)
            })
            .min_by_key(|e| (e.1, e.0))
            .expect("non-empty");
        let v = next_clockwise(u, &endpoints(pi, &active), n).expect("a crossing path exists");
        let ri = active.iter().position(|c| c.ends.0 == v || c.ends.1 == v).expect("endpoint owner");
        let (lo, hi) = (pi.min(ri), pi.max(ri));
        let b = active.remove(hi);
        let a = active.remove(lo);
        let (mut p, mut r) = if lo == pi { (a, b) } else { (b, a) };
        if p.ends.0 != u {
            p = flip(ops, p)?;
        }
        if r.ends.1 != v {
            r = flip(ops, r)?;
        }
        let (w, z) = (p.ends.1, r.ends.0);
        let (q1, q2) = ops.uncross(p.path, r.path)?;
        count += 1;
        active.insert(lo, Chord { path: q1, ends: (u, v) });
        active.insert(hi, Chord { path: q2, ends: (z, w) });
    }
}
