//! 2-opt and Or-opt improvement of an open visiting path under the L1
//! metric, driven by k-nearest-neighbour lists and a work queue.

use crate::lattice::Point;
use rustc_hash::FxHashMap;
use std::collections::VecDeque;

#[derive(Clone, Copy, Debug)]
pub struct PolishOptions {
    pub neighbors: usize,
    pub max_ring: i64,
    pub or_segment: usize,
    /// Longest stretch of the path a single move may reverse or shift.
    pub max_span: usize,
}

impl Default for PolishOptions {
    fn default() -> Self {
        PolishOptions { neighbors: 8, max_ring: 48, or_segment: 3, max_span: 20_000 }
    }
}

/// k nearest points (L1, ties by ring scan order) for every point.
pub fn neighbor_lists(pts: &[Point], k: usize, max_ring: i64) -> Vec<Vec<u32>> {
    let index: FxHashMap<Point, u32> = pts.iter().enumerate().map(|(i, p)| (*p, i as u32)).collect();
    pts.iter()
        .map(|&p| {
            let mut out = Vec::with_capacity(k);
            let mut d = 1;
            while out.len() < k && d <= max_ring {
                for t in 0..d {
                    for q in [
                        Point::new(p.x + d - t, p.y + t),
                        Point::new(p.x - t, p.y + d - t),
                        Point::new(p.x - d + t, p.y - t),
                        Point::new(p.x + t, p.y - d + t),
                    ] {
                        if let Some(&j) = index.get(&q) {
                            out.push(j);
                        }
                    }
                }
                d += 1;
            }
            out.truncate(k);
            out
        })
        .collect()
}

struct State<'a> {
    pts: &'a [Point],
    tour: Vec<u32>,
    pos: Vec<usize>,
    span: usize,
}

impl State<'_> {
    #[inline]
    fn d(&self, a: u32, b: u32) -> i64 {
        self.pts[a as usize].dist(self.pts[b as usize]) as i64
    }
    #[inline]
    fn at(&self, i: usize) -> u32 {
        self.tour[i]
    }
    fn reindex(&mut self, lo: usize, hi: usize) {
        for i in lo..=hi {
            self.pos[self.tour[i] as usize] = i;
        }
    }
    fn reverse(&mut self, lo: usize, hi: usize) {
        self.tour[lo..=hi].reverse();
        self.reindex(lo, hi);
    }
}

/// Improve `order` in place; returns the final length.
pub fn polish(order: &mut Vec<Point>, opts: PolishOptions) -> u64 {
    let n = order.len();
    if n < 3 {
        return super::order_length(order);
    }
    let pts: Vec<Point> = order.clone();
    let nbrs = neighbor_lists(&pts, opts.neighbors, opts.max_ring);
    let mut st = State { pts: &pts, tour: (0..n as u32).collect(), pos: (0..n).collect(), span: opts.max_span.max(2) };
    let mut queue: VecDeque<u32> = (0..n as u32).collect();
    let mut queued = vec![true; n];
    let push = |q: &mut VecDeque<u32>, queued: &mut Vec<bool>, a: u32| {
        if !queued[a as usize] {
            queued[a as usize] = true;
            q.push_back(a);
        }
    };
    while let Some(a) = queue.pop_front() {
        queued[a as usize] = false;
        let touched = two_opt(&mut st, a, &nbrs[a as usize]).or_else(|| or_opt(&mut st, a, &nbrs, opts.or_segment));
        if let Some(ts) = touched {
            for t in ts {
                push(&mut queue, &mut queued, t);
            }
            push(&mut queue, &mut queued, a);
        }
    }
    *order = st.tour.iter().map(|&i| pts[i as usize]).collect();
    super::order_length(order)
}

fn two_opt(st: &mut State, a: u32, nb: &[u32]) -> Option<Vec<u32>> {
    let n = st.tour.len();
    let i = st.pos[a as usize];
    // successor side
    if i + 1 < n {
        let b = st.at(i + 1);
        let dab = st.d(a, b);
        for &c in nb {
            let dac = st.d(a, c);
            if dac >= dab {
                break;
            }
            let j = st.pos[c as usize];
            if j == i + 1 || j.abs_diff(i) > st.span {
                continue;
            }
            if j + 1 < n {
                let e = st.at(j + 1);
                if e == a {
                    continue;
                }
                let gain = dab + st.d(c, e) - dac - st.d(b, e);
                if gain > 0 {
                    if j > i {
                        st.reverse(i + 1, j);
                    } else {
                        st.reverse(j + 1, i);
                    }
                    return Some(vec![a, b, c, e]);
                }
            } else if j > i {
                let gain = dab - dac;
                if gain > 0 {
                    st.reverse(i + 1, j);
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    // predecessor side
    if i > 0 {
        let b = st.at(i - 1);
        let dab = st.d(a, b);
        for &c in nb {
            let dac = st.d(a, c);
            if dac >= dab {
                break;
            }
            let j = st.pos[c as usize];
            if j + 1 == i || j.abs_diff(i) > st.span {
                continue;
            }
            if j > 0 {
                let e = st.at(j - 1);
                if e == a {
                    continue;
                }
                let gain = dab + st.d(c, e) - dac - st.d(b, e);
                if gain > 0 {
                    if j < i {
                        st.reverse(j, i - 1);
                    } else {
                        st.reverse(i, j - 1);
                    }
                    return Some(vec![a, b, c, e]);
                }
            } else if j < i {
                let gain = dab - dac;
                if gain > 0 {
                    st.reverse(0, i - 1);
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// Move a segment of ≤ `max_len` nodes that starts or ends at `a` next to a
/// neighbour of one of its ends, possibly reversed.
fn or_opt(st: &mut State, a: u32, nbrs: &[Vec<u32>], max_len: usize) -> Option<Vec<u32>> {
    let n = st.tour.len();
    let i = st.pos[a as usize];
    for len in 1..=max_len.min(n - 1) {
        for &forward in &[true, false] {
            let (lo, hi) = if forward {
                if i + len > n {
                    continue;
                }
                (i, i + len - 1)
            } else {
                if i + 1 < len {
                    continue;
                }
                (i + 1 - len, i)
            };
            if len == 1 && !forward {
                continue;
            }
            if let Some(t) = try_move(st, lo, hi, nbrs) {
                return Some(t);
            }
        }
    }
    None
}

fn try_move(st: &mut State, lo: usize, hi: usize, nbrs: &[Vec<u32>]) -> Option<Vec<u32>> {
    let n = st.tour.len();
    let s0 = st.at(lo);
    let s1 = st.at(hi);
    let prev = if lo > 0 { Some(st.at(lo - 1)) } else { None };
    let next = if hi + 1 < n { Some(st.at(hi + 1)) } else { None };
    let removed = match (prev, next) {
        (Some(p), Some(q)) => st.d(p, s0) + st.d(s1, q) - st.d(p, q),
        (Some(p), None) => st.d(p, s0),
        (None, Some(q)) => st.d(s1, q),
        (None, None) => return None,
    };
    if removed <= 0 {
        return None;
    }
    // Candidate gaps: (k, k+1) in tour positions, k = -1 for the front, n-1 for the back.
    let mut best: Option<(i64, isize, bool)> = None;
    let mut consider = |k: isize, st: &State| {
        if k >= lo as isize - 1 && k <= hi as isize || (k - lo as isize).unsigned_abs() > st.span {
            return;
        }
        let u = if k >= 0 { Some(st.at(k as usize)) } else { None };
        let v = if ((k + 1) as usize) < n { Some(st.at((k + 1) as usize)) } else { None };
        let (fwd, rev) = match (u, v) {
            (Some(u), Some(v)) => {
                let base = st.d(u, v);
                (st.d(u, s0) + st.d(s1, v) - base, st.d(u, s1) + st.d(s0, v) - base)
            }
            (Some(u), None) => (st.d(u, s0), st.d(u, s1)),
            (None, Some(v)) => (st.d(s1, v), st.d(s0, v)),
            (None, None) => return,
        };
        let (add, reversed) = if rev < fwd { (rev, true) } else { (fwd, false) };
        let gain = removed - add;
        if gain > 0 && best.map_or(true, |b| gain > b.0) {
            best = Some((gain, k, reversed));
        }
    };
    for &end in &[s0, s1] {
        for &c in &nbrs[end as usize] {
            if st.d(end, c) >= removed {
                break;
            }
            let j = st.pos[c as usize] as isize;
            consider(j, st);
            consider(j - 1, st);
        }
    }
    let (_, k, reversed) = best?;
    let len = hi - lo + 1;
    let (a, b) = if k > hi as isize {
        let k = k as usize;
        st.tour[lo..=k].rotate_left(len);
        st.reindex(lo, k);
        (k + 1 - len, k)
    } else {
        let start = (k + 1) as usize;
        st.tour[start..=hi].rotate_right(len);
        st.reindex(start, hi);
        (start, start + len - 1)
    };
    if reversed {
        st.reverse(a, b);
    }
    let mut touched = vec![s0, s1];
    touched.extend(prev);
    touched.extend(next);
    if a > 0 {
        touched.push(st.at(a - 1));
    }
    if b + 1 < n {
        touched.push(st.at(b + 1));
    }
    Some(touched)
}
