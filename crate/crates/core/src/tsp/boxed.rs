use super::boxes::{box_of, bucket, dfs_order};
use super::exact::exact_order;
use super::path::{order_length, GridPath, TspResult};
use super::polish::{polish, PolishOptions};
use super::strip::strip_order;
use crate::error::{Error, Result};
use crate::lattice::{inner_boundary, Point, PointSet};
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxOptions {
    /// Full boxes with at most this many points get an exact sub-tour.
    pub exact_cap: usize,
    pub polish: bool,
}

impl Default for BoxOptions {
    fn default() -> Self {
        BoxOptions { exact_cap: 10, polish: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoxTour {
    pub result: TspResult,
    /// Length of the concatenated per-box construction before polishing.
    pub construction: u64,
    /// Σ over full boxes of the sub-tour lengths used.
    pub sum_full: u64,
    /// Σ_full + (2C²+4)|∂R| + 4|R|/C.
    pub upper2: f64,
    pub boxes: usize,
    pub full_boxes: usize,
}

/// Candidate sub-tours of one box: the exact tour for small full boxes,
/// otherwise the strip order under each of the eight symmetries of the box.
fn sub_tours(pts: &[Point], corner: Point, c: i64, full: bool, cap: usize) -> Vec<Vec<Point>> {
    if pts.len() <= 1 {
        return vec![pts.to_vec()];
    }
    if full && pts.len() <= cap {
        let mut sorted = pts.to_vec();
        sorted.sort_unstable();
        let (_, idx) = exact_order(&sorted);
        return vec![idx.into_iter().map(|i| sorted[i]).collect()];
    }
    let m = c - 1;
    let fwd = |t: u8, p: Point| -> Point {
        let (u, v) = (p.x - corner.x, p.y - corner.y);
        let (u, v) = if t & 4 != 0 { (v, u) } else { (u, v) };
        let u = if t & 1 != 0 { m - u } else { u };
        let v = if t & 2 != 0 { m - v } else { v };
        Point::new(u, v)
    };
    let back = |t: u8, q: Point| -> Point {
        let u = if t & 1 != 0 { m - q.x } else { q.x };
        let v = if t & 2 != 0 { m - q.y } else { q.y };
        let (u, v) = if t & 4 != 0 { (v, u) } else { (u, v) };
        Point::new(u + corner.x, v + corner.y)
    };
    (0..8u8)
        .map(|t| {
            let local: Vec<Point> = pts.iter().map(|&p| fwd(t, p)).collect();
            strip_order(&local, 0, c).into_iter().map(|q| back(t, q)).collect()
        })
        .collect()
}

/// Pick one candidate (possibly reversed) per box, minimising the jump from
/// the previous box plus the distance to the next box's centre.
fn chain_candidates(cands: Vec<Vec<Vec<Point>>>, anchors: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for (k, list) in cands.into_iter().enumerate() {
        if list[0].is_empty() {
            continue;
        }
        let next = anchors[k + 1..].first().copied();
        let cost = |first: Point, last: Point, prev: Option<Point>| {
            prev.map_or(0, |p| p.dist(first)) + next.map_or(0, |q| q.dist(last))
        };
        let prev = out.last().copied();
        let mut best: Option<(u64, usize, bool)> = None;
        for (i, c) in list.iter().enumerate() {
            for rev in [false, true] {
                let (f, l) = if rev { (c[c.len() - 1], c[0]) } else { (c[0], c[c.len() - 1]) };
                let v = cost(f, l, prev);
                if best.map_or(true, |b| v < b.0) {
                    best = Some((v, i, rev));
                }
            }
        }
        let (_, i, rev) = best.expect("non-empty");
        let mut chosen = list.into_iter().nth(i).unwrap();
        if rev {
            chosen.reverse();
        }
        out.extend(chosen);
    }
    out
}

/// Visiting path for a diluted range `diluted ⊆ range` built box by box:
/// boxes meeting the range in depth-first order, sub-tours inside.
pub fn box_tsp_diluted(diluted: &PointSet, range: &PointSet, c: i64, opts: BoxOptions) -> Result<BoxTour> {
    if c < 2 {
        return Err(Error::Config(format!("box side must be at least 2, got {c}")));
    }
    if !diluted.is_subset(range) {
        return Err(Error::Domain("diluted set is not contained in the range".into()));
    }
    let rb = inner_boundary(range).len();
    let overhead = (2 * c * c + 4) as f64 * rb as f64 + 4.0 * range.len() as f64 / c as f64;
    if diluted.is_empty() {
        let anchor = range.sorted().first().copied().unwrap_or(Point::ORIGIN);
        let result = TspResult { length: 0, path: GridPath::single(anchor), exact: true, order: Vec::new() };
        return Ok(BoxTour { result, construction: 0, sum_full: 0, upper2: overhead, boxes: 0, full_boxes: 0 });
    }
    let mut counts = rustc_hash::FxHashMap::<Point, i64>::default();
    for p in range.iter() {
        *counts.entry(box_of(*p, c)).or_default() += 1;
    }
    let keys: FxHashSet<Point> = counts.keys().copied().collect();
    let order = dfs_order(&keys);
    let mut buckets = bucket(diluted.sorted(), c);
    let jobs: Vec<(Point, bool, Vec<Point>)> =
        order.iter().map(|b| (*b, counts[b] == c * c, buckets.remove(b).unwrap_or_default())).collect();
    let run = |(b, full, pts): &(Point, bool, Vec<Point>)| {
        let corner = Point::new(b.x * c, b.y * c);
        sub_tours(pts, corner, c, *full, opts.exact_cap)
    };
    #[cfg(feature = "parallel")]
    let cands: Vec<Vec<Vec<Point>>> = {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let cands: Vec<Vec<Vec<Point>>> = jobs.iter().map(run).collect();
    let anchors: Vec<Point> = jobs.iter().map(|j| Point::new(j.0.x * c + c / 2, j.0.y * c + c / 2)).collect();
    let mut path = chain_candidates(cands, &anchors);
    // Σ_full counts the sub-tour actually used in each full box.
    let mut sum_full = 0;
    let mut at = 0;
    for j in &jobs {
        let k = j.2.len();
        if j.1 && k > 0 {
            sum_full += order_length(&path[at..at + k]);
        }
        at += k;
    }
    let full_boxes = jobs.iter().filter(|j| j.1).count();
    let construction = order_length(&path);
    if opts.polish {
        polish(&mut path, PolishOptions::default());
    }
    Ok(BoxTour {
        result: TspResult::from_order(path, false),
        construction,
        sum_full,
        upper2: sum_full as f64 + overhead,
        boxes: order.len(),
        full_boxes,
    })
}
