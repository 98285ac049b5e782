use super::path::TspResult;
use crate::error::{Error, Result};
use crate::lattice::{Point, PointSet};

pub const DEFAULT_EXACT_CAP: usize = 18;

/// Held–Karp over the L1 complete graph on the points (sorted
/// lexicographically), open path with free endpoints. Ties keep the
/// smaller predecessor index.
pub fn exact_tsp(points: &PointSet, cap: usize) -> Result<TspResult> {
    if points.is_empty() {
        return Err(Error::Domain("exact TSP needs at least one point".into()));
    }
    if points.len() > cap.min(24) {
        return Err(Error::Resource(format!(
            "{} points exceed the exact-solver cap of {}; use a heuristic solver",
            points.len(),
            cap.min(24)
        )));
    }
    let pts = points.sorted();
    let (_, order) = exact_order(&pts);
    Ok(TspResult::from_order(order.into_iter().map(|i| pts[i]).collect(), true))
}

/// Optimal length and visiting order (indices into `pts`).
pub fn exact_order(pts: &[Point]) -> (u64, Vec<usize>) {
    let n = pts.len();
    if n <= 1 {
        return (0, (0..n).collect());
    }
    let d: Vec<u32> = (0..n * n).map(|k| pts[k / n].dist(pts[k % n]) as u32).collect();
    let full = 1usize << n;
    const INF: u32 = u32::MAX;
    let mut dp = vec![INF; full * n];
    let mut par = vec![u8::MAX; full * n];
    for j in 0..n {
        dp[(1 << j) * n + j] = 0;
    }
    for mask in 1..full {
        for j in 0..n {
            let cur = dp[mask * n + j];
            if cur == INF || mask & (1 << j) == 0 {
                continue;
            }
            let row = &d[j * n..j * n + n];
            for (k, &w) in row.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let nm = mask | (1 << k);
                let cand = cur + w;
                let slot = nm * n + k;
                if cand < dp[slot] {
                    dp[slot] = cand;
                    par[slot] = j as u8;
                }
            }
        }
    }
    let last_mask = full - 1;
    let (mut best, mut end) = (INF, 0);
    for j in 0..n {
        if dp[last_mask * n + j] < best {
            best = dp[last_mask * n + j];
            end = j;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = last_mask;
    let mut j = end;
    loop {
        order.push(j);
        let p = par[mask * n + j];
        mask &= !(1 << j);
        if p == u8::MAX {
            break;
        }
        j = p as usize;
    }
    order.reverse();
    (best as u64, order)
}
