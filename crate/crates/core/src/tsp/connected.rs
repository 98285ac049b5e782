use super::boxes::{bucket, chain, dfs_order, snake};
use super::path::TspResult;
use super::polish::{polish, PolishOptions};
use crate::error::{Error, Result};
use crate::lattice::{inner_boundary, PointSet};

/// Implementation constant K in ℓ ≤ |V|(1 + K(|∂V|/|V|)^{1/3}).
pub const CONNECTED_K: f64 = 16.0;

/// Box side with (C+1)³ ≈ 4|V|/|∂V|.
pub fn connected_box_side(volume: usize, boundary: usize) -> i64 {
    let r = (4.0 * volume as f64 / boundary.max(1) as f64).cbrt() - 1.0;
    (r.round() as i64).max(1)
}

pub fn connected_bound(volume: usize, boundary: usize, k: f64) -> f64 {
    let v = volume as f64;
    v * (1.0 + k * (boundary as f64 / v).cbrt())
}

/// Visiting path for a 4-connected set: tile into C×C boxes, walk the boxes
/// in depth-first order with a snake inside each, then polish.
pub fn connected_set_tour(v: &PointSet) -> Result<TspResult> {
    if v.is_empty() {
        return Err(Error::Domain("empty set".into()));
    }
    if !v.is_connected() {
        return Err(Error::Domain("set is not 4-connected".into()));
    }
    let c = connected_box_side(v.len(), inner_boundary(v).len());
    let mut buckets = bucket(v.sorted(), c);
    let keys = buckets.keys().copied().collect();
    let blocks = dfs_order(&keys).into_iter().map(|b| snake(&buckets.remove(&b).unwrap_or_default())).collect();
    let mut order = chain(blocks);
    polish(&mut order, PolishOptions::default());
    Ok(TspResult::from_order(order, false))
}
