use super::path::TspResult;
use crate::error::{Error, Result};
use crate::lattice::{Point, PointSet};

pub fn isqrt_ceil(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while r * r < n {
        r += 1;
    }
    r
}

/// 2M⌈√N⌉ + 2M.
pub fn strip_bound(n: usize, side: i64) -> u64 {
    let m = side as u64;
    2 * m * isqrt_ceil(n as u64) + 2 * m
}

/// Boustrophedon over horizontal strips of height ⌈M/⌈√N⌉⌉ of the square
/// [x0, x0+M) × [y0, y0+M); x ascending in even strips, descending in odd ones.
pub fn strip_heuristic(points: &PointSet, lower_left: Point, side: i64) -> Result<TspResult> {
    if let Some(p) = points
        .iter()
        .find(|p| p.x < lower_left.x || p.y < lower_left.y || p.x >= lower_left.x + side || p.y >= lower_left.y + side)
    {
        return Err(Error::Domain(format!("point {p} outside the {side}×{side} square at {lower_left}")));
    }
    let pts: Vec<Point> = points.iter().copied().collect();
    Ok(TspResult::from_order(strip_order(&pts, lower_left.y, side), false))
}

pub fn strip_order(pts: &[Point], y0: i64, side: i64) -> Vec<Point> {
    if pts.is_empty() {
        return Vec::new();
    }
    let r = isqrt_ceil(pts.len() as u64) as i64;
    let w = ((side + r - 1) / r).max(1);
    strip_order_width(pts, y0, w)
}

pub fn strip_order_width(pts: &[Point], y0: i64, w: i64) -> Vec<Point> {
    let mut v: Vec<(i64, i64, i64)> = pts
        .iter()
        .map(|p| {
            let s = (p.y - y0).div_euclid(w);
            let key = if s.rem_euclid(2) == 0 { p.x } else { -p.x };
            let yk = if s.rem_euclid(2) == 0 { p.y } else { -p.y };
            (s, key, yk)
        })
        .collect();
    v.sort_unstable();
    v.into_iter()
        .map(|(s, key, yk)| {
            let x = if s.rem_euclid(2) == 0 { key } else { -key };
            let y = if s.rem_euclid(2) == 0 { yk } else { -yk };
            Point::new(x, y)
        })
        .collect()
}
