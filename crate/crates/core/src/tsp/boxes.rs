//! Tiling of the plane into C×C boxes and a depth-first visiting order over
//! the occupied ones.

use crate::lattice::Point;
use rustc_hash::{FxHashMap, FxHashSet};

#[inline]
pub fn box_of(p: Point, c: i64) -> Point {
    Point::new(p.x.div_euclid(c), p.y.div_euclid(c))
}

/// Bucket points by box; each bucket keeps the input order.
pub fn bucket(points: impl IntoIterator<Item = Point>, c: i64) -> FxHashMap<Point, Vec<Point>> {
    let mut m: FxHashMap<Point, Vec<Point>> = FxHashMap::default();
    for p in points {
        m.entry(box_of(p, c)).or_default().push(p);
    }
    m
}

/// Preorder of an iterative depth-first search over 4-adjacent boxes.
/// Components are taken in sorted order of their smallest box; neighbours
/// are tried in the order +x, +y, −x, −y.
pub fn dfs_order(boxes: &FxHashSet<Point>) -> Vec<Point> {
    let mut sorted: Vec<Point> = boxes.iter().copied().collect();
    sorted.sort_unstable();
    let mut seen: FxHashSet<Point> = FxHashSet::default();
    let mut out = Vec::with_capacity(sorted.len());
    for &root in &sorted {
        if !seen.insert(root) {
            continue;
        }
        out.push(root);
        let mut stack: Vec<(Point, usize)> = vec![(root, 0)];
        while let Some(top) = stack.last_mut() {
            let (b, k) = *top;
            if k == 4 {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let nb = b.neighbors()[k];
            if boxes.contains(&nb) && seen.insert(nb) {
                out.push(nb);
                stack.push((nb, 0));
            }
        }
    }
    out
}

/// Concatenate per-box orders, reversing a block when that shortens the
/// junction with what precedes it.
pub fn chain(blocks: Vec<Vec<Point>>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for mut b in blocks {
        if b.is_empty() {
            continue;
        }
        if let Some(&last) = out.last() {
            if last.dist(b[b.len() - 1]) < last.dist(b[0]) {
                b.reverse();
            }
        }
        out.extend(b);
    }
    out
}

/// Row-by-row snake through the points of one box.
pub fn snake(pts: &[Point]) -> Vec<Point> {
    let mut v = pts.to_vec();
    v.sort_unstable_by_key(|p| {
        let dir = if p.y.rem_euclid(2) == 0 { p.x } else { -p.x };
        (p.y, dir)
    });
    v
}
