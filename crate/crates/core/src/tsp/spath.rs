use crate::error::{Error, Result};
use crate::lattice::{Base, Point};
use crate::wreath::{GeneratingSet, LampConfig, LampGroup};
use rustc_hash::FxHashMap;

/// Shortest S-path that starts at (z, 0) for some z on the inner boundary of
/// the box [corner, corner+side)² and ends with lamp configuration exactly
/// `target`. Paths are confined to the box grown by reach(S) on every side,
/// so every lamp they touch fits one 64-bit mask. Z/2Z lamps only.
pub fn s_path_tsp_exact(
    target: &LampConfig,
    corner: Point,
    side: i64,
    s: &GeneratingSet,
    budget: usize,
) -> Result<u64> {
    if s.group.lamps != LampGroup::Cyclic2 {
        return Err(Error::Unsupported("exact S-path TSP is implemented for Z/2Z lamps".into()));
    }
    if s.group.base != Base::Plane {
        return Err(Error::Unsupported("exact S-path TSP is implemented over Z²".into()));
    }
    if side < 1 {
        return Err(Error::Config("box side must be positive".into()));
    }
    let inside = |p: Point, lo: Point, n: i64| p.x >= lo.x && p.y >= lo.y && p.x < lo.x + n && p.y < lo.y + n;
    if let Some(p) = target.support().into_iter().find(|p| !inside(*p, corner, side)) {
        return Err(Error::Domain(format!("lamp at {p} lies outside the box")));
    }
    if target.is_empty() {
        return Ok(0);
    }
    let m = s.reach() as i64;
    let lo = Point::new(corner.x - m, corner.y - m);
    let n = side + 2 * m;
    if n * n > 64 {
        return Err(Error::Resource(format!("region of {}×{} cells exceeds the 64-lamp mask", n, n)));
    }
    let bit = |p: Point| -> Option<u64> {
        if inside(p, lo, n) {
            Some(1u64 << ((p.y - lo.y) * n + (p.x - lo.x)))
        } else {
            None
        }
    };
    let goal: u64 = target.support().into_iter().map(|p| bit(p).unwrap()).fold(0, |a, b| a | b);
    let gens: Vec<(Point, Vec<Point>)> = s
        .moves()
        .into_iter()
        .map(|mv| {
            let e = s.element(mv);
            (e.pos, e.lamps.support())
        })
        .collect();
    let cells = (n * n) as usize;
    let cell_point = |i: usize| Point::new(lo.x + i as i64 % n, lo.y + i as i64 / n);
    // trans[cell][gen] = (next cell, toggled lamps) when the move stays inside.
    let trans: Vec<Vec<(u8, u64)>> = (0..cells)
        .map(|i| {
            let pos = cell_point(i);
            gens.iter()
                .filter_map(|(shift, lamps)| {
                    let mut mask = 0u64;
                    for &y in lamps {
                        mask ^= bit(pos + y)?;
                    }
                    let q = pos + *shift;
                    bit(q)?;
                    Some((((q.y - lo.y) * n + (q.x - lo.x)) as u8, mask))
                })
                .collect()
        })
        .collect();
    // Admissible estimate: every differing lamp needs a switching move, and
    // the farthest one must be brought within the lamp radius.
    let per_move = gens.iter().map(|g| g.1.len()).max().unwrap_or(1).max(1) as u32;
    let step = gens.iter().map(|g| g.0.l1()).max().unwrap_or(1).max(1) as u32;
    let radius = gens.iter().flat_map(|g| g.1.iter().map(|y| y.l1())).max().unwrap_or(0) as u32;
    let pure = gens.iter().all(|(shift, lamps)| *shift == Point::ORIGIN || lamps.is_empty());
    let dist: Vec<Vec<u32>> =
        (0..cells).map(|i| (0..cells).map(|j| cell_point(i).dist(cell_point(j)) as u32).collect()).collect();
    let h = |cell: usize, cfg: u64| -> u32 {
        let diff = cfg ^ goal;
        if diff == 0 {
            return 0;
        }
        let switches = diff.count_ones().div_ceil(per_move);
        let mut far = 0;
        let mut d = diff;
        while d != 0 {
            let j = d.trailing_zeros() as usize;
            far = far.max(dist[cell][j]);
            d &= d - 1;
        }
        let moves = far.saturating_sub(radius).div_ceil(step);
        if pure {
            switches + moves
        } else {
            switches.max(moves)
        }
    };
    let mut best: FxHashMap<(u8, u64), u32> = FxHashMap::default();
    let mut buckets: Vec<Vec<(u8, u64, u32)>> = Vec::new();
    let push = |buckets: &mut Vec<Vec<(u8, u64, u32)>>, f: u32, st: (u8, u64, u32)| {
        let f = f as usize;
        if buckets.len() <= f {
            buckets.resize_with(f + 1, Vec::new);
        }
        buckets[f].push(st);
    };
    for y in corner.y..corner.y + side {
        for x in corner.x..corner.x + side {
            if x == corner.x || y == corner.y || x == corner.x + side - 1 || y == corner.y + side - 1 {
                let c = ((y - lo.y) * n + (x - lo.x)) as u8;
                best.insert((c, 0), 0);
                push(&mut buckets, h(c as usize, 0), (c, 0, 0));
            }
        }
    }
    let mut f = 0;
    while f < buckets.len() {
        let Some((c, cfg, g)) = buckets[f].pop() else {
            f += 1;
            continue;
        };
        if best.get(&(c, cfg)).is_some_and(|&b| b < g) {
            continue;
        }
        if cfg == goal {
            return Ok(g as u64);
        }
        for &(q, mask) in &trans[c as usize] {
            let nc = cfg ^ mask;
            let ng = g + 1;
            let e = best.entry((q, nc)).or_insert(u32::MAX);
            if ng < *e {
                *e = ng;
                let nf = ng + h(q as usize, nc);
                push(&mut buckets, nf.max(f as u32), (q, nc, ng));
            }
        }
        if best.len() > budget {
            return Err(Error::Resource(format!("S-path search exceeded {budget} states")));
        }
    }
    Err(Error::Domain("target configuration is unreachable inside the region".into()))
}
