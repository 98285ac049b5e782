use super::domain::{chords_cross, BoxDomain};
use super::driver::{self, Chord, Ops};
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::tsp::GridPath;

fn ends(p: &GridPath, d: &BoxDomain) -> Result<(usize, usize)> {
    Ok((d.require_position(p.head())?, d.require_position(p.tail())?))
}

fn chords(paths: Vec<GridPath>, d: &BoxDomain) -> Result<Vec<Chord<GridPath>>> {
    paths.into_iter().map(|p| Ok(Chord { ends: ends(&p, d)?, path: p })).collect()
}

/// The ends of p2 lie in different open arcs of ∂D cut at the ends of p1.
pub fn essential_crossing(p1: &GridPath, p2: &GridPath, d: &BoxDomain) -> Result<bool> {
    chords_cross(ends(p1, d)?, ends(p2, d)?, d.perimeter())
}

/// Q₁ = P₁[A₁→O]·P₂[O→B₂], Q₂ = P₂[A₂→O]·P₁[O→B₁], cutting each path at its
/// first visit to O.
pub fn uncross_pair(p1: &GridPath, p2: &GridPath, o: Point) -> Result<(GridPath, GridPath)> {
    let i = p1.vertices().iter().position(|&q| q == o);
    let j = p2.vertices().iter().position(|&q| q == o);
    let (i, j) = match (i, j) {
        (Some(i), Some(j)) => (i, j),
        _ => return Err(Error::Domain(format!("{o} is not on both paths"))),
    };
    let (a, b) = (p1.vertices(), p2.vertices());
    let q1 = [&a[..=i], &b[j + 1..]].concat();
    let q2 = [&b[..=j], &a[i + 1..]].concat();
    Ok((GridPath::new(q1)?, GridPath::new(q2)?))
}

struct GridOps;

impl Ops<GridPath> for GridOps {
    fn reverse(&mut self, p: GridPath) -> Result<GridPath> {
        Ok(p.reversed())
    }
    fn join(&mut self, a: GridPath, b: GridPath) -> Result<GridPath> {
        a.concat(&b)
    }
    fn uncross(&mut self, p: GridPath, r: GridPath) -> Result<(GridPath, GridPath)> {
        let on_r = r.image();
        let o = p
            .vertices()
            .iter()
            .copied()
            .find(|q| on_r.contains(q))
            .ok_or_else(|| Error::Domain("crossing paths share no lattice point".into()))?;
        uncross_pair(&p, &r, o)
    }
}

/// Concatenate paths that share an endpoint, reversing where needed.
pub fn normalize_endpoints(paths: Vec<GridPath>, d: &BoxDomain) -> Result<Vec<GridPath>> {
    let items = driver::normalize(chords(paths, d)?, &mut GridOps)?;
    Ok(items.into_iter().map(|c| c.path).collect())
}

/// Remove all essential crossings; returns the new collection and the number
/// of uncrossings performed (at most the number of paths).
pub fn uncross_all(paths: Vec<GridPath>, d: &BoxDomain) -> Result<(Vec<GridPath>, usize)> {
    let (items, count) = driver::uncross_all(chords(paths, d)?, d.perimeter(), &mut GridOps)?;
    Ok((items.into_iter().map(|c| c.path).collect(), count))
}

/// Number of ordered pairs with an essential crossing.
pub fn crossing_count(paths: &[GridPath], d: &BoxDomain) -> Result<usize> {
    let mut k = 0;
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            if essential_crossing(&paths[i], &paths[j], d)? {
                k += 1;
            }
        }
    }
    Ok(k)
}

/// 1.5·|∂D| + Σ|P|.
pub fn join_bound(paths: &[GridPath], d: &BoxDomain) -> f64 {
    1.5 * d.perimeter() as f64 + paths.iter().map(|p| p.len() as f64).sum::<f64>()
}

/// Collections up to this size are joined in an optimal order.
pub const JOIN_EXACT_MAX: usize = 16;

/// Orders (chord index, reversed) minimising the total perimeter connector
/// length: subset dynamic programme for small collections, nearest
/// endpoint otherwise.
fn join_order(ends: &[(usize, usize)], d: &BoxDomain) -> Vec<(usize, bool)> {
    let m = ends.len();
    let start = |i: usize, r: bool| if r { ends[i].1 } else { ends[i].0 };
    let finish = |i: usize, r: bool| if r { ends[i].0 } else { ends[i].1 };
    if m <= JOIN_EXACT_MAX {
        let full = 1usize << m;
        let idx = |mask: usize, i: usize, r: bool| (mask * m + i) * 2 + r as usize;
        let mut dp = vec![u32::MAX; full * m * 2];
        let mut par = vec![u32::MAX; full * m * 2];
        for i in 0..m {
            for r in [false, true] {
                dp[idx(1 << i, i, r)] = 0;
            }
        }
        for mask in 1..full {
            for i in 0..m {
                if mask >> i & 1 == 0 {
                    continue;
                }
                for r in [false, true] {
                    let cur = dp[idx(mask, i, r)];
                    if cur == u32::MAX {
                        continue;
                    }
                    let at = finish(i, r);
                    for j in 0..m {
                        if mask >> j & 1 == 1 {
                            continue;
                        }
                        for rj in [false, true] {
                            let c = cur + d.arc_distance(at, start(j, rj)) as u32;
                            let k = idx(mask | 1 << j, j, rj);
                            if c < dp[k] {
                                dp[k] = c;
                                par[k] = idx(mask, i, r) as u32;
                            }
                        }
                    }
                }
            }
        }
        let last = (0..m)
            .flat_map(|i| [(i, false), (i, true)])
            .min_by_key(|&(i, r)| (dp[idx(full - 1, i, r)], i, r))
            .expect("m ≥ 1");
        let mut k = idx(full - 1, last.0, last.1);
        let mut out = Vec::with_capacity(m);
        loop {
            let i = (k / 2) % m;
            out.push((i, k % 2 == 1));
            if par[k] == u32::MAX {
                break;
            }
            k = par[k] as usize;
        }
        out.reverse();
        return out;
    }
    let first = (0..m).min_by_key(|&i| ends[i].0.min(ends[i].1)).expect("m ≥ 1");
    let mut used = vec![false; m];
    used[first] = true;
    let mut out = vec![(first, ends[first].1 < ends[first].0)];
    while out.len() < m {
        let &(i, r) = out.last().unwrap();
        let at = finish(i, r);
        let next = (0..m)
            .filter(|&j| !used[j])
            .flat_map(|j| [(j, false), (j, true)])
            .min_by_key(|&(j, rj)| (d.arc_distance(at, start(j, rj)), j, rj))
            .unwrap();
        used[next.0] = true;
        out.push(next);
    }
    out
}

/// One path through every input path, joined by segments along ∂D. Loops
/// are chords of length zero.
pub fn join_noncrossing(paths: &[GridPath], d: &BoxDomain) -> Result<GridPath> {
    if paths.is_empty() {
        return Err(Error::Domain("nothing to join".into()));
    }
    let ends: Vec<(usize, usize)> = paths.iter().map(|p| ends(p, d)).collect::<Result<_>>()?;
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            let (a, b) = (ends[i], ends[j]);
            let shared = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
            if !shared && chords_cross(a, b, d.perimeter())? {
                return Err(Error::Domain(format!("paths {i} and {j} cross essentially")));
            }
        }
    }
    let order = join_order(&ends, d);
    let mut out: Option<GridPath> = None;
    for (i, r) in order {
        let p = if r { paths[i].reversed() } else { paths[i].clone() };
        out = Some(match out {
            None => p,
            Some(acc) => {
                let a = d.require_position(acc.tail())?;
                let b = d.require_position(p.head())?;
                let link = GridPath::new(d.arc_path(a, b))?;
                acc.concat(&link)?.concat(&p)?
            }
        });
    }
    Ok(out.expect("non-empty"))
}
