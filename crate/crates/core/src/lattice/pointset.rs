use super::Point;
use crate::rng;
use rustc_hash::FxHashSet;
use std::collections::VecDeque;

/// A finite subset of Z² with an optional cached inner boundary.
#[derive(Clone, Debug, Default)]
pub struct PointSet {
    members: FxHashSet<Point>,
    boundary_cache: Option<FxHashSet<Point>>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}
impl Eq for PointSet {}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        PointSet { members: iter.into_iter().collect(), boundary_cache: None }
    }
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Lattice square [x0, x0+side) × [y0, y0+side).
    pub fn square(lower_left: Point, side: i64) -> Self {
        let mut s = FxHashSet::default();
        for dy in 0..side {
            for dx in 0..side {
                s.insert(Point::new(lower_left.x + dx, lower_left.y + dy));
            }
        }
        PointSet { members: s, boundary_cache: None }
    }

    pub fn from_members(members: FxHashSet<Point>) -> Self {
        PointSet { members, boundary_cache: None }
    }

    pub fn insert(&mut self, p: Point) -> bool {
        self.boundary_cache = None;
        self.members.insert(p)
    }

    #[inline]
    pub fn contains(&self, p: &Point) -> bool {
        self.members.contains(p)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.members.iter()
    }

    pub fn members(&self) -> &FxHashSet<Point> {
        &self.members
    }

    /// Members in (x, y) lexicographic order.
    pub fn sorted(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self.members.iter().copied().collect();
        v.sort_unstable();
        v
    }

    /// Fill the boundary cache and return self.
    pub fn with_boundary(mut self) -> Self {
        let b = boundary_members(&self.members);
        self.boundary_cache = Some(b);
        self
    }

    pub fn boundary_cache(&self) -> Option<&FxHashSet<Point>> {
        self.boundary_cache.as_ref()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.members.iter().all(|p| other.contains(p))
    }

    /// (min, max) corners of the bounding box, or None when empty.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let mut it = self.members.iter();
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for p in it {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        Some((lo, hi))
    }

    /// L1 diameter.
    pub fn diameter(&self) -> u64 {
        // max |a-b|_1 = max over the two rotated coordinates u=x+y, v=x-y.
        let mut umin = i64::MAX;
        let mut umax = i64::MIN;
        let mut vmin = i64::MAX;
        let mut vmax = i64::MIN;
        for p in &self.members {
            let (u, v) = (p.x + p.y, p.x - p.y);
            umin = umin.min(u);
            umax = umax.max(u);
            vmin = vmin.min(v);
            vmax = vmax.max(v);
        }
        if self.members.is_empty() {
            return 0;
        }
        ((umax - umin).max(vmax - vmin)) as u64
    }

    pub fn translate(&self, t: Point) -> PointSet {
        self.members.iter().map(|&p| p + t).collect()
    }

    /// 4-connected components, each sorted; components ordered by their least point.
    pub fn components(&self) -> Vec<Vec<Point>> {
        let mut seen: FxHashSet<Point> = FxHashSet::default();
        let mut out = Vec::new();
        for start in self.sorted() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut q = VecDeque::from([start]);
            while let Some(p) = q.pop_front() {
                for nb in p.neighbors() {
                    if self.members.contains(&nb) && seen.insert(nb) {
                        comp.push(nb);
                        q.push_back(nb);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.members.is_empty() || self.components().len() == 1
    }
}

fn boundary_members(m: &FxHashSet<Point>) -> FxHashSet<Point> {
    m.iter().copied().filter(|p| p.neighbors().iter().any(|nb| !m.contains(nb))).collect()
}

/// Members of `v` with a 4-neighbour outside `v`.
pub fn inner_boundary(v: &PointSet) -> PointSet {
    match &v.boundary_cache {
        Some(b) => PointSet::from_members(b.clone()),
        None => PointSet::from_members(boundary_members(&v.members)),
    }
}

/// Keep each member independently with probability `p`; the draw for x is
/// `unit(point_key(seed, x))`, so the kept set is order independent and
/// monotone in `p` for a fixed seed.
pub fn dilute(v: &PointSet, p: f64, seed: u64) -> PointSet {
    v.members.iter().copied().filter(|q| keep(seed, *q, p)).collect()
}

#[inline]
pub fn keep(seed: u64, q: Point, p: f64) -> bool {
    rng::unit(rng::point_key(seed, q.x, q.y)) < p
}
