use crate::error::{Error, Result};
use crate::lattice::Point;
use rustc_hash::FxHashMap;

/// A C×C square with its inner boundary as a cycle: clockwise from the
/// lower-left corner, up the left side first.
#[derive(Clone, Debug)]
pub struct BoxDomain {
    pub corner: Point,
    pub side: i64,
    cycle: Vec<Point>,
    index: FxHashMap<Point, usize>,
}

impl BoxDomain {
    pub fn new(corner: Point, side: i64) -> Result<Self> {
        if side < 2 {
            return Err(Error::Config(format!("box side must be at least 2, got {side}")));
        }
        let (x0, y0, t) = (corner.x, corner.y, side - 1);
        let mut cycle = Vec::with_capacity(4 * side as usize - 4);
        cycle.extend((0..t).map(|k| Point::new(x0, y0 + k)));
        cycle.extend((0..t).map(|k| Point::new(x0 + k, y0 + t)));
        cycle.extend((0..t).map(|k| Point::new(x0 + t, y0 + t - k)));
        cycle.extend((0..t).map(|k| Point::new(x0 + t - k, y0)));
        let index = cycle.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        Ok(BoxDomain { corner, side, cycle, index })
    }

    pub fn cycle(&self) -> &[Point] {
        &self.cycle
    }

    /// |∂D| = 4C − 4.
    pub fn perimeter(&self) -> usize {
        self.cycle.len()
    }

    pub fn contains(&self, p: Point) -> bool {
        let q = p - self.corner;
        q.x >= 0 && q.y >= 0 && q.x < self.side && q.y < self.side
    }

    pub fn position(&self, p: Point) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn require_position(&self, p: Point) -> Result<usize> {
        self.position(p).ok_or_else(|| Error::Domain(format!("{p} is not on the box boundary")))
    }

    /// Nearest boundary point within L1 distance `k`; ties go to the
    /// earlier point in clockwise order.
    pub fn project(&self, p: Point, k: u64) -> Result<usize> {
        if let Some(i) = self.position(p) {
            return Ok(i);
        }
        let (i, d) = self
            .cycle
            .iter()
            .enumerate()
            .map(|(i, q)| (i, q.dist(p)))
            .min_by_key(|e| (e.1, e.0))
            .expect("cycle is non-empty");
        if d > k {
            return Err(Error::Domain(format!("{p} is {d} away from the boundary, more than {k}")));
        }
        Ok(i)
    }

    /// Steps along the cycle between two positions, the short way.
    pub fn arc_distance(&self, a: usize, b: usize) -> usize {
        let n = self.cycle.len();
        let f = (b + n - a) % n;
        f.min(n - f)
    }

    /// Boundary points from position a to b along the short way, both ends
    /// included; ties go clockwise.
    pub fn arc_path(&self, a: usize, b: usize) -> Vec<Point> {
        let n = self.cycle.len();
        let f = (b + n - a) % n;
        if f <= n - f {
            (0..=f).map(|k| self.cycle[(a + k) % n]).collect()
        } else {
            (0..=n - f).map(|k| self.cycle[(a + n - k) % n]).collect()
        }
    }
}

/// Strictly inside the clockwise open arc from a to b.
#[inline]
fn in_arc(x: usize, a: usize, b: usize, n: usize) -> bool {
    let off = (x + n - a) % n;
    off > 0 && off < (b + n - a) % n
}

/// Chords (a0,a1), (b0,b1) on an n-cycle interleave. A loop never does.
pub fn chords_cross(a: (usize, usize), b: (usize, usize), n: usize) -> Result<bool> {
    if a.0 == a.1 || b.0 == b.1 {
        return Ok(false);
    }
    if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
        return Err(Error::Domain("paths share an endpoint; normalize first".into()));
    }
    Ok(in_arc(b.0, a.0, a.1, n) != in_arc(b.1, a.0, a.1, n))
}

/// Number of other endpoints on the smaller side of chord c, and the
/// endpoint of c at which that side starts (clockwise).
pub(crate) fn minimal_arc(c: (usize, usize), others: &[usize], n: usize) -> (usize, usize, usize) {
    let fwd = others.iter().filter(|&&x| in_arc(x, c.0, c.1, n)).count();
    let bwd = others.iter().filter(|&&x| in_arc(x, c.1, c.0, n)).count();
    if fwd <= bwd {
        (fwd, c.0, c.1)
    } else {
        (bwd, c.1, c.0)
    }
}

/// The first endpoint met going clockwise from u.
pub(crate) fn next_clockwise(u: usize, others: &[usize], n: usize) -> Option<usize> {
    others.iter().copied().filter(|&x| x != u).min_by_key(|&x| (x + n - u) % n)
}
