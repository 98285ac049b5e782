use super::Point;
use rustc_hash::FxHashMap;

#[derive(Clone, Copy, Default)]
struct Site {
    count: u32,
    nbrs: u8,
}

/// Incremental range statistics of a walk: |R|, |∂R|, the thin-point
/// histogram up to `qmax`, and Σ l^{1/2}. Each visit costs O(1).
#[derive(Clone)]
pub struct RangeTracker {
    sites: FxHashMap<Point, Site>,
    boundary: usize,
    hist: Vec<usize>,
    sqrt_sum: f64,
    visits: u64,
}

/// Values of a [`RangeTracker`] at one time.
#[derive(Clone, Debug, PartialEq)]
pub struct RangeSnapshot {
    pub visits: u64,
    pub range: usize,
    pub boundary: usize,
    /// thin[q-1] = |{x : 1 ≤ l(x) ≤ q}| for q = 1..=qmax.
    pub thin: Vec<usize>,
    pub sqrt_sum: f64,
}

impl RangeTracker {
    pub fn new(qmax: usize) -> Self {
        RangeTracker { sites: FxHashMap::default(), boundary: 0, hist: vec![0; qmax + 1], sqrt_sum: 0.0, visits: 0 }
    }

    pub fn with_capacity(qmax: usize, cap: usize) -> Self {
        let mut t = Self::new(qmax);
        t.sites.reserve(cap);
        t
    }

    pub fn visit(&mut self, p: Point) {
        self.visits += 1;
        let qmax = self.hist.len() - 1;
        if let Some(s) = self.sites.get_mut(&p) {
            let c = s.count as usize;
            s.count += 1;
            if c <= qmax {
                self.hist[c] -= 1;
            }
            if c < qmax {
                self.hist[c + 1] += 1;
            }
            self.sqrt_sum += ((c + 1) as f64).sqrt() - (c as f64).sqrt();
            return;
        }
        let mut nbrs = 0u8;
        for nb in p.neighbors() {
            if let Some(s) = self.sites.get_mut(&nb) {
                nbrs += 1;
                s.nbrs += 1;
                if s.nbrs == 4 {
                    self.boundary -= 1;
                }
            }
        }
        if nbrs < 4 {
            self.boundary += 1;
        }
        self.sites.insert(p, Site { count: 1, nbrs });
        if qmax >= 1 {
            self.hist[1] += 1;
        }
        self.sqrt_sum += 1.0;
    }

    pub fn range(&self) -> usize {
        self.sites.len()
    }

    pub fn boundary(&self) -> usize {
        self.boundary
    }

    pub fn thin(&self, q: usize) -> usize {
        self.hist[1..=q.min(self.hist.len() - 1)].iter().sum()
    }

    pub fn snapshot(&self) -> RangeSnapshot {
        let qmax = self.hist.len() - 1;
        RangeSnapshot {
            visits: self.visits,
            range: self.range(),
            boundary: self.boundary,
            thin: (1..=qmax).map(|q| self.thin(q)).collect(),
            sqrt_sum: self.sqrt_sum,
        }
    }

    /// Σ_x l(x)^alpha, summed in sorted point order.
    pub fn power_sum(&self, alpha: f64) -> f64 {
        let mut v: Vec<(&Point, u32)> = self.sites.iter().map(|(p, s)| (p, s.count)).collect();
        v.sort_unstable_by_key(|e| *e.0);
        v.into_iter().map(|(_, k)| (k as f64).powf(alpha)).sum()
    }

    pub fn sites(&self) -> impl Iterator<Item = &Point> {
        self.sites.keys()
    }
}
