use crate::error::{Error, Result};
use crate::lattice::Point;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Finite group given by a multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: u32,
    table: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteGroup {
    /// `table[a*m + b]` is the index of a·b.
    pub fn from_table(order: u32, table: Vec<u32>) -> Result<Self> {
        let m = order as usize;
        if m == 0 {
            return Err(Error::Config("group order must be positive".into()));
        }
        if table.len() != m * m {
            return Err(Error::Config(format!("table has {} entries, expected {}", table.len(), m * m)));
        }
        if table.iter().any(|&v| v as usize >= m) {
            return Err(Error::Config("table entry out of range".into()));
        }
        for a in 0..m {
            if table[a] as usize != a || table[a * m] as usize != a {
                return Err(Error::Config("index 0 is not the identity".into()));
            }
        }
        for a in 0..m {
            let mut row = vec![false; m];
            let mut col = vec![false; m];
            for b in 0..m {
                row[table[a * m + b] as usize] = true;
                col[table[b * m + a] as usize] = true;
            }
            if row.iter().chain(col.iter()).any(|s| !s) {
                return Err(Error::Config("table is not a Latin square".into()));
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let ab = table[a * m + b] as usize;
                    let bc = table[b * m + c] as usize;
                    if table[ab * m + c] != table[a * m + bc] {
                        return Err(Error::Config(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inv = (0..m).map(|a| (0..m).find(|&b| table[a * m + b] == 0).expect("latin square") as u32).collect();
        Ok(FiniteGroup { order, table, inv })
    }

    pub fn cyclic(m: u32) -> Self {
        let table = (0..m).flat_map(|a| (0..m).map(move |b| (a + b) % m)).collect();
        Self::from_table(m, table).expect("cyclic table is valid")
    }

    /// Plain-text format: first line the order m, then m lines of m indices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (ln, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty table".into() })?;
        let m: u32 = first.parse().map_err(|_| Error::Parse { line: ln, msg: format!("bad order {first:?}") })?;
        let mut table = Vec::with_capacity((m * m) as usize);
        for _ in 0..m {
            let (ln, row) = lines.next().ok_or(Error::Parse { line: ln + 1, msg: "missing row".into() })?;
            let vals: std::result::Result<Vec<u32>, _> = row.split_whitespace().map(str::parse).collect();
            let vals = vals.map_err(|_| Error::Parse { line: ln, msg: "non-integer entry".into() })?;
            if vals.len() != m as usize {
                return Err(Error::Parse { line: ln, msg: format!("expected {m} entries, got {}", vals.len()) });
            }
            table.extend(vals);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse { line: ln, msg: "trailing data".into() });
        }
        Self::from_table(m, table)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[(a * self.order + b) as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }
}

/// Lamp group L. Values are stored as i64 with 0 the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LampGroup {
    Cyclic2,
    Finite(Arc<FiniteGroup>),
    Integers,
}

impl LampGroup {
    pub fn finite(g: FiniteGroup) -> Self {
        if g.order == 2 {
            LampGroup::Cyclic2
        } else {
            LampGroup::Finite(Arc::new(g))
        }
    }

    #[inline]
    pub fn op(&self, a: i64, b: i64) -> i64 {
        match self {
            LampGroup::Cyclic2 => a ^ b,
            LampGroup::Finite(g) => g.mul(a as u32, b as u32) as i64,
            LampGroup::Integers => a + b,
        }
    }

    #[inline]
    pub fn inv(&self, a: i64) -> i64 {
        match self {
            LampGroup::Cyclic2 => a,
            LampGroup::Finite(g) => g.inv(a as u32) as i64,
            LampGroup::Integers => -a,
        }
    }

    pub fn contains(&self, a: i64) -> bool {
        match self {
            LampGroup::Cyclic2 => a == 0 || a == 1,
            LampGroup::Finite(g) => a >= 0 && (a as u64) < g.order as u64,
            LampGroup::Integers => true,
        }
    }

    pub fn order(&self) -> Option<u32> {
        match self {
            LampGroup::Cyclic2 => Some(2),
            LampGroup::Finite(g) => Some(g.order),
            LampGroup::Integers => None,
        }
    }

    /// Every element squares to the identity.
    pub fn is_involutive(&self) -> bool {
        match self {
            LampGroup::Cyclic2 => true,
            LampGroup::Finite(g) => (0..g.order).all(|a| g.mul(a, a) == 0),
            LampGroup::Integers => false,
        }
    }

    pub fn elements(&self) -> Option<Vec<i64>> {
        self.order().map(|m| (0..m as i64).collect())
    }

    /// |a|_T for the generating set T = {±1} of Z; 0/1 for finite groups.
    pub fn norm(&self, a: i64) -> u64 {
        match self {
            LampGroup::Integers => a.unsigned_abs(),
            _ => (a != 0) as u64,
        }
    }
}

/// Finitely supported lamp map, stored sorted by site without identity values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LampConfig(Vec<(Point, i64)>);

impl LampConfig {
    pub fn new() -> Self {
        LampConfig(Vec::new())
    }

    pub fn from_pairs<I: IntoIterator<Item = (Point, i64)>>(it: I) -> Self {
        let mut c = LampConfig::new();
        for (p, v) in it {
            c.set(p, v);
        }
        c
    }

    /// Lamp 1 on every given site (Z/2Z configurations as sets).
    pub fn from_support<I: IntoIterator<Item = Point>>(it: I) -> Self {
        Self::from_pairs(it.into_iter().map(|p| (p, 1)))
    }

    pub fn delta(p: Point, v: i64) -> Self {
        Self::from_pairs([(p, v)])
    }

    #[inline]
    pub fn get(&self, p: Point) -> i64 {
        match self.0.binary_search_by(|e| e.0.cmp(&p)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    #[inline]
    pub fn set(&mut self, p: Point, v: i64) {
        match self.0.binary_search_by(|e| e.0.cmp(&p)) {
            Ok(i) => {
                if v == 0 {
                    self.0.remove(i);
                } else {
                    self.0[i].1 = v;
                }
            }
            Err(i) => {
                if v != 0 {
                    self.0.insert(i, (p, v));
                }
            }
        }
    }

    /// Replace f(p) by f(p)·v.
    #[inline]
    pub fn apply(&mut self, lamps: &LampGroup, p: Point, v: i64) {
        let cur = self.get(p);
        self.set(p, lamps.op(cur, v));
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Point, i64)> {
        self.0.iter()
    }

    pub fn support(&self) -> Vec<Point> {
        self.0.iter().map(|e| e.0).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// (τ_t f)(x) = f(x − t).
    pub fn translate(&self, t: Point) -> Self {
        LampConfig(self.0.iter().map(|&(p, v)| (p + t, v)).collect())
    }

    /// Pointwise self(x)·other(x).
    pub fn combine(&self, other: &LampConfig, lamps: &LampGroup) -> Self {
        let mut out = self.clone();
        for &(p, v) in &other.0 {
            out.apply(lamps, p, v);
        }
        out
    }

    /// Pointwise inverse.
    pub fn inverse(&self, lamps: &LampGroup) -> Self {
        LampConfig(self.0.iter().map(|&(p, v)| (p, lamps.inv(v))).collect())
    }

    /// Pointwise self(x)⁻¹·other(x): the change from self to other.
    pub fn difference(&self, other: &LampConfig, lamps: &LampGroup) -> Self {
        self.inverse(lamps).combine(other, lamps)
    }

    pub fn norm_sum(&self, lamps: &LampGroup) -> u64 {
        self.0.iter().map(|e| lamps.norm(e.1)).sum()
    }
}
