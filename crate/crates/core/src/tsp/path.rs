use crate::error::{Error, Result};
use crate::lattice::{l1_segment, Point, PointSet};
use serde::{Deserialize, Serialize};

/// Lattice path with unit steps; length = |vertices| − 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPath {
    vertices: Vec<Point>,
}

impl GridPath {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Domain("a path has at least one vertex".into()));
        }
        if let Some(w) = vertices.windows(2).find(|w| w[0].dist(w[1]) != 1) {
            return Err(Error::Domain(format!("non-unit step {} -> {}", w[0], w[1])));
        }
        Ok(GridPath { vertices })
    }

    pub fn single(p: Point) -> Self {
        GridPath { vertices: vec![p] }
    }

    /// Visit `order` in sequence along monotone L1 segments (x first).
    pub fn through(order: &[Point]) -> Self {
        let mut v = Vec::new();
        for (i, &p) in order.iter().enumerate() {
            if i == 0 {
                v.push(p);
            } else {
                let mut seg = Vec::new();
                l1_segment(order[i - 1], p, &mut seg);
                v.extend_from_slice(&seg[1..]);
            }
        }
        GridPath { vertices: v }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn head(&self) -> Point {
        self.vertices[0]
    }

    pub fn tail(&self) -> Point {
        *self.vertices.last().unwrap()
    }

    pub fn is_loop(&self) -> bool {
        self.head() == self.tail()
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        GridPath { vertices: v }
    }

    /// self then other; requires tail(self) = head(other).
    pub fn concat(&self, other: &GridPath) -> Result<Self> {
        if self.tail() != other.head() {
            return Err(Error::Domain(format!("cannot join {} to {}", self.tail(), other.head())));
        }
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices[1..]);
        Ok(GridPath { vertices: v })
    }

    pub fn image(&self) -> PointSet {
        self.vertices.iter().copied().collect()
    }

    pub fn visits_all(&self, points: &PointSet) -> bool {
        let img = self.image();
        points.iter().all(|p| img.contains(p))
    }

    /// Undirected edges, each as (min, max) endpoint pair.
    pub fn edges(&self) -> Vec<(Point, Point)> {
        self.vertices.windows(2).map(|w| if w[0] <= w[1] { (w[0], w[1]) } else { (w[1], w[0]) }).collect()
    }
}

/// A visiting path for a point set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TspResult {
    pub length: u64,
    pub path: GridPath,
    pub exact: bool,
    /// The input points in visiting order.
    pub order: Vec<Point>,
}

impl TspResult {
    pub fn from_order(order: Vec<Point>, exact: bool) -> Self {
        if order.is_empty() {
            return TspResult { length: 0, path: GridPath::single(Point::ORIGIN), exact, order };
        }
        let path = GridPath::through(&order);
        TspResult { length: path.len() as u64, path, exact, order }
    }
}

pub fn order_length(order: &[Point]) -> u64 {
    order.windows(2).map(|w| w[0].dist(w[1])).sum()
}
