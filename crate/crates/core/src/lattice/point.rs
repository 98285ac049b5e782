use serde::{Deserialize, Serialize};
use std::ops::{Add, Neg, Sub};

/// A point of Z² (y = 0 on the line).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };
    pub const E1: Point = Point { x: 1, y: 0 };
    pub const E2: Point = Point { x: 0, y: 1 };

    #[inline]
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn l1(self) -> u64 {
        self.x.unsigned_abs() + self.y.unsigned_abs()
    }

    #[inline]
    pub fn dist(self, o: Point) -> u64 {
        (self - o).l1()
    }

    /// The four lattice neighbours, in the order +x, +y, -x, -y.
    #[inline]
    pub fn neighbors(self) -> [Point; 4] {
        [
            Point::new(self.x + 1, self.y),
            Point::new(self.x, self.y + 1),
            Point::new(self.x - 1, self.y),
            Point::new(self.x, self.y - 1),
        ]
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Monotone L1 geodesic from `a` to `b`: x first, then y. Includes both ends.
pub fn l1_segment(a: Point, b: Point, out: &mut Vec<Point>) {
    let mut p = a;
    out.push(p);
    while p.x != b.x {
        p.x += (b.x - p.x).signum();
        out.push(p);
    }
    while p.y != b.y {
        p.y += (b.y - p.y).signum();
        out.push(p);
    }
}
