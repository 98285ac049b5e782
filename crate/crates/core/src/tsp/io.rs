//! Point sets as CSV lines "x,y".

use crate::error::{Error, Result};
use crate::lattice::{Point, PointSet};
use std::io::{BufRead, Write};

/// Blank lines and lines starting with '#' are skipped, as is a leading
/// "x,y" header.
pub fn read_points<R: BufRead>(r: R) -> Result<PointSet> {
    let mut out = PointSet::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || (i == 0 && t.eq_ignore_ascii_case("x,y")) {
            continue;
        }
        let bad = |msg: String| Error::Parse { line: i + 1, msg };
        let (a, b) = t.split_once(',').ok_or_else(|| bad(format!("expected \"x,y\", got {t:?}")))?;
        let x = a.trim().parse::<i64>().map_err(|e| bad(format!("x: {e}")))?;
        let y = b.trim().parse::<i64>().map_err(|e| bad(format!("y: {e}")))?;
        out.insert(Point::new(x, y));
    }
    Ok(out)
}

/// Writes points in sorted order, no header.
pub fn write_points<W: Write>(mut w: W, points: &PointSet) -> Result<()> {
    for p in points.sorted() {
        writeln!(w, "{},{}", p.x, p.y)?;
    }
    Ok(())
}
