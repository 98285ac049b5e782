//! WebAssembly bindings for the static demo page. Every entry point returns
//! a JSON string; errors come back as `{"error": "..."}`.

use ldl_core::lab::alpha::diluted_square;
use ldl_core::lattice::{inner_boundary, sample_walk, Base, Point, PointSet, StepDistribution};
use ldl_core::rng::{trial_rng, TrialRng};
use ldl_core::tsp::{box_tsp_diluted, strip_heuristic, BoxOptions, GridPath};
use ldl_core::uncross::{crossing_count, join_bound, join_noncrossing, uncross_all, BoxDomain};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_STEPS: usize = 200_000;
const MAX_SIDE: u32 = 96;

fn xy(ps: &[Point]) -> Value {
    json!(ps.iter().map(|p| [p.x, p.y]).collect::<Vec<_>>())
}

fn finish(r: ldl_core::error::Result<Value>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e.to_string() })).to_string()
}

fn bad(msg: &str) -> ldl_core::error::Error {
    ldl_core::error::Error::Config(msg.into())
}

/// Simple random walk on the plane: trajectory, range and inner boundary.
#[wasm_bindgen]
pub fn walk(steps: u32, seed: u32) -> String {
    finish((|| {
        let n = steps as usize;
        if n == 0 || n > MAX_STEPS {
            return Err(bad("steps must be in 1..=200000"));
        }
        let t = sample_walk(&StepDistribution::srw(Base::Plane), n, seed as u64);
        let range = t.range();
        let boundary = inner_boundary(&range);
        let nf = n as f64;
        Ok(json!({
            "positions": xy(&t.positions),
            "range": range.len(),
            "boundary": xy(&boundary.sorted()),
            "range_ratio": range.len() as f64 / (std::f64::consts::PI * nf / nf.ln()),
            "end": [t.end().x, t.end().y],
        }))
    })())
}

/// p-diluted square with a box-decomposition tour and the strip tour.
#[wasm_bindgen]
pub fn diluted_tour(side: u32, p: f64, seed: u32, box_side: u32) -> String {
    finish((|| {
        if !(2..=MAX_SIDE).contains(&side) || !(p > 0.0 && p <= 1.0) || box_side < 2 {
            return Err(bad("need 2 <= side <= 96, 0 < p <= 1, box side >= 2"));
        }
        let pts = diluted_square(side as u64, p, seed as u64, 0);
        if pts.is_empty() {
            return Ok(json!({ "points": [], "tour": [], "length": 0, "strip_length": 0, "per_area": 0.0 }));
        }
        let square = PointSet::square(Point::ORIGIN, side as i64);
        let tour = box_tsp_diluted(&pts, &square, box_side as i64, BoxOptions::default())?;
        let strip = strip_heuristic(&pts, Point::ORIGIN, side as i64)?;
        Ok(json!({
            "points": xy(&pts.sorted()),
            "tour": xy(tour.result.path.vertices()),
            "length": tour.result.length,
            "strip_length": strip.length,
            "per_area": tour.result.length as f64 / (side * side) as f64,
        }))
    })())
}

fn random_paths(d: &BoxDomain, m: usize, rng: &mut TrialRng) -> Vec<GridPath> {
    let mut pos: Vec<usize> = (0..d.perimeter()).collect();
    pos.shuffle(rng);
    (0..m)
        .map(|i| {
            let mut pts = vec![d.cycle()[pos[2 * i]]];
            for _ in 0..rng.random_range(0..3) {
                pts.push(Point::new(rng.random_range(0..d.side), rng.random_range(0..d.side)));
            }
            pts.push(d.cycle()[pos[2 * i + 1]]);
            GridPath::through(&pts)
        })
        .collect()
}

/// Random boundary-to-boundary paths in a box, uncrossed and then joined.
#[wasm_bindgen]
pub fn uncross(side: u32, paths: u32, seed: u32) -> String {
    finish((|| {
        if !(3..=40).contains(&side) {
            return Err(bad("side must be in 3..=40"));
        }
        let d = BoxDomain::new(Point::ORIGIN, side as i64)?;
        let m = (paths as usize).clamp(1, d.perimeter() / 2);
        let mut rng = trial_rng(&[seed as u64, side as u64, m as u64]);
        let before = random_paths(&d, m, &mut rng);
        let crossings = crossing_count(&before, &d)?;
        let (after, count) = uncross_all(before.clone(), &d)?;
        let joined = join_noncrossing(&after, &d)?;
        let draw = |ps: &[GridPath]| json!(ps.iter().map(|q| xy(q.vertices())).collect::<Vec<_>>());
        Ok(json!({
            "before": draw(&before),
            "after": draw(&after),
            "crossings_before": crossings,
            "crossings_after": crossing_count(&after, &d)?,
            "uncrossings": count,
            "joined": xy(joined.vertices()),
            "joined_length": joined.len(),
            "join_bound": join_bound(&after, &d),
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn walk_reports_range() {
        let v = parse(walk(1000, 1));
        assert_eq!(v["positions"].as_array().unwrap().len(), 1001);
        assert!(v["range"].as_u64().unwrap() > 1);
        assert!(parse(walk(0, 1))["error"].is_string());
    }

    #[test]
    fn diluted_tour_visits_every_point() {
        let v = parse(diluted_tour(16, 0.5, 2, 4));
        let tour: Vec<Value> = v["tour"].as_array().unwrap().clone();
        for p in v["points"].as_array().unwrap() {
            assert!(tour.contains(p));
        }
        assert!(v["length"].as_u64().unwrap() <= v["strip_length"].as_u64().unwrap() * 2);
    }

    #[test]
    fn uncross_removes_crossings() {
        for seed in 0..20 {
            let v = parse(uncross(10, 5, seed));
            assert_eq!(v["crossings_after"], 0);
            assert!(v["joined_length"].as_f64().unwrap() <= v["join_bound"].as_f64().unwrap());
        }
    }
}
