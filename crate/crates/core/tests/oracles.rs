//! Hand-derived values checked through the public API.

use ldl_core::lab::oned::reference_mean;
use ldl_core::lab::{run_experiment, ExperimentSpec, Kind};
use ldl_core::lattice::{Point, PointSet};
use ldl_core::tsp::{exact_tsp, strip_bound, strip_heuristic};
use ldl_core::wreath::{word_length_bfs, GeneratingSet, LampConfig, WreathElement, WreathGroup};

fn el(x: i64, y: i64, lamps: &[(i64, i64)]) -> WreathElement {
    WreathElement::new(Point::new(x, y), LampConfig::from_support(lamps.iter().map(|&(a, b)| Point::new(a, b))))
}

#[test]
fn standard_word_lengths() {
    let s = GeneratingSet::standard(WreathGroup::lamplighter());
    // (element, shortest word written out by hand)
    let cases = [
        (el(3, 0, &[]), 3),                       // a a a
        (el(1, 0, &[(0, 0)]), 2),                 // t a
        (el(0, 0, &[(0, 0), (1, 0)]), 4),         // t a t a'
        (el(0, 0, &[(2, 0)]), 5),                 // a a t a' a'
        (el(0, 0, &[(1, 1)]), 5),                 // a b t b' a'
        (el(2, 0, &[(0, 0), (1, 0), (2, 0)]), 5), // t a t a t
    ];
    for (g, want) in cases {
        assert_eq!(word_length_bfs(&g, &s, 12).unwrap().exact(), Some(want), "{g:?}");
    }
}

#[test]
fn small_tsp_values() {
    let square = PointSet::square(Point::ORIGIN, 3);
    assert_eq!(exact_tsp(&square, 18).unwrap().length, 8);
    let corner: PointSet = [(0, 0), (0, 2), (2, 2)].iter().map(|&(x, y)| Point::new(x, y)).collect();
    assert_eq!(exact_tsp(&corner, 18).unwrap().length, 4);
    let row: PointSet = (0..10).map(|x| Point::new(x, 0)).collect();
    let h = strip_heuristic(&row, Point::ORIGIN, 10).unwrap();
    assert_eq!(h.length, 9);
    assert!(h.length <= strip_bound(10, 10));
}

#[test]
fn brownian_reference_mean() {
    // E[range of B on [0,1]] = 2√(2/π) and E|B₁| = √(2/π).
    let want = 3.0 * (2.0 / std::f64::consts::PI).sqrt();
    assert!((reference_mean() - want).abs() < 1e-9);
}

#[test]
fn experiment_records_are_seed_stable() {
    let mut spec = ExperimentSpec::new(Kind::Range);
    spec.sizes = Some(vec![128, 256]);
    spec.trials = Some(5);
    spec.seed = Some(42);
    let a = run_experiment(&spec).unwrap();
    assert_eq!(a, run_experiment(&spec).unwrap());
    spec.seed = Some(43);
    assert_ne!(a.rows, run_experiment(&spec).unwrap().rows);
}
