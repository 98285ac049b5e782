use super::*;
use proptest::prelude::*;
use rustc_hash::FxHashSet;

fn pts(v: &[(i64, i64)]) -> Vec<Point> {
    v.iter().map(|&(x, y)| Point::new(x, y)).collect()
}

// Quadratic scan: membership by linear search, no hashing.
fn brute_boundary(v: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> =
        v.iter().copied().filter(|p| p.neighbors().iter().any(|nb| !v.iter().any(|q| q == nb))).collect();
    out.sort();
    out
}

fn random_connected(n: usize, seed: u64) -> Vec<Point> {
    use rand::Rng;
    let mut rng = crate::rng::trial_rng(&[seed]);
    let mut set = vec![Point::ORIGIN];
    while set.len() < n {
        let base = set[rng.random_range(0..set.len())];
        let nb = base.neighbors()[rng.random_range(0..4)];
        if !set.contains(&nb) {
            set.push(nb);
        }
    }
    set
}

#[test]
fn empty_walk() {
    let t = sample_walk(&StepDistribution::srw(Base::Plane), 0, 9);
    assert_eq!(t.positions, vec![Point::ORIGIN]);
}

#[test]
fn deterministic_drift() {
    let t = sample_walk(&StepDistribution::point_mass(Point::E1), 5, 1);
    assert_eq!(t.positions, (0..=5).map(|i| Point::new(i, 0)).collect::<Vec<_>>());
}

#[test]
fn srw_golden_vector() {
    // ChaCha8Rng::seed_from_u64(42), random_range(0..4) per step,
    // atom order +x, +y, -x, -y.
    let t = sample_walk(&StepDistribution::srw(Base::Plane), 4, 42);
    assert_eq!(t.positions, pts(GOLDEN_SRW_42));
}

const GOLDEN_SRW_42: &[(i64, i64)] = &[(0, 0), (1, 0), (0, 0), (1, 0), (1, -1)];

#[test]
fn trajectory_invariants() {
    let t = sample_walk(&StepDistribution::srw(Base::Plane), 300, 5);
    assert_eq!(t.positions.len(), 301);
    for i in 0..300 {
        assert_eq!(t.positions[i + 1] - t.positions[i], t.steps[i]);
        assert_eq!(t.steps[i].l1(), 1);
    }
}

#[test]
fn boundary_examples() {
    let single: PointSet = pts(&[(0, 0)]).into_iter().collect();
    assert_eq!(inner_boundary(&single).sorted(), pts(&[(0, 0)]));
    let sq = PointSet::square(Point::ORIGIN, 3);
    let b = inner_boundary(&sq);
    assert_eq!(b.len(), 8);
    assert!(!b.contains(&Point::new(1, 1)));
}

#[test]
fn boundary_of_squares() {
    for k in 2..12 {
        let sq = PointSet::square(Point::new(-3, 5), k);
        assert_eq!(inner_boundary(&sq).len() as i64, 4 * k - 4);
    }
}

#[test]
fn boundary_matches_brute_force() {
    for seed in 0..20 {
        let v = random_connected(30, seed);
        let set: PointSet = v.iter().copied().collect();
        assert_eq!(inner_boundary(&set).sorted(), brute_boundary(&v));
        let cached = set.clone().with_boundary();
        assert_eq!(inner_boundary(&cached).sorted(), brute_boundary(&v));
    }
}

#[test]
fn visit_count_examples() {
    let c = VisitCounts::from_positions(&pts(&[(0, 0), (1, 0), (0, 0)]));
    assert_eq!(c.get(&Point::ORIGIN), 2);
    assert_eq!(c.get(&Point::E1), 1);
    assert_eq!(c.range_size(), 2);
    assert_eq!(thin_points(&c, 1), 1);
    assert_eq!(thin_points(&c, c.max_count()), 2);

    let t0 = sample_walk(&StepDistribution::srw(Base::Plane), 0, 3);
    let c0 = visit_counts(&t0);
    assert_eq!(c0.total(), 1);
    assert_eq!(c0.get(&Point::ORIGIN), 1);

    let t = sample_walk(&StepDistribution::srw(Base::Plane), 10_000, 3);
    let c = visit_counts(&t);
    assert_eq!(c.total(), 10_001);
    assert_eq!(c.range(), t.range());
    assert!(c.range_size() <= 10_001);
}

#[test]
fn thin_points_recount() {
    let t = sample_walk(&StepDistribution::srw(Base::Plane), 1 << 16, 11);
    let c = visit_counts(&t);
    // Recount by sorting positions and measuring runs.
    let mut ps = t.positions.clone();
    ps.sort();
    let mut singles = 0;
    let mut i = 0;
    while i < ps.len() {
        let mut j = i;
        while j < ps.len() && ps[j] == ps[i] {
            j += 1;
        }
        if j - i == 1 {
            singles += 1;
        }
        i = j;
    }
    assert_eq!(thin_points(&c, 1), singles);
}

#[test]
fn local_time_sums() {
    let t = sample_walk(&StepDistribution::srw(Base::Plane), 5000, 2);
    let c = visit_counts(&t);
    assert!((local_time_power_sum(&c, 1.0) - 5001.0).abs() < 1e-9);

    let line = sample_walk(&StepDistribution::point_mass(Point::E1), 40, 0);
    let cl = visit_counts(&line);
    assert!((local_time_power_sum(&cl, 0.5) - 41.0).abs() < 1e-12);

    // Direct summation: sort positions, take run lengths, add sqrt.
    let mut ps = t.positions.clone();
    ps.sort();
    let mut direct = 0.0;
    let mut i = 0;
    while i < ps.len() {
        let mut j = i;
        while j < ps.len() && ps[j] == ps[i] {
            j += 1;
        }
        direct += ((j - i) as f64).sqrt();
        i = j;
    }
    assert!((local_time_power_sum(&c, 0.5) - direct).abs() < 1e-9);
}

#[test]
fn dilution_extremes() {
    let sq = PointSet::square(Point::ORIGIN, 6);
    assert_eq!(dilute(&sq, 1.0, 4), sq);
    assert!(dilute(&sq, 0.0, 4).is_empty());
}

#[test]
fn dilution_binomial_moments() {
    let v: PointSet = (0..10).map(|i| Point::new(i, 0)).collect();
    let trials = 10_000;
    let sizes: Vec<f64> = (0..trials).map(|s| dilute(&v, 0.5, s).len() as f64).collect();
    let mean = sizes.iter().sum::<f64>() / trials as f64;
    // Var of the mean = 10·(1/4)/trials.
    let sd = (2.5f64 / trials as f64).sqrt();
    assert!((mean - 5.0).abs() < 3.0 * sd, "mean {mean}");
}

#[test]
fn nondegeneracy_checks() {
    use Base::*;
    assert!(generates_semigroup(Plane, &pts(&[(1, 0), (0, 1), (-1, 0), (0, -1)])));
    assert!(generates_semigroup(Plane, &pts(&[(1, 0), (0, 1), (-1, -1)])));
    assert!(!generates_semigroup(Plane, &pts(&[(1, 0), (0, 1)])));
    assert!(!generates_semigroup(Plane, &pts(&[(1, 0), (-1, 0)])));
    assert!(!generates_semigroup(Plane, &pts(&[(1, 0), (-1, 0), (0, 2), (0, -2)])));
    assert!(generates_semigroup(Line, &pts(&[(2, 0), (-3, 0)])));
    assert!(!generates_semigroup(Line, &pts(&[(1, 0)])));
    assert!(!generates_semigroup(Line, &pts(&[(2, 0), (-2, 0)])));

    let bad =
        StepDistribution::new(Plane, vec![(Point::E1, 0.5), (Point::E2, 0.5)], MomentTag::FiniteSupport, None, false);
    assert!(matches!(bad, Err(crate::Error::Config(_))));
    let unnormalized =
        StepDistribution::new(Line, vec![(Point::E1, 0.5), (-Point::E1, 0.4)], MomentTag::FiniteSupport, None, false);
    assert!(unnormalized.is_err());
    let drift =
        StepDistribution::new(Line, vec![(Point::E1, 0.7), (-Point::E1, 0.3)], MomentTag::FiniteSupport, None, true);
    assert!(drift.is_err());
}

#[test]
fn tail_second_moment_values() {
    let srw = StepDistribution::srw(Base::Plane);
    assert!((srw.tail_second_moment(0.0) - 1.0).abs() < 1e-15);
    assert!((srw.tail_second_moment(1.0) - 1.0).abs() < 1e-15);
    assert_eq!(srw.tail_second_moment(2.0), 0.0);

    let t = PowerTail { weight: 0.5, exponent: 3.0 };
    let d = StepDistribution::new(
        Base::Plane,
        vec![(Point::E1, 0.125), (Point::E2, 0.125), (-Point::E1, 0.125), (-Point::E2, 0.125)],
        MomentTag::SecondMoment,
        Some(t),
        true,
    )
    .unwrap();
    // Brute force: Σ_{k ≥ 5} k² (k^-3 − (k+1)^-3) up to 10^7 plus the exact telescoped remainder bound.
    let mut s = 0.0;
    for k in 5..10_000_000u64 {
        let kf = k as f64;
        s += kf * kf * (kf.powi(-3) - (kf + 1.0).powi(-3));
    }
    let want = 0.5 * s;
    let got = d.tail_second_moment(5.0);
    // Remaining mass beyond 10^7 is about 1.5·3/10^7.
    assert!((got - want).abs() < 1e-6 + 0.5 * 3.0 / 1e7 * 1.1, "{got} vs {want}");
    assert!(d.tail_second_moment(100.0) < d.tail_second_moment(10.0));

    let heavy = StepDistribution::new(
        Base::Line,
        vec![],
        MomentTag::SecondMoment,
        Some(PowerTail { weight: 1.0, exponent: 1.5 }),
        true,
    )
    .unwrap();
    assert!(heavy.tail_second_moment(3.0).is_infinite());
}

#[test]
fn tracker_matches_batch_ops() {
    let t = sample_walk(&StepDistribution::srw(Base::Plane), 20_000, 77);
    let mut tr = RangeTracker::new(3);
    for p in &t.positions {
        tr.visit(*p);
    }
    let c = visit_counts(&t);
    let r = t.range();
    let snap = tr.snapshot();
    assert_eq!(snap.range, r.len());
    assert_eq!(snap.boundary, inner_boundary(&r).len());
    for q in 1..=3 {
        assert_eq!(snap.thin[q - 1], thin_points(&c, q as u64));
    }
    assert!((snap.sqrt_sum - local_time_power_sum(&c, 0.5)).abs() < 1e-6);
}

#[test]
fn folner_ratio_median_decreases() {
    let srw = StepDistribution::srw(Base::Plane);
    let mut medians = Vec::new();
    for (k, n) in [1usize << 12, 1 << 14, 1 << 16, 1 << 18].into_iter().enumerate() {
        let mut ratios: Vec<f64> = (0..9)
            .map(|trial| {
                let t = sample_walk(&srw, n, crate::rng::derive(&[1, k as u64, trial]));
                let r = t.range();
                inner_boundary(&r).len() as f64 / r.len() as f64
            })
            .collect();
        ratios.sort_by(f64::total_cmp);
        medians.push(ratios[4]);
    }
    assert!(medians.windows(2).all(|w| w[1] < w[0]), "{medians:?}");
}

#[test]
fn components_and_diameter() {
    let s: PointSet = pts(&[(0, 0), (1, 0), (5, 5), (5, 6)]).into_iter().collect();
    let comps = s.components();
    assert_eq!(comps.len(), 2);
    assert!(!s.is_connected());
    assert_eq!(s.diameter(), 11);
    let e = FxHashSet::default();
    assert_eq!(PointSet::from_members(e).diameter(), 0);
}

proptest! {
    #[test]
    fn dilution_monotone_in_p(seed in any::<u64>(), p in 0.0f64..1.0, dp in 0.0f64..0.5) {
        let sq = PointSet::square(Point::new(-4, -4), 9);
        let a = dilute(&sq, p, seed);
        let b = dilute(&sq, (p + dp).min(1.0), seed);
        prop_assert!(a.is_subset(&b));
        prop_assert!(b.is_subset(&sq));
    }

    #[test]
    fn boundary_subset_and_translation(seed in 0u64..500, tx in -50i64..50, ty in -50i64..50) {
        let v: PointSet = random_connected(25, seed).into_iter().collect();
        let b = inner_boundary(&v);
        prop_assert!(b.is_subset(&v));
        let t = Point::new(tx, ty);
        prop_assert_eq!(inner_boundary(&v.translate(t)), b.translate(t));
    }

    #[test]
    fn range_equals_count_keys(seed in any::<u64>(), n in 0usize..400) {
        let t = sample_walk(&StepDistribution::srw(Base::Plane), n, seed);
        let c = visit_counts(&t);
        prop_assert_eq!(c.range(), t.range());
        prop_assert!(c.range_size() <= n + 1);
        prop_assert_eq!(c.total(), n as u64 + 1);
    }
}
