use super::*;
use crate::lattice::{Base, Point};
use crate::tsp::exact_tsp;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(x: i64, y: i64) -> Point {
    Point::new(x, y)
}

fn el(x: i64, y: i64, lamps: &[(i64, i64)]) -> WreathElement {
    WreathElement::new(p(x, y), LampConfig::from_support(lamps.iter().map(|&(a, b)| p(a, b))))
}

fn std_set() -> GeneratingSet {
    GeneratingSet::standard(WreathGroup::lamplighter())
}

fn z3() -> LampGroup {
    LampGroup::finite(FiniteGroup::cyclic(3))
}

fn random_element<R: Rng>(rng: &mut R, lamps: &LampGroup) -> WreathElement {
    let order = lamps.order().map_or(7, |o| o as i64);
    let pos = p(rng.random_range(-4..=4), rng.random_range(-4..=4));
    let n = rng.random_range(0..6);
    let cfg = LampConfig::from_pairs((0..n).map(|_| {
        let v = match lamps {
            LampGroup::Integers => rng.random_range(-3..=3),
            _ => rng.random_range(0..order),
        };
        (p(rng.random_range(-3..=3), rng.random_range(-3..=3)), v)
    }));
    WreathElement::new(pos, cfg)
}

#[test]
fn translation_action_example() {
    let g = WreathGroup::lamplighter();
    let a = el(1, 0, &[]);
    let b = el(0, 0, &[(0, 0)]);
    assert_eq!(g.mul(&a, &b), el(1, 0, &[(1, 0)]));
    assert_eq!(g.mul(&a, &WreathElement::identity()), a);
}

#[test]
fn group_axioms_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for lamps in [LampGroup::Cyclic2, z3(), LampGroup::Integers] {
        let g = WreathGroup::new(Base::Plane, lamps.clone());
        for _ in 0..1000 {
            let a = random_element(&mut rng, &lamps);
            let b = random_element(&mut rng, &lamps);
            let c = random_element(&mut rng, &lamps);
            assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
            assert_eq!(g.mul(&a, &WreathElement::identity()), a);
            assert_eq!(g.mul(&WreathElement::identity(), &a), a);
            assert_eq!(g.mul(&a, &g.invert(&a)), WreathElement::identity());
            assert_eq!(g.mul(&g.invert(&a), &a), WreathElement::identity());
        }
    }
}

#[test]
fn mismatched_lamp_values_are_rejected() {
    let g = WreathGroup::lamplighter();
    let bad = WreathElement::new(Point::ORIGIN, LampConfig::delta(Point::ORIGIN, 2));
    let err = g.multiply(&bad, &WreathElement::identity()).unwrap_err();
    assert_eq!(err.tag(), "type");
}

#[test]
fn invert_examples() {
    let g = WreathGroup::lamplighter();
    assert_eq!(g.invert(&WreathElement::identity()), WreathElement::identity());
    assert_eq!(g.invert(&el(3, -2, &[])), el(-3, 2, &[]));
    let x = el(2, 1, &[(0, 0), (1, 5)]);
    let expected = WreathElement::new(p(-2, -1), x.lamps.translate(p(-2, -1)));
    assert_eq!(g.invert(&x), expected);
}

#[test]
fn path_tau_examples() {
    let s = std_set();
    let d = Move::fwd(2);
    let s1 = Move::fwd(0);
    let empty = SPath::new(WreathElement::identity(), vec![]);
    assert!(path_tau(&empty, &s).unwrap().is_empty());
    let one = SPath::new(WreathElement::identity(), vec![d]);
    assert_eq!(path_tau(&one, &s).unwrap(), LampConfig::from_support([p(0, 0)]));
    let three = SPath::new(WreathElement::identity(), vec![d, s1, d]);
    assert_eq!(path_tau(&three, &s).unwrap(), LampConfig::from_support([p(0, 0), p(1, 0)]));
    assert_eq!(path_end(&three, &s).unwrap().pos, p(1, 0));
    let bad = SPath::new(WreathElement::identity(), vec![Move::fwd(9)]);
    assert_eq!(path_end(&bad, &s).unwrap_err().tag(), "domain");
}

#[test]
fn tau_is_relative_to_the_start() {
    let s = std_set();
    let start = el(0, 0, &[(0, 0), (5, 5)]);
    let path = SPath::new(start, vec![Move::fwd(2), Move::fwd(0), Move::fwd(2)]);
    assert_eq!(path_tau(&path, &s).unwrap(), LampConfig::from_support([p(0, 0), p(1, 0)]));
}

#[test]
fn reversal_keeps_tau() {
    let s = std_set();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let moves = s.moves();
    for _ in 0..200 {
        let word: Vec<Move> = (0..20).map(|_| moves[rng.random_range(0..moves.len())]).collect();
        let path = SPath::new(random_element(&mut rng, &LampGroup::Cyclic2), word);
        let rev = reverse_path(&path, &s).unwrap();
        assert_eq!(path_tau(&rev, &s).unwrap(), path_tau(&path, &s).unwrap());
        assert_eq!(rev.len(), path.len());
        assert_eq!(rev.head(), path_end(&path, &s).unwrap().pos);
        assert_eq!(path_end(&rev, &s).unwrap().pos, path.head());
        let twice = reverse_path(&rev, &s).unwrap();
        assert_eq!(twice.moves, path.moves);
        assert_eq!(path_tau(&twice, &s).unwrap(), path_tau(&path, &s).unwrap());
    }
}

#[test]
fn reversal_needs_involutive_lamps() {
    let s = GeneratingSet::standard(WreathGroup::new(Base::Plane, z3()));
    let path = SPath::new(WreathElement::identity(), vec![Move::fwd(2)]);
    assert_eq!(reverse_path(&path, &s).unwrap_err().tag(), "unsupported");
}

#[test]
fn bfs_small_values() {
    let s = std_set();
    let len = |g: &WreathElement| word_length_bfs(g, &s, 20).unwrap().exact().unwrap();
    assert_eq!(len(&WreathElement::identity()), 0);
    assert_eq!(len(&el(0, 0, &[(0, 0)])), 1);
    assert_eq!(len(&el(1, 0, &[])), 1);
    // Light (0,0), walk to (2,0), light it, walk back.
    let g = el(0, 0, &[(0, 0), (2, 0)]);
    let d = len(&g);
    assert!(d >= 4);
    assert_eq!(d, 6);
    assert_eq!(word_length_bfs(&el(9, 0, &[]), &s, 3).unwrap(), WordLength::Overflow);
}

#[test]
fn bfs_budget_is_enforced() {
    let s = std_set();
    let err = word_length_bfs_budget(&el(30, 0, &[]), &s, 30, 1000).unwrap_err();
    assert_eq!(err.tag(), "resource");
}

#[test]
fn geodesic_words_reach_their_target() {
    let s = std_set();
    let ball = Ball::explore(&s, 5, DEFAULT_STATE_BUDGET, None).unwrap();
    for (g, d) in ball.sorted().into_iter().step_by(37) {
        let w = ball.word_to(&s, &g).unwrap();
        assert_eq!(w.len() as u32, d);
        assert_eq!(path_end(&SPath::new(WreathElement::identity(), w), &s).unwrap(), g);
    }
}

#[test]
fn metric_axioms_on_radius_five_ball() {
    let s = std_set();
    let ball = Ball::explore(&s, 10, DEFAULT_STATE_BUDGET, None).unwrap();
    let small: Vec<(WreathElement, u32)> = ball.sorted().into_iter().filter(|e| e.1 <= 5).collect();
    for (g, d) in &small {
        assert_eq!(ball.get(&s.group.invert(g)), Some(*d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20_000 {
        let (g, a) = &small[rng.random_range(0..small.len())];
        let (h, b) = &small[rng.random_range(0..small.len())];
        let gh = s.group.mul(g, h);
        assert!(ball.get(&gh).unwrap() <= a + b);
    }
}

#[test]
fn sandwich_simple_cases() {
    let b = word_length_bounds(&WreathElement::identity()).unwrap();
    assert_eq!((b.lower, b.upper), (0, 0));
    let b = word_length_bounds(&el(0, 0, &[(0, 0)])).unwrap();
    assert_eq!((b.lower, b.upper), (1, 1));
}

/// With Diam(supp f) alone the upper side fails when the lamps sit away from
/// the origin: here l_S = 5 but the right-hand side is 1.
#[test]
fn sandwich_literal_upper_bound_counterexample() {
    let g = el(0, 0, &[(2, 0)]);
    let l = word_length_bfs(&g, &std_set(), 10).unwrap().exact().unwrap();
    assert_eq!(l, 5);
    let b = word_length_bounds(&g).unwrap();
    assert_eq!(b.upper, 1);
    assert!(l as u64 > b.upper);
    assert!(l as u64 <= b.upper_anchored);
}

#[test]
fn sandwich_anchored_on_radius_seven_ball() {
    let s = std_set();
    let ball = Ball::explore(&s, 7, DEFAULT_STATE_BUDGET, None).unwrap();
    for (g, d) in ball.iter() {
        let b = word_length_bounds(g).unwrap();
        assert!(b.tsp_exact);
        let d = d as u64;
        assert!(b.lower <= d, "{g:?}: lower {} > {d}", b.lower);
        assert!(d <= b.upper_anchored, "{g:?}: {d} > {}", b.upper_anchored);
    }
}

#[test]
fn sandwich_lower_side_matches_exact_tsp() {
    let g = el(3, 1, &[(0, 0), (2, 2), (4, 0)]);
    let supp = g.lamps.support().into_iter().collect();
    let b = word_length_bounds(&g).unwrap();
    assert_eq!(b.lower, exact_tsp(&supp, 18).unwrap().length + 3);
}

#[test]
fn completeness_examples() {
    assert!(std_set().symmetrized().is_complete().unwrap());
    let group = WreathGroup::new(Base::Plane, z3());
    let gens = vec![el(1, 0, &[]), el(0, 1, &[]), WreathElement::new(p(0, 1), LampConfig::delta(p(0, 0), 1))];
    let s = GeneratingSet::new(group.clone(), gens, vec!["a".into(), "b".into(), "c".into()]).unwrap();
    assert!(!s.symmetrized().is_complete().unwrap());
    let shifts = GeneratingSet::new(group, vec![el(1, 0, &[]), el(-1, 0, &[])], vec!["r".into(), "l".into()]);
    assert!(shifts.unwrap().is_complete().unwrap());
    let zl = GeneratingSet::standard(WreathGroup::new(Base::Plane, LampGroup::Integers));
    assert_eq!(zl.is_complete().unwrap_err().tag(), "unsupported");
}

#[test]
fn oned_single_lamp_at_origin_needs_two_steps() {
    let s = GeneratingSet::sws_line(LampGroup::Cyclic2).unwrap();
    let g = WreathElement::new(Point::ORIGIN, LampConfig::delta(Point::ORIGIN, 1));
    let r = oned_word_length(&g, &s).unwrap();
    assert_eq!(r.bfs, 2);
    assert_eq!(r.covering_walk, 2);
    assert_eq!(r.closed_form, 0);
    assert_eq!(r.discrepancy(), 2);
}

#[test]
fn oned_bfs_agrees_with_covering_walk() {
    for lamps in [LampGroup::Cyclic2, z3()] {
        let s = GeneratingSet::sws_line(lamps.clone()).unwrap();
        for k in 0..=4i64 {
            for x in 0..=k {
                let cfg = LampConfig::from_pairs(
                    (0..=k).map(|i| (p(i, 0), 1 + (i % 2) * (lamps.order().unwrap() as i64 - 2))),
                );
                let g = WreathElement::new(p(x, 0), cfg);
                let r = oned_word_length(&g, &s).unwrap();
                assert_eq!(r.bfs as u64, r.covering_walk, "k={k} x={x}");
            }
        }
    }
    let s = GeneratingSet::sws_line(LampGroup::Cyclic2).unwrap();
    // Support {0..3}, x = 3: covering walk 3, closed form 2·3 − 3 = 3.
    let g = WreathElement::new(p(3, 0), LampConfig::from_support((0..4).map(|i| p(i, 0))));
    let r = oned_word_length(&g, &s).unwrap();
    assert_eq!((r.bfs, r.closed_form), (3, 3));
    // Lamps on one side of the origin.
    let g = WreathElement::new(p(-2, 0), LampConfig::from_support([p(-3, 0), p(-2, 0)]));
    let r = oned_word_length(&g, &s).unwrap();
    assert_eq!(r.bfs, 4);
    assert_eq!(r.closed_form, 0);
}

#[test]
fn oned_rejects_out_of_domain() {
    let s = GeneratingSet::sws_line(LampGroup::Cyclic2).unwrap();
    let empty = WreathElement::shift(p(1, 0));
    assert_eq!(oned_word_length(&empty, &s).unwrap_err().tag(), "domain");
    let outside = WreathElement::new(p(5, 0), LampConfig::delta(Point::ORIGIN, 1));
    assert_eq!(oned_word_length(&outside, &s).unwrap_err().tag(), "domain");
}

#[test]
fn lamp_table_parsing() {
    let g = FiniteGroup::parse("3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    assert_eq!(g, FiniteGroup::cyclic(3));
    assert_eq!(g.inv(1), 2);
    let e = FiniteGroup::parse("2\n0 1\n1 1\n").unwrap_err();
    assert_eq!(e.tag(), "config");
    let e = FiniteGroup::parse("2\n0 1\n1 x\n").unwrap_err();
    assert!(matches!(e, crate::Error::Parse { line: 3, .. }));
    // Klein four-group is involutive.
    let k = FiniteGroup::parse("4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n").unwrap();
    assert!(LampGroup::finite(k).is_involutive());
    assert!(!z3().is_involutive());
}

#[test]
fn decomposition_reconstructs_the_law() {
    // The walker always moves under the standard SWS law, so a = 0 there.
    assert_eq!(WreathStepDistribution::standard_sws().decomposition().a, 0.0);
    let mu = WreathStepDistribution::mixture(0.4, &WreathStepDistribution::standard_sws()).unwrap();
    let d = mu.decomposition();
    assert!((d.a - 0.2).abs() < 1e-12);
    let back = WreathStepDistribution::mixture(d.a, d.residual.as_ref().unwrap()).unwrap();
    for (g, pr) in mu.atoms() {
        assert!((back.prob(g) - pr).abs() < 1e-12);
    }
    let total: f64 = mu.atoms().iter().map(|e| e.1).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn standard_sws_has_sixteen_atoms() {
    let mu = WreathStepDistribution::standard_sws();
    assert_eq!(mu.atoms().len(), 16);
    assert!(mu.atoms().iter().all(|e| (e.1 - 1.0 / 16.0).abs() < 1e-15));
    assert!(mu.check_nondegenerate(6).is_ok());
}

#[test]
fn degenerate_laws_are_rejected() {
    let g = WreathGroup::lamplighter();
    let only_id = WreathStepDistribution::new(g.clone(), vec![(WreathElement::identity(), 1.0)]).unwrap();
    assert_eq!(only_id.check_nondegenerate(6).unwrap_err().tag(), "config");
    let no_lamps = WreathStepDistribution::new(
        g,
        [(1, 0), (-1, 0), (0, 1), (0, -1)].iter().map(|&(x, y)| (el(x, y, &[]), 0.25)).collect(),
    )
    .unwrap();
    assert!(no_lamps.check_nondegenerate(6).is_err());
    let bad_sum = WreathStepDistribution::new(WreathGroup::lamplighter(), vec![(WreathElement::identity(), 0.5)]);
    assert!(bad_sum.is_err());
}

proptest! {
    #[test]
    fn prop_multiplication_translates(x in -5i64..5, y in -5i64..5, a in -5i64..5, b in -5i64..5) {
        let g = WreathGroup::lamplighter();
        let h = el(0, 0, &[(a, b)]);
        let prod = g.mul(&el(x, y, &[]), &h);
        prop_assert_eq!(prod, el(x, y, &[(a + x, b + y)]));
    }

    #[test]
    fn prop_lamp_config_has_no_identity_values(pairs in proptest::collection::vec((-3i64..3, -3i64..3, 0i64..3), 0..12)) {
        let lamps = z3();
        let mut c = LampConfig::new();
        for (x, y, v) in pairs {
            c.apply(&lamps, p(x, y), v);
        }
        prop_assert!(c.iter().all(|e| e.1 != 0));
        prop_assert!(c.combine(&c.inverse(&lamps), &lamps).is_empty());
    }
}
