use super::*;
use crate::lattice::Point;
use crate::rng::trial_rng;
use crate::tsp::GridPath;
use crate::wreath::{path_tau, GeneratingSet, LampGroup, Move, SPath, WreathElement, WreathGroup};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

fn p(x: i64, y: i64) -> Point {
    Point::new(x, y)
}

fn line(a: Point, b: Point) -> GridPath {
    GridPath::through(&[a, b])
}

fn random_inner(d: &BoxDomain, rng: &mut ChaCha8Rng) -> Point {
    p(d.corner.x + rng.random_range(0..d.side), d.corner.y + rng.random_range(0..d.side))
}

/// A lattice path inside the box from a to b through a few random waypoints.
fn random_path(d: &BoxDomain, a: Point, b: Point, rng: &mut ChaCha8Rng) -> GridPath {
    let mut pts = vec![a];
    for _ in 0..rng.random_range(0..3) {
        pts.push(random_inner(d, rng));
    }
    pts.push(b);
    GridPath::through(&pts)
}

/// m paths with pairwise distinct boundary endpoints.
fn random_collection(d: &BoxDomain, m: usize, rng: &mut ChaCha8Rng) -> Vec<GridPath> {
    let mut pos: Vec<usize> = (0..d.perimeter()).collect();
    pos.shuffle(rng);
    (0..m)
        .map(|i| {
            let a = d.cycle()[pos[2 * i]];
            let b = d.cycle()[pos[2 * i + 1]];
            random_path(d, a, b, rng)
        })
        .collect()
}

fn multiset<T: std::hash::Hash + Eq>(it: impl IntoIterator<Item = T>) -> FxHashMap<T, usize> {
    let mut m = FxHashMap::default();
    for x in it {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

fn vertex_multiset(paths: &[GridPath]) -> FxHashMap<Point, usize> {
    multiset(paths.iter().flat_map(|q| q.vertices().iter().copied()))
}

fn edge_multiset(paths: &[GridPath]) -> FxHashMap<(Point, Point), usize> {
    multiset(paths.iter().flat_map(|q| q.edges()))
}

fn image(paths: &[GridPath]) -> crate::lattice::PointSet {
    paths.iter().flat_map(|q| q.vertices().iter().copied()).collect()
}

fn total_len(paths: &[GridPath]) -> usize {
    paths.iter().map(|q| q.len()).sum()
}

#[test]
fn boundary_cycle_shape() {
    for c in 2..9 {
        let d = BoxDomain::new(p(3, -2), c).unwrap();
        let cyc = d.cycle();
        assert_eq!(cyc.len() as i64, 4 * c - 4);
        assert_eq!(cyc[0], p(3, -2));
        assert_eq!(cyc[1], p(3, -1));
        for i in 0..cyc.len() {
            assert_eq!(cyc[i].dist(cyc[(i + 1) % cyc.len()]), 1);
        }
        let distinct: crate::lattice::PointSet = cyc.iter().copied().collect();
        assert_eq!(distinct.len(), cyc.len());
        let sq = crate::lattice::PointSet::square(p(3, -2), c);
        assert_eq!(distinct, crate::lattice::inner_boundary(&sq));
    }
    assert_eq!(BoxDomain::new(p(0, 0), 1).unwrap_err().tag(), "config");
}

#[test]
fn projection_and_arcs() {
    let d = BoxDomain::new(p(0, 0), 5).unwrap();
    assert_eq!(d.project(p(0, 0), 0).unwrap(), 0);
    assert_eq!(d.project(p(-1, 2), 1).unwrap(), 2);
    // (-1,-1) is two steps from (0,0) only; (1,1) is one step from two sides.
    assert_eq!(d.project(p(-1, -1), 2).unwrap(), 0);
    assert_eq!(d.cycle()[d.project(p(1, 1), 1).unwrap()], p(0, 1));
    assert!(d.project(p(-5, 2), 2).is_err());
    assert_eq!(d.arc_distance(0, 15), 1);
    assert_eq!(d.arc_path(0, 15), vec![p(0, 0), p(1, 0)]);
    assert_eq!(d.arc_path(3, 3), vec![d.cycle()[3]]);
}

#[test]
fn essential_crossing_examples() {
    let d = BoxDomain::new(p(0, 0), 6).unwrap();
    let horiz = line(p(0, 2), p(5, 2));
    let vert = line(p(2, 5), p(2, 0));
    assert!(essential_crossing(&horiz, &vert, &d).unwrap());
    assert!(essential_crossing(&vert, &horiz, &d).unwrap());
    // Both on the left arc of the horizontal chord.
    let low = GridPath::through(&[p(0, 1), p(1, 1), p(1, 0)]);
    assert!(!essential_crossing(&horiz, &low, &d).unwrap());
    let lp = GridPath::through(&[p(0, 3), p(3, 3), p(0, 3)]);
    assert!(lp.is_loop());
    assert!(!essential_crossing(&lp, &horiz, &d).unwrap());
    assert!(!essential_crossing(&horiz, &lp, &d).unwrap());
    let shared = line(p(0, 2), p(2, 0));
    assert_eq!(essential_crossing(&horiz, &shared, &d).unwrap_err().tag(), "domain");
    let inside = line(p(2, 2), p(5, 2));
    assert_eq!(essential_crossing(&horiz, &inside, &d).unwrap_err().tag(), "domain");
}

#[test]
fn normalize_examples() {
    let d = BoxDomain::new(p(0, 0), 6).unwrap();
    let a = line(p(0, 2), p(5, 2));
    let b = line(p(5, 3), p(5, 2));
    let merged = normalize_endpoints(vec![a.clone(), b.clone()], &d).unwrap();
    assert_eq!(merged.len(), 1);
    assert_eq!(merged[0].len(), a.len() + b.len());
    assert_eq!(merged[0].head(), p(0, 2));
    assert_eq!(merged[0].tail(), p(5, 3));
    let c = line(p(2, 0), p(2, 5));
    let apart = normalize_endpoints(vec![a.clone(), c.clone()], &d).unwrap();
    assert_eq!(apart, vec![a, c]);
}

#[test]
fn normalize_random_collections() {
    let d = BoxDomain::new(p(0, 0), 7).unwrap();
    for seed in 0..200 {
        let mut rng = trial_rng(&[seed, 6]);
        // Endpoints drawn from a few positions so that many coincide.
        let spots: Vec<Point> = (0..5).map(|_| d.cycle()[rng.random_range(0..d.perimeter())]).collect();
        let paths: Vec<GridPath> = (0..6)
            .map(|_| {
                let a = spots[rng.random_range(0..spots.len())];
                let b = spots[rng.random_range(0..spots.len())];
                random_path(&d, a, b, &mut rng)
            })
            .collect();
        let out = normalize_endpoints(paths.clone(), &d).unwrap();
        assert_eq!(total_len(&out), total_len(&paths));
        assert_eq!(edge_multiset(&out), edge_multiset(&paths));
        assert_eq!(image(&out), image(&paths));
        for i in 0..out.len() {
            for j in i + 1..out.len() {
                let (a, b) = (out[i].clone(), out[j].clone());
                for x in [a.head(), a.tail()] {
                    assert!(x != b.head() && x != b.tail());
                }
            }
        }
    }
}

#[test]
fn uncross_pair_examples() {
    let h = line(p(0, 2), p(4, 2));
    let v = line(p(2, 4), p(2, 0));
    let (q1, q2) = uncross_pair(&h, &v, p(2, 2)).unwrap();
    assert_eq!((q1.head(), q1.tail()), (p(0, 2), p(2, 0)));
    assert_eq!((q2.head(), q2.tail()), (p(2, 4), p(4, 2)));
    assert_eq!(image(&[q1.clone(), q2.clone()]), image(&[h.clone(), v.clone()]));
    assert_eq!(vertex_multiset(&[q1, q2]), vertex_multiset(&[h.clone(), v]));
    let r = h.reversed();
    let (q1, q2) = uncross_pair(&h, &r, p(2, 2)).unwrap();
    assert_eq!(image(&[q1, q2]), h.image());
    assert_eq!(uncross_pair(&h, &line(p(0, 0), p(0, 4)), p(2, 2)).unwrap_err().tag(), "domain");
}

#[test]
fn uncross_random_crossing_pairs() {
    let d = BoxDomain::new(p(0, 0), 12).unwrap();
    let mut done = 0;
    let mut seed = 0;
    while done < 50 {
        seed += 1;
        let mut rng = trial_rng(&[seed, 7]);
        let ps = random_collection(&d, 2, &mut rng);
        if !essential_crossing(&ps[0], &ps[1], &d).unwrap() {
            continue;
        }
        done += 1;
        let (out, count) = uncross_all(ps.clone(), &d).unwrap();
        assert_eq!(count, 1);
        assert!(!essential_crossing(&out[0], &out[1], &d).unwrap());
        assert_eq!(image(&out), image(&ps));
        assert_eq!(vertex_multiset(&out), vertex_multiset(&ps));
    }
}

#[test]
fn uncross_all_examples() {
    let d = BoxDomain::new(p(0, 0), 6).unwrap();
    let a = line(p(0, 1), p(1, 0));
    let b = line(p(0, 4), p(4, 0));
    let (out, count) = uncross_all(vec![a.clone(), b.clone()], &d).unwrap();
    assert_eq!(count, 0);
    assert_eq!(out, vec![a, b]);
    let h = line(p(0, 2), p(5, 2));
    let v = line(p(2, 5), p(2, 0));
    let (out, count) = uncross_all(vec![h, v], &d).unwrap();
    assert_eq!(count, 1);
    assert_eq!(crossing_count(&out, &d).unwrap(), 0);
}

#[test]
fn uncross_all_random_collections() {
    for seed in 0..1000u64 {
        let mut rng = trial_rng(&[seed, 8]);
        let d = BoxDomain::new(p(rng.random_range(-5..5), rng.random_range(-5..5)), rng.random_range(6..14)).unwrap();
        let ps = random_collection(&d, 8, &mut rng);
        let (out, count) = uncross_all(ps.clone(), &d).unwrap();
        assert_eq!(crossing_count(&out, &d).unwrap(), 0, "seed {seed}");
        assert!(count <= ps.len());
        assert_eq!(out.len(), ps.len());
        assert_eq!(vertex_multiset(&out), vertex_multiset(&ps));
        assert_eq!(edge_multiset(&out), edge_multiset(&ps));
        assert_eq!(total_len(&out), total_len(&ps));
    }
}

#[test]
fn join_examples() {
    let d = BoxDomain::new(p(0, 0), 6).unwrap();
    let a = line(p(0, 2), p(5, 2));
    assert_eq!(join_noncrossing(std::slice::from_ref(&a), &d).unwrap(), a);
    // Nested arcs around the lower-left corner.
    let inner = GridPath::through(&[p(0, 1), p(1, 1), p(1, 0)]);
    let outer = GridPath::through(&[p(0, 3), p(3, 3), p(3, 0)]);
    let j = join_noncrossing(&[inner.clone(), outer.clone()], &d).unwrap();
    assert_eq!(j.len(), inner.len() + outer.len() + 2);
    assert!(j.visits_all(&image(&[inner, outer])));
    let v = line(p(2, 5), p(2, 0));
    assert_eq!(join_noncrossing(&[a, v], &d).unwrap_err().tag(), "domain");
    assert!(join_noncrossing(&[], &d).is_err());
}

#[test]
fn join_random_noncrossing_collections() {
    for seed in 0..500u64 {
        let mut rng = trial_rng(&[seed, 9]);
        let d = BoxDomain::new(p(0, 0), rng.random_range(4..12)).unwrap();
        let m = rng.random_range(1..=8).min(d.perimeter() / 2);
        let (mut paths, _) = uncross_all(random_collection(&d, m, &mut rng), &d).unwrap();
        // A couple of loops.
        for _ in 0..rng.random_range(0..3) {
            let a = d.cycle()[rng.random_range(0..d.perimeter())];
            let mid = random_inner(&d, &mut rng);
            paths.push(GridPath::through(&[a, mid, a]));
        }
        let j = join_noncrossing(&paths, &d).unwrap();
        assert!(j.len() as f64 <= join_bound(&paths, &d), "seed {seed}");
        let img = image(&paths);
        assert!(j.visits_all(&img));
        let boundary: crate::lattice::PointSet = d.cycle().iter().copied().collect();
        assert!(j.vertices().iter().all(|q| img.contains(q) || boundary.contains(q)));
    }
}

fn std_set() -> GeneratingSet {
    GeneratingSet::standard(WreathGroup::lamplighter())
}

/// Follow a grid path with the standard generators, pressing δ at random.
fn to_s_path(g: &GridPath, rng: &mut ChaCha8Rng) -> SPath {
    let mut moves = Vec::new();
    for w in g.vertices().windows(2) {
        if rng.random_bool(0.4) {
            moves.push(Move::fwd(2));
        }
        let step = w[1] - w[0];
        moves.push(match (step.x, step.y) {
            (1, 0) => Move::fwd(0),
            (-1, 0) => Move::inv(0),
            (0, 1) => Move::fwd(1),
            _ => Move::inv(1),
        });
    }
    if rng.random_bool(0.4) {
        moves.push(Move::fwd(2));
    }
    SPath::new(WreathElement::shift(g.head()), moves)
}

#[test]
fn s_path_pipeline_keeps_total_tau() {
    let s = std_set();
    let mut worst: f64 = 0.0;
    for seed in 0..300u64 {
        let mut rng = trial_rng(&[seed, 10]);
        let d = BoxDomain::new(p(0, 0), rng.random_range(5..11)).unwrap();
        let grid = random_collection(&d, rng.random_range(1..7), &mut rng);
        let paths: Vec<SPath> = grid.iter().map(|g| to_s_path(g, &mut rng)).collect();
        let before = total_tau(&paths, &s).unwrap();
        let len_before: usize = paths.iter().map(|q| q.len()).sum();
        let r = s_uncross_all(paths.clone(), &s, &d).unwrap();
        assert_eq!(total_tau(&r.paths, &s).unwrap(), before);
        assert!(s_crossing_free(&r.paths, &s, &d).unwrap());
        assert!(r.uncrossings <= paths.len());
        let len_after: usize = r.paths.iter().map(|q| q.len()).sum();
        assert_eq!(len_after, len_before + r.added);
        worst = worst.max(r.c_s);
    }
    // Grid-based S-paths always meet, so the connectors are empty.
    assert_eq!(worst, 0.0);
}

#[test]
fn s_path_splice_with_gaps() {
    // The walker only moves two sites at a time, so crossing paths need not
    // share a position; the connectors then cost something.
    let lamps = LampGroup::Cyclic2;
    let group = WreathGroup::new(crate::lattice::Base::Plane, lamps);
    let gens = vec![
        WreathElement::shift(p(2, 0)),
        WreathElement::shift(p(0, 2)),
        WreathElement::shift(p(1, 0)),
        WreathElement::shift(p(0, 1)),
        WreathElement::new(Point::ORIGIN, crate::wreath::LampConfig::delta(Point::ORIGIN, 1)),
    ];
    let labels = ["a", "b", "c", "d", "e"].iter().map(|x| x.to_string()).collect();
    let s = GeneratingSet::new(group, gens, labels).unwrap();
    let d = BoxDomain::new(p(0, 0), 6).unwrap();
    let h = SPath::new(
        WreathElement::shift(p(0, 2)),
        vec![Move::fwd(4), Move::fwd(0), Move::fwd(4), Move::fwd(0), Move::fwd(2)],
    );
    let v = SPath::new(WreathElement::shift(p(3, 5)), vec![Move::inv(1), Move::fwd(4), Move::inv(1), Move::inv(3)]);
    assert!(!s_crossing_free(&[h.clone(), v.clone()], &s, &d).unwrap());
    let before = total_tau(&[h.clone(), v.clone()], &s).unwrap();
    let r = s_uncross_all(vec![h, v], &s, &d).unwrap();
    assert_eq!(r.uncrossings, 1);
    assert!(r.added > 0);
    assert_eq!(total_tau(&r.paths, &s).unwrap(), before);
    assert!(s_crossing_free(&r.paths, &s, &d).unwrap());
}

#[test]
fn s_path_normalize_needs_involutive_lamps_only_when_reversing() {
    let z3 = GeneratingSet::standard(WreathGroup::new(
        crate::lattice::Base::Plane,
        LampGroup::finite(crate::wreath::FiniteGroup::cyclic(3)),
    ));
    let d = BoxDomain::new(p(0, 0), 4).unwrap();
    let a = SPath::new(WreathElement::shift(p(0, 1)), vec![Move::fwd(2), Move::fwd(1)]);
    let next = SPath::new(WreathElement::shift(p(0, 2)), vec![Move::fwd(1), Move::fwd(2)]);
    let out = s_normalize_endpoints(vec![next, a.clone()], &z3, &d).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(out[0].len(), 4);
    let same_head = SPath::new(WreathElement::shift(p(0, 1)), vec![Move::inv(1), Move::fwd(0)]);
    let err = s_normalize_endpoints(vec![a, same_head], &z3, &d).unwrap_err();
    assert_eq!(err.tag(), "unsupported");
    let single = SPath::new(WreathElement::identity(), vec![Move::fwd(2)]);
    assert_eq!(path_tau(&single, &z3).unwrap().len(), 1);
}

#[test]
fn neutral_words_leave_lamps_alone() {
    let s = std_set();
    for delta in [p(0, 0), p(1, 0), p(-2, 3)] {
        let w = neutral_word(&s, delta).unwrap();
        assert_eq!(w.len() as u64, delta.l1());
        let end = crate::wreath::path_end(&SPath::new(WreathElement::identity(), w), &s).unwrap();
        assert_eq!(end, WreathElement::shift(delta));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn prop_uncross_count_bounded(seed in 0u64..1_000_000, m in 1usize..10, side in 5i64..12) {
        let mut rng = trial_rng(&[seed, 11]);
        let d = BoxDomain::new(p(0, 0), side).unwrap();
        let m = m.min(d.perimeter() / 2);
        let ps = random_collection(&d, m, &mut rng);
        let (out, count) = uncross_all(ps.clone(), &d).unwrap();
        prop_assert!(count <= m);
        prop_assert_eq!(crossing_count(&out, &d).unwrap(), 0);
        prop_assert_eq!(image(&out), image(&ps));
    }
}
