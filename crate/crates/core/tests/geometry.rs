mod common;

use common::{int_segments_meet, parametric_meet, sampled_hit};
use kickplan::{dist_point_segment, segment_intersects_disk, segments_cross, Disk, Point, Rng, Segment};
use proptest::prelude::*;

fn random_segment(rng: &mut Rng) -> Segment {
    Segment::new(
        Point::new(rng.range(-3.0, 3.0), rng.range(-3.0, 3.0)),
        Point::new(rng.range(-3.0, 3.0), rng.range(-3.0, 3.0)),
    )
}

#[test]
fn distance_examples() {
    let s = Segment::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0));
    assert_eq!(dist_point_segment(Point::new(0.0, 0.0), &s), 0.0);
    let wide = Segment::new(Point::new(-1.0, 0.0), Point::new(1.0, 0.0));
    assert_eq!(dist_point_segment(Point::new(0.0, 1.0), &wide), 1.0);
    let d = dist_point_segment(Point::new(3.0, 4.0), &s);
    assert!((d - 20f64.sqrt()).abs() < 1e-12);
    let sampled = (0..=10_000)
        .map(|i| Point::new(i as f64 / 10_000.0, 0.0).dist(Point::new(3.0, 4.0)))
        .fold(f64::INFINITY, f64::min);
    assert!((d - sampled).abs() < 1e-9);
}

#[test]
fn disk_examples() {
    let s = Segment::new(Point::new(0.0, 0.0), Point::new(2.0, 0.0));
    assert!(segment_intersects_disk(&s, &Disk::new(Point::new(1.0, 0.1), 0.2).unwrap()));
    assert!(!segment_intersects_disk(&s, &Disk::new(Point::new(1.0, 1.0), 0.2).unwrap()));
    // Touching counts.
    assert!(segment_intersects_disk(&s, &Disk::new(Point::new(1.0, 0.2), 0.2).unwrap()));
}

#[test]
fn cross_examples() {
    let v = Segment::new(Point::new(0.0, -1.0), Point::new(0.0, 1.0));
    let h = Segment::new(Point::new(-1.0, 0.0), Point::new(1.0, 0.0));
    assert!(segments_cross(&v, &h));
    let a = Segment::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0));
    let b = Segment::new(Point::new(0.0, 1.0), Point::new(1.0, 1.0));
    assert!(!segments_cross(&a, &b));
}

#[test]
fn distance_matches_dense_sampling() {
    let mut rng = Rng::new(11);
    for _ in 0..1000 {
        let s = random_segment(&mut rng);
        let p = Point::new(rng.range(-4.0, 4.0), rng.range(-4.0, 4.0));
        let sampled = (0..=10_000)
            .map(|i| s.a.lerp(s.b, i as f64 / 10_000.0).dist(p))
            .fold(f64::INFINITY, f64::min);
        let d = dist_point_segment(p, &s);
        assert!(d <= sampled + 1e-12);
        assert!(sampled - d < 1e-3, "sampled {sampled} vs {d}");
    }
}

#[test]
fn disk_predicate_matches_sampling_oracle() {
    let mut rng = Rng::new(12);
    let mut positives = 0;
    for _ in 0..1000 {
        let s = random_segment(&mut rng);
        let center = Point::new(rng.range(-3.0, 3.0), rng.range(-3.0, 3.0));
        let radius = rng.range(0.05, 1.5);
        let fast = segment_intersects_disk(&s, &Disk::new(center, radius).unwrap());
        let slow = sampled_hit(s.a, s.b, center, radius, 10_000);
        positives += usize::from(slow);
        if fast != slow {
            let gap = (dist_point_segment(center, &s) - radius).abs();
            assert!(gap < 1e-6, "disagreement {gap} away from the boundary");
        }
    }
    assert!(positives > 100 && positives < 900, "oracle cases are one-sided: {positives}");
}

#[test]
fn crossing_matches_parametric_oracle() {
    let mut rng = Rng::new(13);
    let mut positives = 0;
    for _ in 0..1000 {
        let (s1, s2) = (random_segment(&mut rng), random_segment(&mut rng));
        let (t, u, det) = parametric_meet(s1.a, s1.b, s2.a, s2.b);
        if det.abs() < 1e-9 {
            continue;
        }
        let inside = |x: f64| (0.0..=1.0).contains(&x);
        let oracle = inside(t) && inside(u);
        let margin = [t, 1.0 - t, u, 1.0 - u].into_iter().map(f64::abs).fold(f64::INFINITY, f64::min);
        positives += usize::from(oracle);
        if margin > 1e-6 {
            assert_eq!(segments_cross(&s1, &s2), oracle, "{s1:?} {s2:?}");
        }
    }
    assert!(positives > 100);
}

#[test]
fn crossing_matches_exact_integer_oracle() {
    // A coarse integer lattice produces many touching and collinear cases.
    let mut rng = Rng::new(14);
    let mut pick = || (rng.index(5) as i64, rng.index(5) as i64);
    for _ in 0..1000 {
        let (p1, p2, q1, q2) = (pick(), pick(), pick(), pick());
        let pt = |c: (i64, i64)| Point::new(c.0 as f64, c.1 as f64);
        let s1 = Segment::new(pt(p1), pt(p2));
        let s2 = Segment::new(pt(q1), pt(q2));
        assert_eq!(segments_cross(&s1, &s2), int_segments_meet(p1, p2, q1, q2), "{p1:?}-{p2:?} x {q1:?}-{q2:?}");
    }
}

#[test]
fn collinear_overlap_counts() {
    let a = Segment::new(Point::new(0.0, 0.0), Point::new(2.0, 0.0));
    let b = Segment::new(Point::new(1.0, 0.0), Point::new(3.0, 0.0));
    let c = Segment::new(Point::new(2.5, 0.0), Point::new(3.0, 0.0));
    assert!(segments_cross(&a, &b));
    assert!(!segments_cross(&a, &c));
}

fn coord() -> impl Strategy<Value = f64> {
    -5.0f64..5.0
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

fn rigid(p: Point, angle: f64, shift: Point) -> Point {
    let (s, c) = angle.sin_cos();
    Point::new(c * p.x - s * p.y, s * p.x + c * p.y) + shift
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

proptest! {
    #[test]
    fn distance_bounded_by_endpoints(p in point(), a in point(), b in point()) {
        let s = Segment::new(a, b);
        let d = dist_point_segment(p, &s);
        prop_assert!(d >= 0.0);
        prop_assert!(d <= p.dist(a).min(p.dist(b)) + 1e-12);
        let t = s.project(p);
        if a != b && !(0.0..=1.0).contains(&t) {
            prop_assert!((d - p.dist(a).min(p.dist(b))).abs() < 1e-9);
        }
    }

    #[test]
    fn disk_monotone_in_radius(a in point(), b in point(), c in point(), r in 0.01f64..3.0, extra in 0.0f64..3.0) {
        let s = Segment::new(a, b);
        if segment_intersects_disk(&s, &Disk::new(c, r).unwrap()) {
            prop_assert!(segment_intersects_disk(&s, &Disk::new(c, r + extra).unwrap()));
        }
    }

    #[test]
    fn crossing_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        let (s1, s2) = (Segment::new(a, b), Segment::new(c, d));
        prop_assert_eq!(segments_cross(&s1, &s2), segments_cross(&s2, &s1));
    }

    #[test]
    fn rigid_motion_invariance(
        a in point(), b in point(), c in point(), d in point(),
        r in 0.01f64..3.0, angle in 0.0f64..std::f64::consts::TAU, shift in point(),
    ) {
        let m = |p| rigid(p, angle, shift);
        let (s1, s2) = (Segment::new(a, b), Segment::new(c, d));
        let (t1, t2) = (Segment::new(m(a), m(b)), Segment::new(m(c), m(d)));

        let dist = dist_point_segment(c, &s1);
        prop_assert!((dist - dist_point_segment(m(c), &t1)).abs() < 1e-9);

        if (dist - r).abs() > 1e-6 {
            prop_assert_eq!(
                segment_intersects_disk(&s1, &Disk::new(c, r).unwrap()),
                segment_intersects_disk(&t1, &Disk::new(m(c), r).unwrap())
            );
        }
        let clear = [orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)]
            .iter()
            .all(|o| o.abs() > 1e-6);
        if clear {
            prop_assert_eq!(segments_cross(&s1, &s2), segments_cross(&t1, &t2));
        }
    }
}
