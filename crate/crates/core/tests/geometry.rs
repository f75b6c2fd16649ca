mod common;

use common::*;
use proptest::prelude::*;
use qtriple::geometry::{minkowski_sum, slide_and_clip, unslide_and_clip, Facet, FacetDescription, Sign};
use qtriple::optimizer::random_ensemble;
use qtriple::tradeoff::{assemble_region, cef_point};
use qtriple::unit::{unit_region, UnitProtocol};
use qtriple::{zoo, OrthantSpec, RateRegion, RateTriple, Ray};
use rand::Rng;

const TOL: f64 = 1e-8;

fn t(c: f64, q: f64, e: f64) -> RateTriple {
    RateTriple::new(c, q, e)
}

fn ray(c: f64, q: f64, e: f64) -> Ray {
    Ray::new(t(c, q, e)).unwrap()
}

fn scaled(f: &Facet) -> [f64; 4] {
    let m = f.normal.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    [f.normal[0] / m, f.normal[1] / m, f.normal[2] / m, f.offset / m]
}

fn same_facets(got: &[Facet], want: &[[f64; 4]], tol: f64) -> bool {
    let norm = |w: &[f64; 4]| {
        let m = w[..3].iter().fold(0.0f64, |a, v| a.max(v.abs()));
        w.map(|x| x / m)
    };
    got.len() == want.len()
        && want.iter().all(|w| {
            let w = norm(w);
            got.iter().any(|f| scaled(f).iter().zip(&w).all(|(a, b)| (a - b).abs() <= tol))
        })
}

fn membership_agrees(a: &RateRegion, b: &RateRegion, seed: u64, n: usize) -> bool {
    let mut r = rng(seed);
    (0..n).all(|_| {
        let x = random_triple(&mut r, 3.0);
        a.contains(x, TOL) == b.contains(x, TOL)
    })
}

#[test]
fn minkowski_identity_element() {
    let a = unit_region().with_points(&[t(0.3, 0.4, -0.9)]).unwrap();
    let sum = minkowski_sum(&a, &RateRegion::point(RateTriple::ORIGIN).unwrap());
    assert!(membership_agrees(&a, &sum, 1, 500));
}

#[test]
fn minkowski_of_teleportation_and_dense_coding() {
    let tp = RateRegion::cone(vec![UnitProtocol::Tp.ray()]).unwrap();
    let sd = RateRegion::cone(vec![UnitProtocol::Sd.ray()]).unwrap();
    assert!(minkowski_sum(&tp, &sd).contains(t(0.0, 0.0, -2.0), TOL));
}

#[test]
fn one_shot_points_plus_unit_region_is_the_assembled_region() {
    let ch = zoo::dephasing(0.2).unwrap();
    let pts: Vec<_> = (0..6).map(|i| cef_point(&ch, &random_ensemble(2, 4, 9, i).unwrap()).unwrap()).collect();
    let mut gens: Vec<RateTriple> = pts.iter().map(|p| p.triple).collect();
    gens.push(RateTriple::ORIGIN);
    let by_sum = minkowski_sum(&RateRegion::new(gens, vec![]).unwrap(), &unit_region());
    assert!(membership_agrees(&by_sum, &assemble_region(&pts), 2, 500));
}

#[test]
fn unit_region_membership_examples() {
    let u = unit_region();
    assert!(u.contains(t(-2.0, 1.0, -1.0), TOL));
    assert!(!u.contains(t(0.0, 0.0, 1.0), TOL));
    let r = RateRegion::new(vec![t(1.0, 2.0, 3.0), t(-1.0, 0.5, 0.0)], vec![ray(0.0, 0.0, -1.0)]).unwrap();
    for p in r.points() {
        assert!(r.contains(*p, TOL));
    }
}

#[test]
fn unit_region_facets() {
    let fd = unit_region().facets_3d();
    assert_eq!(fd.affine_dim, 3);
    assert!(fd.equalities.is_empty());
    assert!(same_facets(&fd.facets, &[[1.0, 1.0, 1.0, 0.0], [0.0, 1.0, 1.0, 0.0], [1.0, 2.0, 0.0, 0.0]], 1e-9));
}

#[test]
fn degenerate_ray_facets() {
    let fd = RateRegion::cone(vec![ray(-1.0, 0.0, 0.0)]).unwrap().facets_3d();
    assert_eq!(fd.affine_dim, 1);
    assert_eq!(fd.equalities.len(), 2);
    // The equalities pin Q = 0 and E = 0.
    for eq in &fd.equalities {
        assert!(eq.normal[0].abs() < 1e-12 && eq.offset.abs() < 1e-12);
    }
    assert!(same_facets(&fd.facets, &[[1.0, 0.0, 0.0, 0.0]], 1e-9));
    assert!(fd.contains(t(-5.0, 0.0, 0.0), 1e-9));
    assert!(!fd.contains(t(-5.0, 0.1, 0.0), 1e-9));
}

#[test]
fn single_point_has_zero_dimensional_hull() {
    let fd = RateRegion::point(RateTriple::ORIGIN).unwrap().facets_3d();
    assert_eq!(fd.affine_dim, 0);
    assert_eq!(fd.equalities.len(), 3);
}

#[test]
fn full_space_is_reported() {
    let all = RateRegion::cone(vec![
        ray(1.0, 0.0, 0.0),
        ray(-1.0, 0.0, 0.0),
        ray(0.0, 1.0, 0.0),
        ray(0.0, -1.0, 0.0),
        ray(0.0, 0.0, 1.0),
        ray(0.0, 0.0, -1.0),
    ])
    .unwrap();
    let fd: FacetDescription = all.facets_3d();
    assert!(fd.is_full_space());
}

#[test]
fn clip_unit_region_to_positive_octant() {
    let c = unit_region().clip(&OrthantSpec::parse("(+,+,+)").unwrap()).unwrap();
    assert!(c.rays().is_empty());
    assert!(c.points().iter().all(|p| p.max_abs() < 1e-12));
}

#[test]
fn clip_unit_region_to_zero_plus_minus_quadrant() {
    // With C = 0 the facet C+2Q ≤ 0 forces Q ≤ 0, so only wasted ebits remain.
    let c = unit_region().clip(&OrthantSpec::parse("(0,+,-)").unwrap()).unwrap();
    assert!(c.contains(t(0.0, 0.0, -1.0), TOL));
    assert!(!c.contains(t(0.0, 0.1, -1.0), TOL));
    let m = c.minimal().unwrap();
    assert_eq!(m.rays().len(), 1);
    assert!(close3(m.rays()[0].direction(), t(0.0, 0.0, -1.0), 1e-12));
}

#[test]
fn unconstrained_clip_is_identity() {
    let a = unit_region().with_points(&[t(1.0, -0.5, 0.2)]).unwrap();
    assert_eq!(a.clip(&OrthantSpec::parse("(±,±,±)").unwrap()).unwrap(), a);
}

#[test]
fn slide_along_dense_coding() {
    let (c, q, e) = (0.5, -2.0, 0.3);
    let s = RateRegion::point(t(c, q, e)).unwrap();
    let out = slide_and_clip(&s, UnitProtocol::Sd.ray(), &OrthantSpec::parse("(+,-,0)").unwrap()).unwrap();
    assert!(out.contains(t(c + 2.0 * e, q - e, 0.0), TOL));
    assert!(out.points().iter().all(|p| p.e.abs() < 1e-12));
}

#[test]
fn slide_along_entanglement_distribution() {
    let (c, q, e) = (-1.0, 0.4, -2.0);
    let s = RateRegion::point(t(c, q, e)).unwrap();
    let out = slide_and_clip(&s, UnitProtocol::Ed.ray(), &OrthantSpec::parse("(-,0,-)").unwrap()).unwrap();
    assert!(out.contains(t(c, 0.0, e + q), TOL));
    assert!(out.points().iter().all(|p| p.q.abs() < 1e-12));
}

#[test]
fn slide_then_unslide_keeps_origin() {
    let origin = RateRegion::point(RateTriple::ORIGIN).unwrap();
    for p in UnitProtocol::ALL {
        let slid = slide_and_clip(&origin, p.ray(), &OrthantSpec::ALL).unwrap();
        let back = unslide_and_clip(&slid, p.ray(), &OrthantSpec::ALL).unwrap();
        assert!(back.contains(RateTriple::ORIGIN, TOL));
    }
}

fn region_strategy() -> impl Strategy<Value = RateRegion> {
    let pt = (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(c, q, e)| t(c, q, e));
    let dir = (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("nonzero", |(c, q, e)| c.abs() + q.abs() + e.abs() > 0.1)
        .prop_map(|(c, q, e)| ray(c, q, e));
    (prop::collection::vec(pt, 1..=8), prop::collection::vec(dir, 0..=4))
        .prop_map(|(p, r)| RateRegion::new(p, r).unwrap())
}

fn sample_inside(r: &RateRegion, rng: &mut impl Rng) -> RateTriple {
    let w: Vec<f64> = r.points().iter().map(|_| rng.random::<f64>() + 1e-3).collect();
    let s: f64 = w.iter().sum();
    let mut x = r.points().iter().zip(&w).fold(RateTriple::ORIGIN, |acc, (p, wi)| acc + (wi / s) * *p);
    for ray in r.rays() {
        x = x + rng.random_range(0.0..2.0) * ray.direction();
    }
    x
}

fn orthant_strategy() -> impl Strategy<Value = OrthantSpec> {
    let sign = prop_oneof![Just(Sign::Plus), Just(Sign::Minus), Just(Sign::Any)];
    (sign.clone(), sign.clone(), sign).prop_map(|(a, b, c)| OrthantSpec::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn facets_agree_with_lp_membership(r in region_strategy(), seed in any::<u64>()) {
        let fd = r.facets_3d();
        for p in r.points() {
            prop_assert!(fd.contains(*p, 1e-9), "generator {} outside", p);
        }
        for ray in r.rays() {
            let d = ray.direction();
            for f in &fd.facets {
                prop_assert!(RateTriple::from_array(f.normal).dot(d) <= 1e-9);
            }
        }
        let mut g = rng(seed);
        for _ in 0..1000 {
            let x = random_triple(&mut g, 4.0);
            let band = fd.facets.iter().map(|f| f.slack(x).abs())
                .chain(fd.equalities.iter().map(|f| f.slack(x).abs()))
                .fold(f64::INFINITY, f64::min);
            if band < 1e-6 {
                continue;
            }
            prop_assert_eq!(r.contains(x, 1e-7), fd.contains(x, 1e-7), "disagree at {}", x);
        }
    }

    #[test]
    fn minkowski_sum_contains_pairwise_sums(a in region_strategy(), b in region_strategy(), seed in any::<u64>()) {
        let sum = minkowski_sum(&a, &b);
        let mut g = rng(seed);
        for _ in 0..200 {
            let x = sample_inside(&a, &mut g);
            let y = sample_inside(&b, &mut g);
            prop_assert!(sum.contains(x + y, 1e-7));
        }
    }

    #[test]
    fn adding_a_line_to_itself(d in (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0), seed in any::<u64>()) {
        prop_assume!(d.0.abs() + d.1.abs() + d.2.abs() > 0.1);
        let l = RateRegion::cone(vec![ray(d.0, d.1, d.2)]).unwrap();
        let twice = minkowski_sum(&l, &l);
        let mut g = rng(seed);
        for k in 0..100 {
            let x = if k % 2 == 0 { g.random_range(0.0..3.0) * ray(d.0, d.1, d.2).direction() } else { random_triple(&mut g, 3.0) };
            prop_assert_eq!(l.contains(x, TOL), twice.contains(x, TOL));
        }
    }

    #[test]
    fn clip_is_idempotent(r in region_strategy(), o in orthant_strategy(), seed in any::<u64>()) {
        let once = match r.clip(&o) {
            Ok(c) => c,
            Err(_) => return Ok(()),
        };
        let twice = once.clip(&o).unwrap();
        let mut g = rng(seed);
        for _ in 0..200 {
            let x = random_triple(&mut g, 4.0);
            let a = once.contains(x, 1e-7);
            let b = twice.contains(x, 1e-7);
            if a != b {
                // Only tolerance-band disagreements are acceptable.
                prop_assert!(once.contains(x, 1e-5) && twice.contains(x, 1e-5));
            }
        }
    }
}
