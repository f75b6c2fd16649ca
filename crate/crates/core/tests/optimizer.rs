mod common;

use common::*;
use qtriple::assembly::{build_sigma_dynamic, build_sigma_static};
use qtriple::geometry::{minkowski_sum, Axis, Constraint, Relation, Sign};
use qtriple::optimizer::{
    boundary_curve, casr_instruments, cef_ensembles, random_ensemble, random_instrument, structured_ensembles,
    sweep_casr, sweep_cef, SweepConfig,
};
use qtriple::tradeoff::{assemble_region, casr_octant_bounds, cef_octant_bounds};
use qtriple::unit::unit_region;
use qtriple::{zoo, DensityMatrix, Ensemble, Instrument, OrthantSpec, QuantumChannel, RateRegion, RateTriple};

fn t(c: f64, q: f64, e: f64) -> RateTriple {
    RateTriple::new(c, q, e)
}

fn cfg(samples: usize) -> SweepConfig {
    SweepConfig { seed: 11, samples, ..Default::default() }
}

#[test]
fn sweeps_are_deterministic() {
    let ch = zoo::dephasing(0.2).unwrap();
    let a = sweep_cef(&ch, &cfg(40), &[]).unwrap();
    let b = sweep_cef(&ch, &cfg(40), &[]).unwrap();
    assert_eq!(a, b);
    let other = sweep_cef(&ch, &SweepConfig { seed: 12, ..cfg(40) }, &[]).unwrap();
    assert_ne!(a, other);

    let rho = zoo::erased_state(0.25).unwrap();
    assert_eq!(sweep_casr(&rho, &cfg(20), &[]).unwrap(), sweep_casr(&rho, &cfg(20), &[]).unwrap());
}

#[test]
fn more_samples_only_append_candidates() {
    let ch = zoo::dephasing(0.2).unwrap();
    let small = cef_ensembles(&ch, &cfg(10), &[]).unwrap();
    let big = cef_ensembles(&ch, &cfg(30), &[]).unwrap();
    assert_eq!(&big[..small.len()], &small[..]);

    let rho = zoo::erased_state(0.25).unwrap();
    let small = casr_instruments(&rho, &cfg(5), &[]).unwrap();
    let big = casr_instruments(&rho, &cfg(25), &[]).unwrap();
    assert_eq!(&big[..small.len()], &small[..]);

    // Hence the assembled regions are nested.
    let r_small = assemble_region(&sweep_cef(&ch, &cfg(10), &[]).unwrap());
    let r_big = assemble_region(&sweep_cef(&ch, &cfg(30), &[]).unwrap());
    for v in r_small.points() {
        assert!(r_big.contains(*v, 1e-9));
    }
}

#[test]
fn forced_bell_on_identity() {
    let pts = sweep_cef(&QuantumChannel::identity(2).unwrap(), &cfg(1), &[Ensemble::max_entangled(2).unwrap()]).unwrap();
    assert_eq!(pts.len(), 1);
    assert!(close3(pts[0].triple, t(0.0, 1.0, 0.0), 1e-9));
}

#[test]
fn trivial_instrument_on_product_state() {
    let rho = DensityMatrix::basis_state("A", 2, 0).unwrap().tensor(&DensityMatrix::basis_state("B", 2, 0).unwrap()).unwrap();
    let pts = sweep_casr(&rho, &cfg(1), &[]).unwrap();
    assert_eq!(pts.len(), 1);
    assert!(pts[0].triple.max_abs() < 1e-12, "{}", pts[0].triple);
}

#[test]
fn structured_sweep_on_dephasing() {
    let ch = zoo::dephasing(0.2).unwrap();
    let h = h2(0.1);
    let c = SweepConfig { grid: Some(101), ..cfg(1) };
    let region = assemble_region(&sweep_cef(&ch, &c, &[]).unwrap());
    // Best quantum rate at zero classical rate with an ebit budget of H₂(0.1)/2.
    let cons = [
        Constraint::new(t(1.0, 0.0, 0.0), Relation::Eq, 0.0),
        Constraint::new(t(0.0, 0.0, 1.0), Relation::Ge, -h / 2.0),
    ];
    let (q, _) = region.maximize(t(0.0, 1.0, 0.0), &cons).unwrap();
    assert!((q - (1.0 - h / 2.0)).abs() < 1e-6, "{q}");
    // Coherent information (Q + E) tops out at the capacity.
    let (ci, _) = region.maximize(t(0.0, 1.0, 1.0), &[]).unwrap();
    assert!((ci - (1.0 - h)).abs() < 1e-9, "{ci}");
}

#[test]
fn structured_family_dominates_random_samples() {
    let ch = zoo::dephasing(0.2).unwrap();
    let structured = assemble_region(&sweep_cef(&ch, &SweepConfig { grid: Some(101), refine_iters: 3, ..cfg(1) }, &[]).unwrap());
    let random = sweep_cef(&ch, &cfg(2000), &[]).unwrap();
    let mut worst: f64 = 0.0;
    for p in &random {
        worst = worst.max(structured.membership_residual(p.triple));
    }
    assert!(worst < 1e-4, "worst residual {worst}");
}

#[test]
fn erased_sweep_reaches_mother_point() {
    let eps = 0.25;
    let rho = zoo::erased_state(eps).unwrap();
    let pts = sweep_casr(&rho, &cfg(16), &[]).unwrap();
    let mother = t(0.0, -eps, 1.0 - eps);
    assert!(pts.iter().any(|p| close3(p.triple, mother, 1e-9)));
    assert!(assemble_region(&pts).contains(mother, 1e-9));
}

#[test]
fn bell_state_instruments_stay_under_one_ebit() {
    let rho = zoo::bell();
    let forced = [Instrument::computational_measurement(2).unwrap()];
    let pts = sweep_casr(&rho, &SweepConfig { max_outcomes: 4, ..cfg(300) }, &forced).unwrap();
    for p in &pts {
        let x = p.triple;
        // Consumed quantum communication can only add what it carries.
        assert!(x.e <= 1.0 + x.q.min(0.0).abs() + 1e-9, "{x}");
        assert!(x.e + x.q <= 1.0 + 1e-9, "{x}");
    }
}

#[test]
fn swept_points_respect_their_own_bounds() {
    let ch = zoo::dephasing(0.2).unwrap();
    for (id, e) in cef_ensembles(&ch, &cfg(60), &[]).unwrap() {
        let sigma = build_sigma_dynamic(&ch, &e).unwrap();
        let x = qtriple::tradeoff::cef_point(&ch, &e).unwrap().triple;
        let v = cef_octant_bounds(&sigma, x).unwrap();
        assert!(v.passes(1e-8), "{id}: {x} slack {}", v.min_slack());
    }
    let rho = zoo::erased_state(0.25).unwrap();
    for (id, m) in casr_instruments(&rho, &cfg(60), &[]).unwrap() {
        let sigma = build_sigma_static(&rho, &m).unwrap();
        let x = qtriple::tradeoff::casr_point(&rho, &m).unwrap().triple;
        let v = casr_octant_bounds(&sigma, x).unwrap();
        assert!(v.passes(1e-8), "{id}: {x} slack {}", v.min_slack());
    }
}

#[test]
fn samplers_respect_dimensions() {
    for i in 0..20 {
        let e = random_ensemble(3, 4, 2, i).unwrap();
        assert!(e.len() >= 1 && e.len() <= 4);
        assert_eq!((e.a_dim(), e.a_prime_dim()), (3, 3));
        let m = random_instrument(3, 4, 2, i).unwrap();
        assert!(m.outcomes() >= 1 && m.outcomes() <= 4);
        assert_eq!((m.in_dim(), m.out_dim()), (3, 3));
    }
    assert_eq!(structured_ensembles(5).unwrap().len(), 10);
}

#[test]
fn config_validation() {
    let ch = zoo::dephasing(0.2).unwrap();
    assert!(SweepConfig::default().validate().is_ok());
    for bad in [
        SweepConfig { samples: 0, ..Default::default() },
        SweepConfig { max_outcomes: 0, ..Default::default() },
        SweepConfig { max_outcomes: 17, ..Default::default() },
        SweepConfig { copies: 3, ..Default::default() },
        SweepConfig { grid: Some(1), ..Default::default() },
    ] {
        assert!(bad.validate().is_err(), "{bad:?}");
        assert!(sweep_cef(&ch, &bad, &[]).is_err());
    }
    let wrong = Ensemble::max_entangled(3).unwrap();
    assert!(sweep_cef(&ch, &cfg(4), &[wrong]).is_err());
}

#[test]
fn unit_region_frontier_in_qe_plane() {
    let c = boundary_curve(&unit_region(), &OrthantSpec::ALL, Axis::C).unwrap();
    assert_eq!(c.axes, [Axis::Q, Axis::E]);
    assert_eq!(c.vertices, vec![[0.0, 0.0]]);
    let (l, r) = (c.left_ray.unwrap(), c.right_ray.unwrap());
    assert!(l[0] < 0.0 && (l[0] + l[1]).abs() < 1e-12);
    assert!(r[0] > 0.0 && (r[0] + r[1]).abs() < 1e-12);
}

#[test]
fn empty_sweep_frontier_is_the_unit_one() {
    let region = assemble_region(&[]);
    let a = boundary_curve(&region, &OrthantSpec::ALL, Axis::C).unwrap();
    let b = boundary_curve(&unit_region(), &OrthantSpec::ALL, Axis::C).unwrap();
    assert_eq!(a, b);
}

#[test]
fn point_plus_unit_frontier_in_cq_plane() {
    let region = minkowski_sum(&RateRegion::point(t(0.0, 1.0, 0.0)).unwrap(), &unit_region());
    let clip = OrthantSpec::new(Sign::Any, Sign::Any, Sign::Minus);
    let curve = boundary_curve(&region, &clip, Axis::E).unwrap();
    assert_eq!(curve.axes, [Axis::C, Axis::Q]);
    // Trading the qubit for two cbits via dense coding and back via teleportation
    // keeps every frontier point on C + 2Q = 2.
    for v in &curve.vertices {
        assert!((v[0] + 2.0 * v[1] - 2.0).abs() < 1e-9, "{v:?}");
    }
    for r in [curve.left_ray, curve.right_ray].into_iter().flatten() {
        assert!((r[0] + 2.0 * r[1]).abs() < 1e-9, "{r:?}");
    }
    assert!(!curve.vertices.is_empty());
}

#[test]
fn dephasing_frontier_with_free_classical_rate() {
    // A ~100-vertex region whose membership LPs once tripped on roundoff.
    let ch = zoo::dephasing(0.2).unwrap();
    let cfg = SweepConfig { samples: 200, max_outcomes: 3, grid: Some(101), ..Default::default() };
    let region = assemble_region(&sweep_cef(&ch, &cfg, &[]).unwrap());
    let clip = OrthantSpec::new(Sign::Any, Sign::Any, Sign::Minus);
    let curve = boundary_curve(&region, &clip, Axis::C).unwrap();
    let capacity = 1.0 - h2(0.1);
    assert_eq!(curve.vertices.len(), 1);
    assert!((curve.vertices[0][0] - capacity).abs() < 1e-9 && curve.vertices[0][1].abs() < 1e-12);
    let r = curve.right_ray.unwrap();
    assert!(r[0] > 0.0 && (r[0] + r[1]).abs() < 1e-12);
}
