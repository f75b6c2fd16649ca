mod common;

use common::*;
use num_complex::Complex64 as Z;
use proptest::prelude::*;
use qtriple::assembly::{build_sigma_dynamic, build_sigma_static};
use qtriple::geometry::slide_and_clip;
use qtriple::optimizer::{random_ensemble, random_instrument, sweep_cef, SweepConfig};
use qtriple::tradeoff::{
    assemble_region, caq_bounds, casr_octant_bounds, casr_point, casr_point_copies, cef_octant_bounds,
    cef_octant_bounds_with, cef_point, cef_point_copies, ea_vs_tp_gap, eaq_classical_bounds, matched_quantum_rate,
    tensor_copies, DynamicTerms, Resource,
};
use qtriple::unit::{unit_region, UnitProtocol};
use qtriple::{zoo, Ensemble, Instrument, OrthantSpec, QuantumChannel, RateTriple};

const TOL: f64 = 1e-9;

fn t(c: f64, q: f64, e: f64) -> RateTriple {
    RateTriple::new(c, q, e)
}

fn classical_ensemble() -> Ensemble {
    let z = |v: f64| Z::new(v, 0.0);
    Ensemble::from_vectors(2, 2, vec![(0.5, vec![z(1.0), z(0.0), z(0.0), z(0.0)]), (0.5, vec![z(0.0), z(0.0), z(0.0), z(1.0)])])
        .unwrap()
}

#[test]
fn cef_point_examples() {
    let phi = Ensemble::max_entangled(2).unwrap();
    let p = cef_point(&QuantumChannel::identity(2).unwrap(), &phi).unwrap();
    assert!(close3(p.triple, t(0.0, 1.0, 0.0), TOL));

    let h = h2(0.1);
    let p = cef_point(&zoo::dephasing(0.2).unwrap(), &phi).unwrap();
    assert!(close3(p.triple, t(0.0, 1.0 - h / 2.0, -h / 2.0), TOL));
    assert!(close3(p.triple, t(0.0, 0.7655, -0.2345), 5e-5));

    let p = cef_point(&zoo::dephasing(0.2).unwrap(), &classical_ensemble()).unwrap();
    assert!(close3(p.triple, t(1.0, 0.0, 0.0), TOL));
}

#[test]
fn casr_point_examples() {
    let p = casr_point(&zoo::bell(), &Instrument::trivial(2).unwrap()).unwrap();
    assert!(close3(p.triple, t(0.0, 0.0, 1.0), TOL));
    for eps in [0.1, 0.25, 0.4] {
        let p = casr_point(&zoo::erased_state(eps).unwrap(), &Instrument::trivial(2).unwrap()).unwrap();
        assert!(close3(p.triple, t(0.0, -eps, 1.0 - eps), TOL));
    }
    let p = casr_point(&zoo::bell(), &Instrument::computational_measurement(2).unwrap()).unwrap();
    assert!(close3(p.triple, RateTriple::ORIGIN, TOL));
}

#[test]
fn assemble_examples() {
    let phi = Ensemble::max_entangled(2).unwrap();
    let p = cef_point(&QuantumChannel::identity(2).unwrap(), &phi).unwrap();
    assert!(assemble_region(&[p]).contains(t(2.0, 0.0, -1.0), 1e-8));

    let empty = assemble_region(&[]);
    let mut r = rng(3);
    for _ in 0..500 {
        let x = random_triple(&mut r, 3.0);
        assert_eq!(empty.contains(x, 1e-8), unit_region().contains(x, 1e-8));
    }

    let m = casr_point(&zoo::erased_state(0.25).unwrap(), &Instrument::trivial(2).unwrap()).unwrap();
    let reg = assemble_region(&[m]);
    assert!(reg.contains(t(-0.5, 0.0, 0.5), 1e-8));
    assert!(!reg.contains(t(-0.5, 0.0, 0.5 + 1e-3), 1e-8));
}

#[test]
fn tensor_copies_examples() {
    let ch = zoo::dephasing(0.2).unwrap();
    assert_eq!(tensor_copies(&Resource::Channel(ch.clone()), 1).unwrap(), Resource::Channel(ch.clone()));
    assert!(tensor_copies(&Resource::Channel(ch.clone()), 3).is_err());

    let phi = Ensemble::max_entangled(2).unwrap();
    let one = cef_point(&ch, &phi).unwrap().triple;
    let two = cef_point_copies(&ch, &phi.tensor(&phi).unwrap(), 2).unwrap();
    assert_eq!(two.k, 2);
    assert!(close3(two.triple, one, 1e-8));

    let rho = zoo::erased_state(0.25).unwrap();
    let one = casr_point(&rho, &Instrument::trivial(2).unwrap()).unwrap().triple;
    let two = casr_point_copies(&rho, &Instrument::trivial(4).unwrap(), 2).unwrap().triple;
    assert!(close3(two, one, 1e-8));
}

#[test]
fn cef_bounds_are_saturated_at_the_point() {
    let ch = zoo::dephasing(0.2).unwrap();
    for i in 0..20 {
        let ens = random_ensemble(2, 4, 5, i).unwrap();
        let sigma = build_sigma_dynamic(&ch, &ens).unwrap();
        let p = cef_point(&ch, &ens).unwrap().triple;
        let v = cef_octant_bounds(&sigma, p).unwrap();
        assert!(v.checks.iter().all(|c| c.slack.abs() < 1e-9), "{v:?}");
        assert!(cef_octant_bounds(&sigma, RateTriple::ORIGIN).unwrap().passes(0.0));
        assert!(!cef_octant_bounds(&sigma, p + t(0.1, 0.0, 0.0)).unwrap().passes(1e-9));
    }
}

#[test]
fn caq_bounds_are_saturated_after_teleportation() {
    let ch = zoo::dephasing(0.2).unwrap();
    for i in 0..20 {
        let ens = random_ensemble(2, 4, 6, i).unwrap();
        let sigma = build_sigma_dynamic(&ch, &ens).unwrap();
        let p = cef_point(&ch, &ens).unwrap().triple;
        let x = p + (p.c / 2.0 + 0.1) * UnitProtocol::Tp.vector();
        assert!(OrthantSpec::parse("(-,+,-)").unwrap().contains(x, 1e-12));
        let v = caq_bounds(&sigma, x).unwrap();
        assert!(v.checks.iter().all(|c| c.slack.abs() < 1e-9), "{v:?}");
        assert!(caq_bounds(&sigma, RateTriple::ORIGIN).unwrap().passes(0.0));
        assert!(!caq_bounds(&sigma, x + t(0.0, 0.1, 0.0)).unwrap().passes(1e-9));
    }
}

#[test]
fn eaq_bounds_are_saturated_after_dense_coding() {
    let ch = zoo::dephasing(0.2).unwrap();
    for i in 0..20 {
        let ens = random_ensemble(2, 4, 7, i).unwrap();
        let sigma = build_sigma_dynamic(&ch, &ens).unwrap();
        let p = cef_point(&ch, &ens).unwrap().triple;
        let x = p + (p.q + 0.1) * UnitProtocol::Sd.vector();
        assert!(OrthantSpec::parse("(+,-,-)").unwrap().contains(x, 1e-12));
        let v = eaq_classical_bounds(&sigma, x).unwrap();
        assert!(v.checks.iter().all(|c| c.slack.abs() < 1e-9), "{v:?}");
        assert!(eaq_classical_bounds(&sigma, RateTriple::ORIGIN).unwrap().passes(0.0));
        assert!(!eaq_classical_bounds(&sigma, x + t(0.1, 0.0, 0.0)).unwrap().passes(1e-9));
    }
}

#[test]
fn casr_bounds_examples() {
    let eps = 0.25;
    let rho = zoo::erased_state(eps).unwrap();
    let sigma = build_sigma_static(&rho, &Instrument::trivial(2).unwrap()).unwrap();
    let mother = t(0.0, -eps, 1.0 - eps);
    let v = casr_octant_bounds(&sigma, mother).unwrap();
    let net_ebits = v.checks.iter().find(|c| c.name.starts_with("E <= |C|")).unwrap();
    assert!(net_ebits.slack.abs() < 1e-9);
    assert!(v.passes(1e-9));

    let bell = build_sigma_static(&zoo::bell(), &Instrument::trivial(2).unwrap()).unwrap();
    assert!(casr_octant_bounds(&bell, RateTriple::ORIGIN).unwrap().passes(0.0));

    // More entanglement than hashing yields, at no cost.
    let v = casr_octant_bounds(&sigma, t(0.0, 0.0, 1.0 - 2.0 * eps + 0.1)).unwrap();
    let net_ebits = v.checks.iter().find(|c| c.name.starts_with("E <= |C|")).unwrap();
    assert!(net_ebits.slack < -0.05);
}

#[test]
fn gap_examples() {
    let cfg = SweepConfig { samples: 8, grid: Some(101), ..SweepConfig::default() };
    let q = matched_quantum_rate(2);

    let pts = sweep_cef(&QuantumChannel::identity(2).unwrap(), &cfg, &[]).unwrap();
    let g = ea_vs_tp_gap(&pts, q).unwrap();
    assert!((g.gap - 1.0).abs() < 1e-9);

    let pts = sweep_cef(&zoo::dephasing(1.0).unwrap(), &cfg, &[]).unwrap();
    let g = ea_vs_tp_gap(&pts, q).unwrap();
    assert!(g.gap.abs() < 1e-9);

    let pts = sweep_cef(&zoo::dephasing(0.2).unwrap(), &cfg, &[]).unwrap();
    let g = ea_vs_tp_gap(&pts, q).unwrap();
    assert!((g.gap - (1.0 - h2(0.1))).abs() < 1e-4);
    assert_eq!(g.tp_ebits, q);
}

#[test]
fn quadrant_specializations() {
    let ch = zoo::dephasing(0.2).unwrap();
    let pts: Vec<_> = (0..30).map(|i| cef_point(&ch, &random_ensemble(2, 4, 8, i).unwrap()).unwrap()).collect();
    let region = assemble_region(&pts);
    let father = region.clip(&OrthantSpec::parse("(0,+,-)").unwrap()).unwrap();
    assert!(father.points().iter().all(|p| p.c.abs() < 1e-9));
    assert!(father.rays().iter().all(|r| r.direction().c.abs() < 1e-9));

    for p in &pts {
        let s = qtriple::RateRegion::point(p.triple).unwrap();
        let cq = slide_and_clip(&s, UnitProtocol::Ed.ray(), &OrthantSpec::parse("(+,+,0)").unwrap());
        if let Ok(cq) = cq {
            assert!(cq.points().iter().all(|x| x.e.abs() < 1e-9));
        }
    }
}

#[test]
fn assembled_region_respects_its_envelope() {
    let ch = zoo::dephasing(0.2).unwrap();
    let ensembles: Vec<Ensemble> = (0..200).map(|i| random_ensemble(2, 4, 10, i).unwrap()).collect();
    let terms: Vec<DynamicTerms> =
        ensembles.iter().map(|e| DynamicTerms::of(&build_sigma_dynamic(&ch, e).unwrap()).unwrap()).collect();
    let pts: Vec<_> = ensembles.iter().map(|e| cef_point(&ch, e).unwrap()).collect();
    let octant = assemble_region(&pts).clip(&OrthantSpec::parse("(+,+,-)").unwrap()).unwrap().minimal().unwrap();
    for v in octant.points() {
        assert!(cef_octant_bounds_with(&terms, *v).passes(1e-8), "vertex {v}");
        for r in octant.rays() {
            let far = *v + 10.0 * r.direction();
            assert!(cef_octant_bounds_with(&terms, far).passes(1e-8), "{far}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn one_shot_points_have_the_right_signs(outcomes in 1usize..=4, seed in any::<u64>(), p in 0.0f64..=1.0) {
        let ens = random_ensemble(2, outcomes, seed, 0).unwrap();
        let x = cef_point(&zoo::dephasing(p).unwrap(), &ens).unwrap().triple;
        prop_assert!(x.c >= -1e-9 && x.q >= -1e-9 && x.e <= 1e-9);
        let ins = random_instrument(2, outcomes, seed, 1).unwrap();
        let y = casr_point(&zoo::erased_state(p).unwrap(), &ins).unwrap().triple;
        prop_assert!(y.c <= 1e-9 && y.q <= 1e-9);
    }

    #[test]
    fn product_ensembles_are_additive_on_dephasing(a in any::<u64>(), p in 0.0f64..=1.0) {
        let ch = zoo::dephasing(p).unwrap();
        let e = random_ensemble(2, 2, a, 0).unwrap();
        let one = cef_point(&ch, &e).unwrap().triple;
        let two = cef_point_copies(&ch, &e.tensor(&e).unwrap(), 2).unwrap().triple;
        prop_assert!(close3(one, two, 1e-8));
    }
}
