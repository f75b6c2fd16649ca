//! One-shot rate points, the regions they generate together with the unit
//! protocols, and converse inequalities as executable predicates.

use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent in some feature sets
use num_traits::Float;

use crate::assembly::{build_sigma_dynamic, build_sigma_static, A, A_PRIME, B, E, E_PRIME, X};
use crate::entropy::{conditional_coherent_information, conditional_mutual_information, mutual_information};
use crate::geometry::{Constraint, OrthantSpec, RateRegion, RateTriple, Relation, Sign};
use crate::unit;
use crate::{DensityMatrix, Ensemble, Error, Instrument, QuantumChannel, Result, SigmaDynamic, SigmaStatic};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointKind {
    Cef,
    Casr,
}

impl PointKind {
    pub fn name(self) -> &'static str {
        match self {
            PointKind::Cef => "CEF",
            PointKind::Casr => "CASR",
        }
    }
}

/// A rate triple achieved by one ensemble or instrument, already divided by
/// the number of copies `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct OneShotPoint {
    pub kind: PointKind,
    pub triple: RateTriple,
    pub provenance: String,
    pub k: usize,
}

/// (I(X;B), ½I(A;B|X), −½I(A;E|X)) on σ^{XABE}.
pub fn cef_triple(sigma: &SigmaDynamic) -> Result<RateTriple> {
    let s = sigma.state();
    Ok(RateTriple::new(
        mutual_information(s, &[X], &[B])?,
        0.5 * conditional_mutual_information(s, &[A], &[B], &[X])?,
        -0.5 * conditional_mutual_information(s, &[A], &[E], &[X])?,
    ))
}

/// (−I(X;E|B), −½I(A';E|E'X), ½(I(A';B|X) − I(A';E'|X))) on σ^{XA'BEE'}.
pub fn casr_triple(sigma: &SigmaStatic) -> Result<RateTriple> {
    let s = sigma.state();
    Ok(RateTriple::new(
        -conditional_mutual_information(s, &[X], &[E], &[B])?,
        -0.5 * conditional_mutual_information(s, &[A_PRIME], &[E], &[E_PRIME, X])?,
        0.5 * (conditional_mutual_information(s, &[A_PRIME], &[B], &[X])?
            - conditional_mutual_information(s, &[A_PRIME], &[E_PRIME], &[X])?),
    ))
}

pub fn cef_point(channel: &QuantumChannel, ens: &Ensemble) -> Result<OneShotPoint> {
    cef_point_copies(channel, ens, 1)
}

pub fn casr_point(rho: &DensityMatrix, instrument: &Instrument) -> Result<OneShotPoint> {
    casr_point_copies(rho, instrument, 1)
}

/// CEF point of `channel^{⊗k}` for an ensemble on the k-copy input, per copy.
pub fn cef_point_copies(channel: &QuantumChannel, ens: &Ensemble, k: usize) -> Result<OneShotPoint> {
    let ch = channel.tensor_power(k)?;
    let sigma = build_sigma_dynamic(&ch, ens)?;
    Ok(OneShotPoint {
        kind: PointKind::Cef,
        triple: (1.0 / k as f64) * cef_triple(&sigma)?,
        provenance: String::new(),
        k,
    })
}

/// CASR point of `ρ^{⊗k}` for an instrument on the k-copy A system, per copy.
pub fn casr_point_copies(rho: &DensityMatrix, instrument: &Instrument, k: usize) -> Result<OneShotPoint> {
    if k > 2 {
        return Err(Error::UnsupportedCopies(k));
    }
    let rho = rho.tensor_power(k)?;
    let sigma = build_sigma_static(&rho, instrument)?;
    Ok(OneShotPoint {
        kind: PointKind::Casr,
        triple: (1.0 / k as f64) * casr_triple(&sigma)?,
        provenance: String::new(),
        k,
    })
}

/// A noisy resource: a channel or a shared state.
#[derive(Debug, Clone, PartialEq)]
pub enum Resource {
    Channel(QuantumChannel),
    State(DensityMatrix),
}

/// `k` copies of a resource (k ∈ {1, 2}). Same-named factors of a state are
/// grouped.
pub fn tensor_copies(resource: &Resource, k: usize) -> Result<Resource> {
    if !(1..=2).contains(&k) {
        return Err(Error::UnsupportedCopies(k));
    }
    Ok(match resource {
        Resource::Channel(ch) => Resource::Channel(ch.tensor_power(k)?),
        Resource::State(rho) => Resource::State(rho.tensor_power(k)?),
    })
}

/// `conv({0} ∪ points) + cone(TP, SD, ED)`.
pub fn assemble_region(points: &[OneShotPoint]) -> RateRegion {
    let triples: Vec<RateTriple> = points.iter().map(|p| p.triple).collect();
    unit::unit_region().with_points(&triples).expect("one-shot triples are finite")
}

/// Entropic quantities of σ^{XABE} entering the dynamic converse bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicTerms {
    /// I(X;B)
    pub holevo: f64,
    /// I(AX;B)
    pub total: f64,
    /// I(A⟩BX)
    pub coherent: f64,
}

impl DynamicTerms {
    pub fn of(sigma: &SigmaDynamic) -> Result<Self> {
        let s = sigma.state();
        Ok(Self {
            holevo: mutual_information(s, &[X], &[B])?,
            total: mutual_information(s, &[A, X], &[B])?,
            coherent: conditional_coherent_information(s, &[A], &[B], &[X])?,
        })
    }
}

/// Entropic quantities of σ^{XA'BEE'} entering the static converse bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticTerms {
    /// I(X;E|B)
    pub classical_cost: f64,
    /// I(A';E|E'X)
    pub quantum_cost: f64,
    /// I(A'⟩BX)
    pub coherent: f64,
}

impl StaticTerms {
    pub fn of(sigma: &SigmaStatic) -> Result<Self> {
        let s = sigma.state();
        Ok(Self {
            classical_cost: conditional_mutual_information(s, &[X], &[E], &[B])?,
            quantum_cost: conditional_mutual_information(s, &[A_PRIME], &[E], &[E_PRIME, X])?,
            coherent: conditional_coherent_information(s, &[A_PRIME], &[B], &[X])?,
        })
    }
}

/// One evaluated inequality; `slack = rhs − lhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundVerdict {
    pub octant: OrthantSpec,
    pub checks: Vec<BoundCheck>,
}

impl BoundVerdict {
    pub fn min_slack(&self) -> f64 {
        self.checks.iter().map(|c| c.slack).fold(f64::INFINITY, f64::min)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.min_slack() >= -tol
    }

    /// Whether the point lies in this family's octant (within `tol`).
    pub fn applies_to(&self, x: RateTriple, tol: f64) -> bool {
        self.octant.contains(x, tol)
    }
}

/// Builds a verdict where each right-hand side is maximized over a family of
/// term sets (a single set gives the plain bound).
fn verdict<T: Copy>(
    octant: OrthantSpec,
    terms: &[T],
    lhs_rhs: &[(&'static str, f64, &dyn Fn(&T) -> f64)],
) -> BoundVerdict {
    let checks = lhs_rhs
        .iter()
        .map(|(name, lhs, rhs)| {
            let r = terms.iter().map(|t| rhs(t)).fold(f64::NEG_INFINITY, f64::max);
            BoundCheck { name, lhs: *lhs, rhs: r, slack: r - lhs }
        })
        .collect();
    BoundVerdict { octant, checks }
}

const PPM: OrthantSpec = OrthantSpec::new(Sign::Plus, Sign::Plus, Sign::Minus);
const MPM: OrthantSpec = OrthantSpec::new(Sign::Minus, Sign::Plus, Sign::Minus);
const PMM: OrthantSpec = OrthantSpec::new(Sign::Plus, Sign::Minus, Sign::Minus);
const MMP: OrthantSpec = OrthantSpec::new(Sign::Minus, Sign::Minus, Sign::Plus);

/// Octant (+,+,−): C+2Q ≤ I(AX;B), Q ≤ I(A⟩BX)+|E|, C+Q ≤ I(X;B)+I(A⟩BX)+|E|.
pub fn cef_octant_bounds(sigma: &SigmaDynamic, x: RateTriple) -> Result<BoundVerdict> {
    Ok(cef_octant_bounds_with(&[DynamicTerms::of(sigma)?], x))
}

pub fn cef_octant_bounds_with(terms: &[DynamicTerms], x: RateTriple) -> BoundVerdict {
    let e = x.e.abs();
    verdict(
        PPM,
        terms,
        &[
            ("C+2Q <= I(AX;B)", x.c + 2.0 * x.q, &|t: &DynamicTerms| t.total),
            ("Q <= I(A>BX)+|E|", x.q, &|t: &DynamicTerms| t.coherent + e),
            ("C+Q <= I(X;B)+I(A>BX)+|E|", x.c + x.q, &|t: &DynamicTerms| t.holevo + t.coherent + e),
        ],
    )
}

/// Octant (−,+,−): Q ≤ I(A⟩BX)+|E|, 2Q ≤ I(AX;B)+|C|.
pub fn caq_bounds(sigma: &SigmaDynamic, x: RateTriple) -> Result<BoundVerdict> {
    Ok(caq_bounds_with(&[DynamicTerms::of(sigma)?], x))
}

pub fn caq_bounds_with(terms: &[DynamicTerms], x: RateTriple) -> BoundVerdict {
    let (c, e) = (x.c.abs(), x.e.abs());
    verdict(
        MPM,
        terms,
        &[
            ("Q <= I(A>BX)+|E|", x.q, &|t: &DynamicTerms| t.coherent + e),
            ("2Q <= I(AX;B)+|C|", 2.0 * x.q, &|t: &DynamicTerms| t.total + c),
        ],
    )
}

/// Octant (+,−,−): C ≤ I(AX;B)+2|Q|, C ≤ I(X;B)+I(A⟩BX)+|Q|+|E|.
pub fn eaq_classical_bounds(sigma: &SigmaDynamic, x: RateTriple) -> Result<BoundVerdict> {
    Ok(eaq_classical_bounds_with(&[DynamicTerms::of(sigma)?], x))
}

pub fn eaq_classical_bounds_with(terms: &[DynamicTerms], x: RateTriple) -> BoundVerdict {
    let (q, e) = (x.q.abs(), x.e.abs());
    verdict(
        PMM,
        terms,
        &[
            ("C <= I(AX;B)+2|Q|", x.c, &|t: &DynamicTerms| t.total + 2.0 * q),
            ("C <= I(X;B)+I(A>BX)+|Q|+|E|", x.c, &|t: &DynamicTerms| t.holevo + t.coherent + q + e),
        ],
    )
}

/// Octant (−,−,+): E ≤ I(A'⟩BX)+|Q|, |C|+2|Q| ≥ I(X;E|B)+I(A';E|E'X),
/// E ≤ |C|+|Q|+I(A'⟩BX)−I(X;E|B).
pub fn casr_octant_bounds(sigma: &SigmaStatic, x: RateTriple) -> Result<BoundVerdict> {
    Ok(casr_octant_bounds_with(&[StaticTerms::of(sigma)?], x))
}

pub fn casr_octant_bounds_with(terms: &[StaticTerms], x: RateTriple) -> BoundVerdict {
    let (c, q) = (x.c.abs(), x.q.abs());
    // The cost inequality points the other way: the smallest cost over the
    // family is the binding one, so it is written as −cost ≥ … to reuse the
    // maximizing helper.
    verdict(
        MMP,
        terms,
        &[
            ("E <= I(A'>BX)+|Q|", x.e, &|t: &StaticTerms| t.coherent + q),
            ("|C|+2|Q| >= I(X;E|B)+I(A';E|E'X)", -(c + 2.0 * q), &|t: &StaticTerms| {
                -(t.classical_cost + t.quantum_cost)
            }),
            ("E <= |C|+|Q|+I(A'>BX)-I(X;E|B)", x.e, &|t: &StaticTerms| c + q + t.coherent - t.classical_cost),
        ],
    )
}

/// Entanglement saved by coding over the channel, compared with pure
/// teleportation, when classical communication is free.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    /// Quantum rate both strategies are compared at.
    pub q: f64,
    /// Ebits consumed by teleportation alone (= q).
    pub tp_ebits: f64,
    /// Fewest ebits consumed by the achievable region at the same q.
    pub region_ebits: f64,
    pub gap: f64,
}

/// Quantum rate used for the comparison: log₂(d_in) + 1, high enough that
/// the region's boundary has reached its teleportation-slope part.
pub fn matched_quantum_rate(in_dim: usize) -> f64 {
    (in_dim as f64).log2() + 1.0
}

/// Compares, at quantum rate `q`, the teleportation line with the
/// assembled region restricted to C ≤ 0, E ≤ 0.
pub fn ea_vs_tp_gap(points: &[OneShotPoint], q: f64) -> Result<GapReport> {
    let region = assemble_region(points);
    let cons = [
        Constraint::new(RateTriple::new(0.0, 1.0, 0.0), Relation::Eq, q),
        Constraint::new(RateTriple::new(1.0, 0.0, 0.0), Relation::Le, 0.0),
        Constraint::new(RateTriple::new(0.0, 0.0, 1.0), Relation::Le, 0.0),
    ];
    let (best_e, _) = region.maximize(RateTriple::new(0.0, 0.0, 1.0), &cons)?;
    // Teleportation spends one ebit per qubit.
    let region_ebits = -best_e;
    Ok(GapReport { q, tp_ebits: q, region_ebits, gap: q - region_ebits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::binary_entropy;
    use crate::state::PureState;
    use crate::zoo;

    fn close(a: RateTriple, b: RateTriple, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    #[test]
    fn identity_channel_bell_point() {
        let p = cef_point(&QuantumChannel::identity(2).unwrap(), &Ensemble::max_entangled(2).unwrap()).unwrap();
        assert!(close(p.triple, RateTriple::new(0.0, 1.0, 0.0), 1e-12));
    }

    #[test]
    fn dephasing_bell_point() {
        let h = binary_entropy(0.1);
        let p = cef_point(&zoo::dephasing(0.2).unwrap(), &Ensemble::max_entangled(2).unwrap()).unwrap();
        assert!(close(p.triple, RateTriple::new(0.0, 1.0 - h / 2.0, -h / 2.0), 1e-12));
    }

    #[test]
    fn classical_ensemble_point() {
        let ens = Ensemble::new(
            (0..2)
                .map(|i| (0.5, PureState::basis("R", 1, 0).unwrap().tensor(&PureState::basis("S", 2, i).unwrap()).unwrap()))
                .collect(),
        )
        .unwrap();
        let p = cef_point(&zoo::dephasing(0.2).unwrap(), &ens).unwrap();
        assert!(close(p.triple, RateTriple::new(1.0, 0.0, 0.0), 1e-12));
    }

    #[test]
    fn static_points() {
        let bell = zoo::bell();
        let p = casr_point(&bell, &Instrument::trivial(2).unwrap()).unwrap();
        assert!(close(p.triple, RateTriple::new(0.0, 0.0, 1.0), 1e-12));
        let z = casr_point(&bell, &Instrument::computational_measurement(2).unwrap()).unwrap();
        assert!(close(z.triple, RateTriple::ORIGIN, 1e-12));
        let m = casr_point(&zoo::erased_state(0.25).unwrap(), &Instrument::trivial(2).unwrap()).unwrap();
        assert!(close(m.triple, zoo::erased_mother_point(0.25), 1e-12));
    }

    #[test]
    fn copies_are_capped() {
        let rho = zoo::bell();
        assert!(casr_point_copies(&rho, &Instrument::trivial(8).unwrap(), 3).is_err());
        assert!(tensor_copies(&Resource::State(rho), 3).is_err());
    }

    #[test]
    fn gap_for_identity_channel() {
        let p = cef_point(&QuantumChannel::identity(2).unwrap(), &Ensemble::max_entangled(2).unwrap()).unwrap();
        let g = ea_vs_tp_gap(&[p], matched_quantum_rate(2)).unwrap();
        assert!((g.gap - 1.0).abs() < 1e-9);
        assert!((g.tp_ebits - 2.0).abs() < 1e-12);
        let none = ea_vs_tp_gap(&[], 2.0).unwrap();
        assert!(none.gap.abs() < 1e-9);
    }
}
