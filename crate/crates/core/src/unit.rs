//! Teleportation, super-dense coding and entanglement distribution, and the
//! region they generate.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{Facet, OrthantSpec, RateRegion, RateTriple, Ray, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitProtocol {
    Tp,
    Sd,
    Ed,
}

impl UnitProtocol {
    pub const ALL: [UnitProtocol; 3] = [UnitProtocol::Tp, UnitProtocol::Sd, UnitProtocol::Ed];

    pub fn name(self) -> &'static str {
        match self {
            UnitProtocol::Tp => "TP",
            UnitProtocol::Sd => "SD",
            UnitProtocol::Ed => "ED",
        }
    }

    pub fn vector(self) -> RateTriple {
        match self {
            UnitProtocol::Tp => RateTriple::new(-2.0, 1.0, -1.0),
            UnitProtocol::Sd => RateTriple::new(2.0, -1.0, -1.0),
            UnitProtocol::Ed => RateTriple::new(0.0, -1.0, 1.0),
        }
    }

    pub fn ray(self) -> Ray {
        Ray::new(self.vector()).expect("unit vectors are nonzero")
    }
}

/// The three facets `C+Q+E ≤ 0`, `Q+E ≤ 0`, `C+2Q ≤ 0`, with normals scaled
/// to max-abs 1.
pub fn unit_facets() -> Vec<Facet> {
    vec![
        Facet { normal: [1.0, 1.0, 1.0], offset: 0.0 },
        Facet { normal: [0.0, 1.0, 1.0], offset: 0.0 },
        Facet { normal: [0.5, 1.0, 0.0], offset: 0.0 },
    ]
}

/// Human-readable form of [`unit_facets`], in the same order.
pub const UNIT_FACET_NAMES: [&str; 3] = ["C+Q+E <= 0", "Q+E <= 0", "C+2Q <= 0"];

/// Cone of TP, SD and ED with apex at the origin.
pub fn unit_region() -> RateRegion {
    RateRegion::cone(UnitProtocol::ALL.iter().map(|p| p.ray()).collect()).expect("unit cone is valid")
}

/// Coefficients (α, β, γ) with `x = α·TP + β·SD + γ·ED`.
pub fn unit_coefficients(x: RateTriple) -> [f64; 3] {
    [-(x.c + x.q + x.e) / 2.0, -(x.q + x.e) / 2.0, -(x.c + 2.0 * x.q) / 2.0]
}

/// `x` is reachable by unit protocols iff all coefficients are ≥ −tol.
pub fn coefficients_feasible(x: RateTriple, tol: f64) -> bool {
    unit_coefficients(x).iter().all(|&a| a >= -tol)
}

/// Result of the per-octant check.
#[derive(Debug, Clone, PartialEq)]
pub struct OctantVerdict {
    pub octant: OrthantSpec,
    /// `(description, slack)`; slack ≥ 0 means satisfied.
    pub checks: Vec<(&'static str, f64)>,
    pub pass: bool,
}

/// The converse inequality of one closed octant, evaluated at `x`.
pub fn octant_verdict(octant: OrthantSpec, x: RateTriple, tol: f64) -> OctantVerdict {
    use Sign::{Minus as M, Plus as P};
    let (c, q, e) = (x.c, x.q, x.e);
    let checks: Vec<(&'static str, f64)> = match octant.signs {
        [P, P, P] => vec![("C+Q+E <= 0", -(c + q + e))],
        [P, P, M] => vec![("C+2Q <= 0", -(c + 2.0 * q))],
        [M, P, P] => vec![("Q+E <= 0", -(q + e))],
        [P, M, P] => vec![("C+E <= |Q|", q.abs() - (c + e))],
        [P, M, M] => vec![("C <= 2|Q|", 2.0 * q.abs() - c), ("C <= |Q|+|E|", q.abs() + e.abs() - c)],
        [M, P, M] => vec![("Q <= |E|", e.abs() - q), ("2Q <= |C|", c.abs() - 2.0 * q)],
        [M, M, P] => vec![("E <= |Q|", q.abs() - e)],
        _ => Vec::new(),
    };
    let pass = checks.iter().all(|(_, s)| *s >= -tol);
    OctantVerdict { octant, checks, pass }
}

/// Evaluates the octant inequalities for every closed octant containing `x`
/// (points on coordinate planes belong to several).
pub fn octant_bound_check(x: RateTriple, tol: f64) -> Vec<OctantVerdict> {
    OrthantSpec::octants_containing(x, tol).into_iter().map(|o| octant_verdict(o, x, tol)).collect()
}

/// True iff every applicable octant inequality holds.
pub fn octant_bounds_pass(x: RateTriple, tol: f64) -> bool {
    octant_bound_check(x, tol).iter().all(|v| v.pass)
}
