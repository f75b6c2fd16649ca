//! Resource inequalities: `2[c->c] + [qq] >= [q->q]` and friends.
//!
//! The left side is consumed, the right side produced. Unit resources map to
//! rate triples; named noisy resources such as `<rho>` carry no rate and act
//! as a budget of one use shared by every protocol that consumes them.

mod parser;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::lp::{Lp, LpOutcome};
use crate::geometry::RateTriple;

pub use parser::parse;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RiError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown resource `{token}` at byte {offset}")]
    UnknownResource { offset: usize, token: String },
    #[error("noisy resource <{name}> at byte {offset} must appear once with coefficient 1")]
    NoisyMultiplicity { offset: usize, name: String },
    #[error("common randomness [cc] has no place in (C, Q, E) rate space")]
    CommonRandomness,
    #[error("noisy resource <{0}> cannot be produced")]
    NoisyOnRhs(String),
    #[error("at most one noisy resource may be consumed, found {0}")]
    TooManyNoisy(usize),
}

impl RiError {
    /// Byte offset for parse errors.
    pub fn offset(&self) -> Option<usize> {
        match self {
            RiError::Syntax { offset, .. }
            | RiError::UnknownResource { offset, .. }
            | RiError::NoisyMultiplicity { offset, .. } => Some(*offset),
            _ => None,
        }
    }
}

/// Ordered as printed: cbits, qubits, ebits, common randomness, then named
/// resources alphabetically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Resource {
    Cbit,
    Qubit,
    Ebit,
    CommonRandomness,
    Noisy(String),
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resource::Cbit => f.write_str("[c->c]"),
            Resource::Qubit => f.write_str("[q->q]"),
            Resource::Ebit => f.write_str("[qq]"),
            Resource::CommonRandomness => f.write_str("[cc]"),
            Resource::Noisy(n) => write!(f, "<{n}>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResourceTerm {
    pub coefficient: f64,
    pub resource: Resource,
}

impl fmt::Display for ResourceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficient != 1.0 {
            write!(f, "{}", self.coefficient)?;
        }
        write!(f, "{}", self.resource)
    }
}

/// `lhs >= rhs`, kept in canonical form: one term per resource, sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct ResourceExpr {
    pub lhs: Vec<ResourceTerm>,
    pub rhs: Vec<ResourceTerm>,
}

pub(crate) fn canonical(terms: Vec<ResourceTerm>) -> Vec<ResourceTerm> {
    let mut merged: BTreeMap<Resource, f64> = BTreeMap::new();
    for t in terms {
        *merged.entry(t.resource).or_insert(0.0) += t.coefficient;
    }
    merged.into_iter().map(|(resource, coefficient)| ResourceTerm { coefficient, resource }).collect()
}

impl fmt::Display for ResourceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |f: &mut fmt::Formatter<'_>, terms: &[ResourceTerm]| -> fmt::Result {
            for (i, t) in terms.iter().enumerate() {
                if i > 0 {
                    f.write_str(" + ")?;
                }
                write!(f, "{t}")?;
            }
            Ok(())
        };
        side(f, &self.lhs)?;
        f.write_str(" >= ")?;
        side(f, &self.rhs)
    }
}

/// Net rates of an expression.
#[derive(Debug, Clone, PartialEq)]
pub struct NetRate {
    pub triple: RateTriple,
    /// The consumed noisy resource, if any.
    pub noisy: Option<String>,
}

impl ResourceExpr {
    /// Produced minus consumed, as (C, Q, E).
    pub fn net_rate(&self) -> Result<NetRate, RiError> {
        let mut v = [0.0f64; 3];
        let mut noisy: Vec<String> = Vec::new();
        for (terms, sign) in [(&self.lhs, -1.0), (&self.rhs, 1.0)] {
            for t in terms {
                let slot = match &t.resource {
                    Resource::Cbit => 0,
                    Resource::Qubit => 1,
                    Resource::Ebit => 2,
                    Resource::CommonRandomness => return Err(RiError::CommonRandomness),
                    Resource::Noisy(n) => {
                        if sign > 0.0 {
                            return Err(RiError::NoisyOnRhs(n.clone()));
                        }
                        noisy.push(n.clone());
                        continue;
                    }
                };
                v[slot] += sign * t.coefficient;
            }
        }
        if noisy.len() > 1 {
            return Err(RiError::TooManyNoisy(noisy.len()));
        }
        Ok(NetRate { triple: RateTriple::from_array(v), noisy: noisy.pop() })
    }
}

/// Outcome of a derivability query. When `derivable`, the target's net rate
/// equals `Σ coefficients[i]·protocol[i] − waste` (waste ≥ 0 componentwise).
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub derivable: bool,
    pub coefficients: Vec<f64>,
    pub waste: [f64; 3],
}

impl Derivation {
    /// Replays the certificate.
    pub fn replay(&self, protocols: &[RateTriple]) -> RateTriple {
        let sum = protocols.iter().zip(&self.coefficients).fold(RateTriple::ORIGIN, |acc, (p, c)| acc + *c * *p);
        sum - RateTriple::from_array(self.waste)
    }
}

/// Feasibility tolerance for the derivation LP.
pub const DERIVE_TOL: f64 = 1e-9;

/// Whether `target` follows from nonnegative combinations of `protocols`
/// plus wasting resources. A protocol that consumes a noisy resource may be
/// used with total weight at most 1 across all protocols consuming that
/// resource, and only if the target itself consumes it.
pub fn derivable(target: &ResourceExpr, protocols: &[ResourceExpr]) -> Result<Derivation, RiError> {
    let t = target.net_rate()?;
    let ps: Vec<NetRate> = protocols.iter().map(ResourceExpr::net_rate).collect::<Result<_, _>>()?;
    let n = ps.len();
    let mut names: Vec<String> = ps.iter().filter_map(|p| p.noisy.clone()).collect();
    names.sort();
    names.dedup();
    let vars = n + 3 + names.len();
    let mut lp = Lp::new(vars);
    for k in 0..3 {
        let mut row = vec![0.0; vars];
        for (i, p) in ps.iter().enumerate() {
            row[i] = p.triple.to_array()[k];
        }
        row[n + k] = -1.0;
        lp.add_row(row, t.triple.to_array()[k]);
    }
    for (j, name) in names.iter().enumerate() {
        let mut row = vec![0.0; vars];
        for (i, p) in ps.iter().enumerate() {
            if p.noisy.as_deref() == Some(name.as_str()) {
                row[i] = 1.0;
            }
        }
        row[n + 3 + j] = 1.0;
        let budget = if t.noisy.as_deref() == Some(name.as_str()) { 1.0 } else { 0.0 };
        lp.add_row(row, budget);
    }
    // Prefer the sparsest-looking certificate: minimize total weight.
    for c in lp.c.iter_mut().take(n + 3) {
        *c = 1.0;
    }
    Ok(match lp.solve(DERIVE_TOL) {
        LpOutcome::Optimal { z, .. } => {
            Derivation { derivable: true, coefficients: z[..n].to_vec(), waste: [z[n], z[n + 1], z[n + 2]] }
        }
        _ => Derivation { derivable: false, coefficients: vec![0.0; n], waste: [0.0; 3] },
    })
}

/// The three unit protocols in this notation.
pub const TP: &str = "2[c->c] + [qq] >= [q->q]";
pub const SD: &str = "[q->q] + [qq] >= 2[c->c]";
pub const ED: &str = "[q->q] >= [qq]";
