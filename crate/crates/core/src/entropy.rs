//! Entropic functionals in bits.
//!
//! Every function takes subsystem groups as lists of label names. Groups in
//! one call must be disjoint.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent in some feature sets
use num_traits::Float;

use crate::state::{DensityMatrix, EIG_CLIP};
use crate::{Error, Result};

/// −Σ λ log₂ λ with the shared clipping rule for tiny negative eigenvalues.
pub fn entropy_of_spectrum(values: &[f64]) -> Result<f64> {
    let mut h = 0.0;
    for &v in values {
        if v < -EIG_CLIP {
            return Err(Error::NegativeEigenvalue(v));
        }
        if v > 0.0 {
            h -= v * v.log2();
        }
    }
    Ok(h)
}

/// H(group) of the reduced state. The empty group has entropy 0.
pub fn von_neumann(rho: &DensityMatrix, group: &[&str]) -> Result<f64> {
    check_disjoint(&[group])?;
    if group.is_empty() {
        return Ok(0.0);
    }
    let reduced = rho.partial_trace(group)?;
    entropy_of_spectrum(&reduced.eigenvalues())
}

/// I(A;B) = H(A) + H(B) − H(AB).
pub fn mutual_information(rho: &DensityMatrix, a: &[&str], b: &[&str]) -> Result<f64> {
    check_disjoint(&[a, b])?;
    Ok(von_neumann(rho, a)? + von_neumann(rho, b)? - von_neumann(rho, &join(&[a, b]))?)
}

/// I(A;B|C) = H(AC) + H(BC) − H(ABC) − H(C).
pub fn conditional_mutual_information(
    rho: &DensityMatrix,
    a: &[&str],
    b: &[&str],
    c: &[&str],
) -> Result<f64> {
    check_disjoint(&[a, b, c])?;
    Ok(von_neumann(rho, &join(&[a, c]))? + von_neumann(rho, &join(&[b, c]))?
        - von_neumann(rho, &join(&[a, b, c]))?
        - von_neumann(rho, c)?)
}

/// I(A⟩B) = H(B) − H(AB).
pub fn coherent_information(rho: &DensityMatrix, a: &[&str], b: &[&str]) -> Result<f64> {
    check_disjoint(&[a, b])?;
    Ok(von_neumann(rho, b)? - von_neumann(rho, &join(&[a, b]))?)
}

/// I(A⟩BX) = H(BX) − H(ABX).
pub fn conditional_coherent_information(
    rho: &DensityMatrix,
    a: &[&str],
    b: &[&str],
    x: &[&str],
) -> Result<f64> {
    check_disjoint(&[a, b, x])?;
    Ok(von_neumann(rho, &join(&[b, x]))? - von_neumann(rho, &join(&[a, b, x]))?)
}

/// H₂(p) in bits; 0 at both endpoints. Returns NaN outside [0, 1].
pub fn binary_entropy(p: f64) -> f64 {
    if !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

fn join<'a>(groups: &[&[&'a str]]) -> Vec<&'a str> {
    groups.iter().flat_map(|g| g.iter().copied()).collect()
}

fn check_disjoint(groups: &[&[&str]]) -> Result<()> {
    let mut seen: Vec<&str> = Vec::new();
    for g in groups {
        for &n in g.iter() {
            if seen.contains(&n) {
                return Err(Error::OverlappingGroups(n.to_owned()));
            }
            seen.push(n);
        }
    }
    Ok(())
}

/// A state together with named groupings of its subsystems, so formulas can
/// be written against composite systems such as `A = A1 T`.
#[derive(Debug, Clone)]
pub struct EntropyQuery<'a> {
    state: &'a DensityMatrix,
    groups: Vec<(String, Vec<String>)>,
}

impl<'a> EntropyQuery<'a> {
    pub fn new(state: &'a DensityMatrix) -> Self {
        Self { state, groups: Vec::new() }
    }

    /// Declares `name` as the union of `members`. Members must be labels of
    /// the state and must not belong to another group.
    pub fn group(mut self, name: &str, members: &[&str]) -> Result<Self> {
        if self.state.has_label(name) || self.groups.iter().any(|(g, _)| g == name) {
            return Err(Error::DuplicateLabel(name.to_owned()));
        }
        for m in members {
            if !self.state.has_label(m) {
                return Err(Error::UnknownLabel((*m).to_owned()));
            }
            if self.groups.iter().any(|(_, ms)| ms.iter().any(|x| x == m)) || members.iter().filter(|x| *x == m).count() > 1
            {
                return Err(Error::OverlappingGroups((*m).to_owned()));
            }
        }
        self.groups.push((name.to_owned(), members.iter().map(|m| (*m).to_owned()).collect()));
        Ok(self)
    }

    fn expand(&self, names: &[&str]) -> Vec<String> {
        let mut out = Vec::new();
        for &n in names {
            match self.groups.iter().find(|(g, _)| g == n) {
                Some((_, members)) => out.extend(members.iter().cloned()),
                None => out.push(n.to_owned()),
            }
        }
        out
    }

    fn resolve(&self, parts: &[&[&str]]) -> Result<Vec<Vec<String>>> {
        let expanded: Vec<Vec<String>> = parts.iter().map(|p| self.expand(p)).collect();
        let refs: Vec<Vec<&str>> =
            expanded.iter().map(|g| g.iter().map(String::as_str).collect()).collect();
        let slices: Vec<&[&str]> = refs.iter().map(Vec::as_slice).collect();
        check_disjoint(&slices)?;
        Ok(expanded)
    }

    pub fn h(&self, names: &[&str]) -> Result<f64> {
        let g = self.resolve(&[names])?;
        let r: Vec<&str> = g[0].iter().map(String::as_str).collect();
        von_neumann(self.state, &r)
    }

    pub fn mutual(&self, a: &[&str], b: &[&str]) -> Result<f64> {
        let g = self.resolve(&[a, b])?;
        let (a, b) = (as_refs(&g[0]), as_refs(&g[1]));
        mutual_information(self.state, &a, &b)
    }

    pub fn conditional_mutual(&self, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64> {
        let g = self.resolve(&[a, b, c])?;
        conditional_mutual_information(self.state, &as_refs(&g[0]), &as_refs(&g[1]), &as_refs(&g[2]))
    }

    pub fn coherent(&self, a: &[&str], b: &[&str]) -> Result<f64> {
        let g = self.resolve(&[a, b])?;
        coherent_information(self.state, &as_refs(&g[0]), &as_refs(&g[1]))
    }
}

fn as_refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}
