//! Concrete channels and states with pinned conventions, plus closed-form
//! reference values.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)] // inherent in some feature sets
use num_traits::Float;

use crate::assembly::{A, B};
use crate::channel::QuantumChannel;
use crate::entropy::binary_entropy;
use crate::geometry::{RateRegion, RateTriple};
use crate::linalg::{CMatrix, C64};
use crate::state::{DensityMatrix, PureState, SubsystemLabel};
use crate::{unit, Error, Result};

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange { name, value });
    }
    Ok(())
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

/// ρ ↦ (1 − p/2) ρ + (p/2) ZρZ. At p = 1 the output is fully dephased.
pub fn dephasing(p: f64) -> Result<QuantumChannel> {
    check_unit_interval("p", p)?;
    QuantumChannel::new(vec![
        CMatrix::identity(2).scale_real((1.0 - p / 2.0).sqrt()),
        pauli_z().scale_real((p / 2.0).sqrt()),
    ])
}

/// Qubit to qutrit: ρ ↦ (1 − ε) ρ ⊕ ε |e⟩⟨e|, with |e⟩ = |2⟩.
pub fn erasure(eps: f64) -> Result<QuantumChannel> {
    check_unit_interval("eps", eps)?;
    let keep = (1.0 - eps).sqrt();
    let lose = eps.sqrt();
    let k0 = CMatrix::from_real(3, 2, &[keep, 0.0, 0.0, keep, 0.0, 0.0]);
    let k1 = CMatrix::from_real(3, 2, &[0.0, 0.0, 0.0, 0.0, lose, 0.0]);
    let k2 = CMatrix::from_real(3, 2, &[0.0, 0.0, 0.0, 0.0, 0.0, lose]);
    QuantumChannel::new(vec![k0, k1, k2])
}

/// Φ⁺ on A ⊗ B.
pub fn bell() -> DensityMatrix {
    PureState::max_entangled(A, B, 2).expect("two qubits are within any cap").density()
}

/// (1 − ε) Φ⁺ + ε π^A ⊗ |e⟩⟨e|^B on a qubit A and a qutrit B.
pub fn erased_state(eps: f64) -> Result<DensityMatrix> {
    check_unit_interval("eps", eps)?;
    let mut m = CMatrix::zeros(6, 6);
    // |00⟩ and |11⟩ sit at indices 0 and 4; |0e⟩ and |1e⟩ at 2 and 5.
    for &r in &[0usize, 4] {
        for &c in &[0usize, 4] {
            m[(r, c)] = C64::new((1.0 - eps) / 2.0, 0.0);
        }
    }
    m[(2, 2)] = C64::new(eps / 2.0, 0.0);
    m[(5, 5)] = C64::new(eps / 2.0, 0.0);
    DensityMatrix::new(vec![SubsystemLabel::new(A, 2), SubsystemLabel::new(B, 3)], m)
}

/// Closed-form entropies of the erased state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErasedStateReference {
    pub eps: f64,
    pub h_a: f64,
    pub h_b: f64,
    pub h_ab: f64,
    pub coherent_info: f64,
    pub half_mutual_ab: f64,
    pub half_mutual_ae: f64,
}

pub fn erased_state_reference(eps: f64) -> Result<ErasedStateReference> {
    check_unit_interval("eps", eps)?;
    let h = binary_entropy(eps);
    Ok(ErasedStateReference {
        eps,
        h_a: 1.0,
        h_b: 1.0 - eps + h,
        h_ab: eps + h,
        coherent_info: 1.0 - 2.0 * eps,
        half_mutual_ab: 1.0 - eps,
        half_mutual_ae: eps,
    })
}

/// Mother-protocol point of the erased state, consumption negative.
pub fn erased_mother_point(eps: f64) -> RateTriple {
    RateTriple::new(0.0, -eps, 1.0 - eps)
}

/// Hashing point: the mother point with its qubit cost paid by teleportation.
pub fn erased_hashing_point(eps: f64) -> RateTriple {
    RateTriple::new(-2.0 * eps, 0.0, 1.0 - 2.0 * eps)
}

/// Static region of the erased state: the mother point and the origin,
/// combined with every unit protocol (which includes wasting resources).
pub fn erased_state_static_region(eps: f64) -> Result<RateRegion> {
    check_unit_interval("eps", eps)?;
    unit::unit_region().with_points(&[erased_mother_point(eps)])
}

/// Largest entanglement rate in the Q = 0 plane when `c_consumed ≥ 0` cbits
/// are spent: time-sharing between the origin and the hashing point.
pub fn erased_wedge(eps: f64, c_consumed: f64) -> f64 {
    let top = (1.0 - 2.0 * eps).max(0.0);
    if eps == 0.0 {
        return top;
    }
    top * (c_consumed / (2.0 * eps)).min(1.0)
}

/// Closed-form values for the dephasing channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingReference {
    pub p: f64,
    /// 1 − H₂(p/2), the coherent information of Φ⁺ (and the capacity).
    pub quantum_capacity: f64,
    /// H₂(p/2), the environment entropy on a Φ⁺ input.
    pub env_entropy: f64,
}

pub fn dephasing_reference(p: f64) -> Result<DephasingReference> {
    check_unit_interval("p", p)?;
    let h = binary_entropy(p / 2.0);
    Ok(DephasingReference { p, quantum_capacity: 1.0 - h, env_entropy: h })
}

/// `name(:key=value)*` model descriptions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    Dephasing { p: f64 },
    Erasure { eps: f64 },
    Erased { eps: f64 },
    Bell,
    Identity { d: usize },
}

impl ModelSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.trim().split(':');
        let name = parts.next().unwrap_or("").trim();
        let mut kv: Vec<(String, String)> = Vec::new();
        for part in parts {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Model(format!("expected key=value, found `{part}`")))?;
            let k = k.trim().to_string();
            if kv.iter().any(|(seen, _)| *seen == k) {
                return Err(Error::Model(format!("key `{k}` given twice")));
            }
            kv.push((k, v.trim().to_string()));
        }
        let allowed: &[&str] = match name {
            "dephasing" => &["p"],
            "erasure" | "erased" => &["eps"],
            "bell" => &[],
            "identity" => &["d"],
            _ => return Err(Error::Model(format!("unknown model `{name}`"))),
        };
        for (k, _) in &kv {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::Model(format!("model `{name}` has no key `{k}`")));
            }
        }
        let real = |key: &'static str| -> Result<f64> {
            let (_, v) = kv
                .iter()
                .find(|(k, _)| k == key)
                .ok_or_else(|| Error::Model(format!("model `{name}` needs `{key}=`")))?;
            let x: f64 = v.parse().map_err(|_| Error::Model(format!("`{v}` is not a number")))?;
            check_unit_interval(key, x)?;
            Ok(x)
        };
        Ok(match name {
            "dephasing" => ModelSpec::Dephasing { p: real("p")? },
            "erasure" => ModelSpec::Erasure { eps: real("eps")? },
            "erased" => ModelSpec::Erased { eps: real("eps")? },
            "bell" => ModelSpec::Bell,
            _ => {
                let d = match kv.first() {
                    None => 2,
                    Some((_, v)) => v
                        .parse::<usize>()
                        .ok()
                        .filter(|&d| d >= 1)
                        .ok_or_else(|| Error::Model(format!("`{v}` is not a positive dimension")))?,
                };
                ModelSpec::Identity { d }
            }
        })
    }

    /// The channel, for dynamic models.
    pub fn channel(&self) -> Option<Result<QuantumChannel>> {
        match *self {
            ModelSpec::Dephasing { p } => Some(dephasing(p)),
            ModelSpec::Erasure { eps } => Some(erasure(eps)),
            ModelSpec::Identity { d } => Some(QuantumChannel::identity(d)),
            _ => None,
        }
    }

    /// The bipartite state on A, B, for static models.
    pub fn state(&self) -> Option<Result<DensityMatrix>> {
        match *self {
            ModelSpec::Erased { eps } => Some(erased_state(eps)),
            ModelSpec::Bell => Some(Ok(bell())),
            _ => None,
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Dephasing { p } => write!(f, "dephasing:p={p}"),
            ModelSpec::Erasure { eps } => write!(f, "erasure:eps={eps}"),
            ModelSpec::Erased { eps } => write!(f, "erased:eps={eps}"),
            ModelSpec::Bell => write!(f, "bell"),
            ModelSpec::Identity { d } => write!(f, "identity:d={d}"),
        }
    }
}
