//! The two classical-quantum states every rate formula is evaluated on.
//!
//! Dynamic case: `σ^{XABE} = Σ_x p(x) |x⟩⟨x| ⊗ U_N(ψ_x^{AA'})`.
//! Static case: `σ^{XA'BEE'}` from a purification `ψ^{ABE}` of ρ^{AB} and the
//! canonical Kraus dilation of an instrument on A.
//!
//! The classical register X is an ordinary subsystem; block-diagonality in X
//! is checked rather than assumed.

#[allow(unused_imports)] // inherent in some feature sets
use num_traits::Float;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::channel::{completeness_defect, QuantumChannel};
use crate::linalg::{self, CMatrix, C64, ZERO};
use crate::state::{self, DensityMatrix, PureState, SubsystemLabel, STATE_TOL};
use crate::{Error, Result};

pub const X: &str = "X";
pub const A: &str = "A";
pub const A_PRIME: &str = "A'";
pub const B: &str = "B";
pub const E: &str = "E";
pub const E_PRIME: &str = "E'";

/// Largest ensemble or instrument cardinality accepted.
pub const MAX_OUTCOMES: usize = 16;

/// Off-block mass allowed in a classical register.
pub const BLOCK_TOL: f64 = 1e-12;

fn check_probabilities(ps: &[f64]) -> Result<()> {
    let sum: f64 = ps.iter().sum();
    if ps.iter().any(|&p| p < -STATE_TOL || !p.is_finite()) || (sum - 1.0).abs() > STATE_TOL {
        return Err(Error::BadProbabilities(sum));
    }
    Ok(())
}

fn check_outcomes(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty("no outcomes"));
    }
    if n > MAX_OUTCOMES {
        return Err(Error::TooManyOutcomes(n, MAX_OUTCOMES));
    }
    Ok(())
}

/// Pure-state ensemble `{p(x), ψ_x^{AA'}}`. Every state has the two factors
/// `A` (kept by the sender) and `A'` (fed to the channel), in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    entries: Vec<(f64, PureState)>,
    a_dim: usize,
    a_prime_dim: usize,
}

impl Ensemble {
    /// Accepts states on any two labels and renames them to `A`, `A'`.
    pub fn new(entries: Vec<(f64, PureState)>) -> Result<Self> {
        check_outcomes(entries.len())?;
        let ps: Vec<f64> = entries.iter().map(|e| e.0).collect();
        check_probabilities(&ps)?;
        let dims = entries[0].1.dims();
        if dims.len() != 2 {
            return Err(Error::Invalid(format!("ensemble states need two factors, found {}", dims.len())));
        }
        let mut out = Vec::with_capacity(entries.len());
        for (p, psi) in entries {
            if psi.dims() != dims {
                return Err(Error::DimensionMismatch { expected: dims[0] * dims[1], found: psi.dims().iter().product() });
            }
            let labels = vec![SubsystemLabel::new(A, dims[0]), SubsystemLabel::new(A_PRIME, dims[1])];
            out.push((p.max(0.0), PureState::new(labels, psi.vector().to_vec())?));
        }
        Ok(Self { entries: out, a_dim: dims[0], a_prime_dim: dims[1] })
    }

    /// Builds from raw amplitude vectors on `A ⊗ A'` (A most significant).
    pub fn from_vectors(a_dim: usize, a_prime_dim: usize, entries: Vec<(f64, Vec<C64>)>) -> Result<Self> {
        let labels = vec![SubsystemLabel::new(A, a_dim), SubsystemLabel::new(A_PRIME, a_prime_dim)];
        let states = entries
            .into_iter()
            .map(|(p, v)| Ok((p, PureState::new(labels.clone(), v)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(states)
    }

    /// Single entry `Φ⁺` on `A ⊗ A'` of dimension `d`.
    pub fn max_entangled(d: usize) -> Result<Self> {
        Self::new(vec![(1.0, PureState::max_entangled(A, A_PRIME, d)?)])
    }

    pub fn entries(&self) -> &[(f64, PureState)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn a_dim(&self) -> usize {
        self.a_dim
    }

    pub fn a_prime_dim(&self) -> usize {
        self.a_prime_dim
    }

    /// Product ensemble with entries `(p_x q_y, ψ_x ⊗ φ_y)`; the factors are
    /// regrouped as `A = A₁A₂`, `A' = A'₁A'₂`.
    pub fn tensor(&self, other: &Ensemble) -> Result<Self> {
        check_outcomes(self.len() * other.len())?;
        let mut entries = Vec::with_capacity(self.len() * other.len());
        for (p, psi) in &self.entries {
            for (q, phi) in &other.entries {
                let l = |n: &str, d: usize| SubsystemLabel::new(n, d);
                let a = PureState::from_parts(
                    vec![l("a1", self.a_dim), l("p1", self.a_prime_dim)],
                    psi.vector().to_vec(),
                );
                let b = PureState::from_parts(
                    vec![l("a2", other.a_dim), l("p2", other.a_prime_dim)],
                    phi.vector().to_vec(),
                );
                let joint = a.tensor(&b)?.reorder(&["a1", "a2", "p1", "p2"])?;
                let joint = joint.merge(&["a1", "a2"], A)?.merge(&["p1", "p2"], A_PRIME)?;
                entries.push((p * q, joint));
            }
        }
        Self::new(entries)
    }
}

/// Quantum instrument `{M_{x,k}}` from A to A'. Outcome `x` is the branch
/// index.
#[derive(Debug, Clone, PartialEq)]
pub struct Instrument {
    branches: Vec<Vec<CMatrix>>,
    in_dim: usize,
    out_dim: usize,
}

impl Instrument {
    /// Validates shapes and Σ_{x,k} M†M = I.
    pub fn new(branches: Vec<Vec<CMatrix>>) -> Result<Self> {
        check_outcomes(branches.len())?;
        let first = branches
            .iter()
            .flat_map(|b| b.first())
            .next()
            .ok_or(Error::Empty("instrument has no Kraus operators"))?;
        let (out_dim, in_dim) = (first.rows(), first.cols());
        for m in branches.iter().flatten() {
            if m.cols() != in_dim {
                return Err(Error::DimensionMismatch { expected: in_dim, found: m.cols() });
            }
            if m.rows() != out_dim {
                return Err(Error::DimensionMismatch { expected: out_dim, found: m.rows() });
            }
        }
        if branches.iter().any(Vec::is_empty) {
            return Err(Error::Empty("instrument branch without Kraus operators"));
        }
        let all: Vec<CMatrix> = branches.iter().flatten().cloned().collect();
        let dev = completeness_defect(&all, in_dim);
        if dev > STATE_TOL {
            return Err(Error::Completeness(dev));
        }
        Ok(Self { branches, in_dim, out_dim })
    }

    /// One outcome, identity map.
    pub fn trivial(d: usize) -> Result<Self> {
        Self::new(vec![vec![CMatrix::identity(d)]])
    }

    /// Measure in the computational basis and keep the collapsed state.
    pub fn computational_measurement(d: usize) -> Result<Self> {
        Self::new(
            (0..d)
                .map(|x| {
                    let mut m = CMatrix::zeros(d, d);
                    m[(x, x)] = linalg::ONE;
                    vec![m]
                })
                .collect(),
        )
    }

    /// Every channel is a one-outcome instrument.
    pub fn from_channel(ch: &QuantumChannel) -> Result<Self> {
        Self::new(vec![ch.kraus().to_vec()])
    }

    pub fn branches(&self) -> &[Vec<CMatrix>] {
        &self.branches
    }

    pub fn outcomes(&self) -> usize {
        self.branches.len()
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    /// Dimension of E': the largest Kraus count of any branch.
    pub fn env_dim(&self) -> usize {
        self.branches.iter().map(Vec::len).max().unwrap_or(1)
    }

    /// `V_x = Σ_k M_{x,k} ⊗ |k⟩_{E'}`, zero-padded to `env_dim` columns of E'.
    pub fn branch_isometries(&self) -> Vec<CMatrix> {
        let r = self.env_dim();
        self.branches
            .iter()
            .map(|ops| {
                CMatrix::from_fn(self.out_dim * r, self.in_dim, |row, c| {
                    ops.get(row % r).map_or(ZERO, |m| m[(row / r, c)])
                })
            })
            .collect()
    }

    /// Outcome probabilities `Tr(Σ_k M_{x,k} ρ M_{x,k}†)` on the input state.
    pub fn probabilities(&self, rho_in: &CMatrix) -> Vec<f64> {
        self.branches
            .iter()
            .map(|ops| ops.iter().map(|m| m.mul(rho_in).mul(&m.adjoint()).trace().re).sum())
            .collect()
    }

    /// Product instrument with outcomes `(x, y)` and Kraus operators
    /// `M_{x,k} ⊗ N_{y,l}`.
    pub fn tensor(&self, other: &Instrument) -> Result<Self> {
        check_outcomes(self.outcomes() * other.outcomes())?;
        let mut branches = Vec::new();
        for bx in &self.branches {
            for by in &other.branches {
                let mut ops = Vec::with_capacity(bx.len() * by.len());
                for m in bx {
                    for n in by {
                        ops.push(m.kron(n));
                    }
                }
                branches.push(ops);
            }
        }
        Self::new(branches)
    }

    /// Applies the dilation to the factor `on` of `psi`: for each outcome
    /// the branch vector `V_x|ψ⟩`, with `on` renamed to A' and E' appended
    /// last. Returns the outcome probabilities and the unnormalized branch
    /// states.
    pub fn dilate(&self, psi: &PureState, on: &str) -> Result<(Vec<f64>, Vec<PureState>)> {
        let din = psi.dim_of(on)?;
        if din != self.in_dim {
            return Err(Error::DimensionMismatch { expected: self.in_dim, found: din });
        }
        let out_labels = [SubsystemLabel::new(A_PRIME, self.out_dim), SubsystemLabel::new(E_PRIME, self.env_dim())];
        let mut probs = Vec::with_capacity(self.outcomes());
        let mut states = Vec::with_capacity(self.outcomes());
        for v in self.branch_isometries() {
            let (labels, vector) = psi.apply_map(on, &v, &out_labels)?;
            let mut order: Vec<String> = labels.iter().map(|l| l.name.clone()).filter(|n| n != E_PRIME).collect();
            order.push(E_PRIME.into());
            let order: Vec<&str> = order.iter().map(String::as_str).collect();
            let branch = PureState::from_parts(labels, vector).reorder(&order)?;
            probs.push(linalg::vec_norm(branch.vector()).powi(2));
            states.push(branch);
        }
        Ok((probs, states))
    }
}

/// Attaches a classical register: `Σ_x |x⟩⟨x|^X ⊗ blocks[x]`. All blocks
/// share labels; their traces become the outcome probabilities.
fn classical_sum(labels: &[SubsystemLabel], blocks: &[CMatrix]) -> Result<DensityMatrix> {
    let nx = blocks.len();
    let mut all = vec![SubsystemLabel::new(X, nx)];
    all.extend_from_slice(labels);
    let d = state::validate_labels(&all)? / nx;
    let mut m = CMatrix::zeros(nx * d, nx * d);
    for (x, blk) in blocks.iter().enumerate() {
        for r in 0..d {
            for c in 0..d {
                m[(x * d + r, x * d + c)] = blk[(r, c)];
            }
        }
    }
    Ok(DensityMatrix::from_parts(all, m))
}

/// Total modulus of the entries of ρ that connect different values of the
/// register `x`.
pub fn off_block_mass(rho: &DensityMatrix, x: &str) -> Result<f64> {
    let moved = {
        let mut order = vec![x];
        order.extend(rho.label_names().into_iter().filter(|n| *n != x));
        rho.reorder(&order)?
    };
    let nx = moved.dims()[0];
    let d = moved.dim() / nx;
    let m = moved.matrix();
    let mut mass = 0.0;
    for r in 0..moved.dim() {
        for c in 0..moved.dim() {
            if r / d != c / d {
                mass += m[(r, c)].norm();
            }
        }
    }
    Ok(mass)
}

fn assert_classical(rho: &DensityMatrix) -> Result<()> {
    let mass = off_block_mass(rho, X)?;
    if mass > BLOCK_TOL {
        return Err(Error::NotBlockDiagonal(mass));
    }
    Ok(())
}

/// σ^{XABE} together with its outcome distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaDynamic {
    state: DensityMatrix,
    probabilities: Vec<f64>,
}

impl SigmaDynamic {
    /// Wraps an existing state with labels X, A, B, E after checking the
    /// register is classical.
    pub fn from_state(state: DensityMatrix) -> Result<Self> {
        let state = state.reorder(&[X, A, B, E])?;
        state.validate()?;
        assert_classical(&state)?;
        let probabilities = register_distribution(&state);
        Ok(Self { state, probabilities })
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }
}

/// σ^{XA'BEE'} together with its outcome distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaStatic {
    state: DensityMatrix,
    probabilities: Vec<f64>,
}

impl SigmaStatic {
    pub fn from_state(state: DensityMatrix) -> Result<Self> {
        let state = state.reorder(&[X, A_PRIME, B, E, E_PRIME])?;
        state.validate()?;
        assert_classical(&state)?;
        let probabilities = register_distribution(&state);
        Ok(Self { state, probabilities })
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }
}

/// Diagonal block traces of a state whose first factor is the register.
fn register_distribution(rho: &DensityMatrix) -> Vec<f64> {
    let nx = rho.dims()[0];
    let d = rho.dim() / nx;
    (0..nx).map(|x| (0..d).map(|i| rho.matrix()[(x * d + i, x * d + i)].re).sum()).collect()
}

/// σ^{XABE}: the isometric extension of `channel` (A' → BE) applied to each
/// ψ_x, with the classical flag attached.
pub fn build_sigma_dynamic(channel: &QuantumChannel, ens: &Ensemble) -> Result<SigmaDynamic> {
    if ens.a_prime_dim() != channel.in_dim() {
        return Err(Error::DimensionMismatch { expected: channel.in_dim(), found: ens.a_prime_dim() });
    }
    let v = channel.isometric_extension(B, E)?;
    let mut labels = Vec::new();
    let mut blocks = Vec::with_capacity(ens.len());
    for (p, psi) in ens.entries() {
        let out = v.apply_pure(psi, A_PRIME)?;
        labels = out.labels().to_vec();
        blocks.push(CMatrix::outer(out.vector()).scale_real(*p));
    }
    let state = classical_sum(&labels, &blocks)?;
    assert_classical(&state)?;
    Ok(SigmaDynamic { state, probabilities: ens.entries().iter().map(|e| e.0).collect() })
}

/// σ^{XA'BEE'}: purify ρ^{AB} canonically to ψ^{ABE}, then dilate the
/// instrument on A.
pub fn build_sigma_static(rho: &DensityMatrix, instrument: &Instrument) -> Result<SigmaStatic> {
    let rho = rho.reorder(&[A, B])?;
    let psi = rho.purify(E)?;
    let (probabilities, branches) = instrument.dilate(&psi, A)?;
    let blocks: Vec<CMatrix> = branches.iter().map(|b| CMatrix::outer(b.vector())).collect();
    let state = classical_sum(branches[0].labels(), &blocks)?;
    assert_classical(&state)?;
    Ok(SigmaStatic { state, probabilities })
}
