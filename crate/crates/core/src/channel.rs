//! Channels in Kraus form and their Stinespring isometries.

use alloc::borrow::ToOwned;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::CMatrix;
use crate::state::{self, DensityMatrix, PureState, SubsystemLabel, STATE_TOL};
use crate::{Error, Result};

/// CPTP map given by Kraus operators `K_k` (out_dim × in_dim).
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumChannel {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<CMatrix>,
}

impl QuantumChannel {
    /// Validates shapes and Σ K†K = I.
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::Empty("channel needs at least one Kraus operator"))?;
        let (out_dim, in_dim) = (first.rows(), first.cols());
        if in_dim == 0 || out_dim == 0 {
            return Err(Error::ZeroDimension("kraus".to_owned()));
        }
        for k in &kraus {
            if k.cols() != in_dim {
                return Err(Error::DimensionMismatch { expected: in_dim, found: k.cols() });
            }
            if k.rows() != out_dim {
                return Err(Error::DimensionMismatch { expected: out_dim, found: k.rows() });
            }
        }
        let dev = completeness_defect(&kraus, in_dim);
        if dev > STATE_TOL {
            return Err(Error::NotTracePreserving(dev));
        }
        Ok(Self { in_dim, out_dim, kraus })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(vec![CMatrix::identity(dim)])
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    /// Σ_k K_k ρ K_k† on the factor `on`. The factor keeps its name and takes
    /// the output dimension.
    pub fn apply(&self, rho: &DensityMatrix, on: &str) -> Result<DensityMatrix> {
        let idx = state::position(rho.labels(), on)?;
        let dims = rho.dims();
        if dims[idx] != self.in_dim {
            return Err(Error::DimensionMismatch { expected: self.in_dim, found: dims[idx] });
        }
        let mut labels = rho.labels().to_vec();
        labels[idx].dim = self.out_dim;
        state::validate_labels(&labels)?;
        let n: usize = labels.iter().map(|l| l.dim).product();
        let mut out = CMatrix::zeros(n, n);
        for k in &self.kraus {
            out.add_assign(&state::conjugate_factor(rho.matrix(), &dims, idx, k));
        }
        Ok(DensityMatrix::from_parts(labels, out))
    }

    /// V = Σ_k K_k ⊗ |k⟩_env, with output factors `[out, env]`.
    pub fn isometric_extension(&self, out: &str, env: &str) -> Result<Isometry> {
        let r = self.kraus.len();
        let matrix = CMatrix::from_fn(self.out_dim * r, self.in_dim, |row, c| {
            self.kraus[row % r][(row / r, c)]
        });
        Isometry::new(
            matrix,
            vec![SubsystemLabel::new(out, self.out_dim), SubsystemLabel::new(env, r)],
        )
    }

    /// N ⊗ M with Kraus operators K_i ⊗ L_j.
    pub fn tensor(&self, other: &QuantumChannel) -> Result<Self> {
        let mut kraus = Vec::with_capacity(self.kraus.len() * other.kraus.len());
        for a in &self.kraus {
            for b in &other.kraus {
                kraus.push(a.kron(b));
            }
        }
        Self::new(kraus)
    }

    /// N^{⊗k}; only one or two copies are supported.
    pub fn tensor_power(&self, k: usize) -> Result<Self> {
        match k {
            1 => Ok(self.clone()),
            2 => self.tensor(self),
            _ => Err(Error::UnsupportedCopies(k)),
        }
    }
}

pub(crate) fn completeness_defect(ops: &[CMatrix], in_dim: usize) -> f64 {
    let mut sum = CMatrix::zeros(in_dim, in_dim);
    for k in ops {
        sum.add_assign(&k.adjoint().mul(k));
    }
    sum.max_abs_diff(&CMatrix::identity(in_dim))
}

/// Linear isometry from one factor into labeled output factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    in_dim: usize,
    out_labels: Vec<SubsystemLabel>,
    matrix: CMatrix,
}

impl Isometry {
    /// Validates V†V = I and that the output labels factor the row space.
    pub fn new(matrix: CMatrix, out_labels: Vec<SubsystemLabel>) -> Result<Self> {
        let rows = state::validate_labels(&out_labels)?;
        if rows != matrix.rows() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: rows });
        }
        let in_dim = matrix.cols();
        let dev = matrix.adjoint().mul(&matrix).max_abs_diff(&CMatrix::identity(in_dim));
        if dev > STATE_TOL {
            return Err(Error::NotIsometry(dev));
        }
        Ok(Self { in_dim, out_labels, matrix })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_labels(&self) -> &[SubsystemLabel] {
        &self.out_labels
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// V|ψ⟩ with the factor `on` replaced by the output factors in place.
    pub fn apply_pure(&self, psi: &PureState, on: &str) -> Result<PureState> {
        let (labels, vector) = psi.apply_map(on, &self.matrix, &self.out_labels)?;
        Ok(PureState::from_parts(labels, vector))
    }

    /// VρV† with the factor `on` replaced by the output factors in place.
    pub fn apply(&self, rho: &DensityMatrix, on: &str) -> Result<DensityMatrix> {
        let idx = state::position(rho.labels(), on)?;
        let dims = rho.dims();
        if dims[idx] != self.in_dim {
            return Err(Error::DimensionMismatch { expected: self.in_dim, found: dims[idx] });
        }
        let mut labels = Vec::with_capacity(dims.len() + self.out_labels.len());
        labels.extend_from_slice(&rho.labels()[..idx]);
        labels.extend_from_slice(&self.out_labels);
        labels.extend_from_slice(&rho.labels()[idx + 1..]);
        state::validate_labels(&labels)?;
        let m = state::conjugate_factor(rho.matrix(), &dims, idx, &self.matrix);
        Ok(DensityMatrix::from_parts(labels, m))
    }
}
