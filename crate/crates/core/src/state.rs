//! Labeled finite-dimensional quantum states and the structural maps on them.
//!
//! Subsystems are always addressed by name. The row-major index of a state
//! treats the first label as the most significant digit.

use alloc::borrow::ToOwned;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent in some feature sets
use num_traits::Float;

use crate::linalg::{self, CMatrix, C64, ZERO};
use crate::{Error, Result};

/// Tolerance on Hermiticity, trace and completeness checks.
pub const STATE_TOL: f64 = 1e-10;
/// Eigenvalues in `[-EIG_CLIP, 0)` are treated as numerical noise.
pub const EIG_CLIP: f64 = 1e-10;
pub const DEFAULT_DIM_CAP: usize = 1024;

static DIM_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DIM_CAP);

/// Current cap on the total Hilbert-space dimension of any state.
pub fn dim_cap() -> usize {
    DIM_CAP.load(Ordering::Relaxed)
}

/// Changes the dimension cap for the whole process.
pub fn set_dim_cap(cap: usize) {
    DIM_CAP.store(cap.max(1), Ordering::Relaxed);
}

fn check_cap(dim: usize) -> Result<()> {
    let cap = dim_cap();
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsystemLabel {
    pub name: String,
    pub dim: usize,
}

impl SubsystemLabel {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        Self { name: name.into(), dim }
    }
}

pub(crate) fn validate_labels(labels: &[SubsystemLabel]) -> Result<usize> {
    let mut total = 1usize;
    for (i, l) in labels.iter().enumerate() {
        if l.dim == 0 {
            return Err(Error::ZeroDimension(l.name.clone()));
        }
        if labels[..i].iter().any(|o| o.name == l.name) {
            return Err(Error::DuplicateLabel(l.name.clone()));
        }
        total = total.saturating_mul(l.dim);
    }
    check_cap(total)?;
    Ok(total)
}

pub(crate) fn position(labels: &[SubsystemLabel], name: &str) -> Result<usize> {
    labels.iter().position(|l| l.name == name).ok_or_else(|| Error::UnknownLabel(name.to_owned()))
}

fn total_dim(labels: &[SubsystemLabel]) -> usize {
    labels.iter().map(|l| l.dim).product()
}

/// Applies `op` (out × in) to the factor at `idx` on the row index of `m`.
/// The row count changes from `Π dims` to `Π dims` with `dims[idx]` replaced
/// by `op.rows()`.
pub(crate) fn apply_rows(m: &CMatrix, dims: &[usize], idx: usize, op: &CMatrix) -> CMatrix {
    let din = dims[idx];
    let dout = op.rows();
    debug_assert_eq!(op.cols(), din);
    let left: usize = dims[..idx].iter().product();
    let right: usize = dims[idx + 1..].iter().product();
    let cols = m.cols();
    let mut out = CMatrix::zeros(left * dout * right, cols);
    for l in 0..left {
        for o in 0..dout {
            for f in 0..din {
                let k = op[(o, f)];
                if k == ZERO {
                    continue;
                }
                for r in 0..right {
                    let src = (l * din + f) * right + r;
                    let dst = (l * dout + o) * right + r;
                    for c in 0..cols {
                        let v = m[(src, c)];
                        out[(dst, c)] += k * v;
                    }
                }
            }
        }
    }
    out
}

/// `op · ρ · op†` on one factor of a square operator.
pub(crate) fn conjugate_factor(rho: &CMatrix, dims: &[usize], idx: usize, op: &CMatrix) -> CMatrix {
    let half = apply_rows(rho, dims, idx, op);
    // (op · (op ρ)†)† = op ρ op†
    apply_rows(&half.adjoint(), dims, idx, op).adjoint()
}

/// Index permutation that moves subsystems into `order` (positions into the
/// original label list). Returns `perm[old_index] = new_index`.
fn index_permutation(dims: &[usize], order: &[usize]) -> Vec<usize> {
    let n = dims.len();
    let total: usize = dims.iter().product();
    let mut new_strides = vec![1usize; n];
    // new_strides[k] is the stride of new position k.
    for k in (0..n.saturating_sub(1)).rev() {
        new_strides[k] = new_strides[k + 1] * dims[order[k + 1]];
    }
    let mut stride_of_old = vec![0usize; n];
    for (k, &old) in order.iter().enumerate() {
        stride_of_old[old] = new_strides[k];
    }
    let mut perm = Vec::with_capacity(total);
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        perm.push(digits.iter().zip(&stride_of_old).map(|(d, s)| d * s).sum());
        for pos in (0..n).rev() {
            digits[pos] += 1;
            if digits[pos] < dims[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
    perm
}

fn resolve_order(labels: &[SubsystemLabel], order: &[&str]) -> Result<Vec<usize>> {
    if order.len() != labels.len() {
        return Err(Error::DimensionMismatch { expected: labels.len(), found: order.len() });
    }
    let mut seen = vec![false; labels.len()];
    let mut out = Vec::with_capacity(order.len());
    for name in order {
        let p = position(labels, name)?;
        if seen[p] {
            return Err(Error::DuplicateLabel((*name).to_owned()));
        }
        seen[p] = true;
        out.push(p);
    }
    Ok(out)
}

/// Hermitian, positive semidefinite, unit-trace operator on labeled factors.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    labels: Vec<SubsystemLabel>,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validating constructor.
    pub fn new(labels: Vec<SubsystemLabel>, matrix: CMatrix) -> Result<Self> {
        let n = validate_labels(&labels)?;
        if !matrix.is_square() || matrix.rows() != n {
            return Err(Error::DimensionMismatch { expected: n, found: matrix.rows() });
        }
        let dm = Self { labels, matrix };
        dm.validate()?;
        Ok(dm)
    }

    pub(crate) fn from_parts(labels: Vec<SubsystemLabel>, matrix: CMatrix) -> Self {
        debug_assert_eq!(total_dim(&labels), matrix.rows());
        Self { labels, matrix }
    }

    /// π = I/d on a single subsystem.
    pub fn maximally_mixed(name: &str, dim: usize) -> Result<Self> {
        let labels = vec![SubsystemLabel::new(name, dim)];
        validate_labels(&labels)?;
        Ok(Self::from_parts(labels, CMatrix::identity(dim).scale_real(1.0 / dim as f64)))
    }

    /// Computational basis projector |i⟩⟨i| on one subsystem.
    pub fn basis_state(name: &str, dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: i });
        }
        let labels = vec![SubsystemLabel::new(name, dim)];
        validate_labels(&labels)?;
        let mut m = CMatrix::zeros(dim, dim);
        m[(i, i)] = linalg::ONE;
        Ok(Self::from_parts(labels, m))
    }

    /// Checks Hermiticity, unit trace and positivity within tolerance.
    pub fn validate(&self) -> Result<()> {
        let herm = self.matrix.hermiticity_defect();
        if herm > STATE_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = self.matrix.trace().re;
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::BadTrace(tr));
        }
        let min = self.eigenvalues().last().copied().unwrap_or(0.0);
        if min < -EIG_CLIP {
            return Err(Error::NegativeEigenvalue(min));
        }
        Ok(())
    }

    pub fn labels(&self) -> &[SubsystemLabel] {
        &self.labels
    }

    pub fn label_names(&self) -> Vec<&str> {
        self.labels.iter().map(|l| l.name.as_str()).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn dim_of(&self, name: &str) -> Result<usize> {
        Ok(self.labels[position(&self.labels, name)?].dim)
    }

    pub fn has_label(&self, name: &str) -> bool {
        self.labels.iter().any(|l| l.name == name)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// ρ ⊗ σ with concatenated labels.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<Self> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        validate_labels(&labels)?;
        Ok(Self::from_parts(labels, self.matrix.kron(&other.matrix)))
    }

    /// Reduced state on `keep`; the result keeps the original label order.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<Self> {
        let mut kept = vec![false; self.labels.len()];
        for name in keep {
            kept[position(&self.labels, name)?] = true;
        }
        if kept.iter().all(|&k| k) {
            return Ok(self.clone());
        }
        let dims = self.dims();
        let n = self.dim();
        let kept_labels: Vec<SubsystemLabel> =
            self.labels.iter().zip(&kept).filter(|(_, &k)| k).map(|(l, _)| l.clone()).collect();
        let dk = total_dim(&kept_labels);
        let dt = n / dk;
        // For every full index, its (kept, traced) coordinates.
        let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(dk); dt];
        let mut digits = vec![0usize; dims.len()];
        for i in 0..n {
            let (mut ki, mut ti) = (0usize, 0usize);
            for (pos, &d) in digits.iter().enumerate() {
                if kept[pos] {
                    ki = ki * dims[pos] + d;
                } else {
                    ti = ti * dims[pos] + d;
                }
            }
            groups[ti].push((i, ki));
            for pos in (0..dims.len()).rev() {
                digits[pos] += 1;
                if digits[pos] < dims[pos] {
                    break;
                }
                digits[pos] = 0;
            }
        }
        let mut out = CMatrix::zeros(dk, dk);
        for group in &groups {
            for &(i, ki) in group {
                for &(j, kj) in group {
                    out[(ki, kj)] += self.matrix[(i, j)];
                }
            }
        }
        Ok(Self::from_parts(kept_labels, out))
    }

    /// Traces out the named subsystems.
    pub fn trace_out(&self, names: &[&str]) -> Result<Self> {
        for n in names {
            position(&self.labels, n)?;
        }
        let keep: Vec<&str> =
            self.labels.iter().map(|l| l.name.as_str()).filter(|n| !names.contains(n)).collect();
        self.partial_trace(&keep)
    }

    /// Permutes the subsystems into the given name order.
    pub fn reorder(&self, order: &[&str]) -> Result<Self> {
        let order = resolve_order(&self.labels, order)?;
        if order.iter().enumerate().all(|(i, &p)| i == p) {
            return Ok(self.clone());
        }
        let perm = index_permutation(&self.dims(), &order);
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(perm[i], perm[j])] = self.matrix[(i, j)];
            }
        }
        let labels = order.iter().map(|&p| self.labels[p].clone()).collect();
        Ok(Self::from_parts(labels, out))
    }

    /// Fuses adjacent subsystems `names` (in order) into one named `merged`.
    pub fn merge(&self, names: &[&str], merged: &str) -> Result<Self> {
        let labels = merge_labels(&self.labels, names, merged)?;
        Ok(Self::from_parts(labels, self.matrix.clone()))
    }

    pub fn relabel(&self, old: &str, new: &str) -> Result<Self> {
        let mut labels = self.labels.clone();
        let p = position(&labels, old)?;
        labels[p].name = new.to_string();
        validate_labels(&labels)?;
        Ok(Self::from_parts(labels, self.matrix.clone()))
    }

    /// `k` copies with same-named factors grouped into one subsystem of
    /// dimension `d^k`.
    pub fn tensor_power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::UnsupportedCopies(k));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let names = self.label_names();
        let mut acc: Option<DensityMatrix> = None;
        for copy in 0..k {
            let mut c = self.clone();
            for l in c.labels.iter_mut() {
                l.name = copy_name(&l.name, copy);
            }
            acc = Some(match acc {
                None => c,
                Some(a) => a.tensor(&c)?,
            });
        }
        let mut acc = acc.expect("k >= 1");
        let order: Vec<String> =
            names.iter().flat_map(|n| (0..k).map(move |c| copy_name(n, c))).collect();
        let order_ref: Vec<&str> = order.iter().map(String::as_str).collect();
        acc = acc.reorder(&order_ref)?;
        for n in &names {
            let parts: Vec<String> = (0..k).map(|c| copy_name(n, c)).collect();
            let parts_ref: Vec<&str> = parts.iter().map(String::as_str).collect();
            acc = acc.merge(&parts_ref, n)?;
        }
        Ok(acc)
    }

    /// Canonical eigen-decomposition purification onto an appended `env`
    /// subsystem of dimension rank(ρ).
    ///
    /// Eigenvectors are sorted by descending eigenvalue and phased so their
    /// first non-negligible component is real and positive, which makes the
    /// result reproducible.
    pub fn purify(&self, env: &str) -> Result<PureState> {
        if self.has_label(env) {
            return Err(Error::DuplicateLabel(env.to_owned()));
        }
        let eig = linalg::hermitian_eigen(&self.matrix);
        if let Some(&min) = eig.values.last() {
            if min < -EIG_CLIP {
                return Err(Error::NegativeEigenvalue(min));
            }
        }
        let rank = eig.values.iter().filter(|&&v| v > EIG_CLIP).count().max(1);
        let n = self.dim();
        let mut labels = self.labels.clone();
        labels.push(SubsystemLabel::new(env, rank));
        validate_labels(&labels)?;
        let mut vector = vec![ZERO; n * rank];
        for i in 0..rank {
            let w = eig.values[i].max(0.0).sqrt();
            for s in 0..n {
                vector[s * rank + i] = eig.vectors[(s, i)] * w;
            }
        }
        let norm = linalg::vec_norm(&vector);
        for v in vector.iter_mut() {
            *v /= norm;
        }
        Ok(PureState { labels, vector })
    }
}

pub(crate) fn copy_name(name: &str, copy: usize) -> String {
    let mut s = String::from(name);
    s.push('#');
    s.push_str(&copy.to_string());
    s
}

fn merge_labels(labels: &[SubsystemLabel], names: &[&str], merged: &str) -> Result<Vec<SubsystemLabel>> {
    if names.is_empty() {
        return Err(Error::Empty("merge needs at least one label"));
    }
    let first = position(labels, names[0])?;
    for (off, n) in names.iter().enumerate() {
        let p = position(labels, n)?;
        if p != first + off {
            return Err(Error::Invalid(alloc::format!("labels to merge must be adjacent (`{n}`)")));
        }
    }
    let dim = names.iter().map(|n| labels[position(labels, n).unwrap()].dim).product();
    let mut out: Vec<SubsystemLabel> = Vec::with_capacity(labels.len());
    out.extend_from_slice(&labels[..first]);
    out.push(SubsystemLabel::new(merged, dim));
    out.extend_from_slice(&labels[first + names.len()..]);
    validate_labels(&out)?;
    Ok(out)
}

/// Unit vector on labeled factors.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    labels: Vec<SubsystemLabel>,
    vector: Vec<C64>,
}

impl PureState {
    pub fn new(labels: Vec<SubsystemLabel>, vector: Vec<C64>) -> Result<Self> {
        let n = validate_labels(&labels)?;
        if vector.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: vector.len() });
        }
        let norm = linalg::vec_norm(&vector);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { labels, vector })
    }

    /// Normalizes `vector` before validating the labels.
    pub fn normalized(labels: Vec<SubsystemLabel>, vector: Vec<C64>) -> Result<Self> {
        let norm = linalg::vec_norm(&vector);
        if norm == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        Self::new(labels, vector.into_iter().map(|v| v / norm).collect())
    }

    pub(crate) fn from_parts(labels: Vec<SubsystemLabel>, vector: Vec<C64>) -> Self {
        Self { labels, vector }
    }

    /// |Φ⁺⟩ = (|00⟩ + |11⟩)/√2 generalized to dimension `d`.
    pub fn max_entangled(a: &str, b: &str, d: usize) -> Result<Self> {
        let labels = vec![SubsystemLabel::new(a, d), SubsystemLabel::new(b, d)];
        validate_labels(&labels)?;
        let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
        let mut v = vec![ZERO; d * d];
        for i in 0..d {
            v[i * d + i] = amp;
        }
        Ok(Self { labels, vector: v })
    }

    /// Computational basis vector |i⟩ on one subsystem.
    pub fn basis(name: &str, dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: i });
        }
        let mut v = vec![ZERO; dim];
        v[i] = linalg::ONE;
        Self::new(vec![SubsystemLabel::new(name, dim)], v)
    }

    pub fn labels(&self) -> &[SubsystemLabel] {
        &self.labels
    }

    pub fn vector(&self) -> &[C64] {
        &self.vector
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.dim).collect()
    }

    pub fn dim_of(&self, name: &str) -> Result<usize> {
        Ok(self.labels[position(&self.labels, name)?].dim)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_parts(self.labels.clone(), CMatrix::outer(&self.vector))
    }

    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        validate_labels(&labels)?;
        Ok(Self { labels, vector: linalg::kron_vec(&self.vector, &other.vector) })
    }

    pub fn reorder(&self, order: &[&str]) -> Result<Self> {
        let order = resolve_order(&self.labels, order)?;
        let perm = index_permutation(&self.dims(), &order);
        let mut v = vec![ZERO; self.vector.len()];
        for (i, &p) in perm.iter().enumerate() {
            v[p] = self.vector[i];
        }
        Ok(Self { labels: order.iter().map(|&p| self.labels[p].clone()).collect(), vector: v })
    }

    pub fn merge(&self, names: &[&str], merged: &str) -> Result<Self> {
        Ok(Self { labels: merge_labels(&self.labels, names, merged)?, vector: self.vector.clone() })
    }

    /// Applies a linear map (out × in) to the factor `on`, replacing it with
    /// the factors `out_labels` (their dimensions must multiply to `op.rows()`).
    /// The result is not renormalized.
    pub(crate) fn apply_map(&self, on: &str, op: &CMatrix, out_labels: &[SubsystemLabel]) -> Result<(Vec<SubsystemLabel>, Vec<C64>)> {
        let idx = position(&self.labels, on)?;
        let din = self.labels[idx].dim;
        if op.cols() != din {
            return Err(Error::DimensionMismatch { expected: din, found: op.cols() });
        }
        let dout: usize = out_labels.iter().map(|l| l.dim).product();
        if dout != op.rows() {
            return Err(Error::DimensionMismatch { expected: op.rows(), found: dout });
        }
        let mut labels: Vec<SubsystemLabel> = Vec::with_capacity(self.labels.len() + out_labels.len());
        labels.extend_from_slice(&self.labels[..idx]);
        labels.extend_from_slice(out_labels);
        labels.extend_from_slice(&self.labels[idx + 1..]);
        validate_labels(&labels)?;
        let col = CMatrix::column(&self.vector);
        let out = apply_rows(&col, &self.dims(), idx, op);
        Ok((labels, out.into_data()))
    }
}
