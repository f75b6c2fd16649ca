//! Dense complex matrices and the handful of factorizations the crate needs:
//! a cyclic Jacobi eigensolver for Hermitian matrices and modified
//! Gram-Schmidt orthonormalization.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent in some feature sets
use num_traits::Float;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major data. Panics if the length is wrong.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data has the wrong length");
        Self { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Self {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// Column vector |v⟩.
    pub fn column(v: &[C64]) -> Self {
        Self::from_vec(v.len(), 1, v.to_vec())
    }

    /// |v⟩⟨v|.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |r, c| v[r] * v[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn col(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(ZERO, |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        Self::from_fn(self.rows * r2, self.cols * c2, |r, c| {
            self[(r / r2, c / c2)] * other[(r % r2, c % c2)]
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `M - M†`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).fold(ZERO, |acc, (x, y)| acc + x.conj() * y)
}

/// Kronecker product of two vectors.
pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Column `i` is the eigenvector of `values[i]`. Each column is phased so
    /// its first non-negligible component is real and positive.
    pub vectors: CMatrix,
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues of a Hermitian matrix, descending.
///
/// The matrix is first split into the connected components of its sparsity
/// pattern, so block-diagonal inputs (classical registers) are diagonalized
/// block by block.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    assert!(m.is_square(), "eigen-decomposition needs a square matrix");
    let mut values = Vec::with_capacity(m.rows());
    for block in sparsity_blocks(m) {
        if block.len() == 1 {
            values.push(m[(block[0], block[0])].re);
            continue;
        }
        let sub = CMatrix::from_fn(block.len(), block.len(), |r, c| m[(block[r], block[c])]);
        values.extend(jacobi(&sub, false).0);
    }
    values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    values
}

/// Index sets of the connected components of the graph with an edge for
/// every entry above round-off.
fn sparsity_blocks(m: &CMatrix) -> Vec<Vec<usize>> {
    let n = m.rows();
    let cut = 1e-15 * m.frobenius_norm();
    let mut comp = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        comp[start] = id;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let r = members[head];
            head += 1;
            for c in 0..n {
                if comp[c] == usize::MAX && (m[(r, c)].norm() > cut || m[(c, r)].norm() > cut) {
                    comp[c] = id;
                    members.push(c);
                }
            }
        }
        members.sort_unstable();
        blocks.push(members);
    }
    blocks
}

/// Full eigen-decomposition of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix) -> HermitianEigen {
    let (values, vecs) = jacobi(m, true);
    let vecs = vecs.expect("eigenvectors requested");
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps the Jacobi column order for exact ties.
    order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(core::cmp::Ordering::Equal));
    let mut sorted_vals = Vec::with_capacity(n);
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        sorted_vals.push(values[src]);
        let mut col = vecs.col(src);
        fix_phase(&mut col);
        for r in 0..n {
            vectors[(r, dst)] = col[r];
        }
    }
    HermitianEigen { values: sorted_vals, vectors }
}

/// Rotates `v` by a global phase so its first component with modulus above
/// 1e-12 is real and positive.
pub fn fix_phase(v: &mut [C64]) {
    if let Some(first) = v.iter().find(|z| z.norm() > 1e-12).copied() {
        let phase = first.conj() / first.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

fn jacobi(m: &CMatrix, want_vectors: bool) -> (Vec<f64>, Option<CMatrix>) {
    assert!(m.is_square(), "eigen-decomposition needs a square matrix");
    let n = m.rows();
    let mut a = m.clone();
    // Symmetrize so round-off in the input does not leak into the rotations.
    for r in 0..n {
        a[(r, r)] = C64::new(a[(r, r)].re, 0.0);
        for c in r + 1..n {
            let avg = (a[(r, c)] + a[(c, r)].conj()) * 0.5;
            a[(r, c)] = avg;
            a[(c, r)] = avg.conj();
        }
    }
    let mut v = if want_vectors { Some(CMatrix::identity(n)) } else { None };
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for r in 0..n {
            for c in r + 1..n {
                off += a[(r, c)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let z = a[(p, q)];
                let mag = z.norm();
                if mag <= 1e-300 || mag <= 1e-18 * scale {
                    continue;
                }
                // U = diag(1, e^{-iφ}) · [[c, -s], [s, c]] zeroes the (p, q) entry.
                let phase = z / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = 0.5 * (2.0 * mag).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                let u_pp = C64::new(c, 0.0);
                let u_pq = C64::new(-s, 0.0);
                let u_qp = phase.conj() * s;
                let u_qq = phase.conj() * c;
                // A ← A U
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                // A ← U† A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * u_pp + vkq * u_qp;
                        v[(k, q)] = vkp * u_pq + vkq * u_qq;
                    }
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), v)
}

/// Orthonormalizes the columns of `m` (rows ≥ cols) by two-pass modified
/// Gram-Schmidt. The implied R factor has a real positive diagonal, which is
/// the phase convention that makes QR of a Gaussian matrix Haar distributed.
///
/// Returns `None` when the columns are numerically dependent.
pub fn orthonormalize_columns(m: &CMatrix) -> Option<CMatrix> {
    let (rows, cols) = (m.rows(), m.cols());
    if cols > rows {
        return None;
    }
    let mut q: Vec<Vec<C64>> = Vec::with_capacity(cols);
    for c in 0..cols {
        let mut v = m.col(c);
        let start = vec_norm(&v);
        for _ in 0..2 {
            for basis in &q {
                let proj = inner(basis, &v);
                for (x, b) in v.iter_mut().zip(basis) {
                    *x -= proj * b;
                }
            }
        }
        let norm = vec_norm(&v);
        if norm <= 1e-12 * start.max(1e-300) {
            return None;
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
        q.push(v);
    }
    Some(CMatrix::from_fn(rows, cols, |r, c| q[c][r]))
}

/// Orthonormal basis (as rows) of the span of real vectors, via Gram-Schmidt
/// with a relative rank tolerance.
pub fn real_row_basis(vectors: &[Vec<f64>], dim: usize, tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let scale = real_norm(v);
        if scale == 0.0 {
            continue;
        }
        let mut w: Vec<f64> = v.iter().map(|x| x / scale).collect();
        for _ in 0..2 {
            for b in &basis {
                let d = real_dot(b, &w);
                for (x, y) in w.iter_mut().zip(b) {
                    *x -= d * y;
                }
            }
        }
        let n = real_norm(&w);
        if n > tol {
            basis.push(w.iter().map(|x| x / n).collect());
            if basis.len() == dim {
                break;
            }
        }
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of an orthonormal row set.
pub fn real_complement(basis: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let mut all: Vec<Vec<f64>> = basis.to_vec();
    let mut out = Vec::new();
    for i in 0..dim {
        if all.len() == dim {
            break;
        }
        let mut w = vec![0.0; dim];
        w[i] = 1.0;
        for _ in 0..2 {
            for b in &all {
                let d = real_dot(b, &w);
                for (x, y) in w.iter_mut().zip(b) {
                    *x -= d * y;
                }
            }
        }
        let n = real_norm(&w);
        if n > 1e-6 {
            let w: Vec<f64> = w.iter().map(|x| x / n).collect();
            all.push(w.clone());
            out.push(w);
        }
    }
    out
}

pub fn real_dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn real_norm(a: &[f64]) -> f64 {
    real_dot(a, a).sqrt()
}
