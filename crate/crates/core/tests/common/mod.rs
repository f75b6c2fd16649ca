//! Reference computations written independently of the library: dense
//! nalgebra eigensolvers, explicit index-arithmetic partial traces and a
//! closed-form binary entropy.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64 as Z;
use qtriple::linalg::CMatrix;
use qtriple::{DensityMatrix, PureState, RateTriple, SubsystemLabel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

pub fn h2(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

pub fn to_na(m: &CMatrix) -> DMatrix<Z> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)])
}

pub fn spectrum(m: &DMatrix<Z>) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn entropy_bits(m: &DMatrix<Z>) -> f64 {
    spectrum(m).into_iter().filter(|&l| l > 1e-15).map(|l| -l * l.log2()).sum()
}

fn digits(mut i: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = i % dims[k];
        i /= dims[k];
    }
    out
}

/// Keeps the factors at `keep` (in that order), tracing out the rest.
pub fn ptrace(m: &DMatrix<Z>, dims: &[usize], keep: &[usize]) -> DMatrix<Z> {
    let n: usize = dims.iter().product();
    let kd: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let out_n: usize = kd.iter().product();
    let mut out = DMatrix::from_element(out_n, out_n, Z::new(0.0, 0.0));
    let index = |d: &[usize]| keep.iter().zip(&kd).fold(0, |acc, (&k, &dk)| acc * dk + d[k]);
    for r in 0..n {
        let dr = digits(r, dims);
        for c in 0..n {
            let dc = digits(c, dims);
            let traced_equal = (0..dims.len()).filter(|k| !keep.contains(k)).all(|k| dr[k] == dc[k]);
            if traced_equal {
                out[(index(&dr), index(&dc))] += m[(r, c)];
            }
        }
    }
    out
}

/// Entropy of the named factors of `rho`, computed from scratch.
pub fn oracle_h(rho: &DensityMatrix, names: &[&str]) -> f64 {
    let all = rho.label_names();
    let keep: Vec<usize> = names.iter().map(|n| all.iter().position(|a| a == n).expect("label")).collect();
    entropy_bits(&ptrace(&to_na(rho.matrix()), &rho.dims(), &keep))
}

pub fn oracle_mi(rho: &DensityMatrix, a: &[&str], b: &[&str]) -> f64 {
    let ab: Vec<&str> = a.iter().chain(b).copied().collect();
    oracle_h(rho, a) + oracle_h(rho, b) - oracle_h(rho, &ab)
}

pub fn oracle_cmi(rho: &DensityMatrix, a: &[&str], b: &[&str], c: &[&str]) -> f64 {
    let ac: Vec<&str> = a.iter().chain(c).copied().collect();
    let bc: Vec<&str> = b.iter().chain(c).copied().collect();
    let abc: Vec<&str> = a.iter().chain(b).chain(c).copied().collect();
    oracle_h(rho, &ac) + oracle_h(rho, &bc) - oracle_h(rho, &abc) - oracle_h(rho, c)
}

pub fn labels(spec: &[(&str, usize)]) -> Vec<SubsystemLabel> {
    spec.iter().map(|(n, d)| SubsystemLabel::new(*n, *d)).collect()
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn gaussian_vec(n: usize, rng: &mut ChaCha20Rng) -> Vec<Z> {
    (0..n).map(|_| Z::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect()
}

pub fn random_pure(spec: &[(&str, usize)], rng: &mut ChaCha20Rng) -> PureState {
    let n = spec.iter().map(|s| s.1).product();
    PureState::normalized(labels(spec), gaussian_vec(n, rng)).unwrap()
}

/// `G G† / Tr` for a Gaussian `G` with `rank` columns.
pub fn random_mixed(spec: &[(&str, usize)], rank: usize, rng: &mut ChaCha20Rng) -> DensityMatrix {
    let n: usize = spec.iter().map(|s| s.1).product();
    let g = DMatrix::from_vec(n, rank, gaussian_vec(n * rank, rng));
    let m = &g * g.adjoint();
    let t = m.trace().re;
    let m = m / Z::new(t, 0.0);
    let m = (&m + m.adjoint()) * Z::new(0.5, 0.0);
    DensityMatrix::new(labels(spec), CMatrix::from_fn(n, n, |r, c| m[(r, c)])).unwrap()
}

pub fn max_diff(a: &DMatrix<Z>, b: &DMatrix<Z>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn close3(a: RateTriple, b: RateTriple, tol: f64) -> bool {
    (a.c - b.c).abs() <= tol && (a.q - b.q).abs() <= tol && (a.e - b.e).abs() <= tol
}

pub fn random_triple(rng: &mut ChaCha20Rng, r: f64) -> RateTriple {
    RateTriple::new(rng.random_range(-r..r), rng.random_range(-r..r), rng.random_range(-r..r))
}

/// `Σ p(x)|x⟩⟨x| ⊗ σ_x` with random σ_x on AB.
pub fn random_cq(n: usize, seed: u64) -> (DensityMatrix, Vec<f64>, Vec<DensityMatrix>) {
    let mut r = rng(seed);
    let blocks: Vec<DensityMatrix> = (0..n).map(|_| random_mixed(&[("A", 2), ("B", 2)], 2, &mut r)).collect();
    let raw: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 + (seed % 7) as f64 * 0.1).collect();
    let total: f64 = raw.iter().sum();
    let p: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let m = CMatrix::from_fn(4 * n, 4 * n, |r, c| {
        if r / 4 == c / 4 {
            blocks[r / 4].matrix()[(r % 4, c % 4)] * p[r / 4]
        } else {
            Z::new(0.0, 0.0)
        }
    });
    (DensityMatrix::new(labels(&[("X", n), ("A", 2), ("B", 2)]), m).unwrap(), p, blocks)
}

/// Writes `x` as an expression: consumed amounts on the left, produced on the right.
pub fn expr_for(x: RateTriple) -> String {
    let names = ["[c->c]", "[q->q]", "[qq]"];
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for (v, n) in x.to_array().iter().zip(names) {
        if *v < 0.0 {
            lhs.push(format!("{}{n}", -v));
        } else {
            rhs.push(format!("{v}{n}"));
        }
    }
    if lhs.is_empty() {
        lhs.push("0[qq]".into());
    }
    if rhs.is_empty() {
        rhs.push("0[qq]".into());
    }
    format!("{} >= {}", lhs.join(" + "), rhs.join(" + "))
}

/// Hand-written resource expressions padded with random ones to 50.
pub fn ri_corpus() -> Vec<String> {
    let mut v: Vec<String> = [
        qtriple::ri::TP,
        qtriple::ri::SD,
        qtriple::ri::ED,
        "[q->q] >= [qq]",
        "[qq] >= [qq]",
        "<rho> + 0.25[q->q] >= 0.75[qq]",
        "<rho>+0.5[c->c]>=0.5[qq]",
        "  2 [c->c]   +[qq]>=[q->q] ",
        "[qq] + 2[c->c] >= [q->q]",
        "1[q->q] + 1[qq] >= 2[c->c]",
        "0.5[q->q] + 0.5[q->q] >= 1.0[qq]",
        "[cc] + [q->q] >= [qq]",
        "<N> >= 0.3[c->c] + 0.2[q->q]",
        "<N> + [qq] >= 2[c->c]",
        "3[c->c] + 0[qq] >= 0.125[q->q]",
        "[c->c] + [c->c] + [c->c] >= [c->c]",
        "<psi_AB> + 1.5[c->c] >= [qq]",
        "10[qq] >= 10[qq]",
        "0.001[c->c] >= 0[qq]",
        "[q->q] >= [c->c]",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut r = rng(21);
    while v.len() < 50 {
        v.push(expr_for(random_triple(&mut r, 3.0)));
    }
    v
}
