//! Seeded sweeps over ensembles and instruments, and 2D frontier extraction.
//!
//! Every candidate is a pure function of `(seed, index)`: sample `i` draws
//! from its own ChaCha stream, so results do not depend on evaluation order
//! and raising `samples` only appends candidates.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64 as C64;
#[allow(unused_imports)] // inherent in some feature sets
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::assembly::{A, MAX_OUTCOMES};
use crate::geometry::{Axis, OrthantSpec, RateRegion, RateTriple, Ray};
use crate::linalg::{orthonormalize_columns, CMatrix};
use crate::tradeoff::{casr_point_copies, cef_point_copies, OneShotPoint};
use crate::{DensityMatrix, Ensemble, Error, Instrument, QuantumChannel, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub seed: u64,
    /// Candidates per sweep, forced ones included.
    pub samples: usize,
    /// Upper bound on ensemble size / instrument outcomes.
    pub max_outcomes: usize,
    /// Coordinate sweeps of golden-section refinement (qubit channels only).
    pub refine_iters: usize,
    /// Number of Schmidt angles in `[0, π/4]` for the structured qubit family.
    pub grid: Option<usize>,
    /// Tensor copies of the resource (1 or 2).
    pub copies: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { seed: 0, samples: 64, max_outcomes: 4, refine_iters: 0, grid: None, copies: 1 }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Invalid("samples must be at least 1".into()));
        }
        if !(1..=MAX_OUTCOMES).contains(&self.max_outcomes) {
            return Err(Error::TooManyOutcomes(self.max_outcomes, MAX_OUTCOMES));
        }
        if !(1..=2).contains(&self.copies) {
            return Err(Error::UnsupportedCopies(self.copies));
        }
        if matches!(self.grid, Some(n) if n < 2) {
            return Err(Error::Invalid("a structured grid needs at least 2 angles".into()));
        }
        Ok(())
    }
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random `rows × cols` isometry (QR of a complex Gaussian matrix).
fn haar_isometry(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    loop {
        let g = CMatrix::from_fn(rows, cols, |_, _| gaussian(rng));
        if let Some(q) = orthonormalize_columns(&g) {
            return q;
        }
    }
}

/// Flat Dirichlet weights from the gaps of sorted uniforms.
fn dirichlet(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut cuts: Vec<f64> = (0..n - 1).map(|_| rng.random::<f64>()).collect();
    cuts.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(n);
    let mut prev = 0.0;
    for c in cuts.into_iter().chain(core::iter::once(1.0)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

/// Random ensemble of Haar pure states on `A ⊗ A'`, both of dimension `d`.
pub fn random_ensemble(d: usize, max_outcomes: usize, seed: u64, index: u64) -> Result<Ensemble> {
    let mut rng = stream(seed, index);
    let n = rng.random_range(1..=max_outcomes);
    let probs = dirichlet(n, &mut rng);
    let entries = probs.into_iter().map(|p| (p, haar_isometry(d * d, 1, &mut rng).into_data())).collect();
    Ensemble::from_vectors(d, d, entries)
}

/// Random instrument on dimension `d` (output also `d`): a Haar isometry cut
/// into 1 or 2 Kraus operators per outcome.
pub fn random_instrument(d: usize, max_outcomes: usize, seed: u64, index: u64) -> Result<Instrument> {
    let mut rng = stream(seed, index);
    let n = rng.random_range(1..=max_outcomes);
    let per: Vec<usize> = (0..n).map(|_| rng.random_range(1..=2)).collect();
    let total: usize = per.iter().sum();
    let v = haar_isometry(d * total, d, &mut rng);
    let mut block = 0;
    let mut branches = Vec::with_capacity(n);
    for k in per {
        let kraus = (0..k)
            .map(|_| {
                let m = CMatrix::from_fn(d, d, |r, c| v[(block * d + r, c)]);
                block += 1;
                m
            })
            .collect();
        branches.push(kraus);
    }
    Instrument::new(branches)
}

/// `cos θ|00⟩ + sin θ|11⟩`.
fn schmidt(theta: f64) -> Vec<C64> {
    vec![C64::new(theta.cos(), 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(theta.sin(), 0.0)]
}

fn schmidt_pair(t1: f64, t2: f64) -> Result<Ensemble> {
    Ensemble::from_vectors(2, 2, vec![(0.5, schmidt(t1)), (0.5, schmidt(t2))])
}

/// Qubit ensembles aligned with the computational basis: `{ψ_θ}` and
/// `{½ψ_θ, ½ψ_{π/2−θ}}` for `n` angles θ evenly spaced over `[0, π/4]`.
pub fn structured_ensembles(n: usize) -> Result<Vec<(String, Ensemble)>> {
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        let theta = FRAC_PI_4 * j as f64 / (n - 1).max(1) as f64;
        out.push((format!("grid-{j}"), Ensemble::from_vectors(2, 2, vec![(1.0, schmidt(theta))])?));
        out.push((format!("grid-{j}-pair"), schmidt_pair(theta, FRAC_PI_2 - theta)?));
    }
    Ok(out)
}

/// Candidate ensembles in sweep order: forced, structured, then random.
pub fn cef_ensembles(channel: &QuantumChannel, cfg: &SweepConfig, forced: &[Ensemble]) -> Result<Vec<(String, Ensemble)>> {
    cfg.validate()?;
    let d = channel.in_dim().pow(cfg.copies as u32);
    let mut out = Vec::new();
    for (i, e) in forced.iter().enumerate() {
        if e.a_prime_dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: e.a_prime_dim() });
        }
        out.push((format!("forced-{i}"), e.clone()));
    }
    if let Some(n) = cfg.grid {
        if channel.in_dim() == 2 && cfg.copies == 1 {
            out.extend(structured_ensembles(n)?);
        }
    }
    for i in 0..cfg.samples.saturating_sub(forced.len()) {
        out.push((format!("rand-{i}"), random_ensemble(d, cfg.max_outcomes, cfg.seed, i as u64)?));
    }
    Ok(out)
}

/// Candidate instruments in sweep order: trivial, forced, then random.
pub fn casr_instruments(
    rho: &DensityMatrix,
    cfg: &SweepConfig,
    forced: &[Instrument],
) -> Result<Vec<(String, Instrument)>> {
    cfg.validate()?;
    let d = rho.dim_of(A)?.pow(cfg.copies as u32);
    let mut out = vec![(String::from("trivial"), Instrument::trivial(d)?)];
    for (i, m) in forced.iter().enumerate() {
        if m.in_dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: m.in_dim() });
        }
        out.push((format!("forced-{i}"), m.clone()));
    }
    for i in 0..cfg.samples.saturating_sub(1 + forced.len()) {
        out.push((format!("rand-{i}"), random_instrument(d, cfg.max_outcomes, cfg.seed, i as u64)?));
    }
    Ok(out)
}

pub fn evaluate_ensemble(channel: &QuantumChannel, copies: usize, id: &str, ens: &Ensemble) -> Result<OneShotPoint> {
    let mut p = cef_point_copies(channel, ens, copies)?;
    p.provenance = id.into();
    Ok(p)
}

pub fn evaluate_instrument(rho: &DensityMatrix, copies: usize, id: &str, instr: &Instrument) -> Result<OneShotPoint> {
    let mut p = casr_point_copies(rho, instr, copies)?;
    p.provenance = id.into();
    Ok(p)
}

/// Weights of the refinement objectives `w·(C, Q, E)`.
pub const REFINE_WEIGHTS: [[f64; 3]; 3] = [[0.0, 1.0, 1.0], [1.0, 1.0, 1.0], [0.5, 1.0, 0.0]];

const GOLDEN_STEPS: usize = 30;

fn golden_max(mut f: impl FnMut(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<f64> {
    let r = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..GOLDEN_STEPS {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// Coordinate-wise golden-section ascent of `w·triple` over the pair family
/// `{½ψ_θ₁, ½ψ_θ₂}`, θᵢ ∈ [0, π/2]. Qubit-input channels only.
pub fn refine_structured(channel: &QuantumChannel, weights: [f64; 3], iters: usize) -> Result<OneShotPoint> {
    if channel.in_dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: channel.in_dim() });
    }
    let w = RateTriple::from_array(weights);
    let value = |t1: f64, t2: f64| -> Result<f64> { Ok(w.dot(cef_point_copies(channel, &schmidt_pair(t1, t2)?, 1)?.triple)) };
    let (mut t1, mut t2) = (FRAC_PI_4 / 2.0, FRAC_PI_2 - FRAC_PI_4 / 2.0);
    for _ in 0..iters {
        t1 = golden_max(|t| value(t, t2), 0.0, FRAC_PI_2)?;
        t2 = golden_max(|t| value(t1, t), 0.0, FRAC_PI_2)?;
    }
    let mut p = cef_point_copies(channel, &schmidt_pair(t1, t2)?, 1)?;
    p.provenance = format!("refine-{}-{}-{}", weights[0], weights[1], weights[2]);
    Ok(p)
}

/// Refined points for every objective in [`REFINE_WEIGHTS`], or none when
/// refinement does not apply.
pub fn refined_points(channel: &QuantumChannel, cfg: &SweepConfig) -> Result<Vec<OneShotPoint>> {
    if cfg.refine_iters == 0 || channel.in_dim() != 2 || cfg.copies != 1 {
        return Ok(Vec::new());
    }
    REFINE_WEIGHTS.iter().map(|w| refine_structured(channel, *w, cfg.refine_iters)).collect()
}

/// Canonical order: by triple, then provenance.
pub fn sort_points(points: &mut [OneShotPoint]) {
    points.sort_by(|a, b| a.triple.total_cmp(&b.triple).then_with(|| a.provenance.cmp(&b.provenance)));
}

pub fn sweep_cef(channel: &QuantumChannel, cfg: &SweepConfig, forced: &[Ensemble]) -> Result<Vec<OneShotPoint>> {
    let mut points = cef_ensembles(channel, cfg, forced)?
        .iter()
        .map(|(id, e)| evaluate_ensemble(channel, cfg.copies, id, e))
        .collect::<Result<Vec<_>>>()?;
    points.extend(refined_points(channel, cfg)?);
    sort_points(&mut points);
    Ok(points)
}

pub fn sweep_casr(rho: &DensityMatrix, cfg: &SweepConfig, forced: &[Instrument]) -> Result<Vec<OneShotPoint>> {
    let mut points = casr_instruments(rho, cfg, forced)?
        .iter()
        .map(|(id, m)| evaluate_instrument(rho, cfg.copies, id, m))
        .collect::<Result<Vec<_>>>()?;
    sort_points(&mut points);
    Ok(points)
}

/// Upper-right frontier of a planar projection, ordered by the first axis.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    pub axes: [Axis; 2],
    pub vertices: Vec<[f64; 2]>,
    /// Unbounded continuation before the first vertex.
    pub left_ray: Option<[f64; 2]>,
    /// Unbounded continuation after the last vertex.
    pub right_ray: Option<[f64; 2]>,
}

const CURVE_TOL: f64 = 1e-9;

/// Clips `region` to `clip`, projects out `drop`, and returns the Pareto
/// frontier (edges whose outward normal is componentwise non-negative).
pub fn boundary_curve(region: &RateRegion, clip: &OrthantSpec, drop: Axis) -> Result<BoundaryCurve> {
    let axes = drop.others();
    let clipped = region.clip(clip)?;
    let embed = |x: RateTriple| {
        let a = x.to_array();
        RateTriple::new(a[axes[0].index()], a[axes[1].index()], 0.0)
    };
    let points: Vec<RateTriple> = clipped.points().iter().map(|p| embed(*p)).collect();
    let rays: Vec<Ray> = clipped.rays().iter().filter_map(|r| Ray::new(embed(r.direction())).ok()).collect();
    let plane = RateRegion::new(points, rays)?.minimal()?;
    let fd = plane.cached_facets().cloned().unwrap_or_default();

    // Normals in the plane; equalities count in both orientations.
    let mut normals: Vec<([f64; 2], f64)> = fd.facets.iter().map(|f| ([f.normal[0], f.normal[1]], f.offset)).collect();
    for f in &fd.equalities {
        normals.push(([f.normal[0], f.normal[1]], f.offset));
        normals.push(([-f.normal[0], -f.normal[1]], -f.offset));
    }
    let pareto: Vec<([f64; 2], f64)> = normals
        .into_iter()
        .filter(|(n, _)| n[0] >= -1e-12 && n[1] >= -1e-12 && n[0].abs().max(n[1].abs()) > 1e-12)
        .collect();
    let tight = |n: &[f64; 2], b: f64, v: [f64; 2]| (n[0] * v[0] + n[1] * v[1] - b).abs() <= CURVE_TOL;

    let snap = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    let all: Vec<[f64; 2]> = plane.points().iter().map(|p| [snap(p.c), snap(p.q)]).collect();
    let mut vertices: Vec<[f64; 2]> =
        all.iter().copied().filter(|v| pareto.iter().any(|(n, b)| tight(n, *b, *v))).collect();
    if vertices.is_empty() {
        // Degenerate projections: keep the vertex with the largest u + v.
        if let Some(best) = all.iter().copied().max_by(|a, b| (a[0] + a[1]).total_cmp(&(b[0] + b[1]))) {
            vertices.push(best);
        }
    }
    vertices.sort_by(|a, b| a[0].total_cmp(&b[0]).then(b[1].total_cmp(&a[1])));
    vertices.dedup_by(|a, b| (a[0] - b[0]).abs() <= CURVE_TOL && (a[1] - b[1]).abs() <= CURVE_TOL);

    let plane_rays: Vec<[f64; 2]> = plane.rays().iter().map(|r| [r.direction().c, r.direction().q]).collect();
    let end_ray = |v: [f64; 2], leftward: bool| -> Option<[f64; 2]> {
        plane_rays.iter().copied().find(|r| {
            let heading = if leftward { r[0] < -1e-12 } else { r[0] > 1e-12 };
            heading && pareto.iter().any(|(n, b)| tight(n, *b, v) && (n[0] * r[0] + n[1] * r[1]).abs() <= CURVE_TOL)
        })
    };
    let left_ray = vertices.first().and_then(|v| end_ray(*v, true));
    let right_ray = vertices.last().and_then(|v| end_ray(*v, false));
    Ok(BoundaryCurve { axes, vertices, left_ray, right_ray })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unit::unit_region;
    use crate::zoo;

    #[test]
    fn samplers_are_deterministic() {
        let a = random_ensemble(2, 4, 7, 3).unwrap();
        let b = random_ensemble(2, 4, 7, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_ensemble(2, 4, 7, 4).unwrap());
        let m = random_instrument(2, 3, 1, 0).unwrap();
        assert!(m.outcomes() <= 3);
    }

    #[test]
    fn dirichlet_sums_to_one() {
        let mut rng = stream(5, 0);
        for n in 1..6 {
            let w = dirichlet(n, &mut rng);
            assert_eq!(w.len(), n);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(w.iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn forced_identity_point() {
        let ch = QuantumChannel::identity(2).unwrap();
        let cfg = SweepConfig { samples: 1, ..Default::default() };
        let pts = sweep_cef(&ch, &cfg, &[Ensemble::max_entangled(2).unwrap()]).unwrap();
        assert_eq!(pts.len(), 1);
        assert!((pts[0].triple - RateTriple::new(0.0, 1.0, 0.0)).max_abs() < 1e-9);
    }

    #[test]
    fn unit_frontier_in_qe_plane() {
        let c = boundary_curve(&unit_region(), &OrthantSpec::ALL, Axis::C).unwrap();
        assert_eq!(c.axes, [Axis::Q, Axis::E]);
        assert_eq!(c.vertices.len(), 1);
        assert!(c.vertices[0][0].abs() < 1e-9 && c.vertices[0][1].abs() < 1e-9);
        let l = c.left_ray.unwrap();
        let r = c.right_ray.unwrap();
        assert!((l[0] + l[1]).abs() < 1e-9 && l[0] < 0.0);
        assert!((r[0] + r[1]).abs() < 1e-9 && r[0] > 0.0);
    }

    #[test]
    fn refinement_reaches_dephasing_capacity() {
        let ch = zoo::dephasing(0.2).unwrap();
        let p = refine_structured(&ch, [0.0, 1.0, 1.0], 2).unwrap();
        let want = 1.0 - crate::entropy::binary_entropy(0.1);
        assert!((p.triple.q + p.triple.e - want).abs() < 1e-6, "{}", p.triple);
    }
}
