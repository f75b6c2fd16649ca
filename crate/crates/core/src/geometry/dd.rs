//! Double description: extreme rays of `{y : h·y ≤ 0 for every row h}`.
//!
//! The cone is split into its lineality space and a pointed part living in
//! the row space. The pointed part starts from a simplicial cone on `r`
//! independent rows and absorbs the remaining rows one at a time, combining
//! only combinatorially adjacent ray pairs.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent in some feature sets
use num_traits::Float;

use crate::linalg::{real_complement, real_dot, real_row_basis};

const RANK_TOL: f64 = 1e-9;
const ZERO_TOL: f64 = 1e-9;

/// Generators of a polyhedral cone: `cone(rays) + span(lineality)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConeGenerators {
    /// Extreme rays orthogonal to the lineality space, scaled to max-abs 1.
    pub rays: Vec<Vec<f64>>,
    /// Indices of the rows each ray is tight on.
    pub tight: Vec<Vec<usize>>,
    /// Orthonormal basis of the lineality space.
    pub lineality: Vec<Vec<f64>>,
}

#[derive(Clone, PartialEq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, word) in self.0.iter().enumerate() {
            for b in 0..64 {
                if word >> b & 1 == 1 {
                    out.push(w * 64 + b);
                }
            }
        }
        out
    }
}

fn normalize(v: &mut [f64]) {
    let m = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if m > 0.0 {
        for x in v.iter_mut() {
            *x /= m;
        }
    }
}

/// Inverse of a small square matrix by Gauss-Jordan with partial pivoting.
pub(crate) fn invert(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() < 1e-14 {
            return None;
        }
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        let prow = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != col {
                let f = row[col];
                if f != 0.0 {
                    for (x, y) in row.iter_mut().zip(&prow) {
                        *x -= f * y;
                    }
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Computes generators of `{y ∈ R^dim : rows[i]·y ≤ 0}`.
pub fn cone_from_halfspaces(rows: &[Vec<f64>], dim: usize) -> ConeGenerators {
    let basis = real_row_basis(rows, dim, RANK_TOL);
    let lineality = real_complement(&basis, dim);
    let r = basis.len();
    if r == 0 {
        return ConeGenerators { rays: Vec::new(), tight: Vec::new(), lineality };
    }
    // Rows in row-space coordinates, scaled to max-abs 1.
    let proj: Vec<Vec<f64>> = rows
        .iter()
        .map(|h| {
            let mut p: Vec<f64> = basis.iter().map(|s| real_dot(h, s)).collect();
            normalize(&mut p);
            p
        })
        .collect();

    // Initial simplicial cone: pick rows by largest residual against the
    // rows already chosen (pivoted Gram-Schmidt), so the start is as well
    // conditioned as the data allows.
    let mut init: Vec<usize> = Vec::with_capacity(r);
    let mut resid: Vec<Vec<f64>> = proj.clone();
    for _ in 0..r {
        let best = (0..resid.len())
            .filter(|i| !init.contains(i))
            .max_by(|&x, &y| real_dot(&resid[x], &resid[x]).total_cmp(&real_dot(&resid[y], &resid[y])))
            .expect("rank r needs r rows");
        let n = real_dot(&resid[best], &resid[best]).sqrt();
        let q: Vec<f64> = resid[best].iter().map(|x| x / n).collect();
        for v in resid.iter_mut() {
            let d = real_dot(v, &q);
            for (x, y) in v.iter_mut().zip(&q) {
                *x -= d * y;
            }
        }
        init.push(best);
    }
    init.sort_unstable();
    let a0: Vec<Vec<f64>> = init.iter().map(|&i| proj[i].clone()).collect();
    let inv = invert(&a0).expect("pivoted rows are independent");

    let n_rows = rows.len();
    let mut rays: Vec<Vec<f64>> = Vec::with_capacity(r);
    let mut tight: Vec<Bits> = Vec::with_capacity(r);
    for k in 0..r {
        // Column k of −A0⁻¹: strictly inside row k, tight on the others.
        let mut v: Vec<f64> = (0..r).map(|i| -inv[i][k]).collect();
        normalize(&mut v);
        let mut t = Bits::new(n_rows);
        for (j, &row) in init.iter().enumerate() {
            if j != k {
                t.set(row);
            }
        }
        rays.push(v);
        tight.push(t);
    }
    let mut done = vec![false; n_rows];
    for &i in &init {
        done[i] = true;
    }
    // Absorb the remaining rows in input order.
    for g in 0..n_rows {
        if done[g] {
            continue;
        }
        done[g] = true;
        let row = &proj[g];
        let s: Vec<f64> = rays.iter().map(|v| real_dot(row, v)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| s[i] > ZERO_TOL).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| s[i] < -ZERO_TOL).collect();
        let mut new_rays = Vec::new();
        let mut new_tight = Vec::new();
        for &p in &plus {
            for &m in &minus {
                let z = tight[p].and(&tight[m]);
                if (z.count() as usize) + 2 < r {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|w| w == p || w == m || !z.subset_of(&tight[w]));
                if !adjacent {
                    continue;
                }
                let mut v: Vec<f64> = rays[m].iter().zip(&rays[p]).map(|(a, b)| s[p] * a - s[m] * b).collect();
                normalize(&mut v);
                let mut t = z;
                t.set(g);
                new_rays.push(v);
                new_tight.push(t);
            }
        }
        let mut kept_rays = Vec::with_capacity(rays.len());
        let mut kept_tight = Vec::with_capacity(rays.len());
        for i in 0..rays.len() {
            if s[i] <= ZERO_TOL {
                let mut t = tight[i].clone();
                if s[i] >= -ZERO_TOL {
                    t.set(g);
                }
                kept_rays.push(rays[i].clone());
                kept_tight.push(t);
            }
        }
        kept_rays.extend(new_rays);
        kept_tight.extend(new_tight);
        rays = kept_rays;
        tight = kept_tight;
    }

    let rays_full: Vec<Vec<f64>> = rays
        .iter()
        .map(|z| {
            let mut y = vec![0.0; dim];
            for (zi, s) in z.iter().zip(&basis) {
                for (yj, sj) in y.iter_mut().zip(s) {
                    *yj += zi * sj;
                }
            }
            normalize(&mut y);
            y
        })
        .collect();
    ConeGenerators { rays: rays_full, tight: tight.iter().map(Bits::indices).collect(), lineality }
}
