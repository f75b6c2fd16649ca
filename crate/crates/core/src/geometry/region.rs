use alloc::vec;
use alloc::vec::Vec;


use super::dd::{self, cone_from_halfspaces};
use super::lp::{Lp, LpOutcome};
use super::{OrthantSpec, RateTriple, Ray};
use crate::{Error, Result};

/// Default membership tolerance (L1 residual of the best representation).
pub const DEFAULT_TOL: f64 = 1e-8;

const DEDUP_TOL: f64 = 1e-9;
/// Points beyond this count go through LP redundancy removal before facet
/// enumeration.
const LP_PRUNE_ABOVE: usize = 64;

/// Half-space `normal·x ≤ offset` (or an equality when listed as one).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Facet {
    pub normal: [f64; 3],
    pub offset: f64,
}

impl Facet {
    /// `offset − normal·x`; non-negative inside.
    pub fn slack(&self, x: RateTriple) -> f64 {
        self.offset - RateTriple::from_array(self.normal).dot(x)
    }

    fn from_homogeneous(y: &[f64]) -> Option<Facet> {
        let m = y[..3].iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if m < 1e-12 {
            return None;
        }
        // Snap to multiples of 1/1024 when within rounding noise, so that
        // simple facets come out exact.
        let clean = |v: f64| {
            let snapped = (v * 1024.0).round() / 1024.0;
            if (v - snapped).abs() < 1e-12 { snapped + 0.0 } else { v }
        };
        Some(Facet { normal: [clean(y[0] / m), clean(y[1] / m), clean(y[2] / m)], offset: clean(-y[3] / m) })
    }

    fn same_as(&self, o: &Facet) -> bool {
        self.normal.iter().zip(&o.normal).all(|(a, b)| (a - b).abs() <= DEDUP_TOL)
            && (self.offset - o.offset).abs() <= DEDUP_TOL
    }
}

/// Irredundant inequality description plus the affine hull.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FacetDescription {
    pub facets: Vec<Facet>,
    /// `normal·x = offset` constraints cutting out the affine hull.
    pub equalities: Vec<Facet>,
    pub affine_dim: usize,
}

impl FacetDescription {
    pub fn contains(&self, x: RateTriple, tol: f64) -> bool {
        self.facets.iter().all(|f| f.slack(x) >= -tol) && self.equalities.iter().all(|f| f.slack(x).abs() <= tol)
    }

    /// True when the region is all of space.
    pub fn is_full_space(&self) -> bool {
        self.facets.is_empty() && self.equalities.is_empty()
    }
}

/// `Le`: `normal·x ≤ rhs`, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constraint {
    pub normal: RateTriple,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn new(normal: RateTriple, relation: Relation, rhs: f64) -> Self {
        Self { normal, relation, rhs }
    }
}

/// `conv(points) + cone(rays)`, optionally carrying its facet description.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion {
    points: Vec<RateTriple>,
    rays: Vec<Ray>,
    facets: Option<FacetDescription>,
}

impl RateRegion {
    pub fn new(points: Vec<RateTriple>, rays: Vec<Ray>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("a region needs at least one generator point"));
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::Invalid(alloc::format!("point {p} is not finite")));
        }
        let mut r: Vec<Ray> = Vec::with_capacity(rays.len());
        for ray in rays {
            if !r.iter().any(|o| (o.direction() - ray.direction()).max_abs() <= 1e-12) {
                r.push(ray);
            }
        }
        Ok(Self { points, rays: r, facets: None })
    }

    pub fn point(x: RateTriple) -> Result<Self> {
        Self::new(vec![x], Vec::new())
    }

    /// Cone generated by `rays` with apex at the origin.
    pub fn cone(rays: Vec<Ray>) -> Result<Self> {
        Self::new(vec![RateTriple::ORIGIN], rays)
    }

    pub fn points(&self) -> &[RateTriple] {
        &self.points
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn cached_facets(&self) -> Option<&FacetDescription> {
        self.facets.as_ref()
    }

    /// Adds generator points (the convex hull grows).
    pub fn with_points(&self, extra: &[RateTriple]) -> Result<Self> {
        let mut points = self.points.clone();
        points.extend_from_slice(extra);
        Self::new(points, self.rays.clone())
    }

    /// Computes and stores the facet description.
    pub fn with_facets(mut self) -> Self {
        let f = self.facets_3d();
        self.facets = Some(f);
        self
    }

    /// L1 distance from `x` to the closest representable combination.
    pub fn membership_residual(&self, x: RateTriple) -> f64 {
        let n = self.points.len();
        let m = self.rays.len();
        let vars = n + m + 6;
        let mut lp = Lp::new(vars);
        for k in 0..3 {
            let mut row = vec![0.0; vars];
            for (i, p) in self.points.iter().enumerate() {
                row[i] = p.to_array()[k];
            }
            for (j, r) in self.rays.iter().enumerate() {
                row[n + j] = r.direction().to_array()[k];
            }
            row[n + m + k] = 1.0;
            row[n + m + 3 + k] = -1.0;
            lp.add_row(row, x.to_array()[k]);
        }
        let mut row = vec![0.0; vars];
        for v in row.iter_mut().take(n) {
            *v = 1.0;
        }
        lp.add_row(row, 1.0);
        for c in lp.c.iter_mut().skip(n + m) {
            *c = 1.0;
        }
        match lp.solve(1e-7) {
            LpOutcome::Optimal { value, .. } => value.max(0.0),
            _ => f64::INFINITY,
        }
    }

    /// Membership by LP feasibility, within `tol` in L1 residual.
    pub fn contains(&self, x: RateTriple, tol: f64) -> bool {
        self.membership_residual(x) <= tol
    }

    /// `max objective·x` over the region intersected with `constraints`.
    /// Returns the optimum and a maximizer.
    pub fn maximize(&self, objective: RateTriple, constraints: &[Constraint]) -> Result<(f64, RateTriple)> {
        let n = self.points.len();
        let m = self.rays.len();
        let slacks = constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let vars = n + m + slacks;
        let mut lp = Lp::new(vars);
        let gens: Vec<RateTriple> =
            self.points.iter().copied().chain(self.rays.iter().map(Ray::direction)).collect();
        for (i, g) in gens.iter().enumerate() {
            lp.c[i] = -objective.dot(*g);
        }
        let mut row = vec![0.0; vars];
        for v in row.iter_mut().take(n) {
            *v = 1.0;
        }
        lp.add_row(row, 1.0);
        let mut s = n + m;
        for c in constraints {
            let mut row = vec![0.0; vars];
            for (i, g) in gens.iter().enumerate() {
                row[i] = c.normal.dot(*g);
            }
            match c.relation {
                Relation::Le => {
                    row[s] = 1.0;
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = -1.0;
                    s += 1;
                }
                Relation::Eq => {}
            }
            lp.add_row(row, c.rhs);
        }
        match lp.solve(1e-9) {
            LpOutcome::Optimal { z, value } => {
                let x = gens.iter().zip(&z).fold(RateTriple::ORIGIN, |acc, (g, w)| acc + *w * *g);
                Ok((-value, x))
            }
            LpOutcome::Infeasible { .. } => Err(Error::EmptyIntersection),
            LpOutcome::Unbounded => Err(Error::Unbounded),
        }
    }

    /// Same region with duplicate and non-extreme points removed.
    pub fn irredundant(&self) -> RateRegion {
        let mut pts: Vec<RateTriple> = Vec::with_capacity(self.points.len());
        for p in &self.points {
            if !pts.iter().any(|q| (*q - *p).max_abs() <= DEDUP_TOL) {
                pts.push(*p);
            }
        }
        // Dominance: p ∈ q + cone(three independent rays).
        if let Some(inv) = simplicial_inverse(&self.rays) {
            let mut keep = vec![true; pts.len()];
            for i in 0..pts.len() {
                let dominated = (0..pts.len()).any(|j| {
                    j != i && keep[j] && {
                        let d = (pts[i] - pts[j]).to_array();
                        inv.iter().all(|row| row[0] * d[0] + row[1] * d[1] + row[2] * d[2] >= -1e-12)
                    }
                });
                if dominated {
                    keep[i] = false;
                }
            }
            pts = pts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
        }
        if pts.len() > LP_PRUNE_ABOVE {
            let mut i = 0;
            while i < pts.len() && pts.len() > 1 {
                let mut others = pts.clone();
                let p = others.remove(i);
                let rest = RateRegion { points: others.clone(), rays: self.rays.clone(), facets: None };
                if rest.contains(p, 1e-10) {
                    pts = others;
                } else {
                    i += 1;
                }
            }
        }
        RateRegion { points: pts, rays: self.rays.clone(), facets: self.facets.clone() }
    }

    /// Irredundant facets via double description on the homogenized
    /// generators `(p, 1)` and `(r, 0)`. Normals are scaled to max-abs 1.
    pub fn facets_3d(&self) -> FacetDescription {
        if let Some(f) = &self.facets {
            return f.clone();
        }
        let reduced = self.irredundant();
        let n = reduced.points.len();
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n + reduced.rays.len());
        for p in &reduced.points {
            rows.push(vec![p.c, p.q, p.e, 1.0]);
        }
        for r in &reduced.rays {
            let d = r.direction();
            rows.push(vec![d.c, d.q, d.e, 0.0]);
        }
        let g = cone_from_halfspaces(&rows, 4);
        let mut facets: Vec<Facet> = Vec::new();
        for (y, tight) in g.rays.iter().zip(&g.tight) {
            // Faces touching no point generator lie at infinity.
            if !tight.iter().any(|&i| i < n) {
                continue;
            }
            if let Some(f) = Facet::from_homogeneous(y) {
                if !facets.iter().any(|o| o.same_as(&f)) {
                    facets.push(f);
                }
            }
        }
        facets.sort_by(|a, b| {
            a.normal.iter().zip(&b.normal).fold(core::cmp::Ordering::Equal, |o, (x, y)| o.then(y.total_cmp(x)))
        });
        let equalities: Vec<Facet> = g.lineality.iter().filter_map(|y| Facet::from_homogeneous(y)).collect();
        FacetDescription { facets, equalities, affine_dim: 3 - g.lineality.len().min(3) }
    }

    /// Intersection with a closed orthant, as generators.
    pub fn clip(&self, orthant: &OrthantSpec) -> Result<RateRegion> {
        if orthant.is_unconstrained() {
            return Ok(self.clone());
        }
        from_halfspaces(&self.facets_3d(), &orthant.halfspaces())
    }

    /// Equivalent region with only extreme points and extreme rays (a line
    /// in the region shows up as a pair of opposite rays).
    pub fn minimal(&self) -> Result<RateRegion> {
        let fd = self.facets_3d();
        let mut out = from_halfspaces(&fd, &[])?;
        out.facets = Some(fd);
        Ok(out)
    }
}

/// Vertex/ray enumeration of `fd ∩ {h·x ≤ 0 : h ∈ extra}`.
fn from_halfspaces(fd: &FacetDescription, extra: &[[f64; 3]]) -> Result<RateRegion> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for f in &fd.facets {
        rows.push(vec![f.normal[0], f.normal[1], f.normal[2], -f.offset]);
    }
    for f in &fd.equalities {
        rows.push(vec![f.normal[0], f.normal[1], f.normal[2], -f.offset]);
        rows.push(vec![-f.normal[0], -f.normal[1], -f.normal[2], f.offset]);
    }
    for h in extra {
        rows.push(vec![h[0], h[1], h[2], 0.0]);
    }
    rows.push(vec![0.0, 0.0, 0.0, -1.0]);
    let g = cone_from_halfspaces(&rows, 4);
    let mut points = Vec::new();
    let mut rays = Vec::new();
    for y in &g.rays {
        let dir = RateTriple::new(y[0], y[1], y[2]);
        if y[3] > 1e-9 {
            let p = ((1.0 / y[3]) * dir).to_array().map(|v| if v.abs() < 1e-12 { 0.0 } else { v });
            points.push(RateTriple::from_array(p));
        } else if dir.max_abs() > 1e-12 {
            rays.push(Ray::new(dir)?);
        }
    }
    for y in &g.lineality {
        let dir = RateTriple::new(y[0], y[1], y[2]);
        if dir.max_abs() > 1e-12 {
            rays.push(Ray::new(dir)?);
            rays.push(Ray::new(-dir)?);
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    RateRegion::new(points, rays)
}

/// Rows of the inverse of the first invertible 3×3 ray matrix, if any.
fn simplicial_inverse(rays: &[Ray]) -> Option<Vec<Vec<f64>>> {
    let n = rays.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let cols = [rays[i].direction(), rays[j].direction(), rays[k].direction()];
                let m: Vec<Vec<f64>> = (0..3).map(|r| cols.iter().map(|c| c.to_array()[r]).collect()).collect();
                if let Some(inv) = dd::invert(&m) {
                    let det = det3(&m);
                    if det.abs() > 1e-9 {
                        return Some(inv);
                    }
                }
            }
        }
    }
    None
}

fn det3(m: &[Vec<f64>]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `A + B`: all pairwise point sums and the union of rays.
pub fn minkowski_sum(a: &RateRegion, b: &RateRegion) -> RateRegion {
    let mut points = Vec::with_capacity(a.points.len() * b.points.len());
    for p in &a.points {
        for q in &b.points {
            points.push(*p + *q);
        }
    }
    let mut rays = a.rays.clone();
    rays.extend_from_slice(&b.rays);
    RateRegion::new(points, rays).expect("sums of valid regions are valid")
}

/// `(S + cone(L)) ∩ target`.
pub fn slide_and_clip(s: &RateRegion, line: Ray, target: &OrthantSpec) -> Result<RateRegion> {
    let slid = minkowski_sum(s, &RateRegion::cone(vec![line])?);
    slid.clip(target)
}

/// `(S − cone(L)) ∩ target`, the inverse slide.
pub fn unslide_and_clip(s: &RateRegion, line: Ray, target: &OrthantSpec) -> Result<RateRegion> {
    slide_and_clip(s, -line, target)
}
