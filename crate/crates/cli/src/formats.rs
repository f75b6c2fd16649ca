//! File formats: region JSON, ensemble / instrument JSON, point and curve CSV.

use std::io::Write;

use anyhow::{bail, Context};
use num_complex::Complex64 as C64;
use qtriple::geometry::{Facet, RateRegion, RateTriple, Ray};
use qtriple::linalg::CMatrix;
use qtriple::optimizer::BoundaryCurve;
use qtriple::tradeoff::OneShotPoint;
use qtriple::{Ensemble, Instrument};
use serde::{Deserialize, Serialize};

/// `-0.0` prints as `-0.0`; fold it so equal regions serialize identically.
fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Shortest round-trip text; exponent form for very small or large values.
fn num(x: f64) -> String {
    format!("{:?}", clean(x))
}

fn triple(t: RateTriple) -> [f64; 3] {
    [clean(t.c), clean(t.q), clean(t.e)]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacetJson {
    pub normal: [f64; 3],
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionJson {
    pub points: Vec<[f64; 3]>,
    pub rays: Vec<[f64; 3]>,
    #[serde(default)]
    pub facets: Vec<FacetJson>,
}

impl RegionJson {
    /// Vertices, extreme rays and facets.
    pub fn from_region(region: &RateRegion) -> anyhow::Result<Self> {
        let fd = region.facets_3d();
        let reduced = region.irredundant();
        let vertices = region.minimal()?;
        let mut points: Vec<[f64; 3]> = vertices.points().iter().map(|p| triple(*p)).collect();
        points.sort_by(|a, b| a.iter().zip(b).fold(std::cmp::Ordering::Equal, |o, (x, y)| o.then(x.total_cmp(y))));
        Ok(Self {
            points,
            rays: reduced.rays().iter().map(|r| triple(r.direction())).collect(),
            facets: fd
                .facets
                .iter()
                .map(|f| FacetJson { normal: f.normal.map(clean), offset: clean(f.offset) })
                .collect(),
        })
    }

    pub fn to_region(&self) -> anyhow::Result<RateRegion> {
        let points = self.points.iter().map(|p| RateTriple::from_array(*p)).collect();
        let rays = self.rays.iter().map(|r| Ray::new(RateTriple::from_array(*r))).collect::<Result<Vec<_>, _>>()?;
        Ok(RateRegion::new(points, rays)?)
    }

    pub fn facets(&self) -> Vec<Facet> {
        self.facets.iter().map(|f| Facet { normal: f.normal, offset: f.offset }).collect()
    }

    pub fn is_finite(&self) -> bool {
        let all = self.points.iter().chain(&self.rays).flatten().chain(self.facets.iter().flat_map(|f| f.normal.iter().chain([&f.offset])));
        all.into_iter().all(|x| x.is_finite())
    }
}

pub type ComplexJson = [f64; 2];

fn complex(v: &[ComplexJson]) -> Vec<C64> {
    v.iter().map(|[re, im]| C64::new(*re, *im)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleEntryJson {
    pub p: f64,
    /// Amplitudes on `A ⊗ A'`, A most significant.
    pub state: Vec<ComplexJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleJson {
    pub a_dim: usize,
    pub a_prime_dim: usize,
    pub entries: Vec<EnsembleEntryJson>,
}

impl EnsembleJson {
    pub fn to_ensemble(&self) -> anyhow::Result<Ensemble> {
        let entries = self.entries.iter().map(|e| (e.p, complex(&e.state))).collect();
        Ok(Ensemble::from_vectors(self.a_dim, self.a_prime_dim, entries)?)
    }

    pub fn from_ensemble(ens: &Ensemble) -> Self {
        Self {
            a_dim: ens.a_dim(),
            a_prime_dim: ens.a_prime_dim(),
            entries: ens
                .entries()
                .iter()
                .map(|(p, psi)| EnsembleEntryJson { p: *p, state: psi.vector().iter().map(|z| [z.re, z.im]).collect() })
                .collect(),
        }
    }
}

/// Each branch is a list of Kraus matrices, each `out_dim × in_dim`
/// flattened row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstrumentJson {
    pub in_dim: usize,
    pub out_dim: usize,
    pub branches: Vec<Vec<Vec<ComplexJson>>>,
}

impl InstrumentJson {
    pub fn to_instrument(&self) -> anyhow::Result<Instrument> {
        let mut branches = Vec::with_capacity(self.branches.len());
        for (j, branch) in self.branches.iter().enumerate() {
            let mut kraus = Vec::with_capacity(branch.len());
            for m in branch {
                if m.len() != self.in_dim * self.out_dim {
                    bail!(
                        "branch {j}: Kraus matrix has {} entries, expected {}×{}",
                        m.len(),
                        self.out_dim,
                        self.in_dim
                    );
                }
                kraus.push(CMatrix::from_vec(self.out_dim, self.in_dim, complex(m)));
            }
            branches.push(kraus);
        }
        Ok(Instrument::new(branches)?)
    }

    pub fn from_instrument(m: &Instrument) -> Self {
        Self {
            in_dim: m.in_dim(),
            out_dim: m.out_dim(),
            branches: m
                .branches()
                .iter()
                .map(|b| b.iter().map(|k| k.data().iter().map(|z| [z.re, z.im]).collect()).collect())
                .collect(),
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn to_json_string<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub const POINTS_HEADER: [&str; 6] = ["kind", "k", "C", "Q", "E", "provenance-id"];

pub fn write_points_csv<W: Write>(out: W, points: &[OneShotPoint]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(POINTS_HEADER)?;
    for p in points {
        let [c, q, e] = triple(p.triple);
        w.write_record([
            p.kind.name().to_string(),
            p.k.to_string(),
            num(c),
            num(q),
            num(e),
            p.provenance.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `kind,<axis0>,<axis1>`; kind is `vertex`, `left_ray` or
/// `right_ray`. Vertices come in frontier order.
pub fn write_curve_csv<W: Write>(out: W, curve: &BoundaryCurve) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["kind", curve.axes[0].name(), curve.axes[1].name()])?;
    let mut row = |kind: &str, v: [f64; 2]| w.write_record([kind.to_string(), num(v[0]), num(v[1])]);
    if let Some(r) = curve.left_ray {
        row("left_ray", r)?;
    }
    for v in &curve.vertices {
        row("vertex", *v)?;
    }
    if let Some(r) = curve.right_ray {
        row("right_ray", r)?;
    }
    w.flush()?;
    Ok(())
}

/// Parses `C,Q,E`.
pub fn parse_triple(text: &str) -> Result<RateTriple, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected C,Q,E, got `{text}`"));
    }
    let mut v = [0.0f64; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
        if !slot.is_finite() {
            return Err(format!("`{p}` is not finite"));
        }
    }
    Ok(RateTriple::from_array(v))
}
