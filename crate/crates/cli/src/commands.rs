use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtriple::assembly::{build_sigma_dynamic, build_sigma_static, A, B, E, X};
use qtriple::entropy::{coherent_information, von_neumann};
use qtriple::geometry::{Axis, OrthantSpec, RateTriple, Sign, DEFAULT_TOL};
use qtriple::optimizer::{self, boundary_curve, SweepConfig};
use qtriple::ri::{self, ResourceExpr};
use qtriple::tradeoff::{self, assemble_region, OneShotPoint};
use qtriple::unit::{self, UNIT_FACET_NAMES};
use qtriple::zoo::{self, ModelSpec};
use qtriple::{DensityMatrix, Ensemble, Instrument, QuantumChannel};
use rayon::prelude::*;
use serde::Serialize;

use crate::formats::{self, EnsembleJson, InstrumentJson, RegionJson};
use crate::CliError;

type Out<'a> = &'a mut dyn Write;

#[derive(Debug, Parser, Serialize)]
#[command(name = "qtriple", version, about = "Classical / quantum / entanglement rate regions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// The region generated by teleportation, super-dense coding and
    /// entanglement distribution.
    UnitRegion(UnitRegionArgs),
    /// Sweep ensembles (dynamic) or instruments (static) and assemble the
    /// achievable region.
    Region(RegionArgs),
    /// Evaluate the converse inequalities of one octant at a point.
    Bounds(BoundsArgs),
    /// Resource-inequality expressions.
    Ri {
        #[command(subcommand)]
        action: RiCommand,
    },
    /// Closed-form reference values next to numerically computed ones.
    Reference(ReferenceArgs),
    /// Ebits saved by coding over a channel, compared with teleportation.
    Gap(GapArgs),
    /// Pareto frontier of a region projected onto a coordinate plane.
    Curve(CurveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitFormat {
    Json,
    Facets,
}

#[derive(Debug, Args, Serialize)]
pub struct UnitRegionArgs {
    #[arg(long, value_enum, default_value_t = UnitFormat::Json)]
    pub format: UnitFormat,
    /// Membership verdict for a point `C,Q,E` instead of the region.
    #[arg(long, value_name = "C,Q,E", allow_hyphen_values = true, value_parser = formats::parse_triple)]
    #[serde(serialize_with = "ser_opt_triple")]
    pub check: Option<RateTriple>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Dynamic,
    Static,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    /// Model spec, e.g. `dephasing:p=0.2` or `erased:eps=0.25`.
    #[arg(long)]
    pub model: String,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tensor copies of the resource.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub k: u8,
    #[arg(long, default_value_t = 4)]
    pub max_outcomes: usize,
    /// Schmidt angles in the structured family for qubit channels (0 = off).
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    /// Golden-section coordinate sweeps on the structured family.
    #[arg(long, default_value_t = 0)]
    pub refine: usize,
    /// Worker threads (results do not depend on it).
    #[arg(long)]
    pub threads: Option<usize>,
}

impl SweepArgs {
    fn config(&self) -> SweepConfig {
        SweepConfig {
            seed: self.seed,
            samples: self.samples,
            max_outcomes: self.max_outcomes,
            refine_iters: self.refine,
            grid: (self.grid > 0).then_some(self.grid),
            copies: self.k as usize,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct RegionArgs {
    #[arg(value_enum)]
    pub mode: Mode,
    #[command(flatten)]
    #[serde(flatten)]
    pub sweep: SweepArgs,
    /// Extra ensemble (dynamic) included in the sweep.
    #[arg(long)]
    pub ensemble: Option<PathBuf>,
    /// Extra instrument (static) included in the sweep.
    #[arg(long)]
    pub instrument: Option<PathBuf>,
    /// Region JSON path; the point CSV and sweep report are written next to
    /// it. Without it the region JSON goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    /// One of (+,+,-), (-,+,-), (+,-,-), (-,-,+).
    #[arg(long, allow_hyphen_values = true)]
    pub octant: String,
    #[arg(long)]
    pub model: String,
    #[arg(long, value_name = "C,Q,E", allow_hyphen_values = true, value_parser = formats::parse_triple)]
    #[serde(serialize_with = "ser_triple")]
    pub point: RateTriple,
    /// Ensemble JSON (dynamic octants); defaults to a maximally entangled input.
    #[arg(long)]
    pub ensemble: Option<PathBuf>,
    /// Instrument JSON (static octant); defaults to the trivial instrument.
    #[arg(long)]
    pub instrument: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RiCommand {
    /// Print the canonical form and net rates.
    Parse { expr: String },
    /// Decide whether `target` follows from the given protocols (default:
    /// teleportation, super-dense coding, entanglement distribution).
    Derive {
        #[arg(long)]
        target: String,
        #[arg(long = "using")]
        using: Vec<String>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct ReferenceArgs {
    #[arg(long)]
    pub model: String,
}

#[derive(Debug, Args, Serialize)]
pub struct GapArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub sweep: SweepArgs,
    /// Quantum rate of the comparison; defaults to log2(d_in) + 1.
    #[arg(long)]
    pub q: Option<f64>,
    /// Also write the (Q, E) frontier of the (-,+,-) octant as CSV.
    #[arg(long)]
    pub curve: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CurveArgs {
    /// Region JSON.
    #[arg(long)]
    pub region: PathBuf,
    /// Orthant to clip to before projecting.
    #[arg(long, default_value = "(±,±,±)", allow_hyphen_values = true)]
    pub clip: String,
    /// Axis projected out: C, Q or E.
    #[arg(long)]
    pub drop: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn ser_triple<S: serde::Serializer>(t: &RateTriple, s: S) -> Result<S::Ok, S::Error> {
    [t.c, t.q, t.e].serialize(s)
}

fn ser_opt_triple<S: serde::Serializer>(t: &Option<RateTriple>, s: S) -> Result<S::Ok, S::Error> {
    t.map(|t| [t.c, t.q, t.e]).serialize(s)
}

pub fn run(cli: &Cli, out: Out, err: Out) -> Result<(), CliError> {
    echo(cli, err)?;
    match &cli.command {
        Command::UnitRegion(a) => unit_region(a, out),
        Command::Region(a) => region(a, out),
        Command::Bounds(a) => bounds(a, out),
        Command::Ri { action } => ri_command(action, out),
        Command::Reference(a) => reference(a, out),
        Command::Gap(a) => gap(a, out),
        Command::Curve(a) => curve(a, out),
    }
}

/// The effective configuration, as one JSON line.
pub fn config_json(cli: &Cli) -> String {
    serde_json::to_string(cli).expect("arguments serialize")
}

fn echo(cli: &Cli, err: Out) -> Result<(), CliError> {
    writeln!(err, "# config {}", config_json(cli))?;
    Ok(())
}

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

fn model(text: &str) -> Result<ModelSpec, CliError> {
    Ok(ModelSpec::parse(text)?)
}

fn channel_of(spec: &ModelSpec) -> Result<QuantumChannel, CliError> {
    match spec.channel() {
        Some(ch) => Ok(ch?),
        None => Err(usage(format!("`{spec}` is a state, not a channel"))),
    }
}

fn state_of(spec: &ModelSpec) -> Result<DensityMatrix, CliError> {
    match spec.state() {
        Some(rho) => Ok(rho?),
        None => Err(usage(format!("`{spec}` is a channel, not a state"))),
    }
}

fn write_region_json(region: &qtriple::RateRegion) -> Result<(RegionJson, String), CliError> {
    let json = RegionJson::from_region(region)?;
    if !json.is_finite() {
        return Err(CliError::Numerical("region has non-finite coordinates".into()));
    }
    let text = formats::to_json_string(&json)?;
    Ok((json, text))
}

fn unit_region(a: &UnitRegionArgs, out: Out) -> Result<(), CliError> {
    if let Some(x) = a.check {
        let [alpha, beta, gamma] = unit::unit_coefficients(x).map(|v| v + 0.0);
        let inside = unit::coefficients_feasible(x, DEFAULT_TOL);
        writeln!(out, "point {x}: {}", if inside { "inside" } else { "outside" })?;
        writeln!(out, "coefficients TP={alpha} SD={beta} ED={gamma}")?;
        for (f, name) in unit::unit_facets().iter().zip(UNIT_FACET_NAMES) {
            if f.slack(x) < -DEFAULT_TOL {
                writeln!(out, "violated {name} (by {})", -f.slack(x))?;
            }
        }
        return Ok(());
    }
    match a.format {
        UnitFormat::Json => {
            let (_, text) = write_region_json(&unit::unit_region())?;
            out.write_all(text.as_bytes())?;
        }
        UnitFormat::Facets => {
            for name in UNIT_FACET_NAMES {
                writeln!(out, "{name}")?;
            }
        }
    }
    Ok(())
}

fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(usage("--threads must be positive"));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Other(e.into()))
}

/// Parallel, order-independent version of the core sweeps.
pub fn sweep_channel(ch: &QuantumChannel, a: &SweepArgs, forced: &[Ensemble]) -> Result<Vec<OneShotPoint>, CliError> {
    if a.samples == 0 {
        return Ok(Vec::new());
    }
    let cfg = a.config();
    let cands = optimizer::cef_ensembles(ch, &cfg, forced)?;
    let mut points = thread_pool(a.threads)?.install(|| {
        cands
            .par_iter()
            .map(|(id, e)| optimizer::evaluate_ensemble(ch, cfg.copies, id, e))
            .collect::<Result<Vec<_>, _>>()
    })?;
    points.extend(optimizer::refined_points(ch, &cfg)?);
    optimizer::sort_points(&mut points);
    Ok(points)
}

pub fn sweep_state(rho: &DensityMatrix, a: &SweepArgs, forced: &[Instrument]) -> Result<Vec<OneShotPoint>, CliError> {
    if a.samples == 0 {
        return Ok(Vec::new());
    }
    let cfg = a.config();
    let cands = optimizer::casr_instruments(rho, &cfg, forced)?;
    let mut points = thread_pool(a.threads)?.install(|| {
        cands
            .par_iter()
            .map(|(id, m)| optimizer::evaluate_instrument(rho, cfg.copies, id, m))
            .collect::<Result<Vec<_>, _>>()
    })?;
    optimizer::sort_points(&mut points);
    Ok(points)
}

fn input_error(e: anyhow::Error) -> CliError {
    match CliError::from(e) {
        CliError::Other(e) => usage(format!("{e:#}")),
        other => other,
    }
}

fn read_ensemble(path: &Path) -> Result<Ensemble, CliError> {
    formats::read_json::<EnsembleJson>(path).and_then(|j| j.to_ensemble()).map_err(input_error)
}

fn read_instrument(path: &Path) -> Result<Instrument, CliError> {
    formats::read_json::<InstrumentJson>(path).and_then(|j| j.to_instrument()).map_err(input_error)
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "region".into());
    path.with_file_name(format!("{stem}.{suffix}"))
}

#[derive(Serialize)]
struct SweepReport {
    config: serde_json::Value,
    model: String,
    mode: Mode,
    points: usize,
    points_csv: String,
    region_json: String,
    hull_points: usize,
    facets: usize,
    /// Sampled hulls are inner approximations; this says why.
    caveat: String,
}

fn region(a: &RegionArgs, out: Out) -> Result<(), CliError> {
    let spec = model(&a.sweep.model)?;
    let points = match a.mode {
        Mode::Dynamic => {
            if a.instrument.is_some() {
                return Err(usage("--instrument applies to static regions"));
            }
            let ch = channel_of(&spec)?;
            let forced: Vec<Ensemble> = a.ensemble.as_deref().map(read_ensemble).transpose()?.into_iter().collect();
            sweep_channel(&ch, &a.sweep, &forced)?
        }
        Mode::Static => {
            if a.ensemble.is_some() {
                return Err(usage("--ensemble applies to dynamic regions"));
            }
            let rho = state_of(&spec)?;
            let forced: Vec<Instrument> =
                a.instrument.as_deref().map(read_instrument).transpose()?.into_iter().collect();
            sweep_state(&rho, &a.sweep, &forced)?
        }
    };
    if points.iter().any(|p| !p.triple.is_finite()) {
        return Err(CliError::Numerical("a one-shot point is not finite".into()));
    }
    let region = assemble_region(&points);
    let (json, text) = write_region_json(&region)?;
    let Some(path) = &a.out else {
        out.write_all(text.as_bytes())?;
        return Ok(());
    };
    std::fs::write(path, &text)?;
    let csv_path = sibling(path, "points.csv");
    formats::write_points_csv(std::fs::File::create(&csv_path)?, &points)?;
    let report_path = sibling(path, "sweep.json");
    let report = SweepReport {
        config: serde_json::to_value(a).map_err(|e| CliError::Other(e.into()))?,
        model: spec.to_string(),
        mode: a.mode,
        points: points.len(),
        points_csv: file_name(&csv_path),
        region_json: file_name(path),
        hull_points: json.points.len(),
        facets: json.facets.len(),
        caveat: match a.mode {
            Mode::Dynamic => format!(
                "ensembles capped at {} members; no cardinality known to suffice for the one-shot region",
                a.sweep.max_outcomes
            ),
            Mode::Static => format!(
                "instruments capped at {} outcomes; random instruments are not known to reach the boundary",
                a.sweep.max_outcomes
            ),
        },
    };
    std::fs::write(&report_path, formats::to_json_string(&report)?)?;
    writeln!(
        out,
        "{} points, {} hull points, {} facets -> {}, {}, {}",
        points.len(),
        json.points.len(),
        json.facets.len(),
        path.display(),
        csv_path.display(),
        report_path.display()
    )?;
    Ok(())
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Cef,
    Caq,
    EaqClassical,
    Casr,
}

fn family_of(octant: &OrthantSpec) -> Option<Family> {
    use Sign::{Minus as M, Plus as P};
    match octant.signs {
        [P, P, M] => Some(Family::Cef),
        [M, P, M] => Some(Family::Caq),
        [P, M, M] => Some(Family::EaqClassical),
        [M, M, P] => Some(Family::Casr),
        _ => None,
    }
}

fn bounds(a: &BoundsArgs, out: Out) -> Result<(), CliError> {
    let octant = OrthantSpec::parse(&a.octant)?;
    let family = family_of(&octant).ok_or_else(|| usage(format!("no converse inequalities for octant {octant}")))?;
    let spec = model(&a.model)?;
    let x = a.point;
    let verdict = if family == Family::Casr {
        let rho = state_of(&spec)?;
        let instr = match &a.instrument {
            Some(p) => read_instrument(p)?,
            None => Instrument::trivial(rho.dim_of(A)?)?,
        };
        tradeoff::casr_octant_bounds(&build_sigma_static(&rho, &instr)?, x)?
    } else {
        let ch = channel_of(&spec)?;
        let ens = match &a.ensemble {
            Some(p) => read_ensemble(p)?,
            None => Ensemble::max_entangled(ch.in_dim())?,
        };
        let sigma = build_sigma_dynamic(&ch, &ens)?;
        match family {
            Family::Cef => tradeoff::cef_octant_bounds(&sigma, x)?,
            Family::Caq => tradeoff::caq_bounds(&sigma, x)?,
            _ => tradeoff::eaq_classical_bounds(&sigma, x)?,
        }
    };
    let inside = verdict.applies_to(x, DEFAULT_TOL);
    writeln!(out, "octant {octant}, point {x} ({})", if inside { "in octant" } else { "outside octant" })?;
    for c in &verdict.checks {
        writeln!(out, "{:<36} lhs={:<22} rhs={:<22} slack={}", c.name, c.lhs, c.rhs, c.slack)?;
    }
    let pass = verdict.passes(DEFAULT_TOL);
    writeln!(out, "{} (min slack {})", if pass { "PASS" } else { "FAIL" }, verdict.min_slack())?;
    Ok(())
}

fn ri_command(cmd: &RiCommand, out: Out) -> Result<(), CliError> {
    match cmd {
        RiCommand::Parse { expr } => {
            let e = ri::parse(expr)?;
            writeln!(out, "{e}")?;
            match e.net_rate() {
                Ok(r) => {
                    write!(out, "net {}", r.triple)?;
                    if let Some(n) = r.noisy {
                        write!(out, " consuming <{n}>")?;
                    }
                    writeln!(out)?;
                }
                Err(e) => writeln!(out, "no net rate: {e}")?,
            }
        }
        RiCommand::Derive { target, using } => {
            let t = ri::parse(target)?;
            let texts: Vec<&str> =
                if using.is_empty() { vec![ri::TP, ri::SD, ri::ED] } else { using.iter().map(String::as_str).collect() };
            let protocols: Vec<ResourceExpr> = texts.iter().map(|s| ri::parse(s)).collect::<Result<_, _>>()?;
            let d = ri::derivable(&t, &protocols)?;
            writeln!(out, "target {t}")?;
            if !d.derivable {
                writeln!(out, "not derivable")?;
                return Ok(());
            }
            writeln!(out, "derivable")?;
            for (c, p) in d.coefficients.iter().zip(&protocols) {
                if *c > ri::DERIVE_TOL {
                    writeln!(out, "  {c} x ({p})")?;
                }
            }
            let w = RateTriple::from_array(d.waste);
            if w.max_abs() > ri::DERIVE_TOL {
                writeln!(out, "  wasted {w}")?;
            }
        }
    }
    Ok(())
}

/// Tolerance for the reference comparison; larger deltas exit with code 3.
pub const REFERENCE_TOL: f64 = 1e-8;

fn reference(a: &ReferenceArgs, out: Out) -> Result<(), CliError> {
    let spec = model(&a.model)?;
    let mut rows: Vec<(&str, f64, f64)> = Vec::new();
    match spec {
        ModelSpec::Dephasing { p } => {
            let r = zoo::dephasing_reference(p)?;
            let sigma = build_sigma_dynamic(&channel_of(&spec)?, &Ensemble::max_entangled(2)?)?;
            let s = sigma.state();
            rows.push(("coherent info of Phi+", r.quantum_capacity, coherent_information(s, &[A], &[B])?));
            rows.push(("H(E) on Phi+", r.env_entropy, von_neumann(s, &[E])?));
        }
        ModelSpec::Erased { eps } => {
            let r = zoo::erased_state_reference(eps)?;
            let rho = state_of(&spec)?;
            rows.push(("H(A)", r.h_a, von_neumann(&rho, &[A])?));
            rows.push(("H(B)", r.h_b, von_neumann(&rho, &[B])?));
            rows.push(("H(AB)", r.h_ab, von_neumann(&rho, &[A, B])?));
            rows.push(("I(A>B)", r.coherent_info, coherent_information(&rho, &[A], &[B])?));
            let m = zoo::erased_mother_point(eps);
            let got = tradeoff::casr_point(&rho, &Instrument::trivial(2)?)?.triple;
            rows.push(("mother point C", m.c, got.c));
            rows.push(("mother point Q", m.q, got.q));
            rows.push(("mother point E", m.e, got.e));
        }
        ModelSpec::Erasure { eps } => {
            let sigma = build_sigma_dynamic(&channel_of(&spec)?, &Ensemble::max_entangled(2)?)?;
            rows.push(("coherent info of Phi+", 1.0 - 2.0 * eps, coherent_information(sigma.state(), &[A], &[B])?));
        }
        ModelSpec::Bell => {
            let rho = state_of(&spec)?;
            rows.push(("H(A)", 1.0, von_neumann(&rho, &[A])?));
            rows.push(("H(AB)", 0.0, von_neumann(&rho, &[A, B])?));
            rows.push(("I(A>B)", 1.0, coherent_information(&rho, &[A], &[B])?));
        }
        ModelSpec::Identity { d } => {
            let sigma = build_sigma_dynamic(&channel_of(&spec)?, &Ensemble::max_entangled(d)?)?;
            let s = sigma.state();
            let log = (d as f64).log2();
            rows.push(("coherent info of Phi+", log, coherent_information(s, &[A], &[B])?));
            rows.push(("H(E) on Phi+", 0.0, von_neumann(s, &[E])?));
            rows.push(("H(X)", 0.0, von_neumann(s, &[X])?));
        }
    }
    writeln!(out, "model {spec}")?;
    writeln!(out, "{:<24} {:>24} {:>24} {:>12}", "quantity", "closed form", "numeric", "delta")?;
    let mut worst: f64 = 0.0;
    for (name, closed, numeric) in &rows {
        let delta = numeric - closed;
        worst = worst.max(delta.abs());
        writeln!(out, "{name:<24} {closed:>24} {numeric:>24} {delta:>12.3e}")?;
    }
    if !(worst <= REFERENCE_TOL) {
        return Err(CliError::Numerical(format!("reference mismatch {worst:e} exceeds {REFERENCE_TOL:e}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct GapJson {
    model: String,
    q: f64,
    tp_ebits: f64,
    region_ebits: f64,
    gap: f64,
    /// Largest Q + E over the swept points.
    max_coherent_information: f64,
    points: usize,
}

fn gap(a: &GapArgs, out: Out) -> Result<(), CliError> {
    let spec = model(&a.sweep.model)?;
    let ch = channel_of(&spec)?;
    let points = sweep_channel(&ch, &a.sweep, &[])?;
    let q = a.q.unwrap_or_else(|| tradeoff::matched_quantum_rate(ch.in_dim()));
    if !(q.is_finite() && q >= 0.0) {
        return Err(usage("--q must be a non-negative number"));
    }
    let r = tradeoff::ea_vs_tp_gap(&points, q)?;
    let best = points.iter().map(|p| p.triple.q + p.triple.e).fold(0.0f64, f64::max);
    let json = GapJson {
        model: spec.to_string(),
        q: r.q,
        tp_ebits: r.tp_ebits,
        region_ebits: r.region_ebits,
        gap: r.gap,
        max_coherent_information: best,
        points: points.len(),
    };
    if let Some(path) = &a.curve {
        let clip = OrthantSpec::new(Sign::Minus, Sign::Plus, Sign::Minus);
        let c = boundary_curve(&assemble_region(&points), &clip, Axis::C)?;
        formats::write_curve_csv(std::fs::File::create(path)?, &c)?;
    }
    out.write_all(formats::to_json_string(&json)?.as_bytes())?;
    Ok(())
}

fn curve(a: &CurveArgs, out: Out) -> Result<(), CliError> {
    let region = formats::read_json::<RegionJson>(&a.region).and_then(|j| j.to_region()).map_err(input_error)?;
    let clip = OrthantSpec::parse(&a.clip)?;
    let drop = Axis::parse(&a.drop)?;
    let c = boundary_curve(&region, &clip, drop)?;
    match &a.out {
        Some(p) => formats::write_curve_csv(std::fs::File::create(p)?, &c)?,
        None => formats::write_curve_csv(out, &c)?,
    }
    Ok(())
}
