//! Seeded scaling experiments on random inscribed polytopes.
//!
//! Replications are independent work items executed on the current rayon pool.
//! Replication `rep` at sample size `n` draws from a stream determined only by
//! `(master_seed, n, rep)` and results are reduced in replication order, so the
//! output does not depend on the number of worker threads.

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{reference_intrinsic_volume, sample_boundary, ConvexBody};
use crate::hull::{convex_hull, Polytope};
use crate::measures::{has_exact_path, intrinsic_volume, sample_grassmannian, subspace_angle, ProjectionPanel};
use crate::rng::{common_stream, replication_stream, RngStream};
use crate::stats::{
    fit_power_law, kolmogorov_distance, mean, mean_stderr, normal_cdf, sample_variance, skewness,
    variance_jackknife_stderr, FitResult,
};
use crate::surface_body::{contains_centered_ball, surface_body_radius, tau_threshold};
use crate::vector::Vector;

/// Variances below this are treated as numerical underflow.
pub const VARIANCE_FLOOR: f64 = 1e-28;

/// Replications required for the statistical experiment kinds.
pub const MIN_REPLICATIONS: usize = 100;

/// Samples per parallel work item in the Grassmannian experiment.
const GRASSMANN_CHUNK: usize = 10_000;

/// Offset separating the projection panel key from replication keys.
const PANEL_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

/// Bit flipped in the stream index when a replication is redrawn.
const RESAMPLE_BIT: u64 = 1 << 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Variance,
    MeanDeficit,
    Clt,
    Containment,
    GrassmannAngle,
    EfronStein,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Variance => "variance",
            ExperimentKind::MeanDeficit => "mean-deficit",
            ExperimentKind::Clt => "clt",
            ExperimentKind::Containment => "containment",
            ExperimentKind::GrassmannAngle => "grassmann-angle",
            ExperimentKind::EfronStein => "efron-stein",
        }
    }
}

fn default_c_alpha() -> f64 {
    1.0
}

/// Declarative description of one experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub kind: ExperimentKind,
    pub body: ConvexBody,
    pub ell: usize,
    #[serde(default)]
    pub n_grid: Vec<usize>,
    #[serde(default)]
    pub replications: usize,
    pub master_seed: u64,
    /// Kubota panel size; 0 requires an exact path.
    #[serde(default)]
    pub panel_size: usize,
    #[serde(default = "default_c_alpha")]
    pub c_alpha: f64,
    /// Angle grid (radians) for the Grassmannian experiment.
    #[serde(default)]
    pub a_grid: Vec<f64>,
    /// Haar samples for the Grassmannian experiment.
    #[serde(default)]
    pub samples: usize,
}

impl ExperimentConfig {
    /// A config with defaults for the optional fields.
    pub fn new(name: impl Into<String>, kind: ExperimentKind, body: ConvexBody, ell: usize) -> Self {
        Self {
            name: name.into(),
            kind,
            body,
            ell,
            n_grid: Vec::new(),
            replications: 0,
            master_seed: 0,
            panel_size: 0,
            c_alpha: default_c_alpha(),
            a_grid: Vec::new(),
            samples: 0,
        }
    }

    pub fn with_grid(mut self, n_grid: Vec<usize>) -> Self {
        self.n_grid = n_grid;
        self
    }

    pub fn with_replications(mut self, r: usize) -> Self {
        self.replications = r;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn with_panel(mut self, m: usize) -> Self {
        self.panel_size = m;
        self
    }

    pub fn with_c_alpha(mut self, c: f64) -> Self {
        self.c_alpha = c;
        self
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    /// Seed of the shared projection panel.
    pub fn panel_seed(&self) -> u64 {
        self.master_seed.wrapping_add(PANEL_SEED_SALT)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        let bad = |msg: String| Err(Error::Config(format!("{}: {msg}", self.name)));
        if self.name.is_empty() {
            return Err(Error::Config("experiment name must not be empty".into()));
        }
        if self.ell == 0 || self.ell > d {
            return bad(format!("ell={} outside 1..={d}", self.ell));
        }
        if self.kind == ExperimentKind::GrassmannAngle {
            if self.a_grid.is_empty() || self.a_grid.iter().any(|a| !(*a > 0.0 && *a <= 0.5)) {
                return bad("a_grid must be a non-empty subset of (0, 0.5]".into());
            }
            if self.samples == 0 {
                return bad("samples must be positive".into());
            }
            return Ok(());
        }
        if self.n_grid.is_empty() {
            return bad("n_grid is empty".into());
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return bad("n_grid must be strictly increasing".into());
        }
        if self.n_grid[0] < d + 1 {
            return bad(format!("n_grid starts below d+1={}", d + 1));
        }
        if self.replications < MIN_REPLICATIONS {
            return bad(format!("need at least {MIN_REPLICATIONS} replications"));
        }
        if self.panel_size == 0 && !has_exact_path(d, self.ell) {
            return bad(format!("ell={} in d={d} has no exact path; set panel_size >= 2", self.ell));
        }
        if self.panel_size == 1 {
            return bad("panel_size must be 0 or at least 2".into());
        }
        if self.kind == ExperimentKind::Containment {
            if !self.body.is_unit_ball() {
                return bad("containment runs on the unit ball only".into());
            }
            if !(self.c_alpha > 0.0) {
                return bad("c_alpha must be positive".into());
            }
        }
        if self.kind == ExperimentKind::MeanDeficit {
            reference_intrinsic_volume(&self.body, self.ell)?;
        }
        Ok(())
    }
}

/// One replication's measurement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub n: usize,
    pub replication: usize,
    pub value: f64,
    pub aux: Option<f64>,
}

/// A validated config with its shared projection panel.
pub struct Experiment {
    cfg: ExperimentConfig,
    panel: Option<ProjectionPanel>,
}

impl Experiment {
    pub fn new(cfg: ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let panel = (cfg.panel_size > 0 && !has_exact_path(cfg.dim(), cfg.ell))
            .then(|| ProjectionPanel::generate(cfg.dim(), cfg.ell, cfg.panel_size, cfg.panel_seed()));
        Ok(Self { cfg, panel })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.cfg
    }

    pub fn panel(&self) -> Option<&ProjectionPanel> {
        self.panel.as_ref()
    }

    fn stream_for(&self, n: usize, rep: usize) -> u64 {
        match self.cfg.kind {
            ExperimentKind::MeanDeficit => common_stream(rep),
            _ => replication_stream(n, rep),
        }
    }

    fn draw(&self, stream: u64, count: usize) -> Vec<Vector> {
        let mut rng = RngStream::new(self.cfg.master_seed, stream);
        (0..count).map(|_| sample_boundary(&self.cfg.body, &mut rng)).collect()
    }

    /// `V_ℓ` of the hull of `points`.
    pub fn measure(&self, points: &[Vector]) -> Result<f64> {
        let hull = convex_hull(points, self.cfg.dim())?;
        intrinsic_volume(&hull, self.cfg.ell, self.panel.as_ref())
    }

    /// Draws the points of one replication and hands them to `f`; on hull
    /// degeneracy, redraws once from a perturbed stream.
    fn with_points<T>(&self, n: usize, rep: usize, count: usize, f: impl Fn(&[Vector]) -> Result<T>) -> Result<T> {
        let stream = self.stream_for(n, rep);
        match f(&self.draw(stream, count)) {
            Err(Error::Degenerate { .. }) => {
                warn!("{}: degenerate hull at n={n} rep={rep}; redrawing", self.cfg.name);
                f(&self.draw(stream ^ RESAMPLE_BIT, count))
            }
            other => other,
        }
    }

    /// One replication at sample size `n`.
    pub fn run_replication(&self, n: usize, rep: usize) -> Result<RunRecord> {
        let (value, aux) = match self.cfg.kind {
            ExperimentKind::EfronStein => self.with_points(n, rep, n + 1, |pts| {
                Ok((self.measure(&pts[..n])?, Some(self.measure(pts)?)))
            })?,
            ExperimentKind::Containment => self.with_points(n, rep, n, |pts| {
                let hull = convex_hull(pts, self.cfg.dim())?;
                let radius = surface_body_radius(tau_threshold(n as f64, self.cfg.c_alpha), self.cfg.dim())?;
                let failed = !contains_centered_ball(&hull, radius);
                Ok((if failed { 1.0 } else { 0.0 }, Some(inradius_about_origin(&hull))))
            })?,
            _ => (self.with_points(n, rep, n, |pts| self.measure(pts))?, None),
        };
        Ok(RunRecord {
            n,
            replication: rep,
            value,
            aux,
        })
    }

    /// All replications at `n`, in replication order.
    pub fn run_level(&self, n: usize) -> Result<Vec<RunRecord>> {
        (0..self.cfg.replications)
            .into_par_iter()
            .map(|rep| self.run_replication(n, rep))
            .collect()
    }

    /// Every level of the grid.
    pub fn run_all(&self) -> Result<Vec<Vec<RunRecord>>> {
        self.cfg.n_grid.iter().map(|&n| self.run_level(n)).collect()
    }
}

/// Signed distance from the origin to the nearest facet hyperplane; negative
/// when the origin lies outside.
fn inradius_about_origin(p: &Polytope) -> f64 {
    p.facets().iter().map(|f| f.offset).fold(f64::INFINITY, f64::min)
}

/// Convenience wrapper: validates `cfg` and runs a single replication.
pub fn run_replication(cfg: &ExperimentConfig, n: usize, rep: usize) -> Result<RunRecord> {
    Experiment::new(cfg.clone())?.run_replication(n, rep)
}

fn require_kind(cfg: &ExperimentConfig, kind: ExperimentKind) -> Result<()> {
    if cfg.kind != kind {
        return Err(Error::Config(format!(
            "{}: expected a {} experiment, got {}",
            cfg.name,
            kind.name(),
            cfg.kind.name()
        )));
    }
    Ok(())
}

/// Estimate and standard error at one sample size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub n: usize,
    pub estimate: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VarianceReport {
    pub per_n: Vec<ScalingPoint>,
    /// Sample sizes whose variance fell below [`VARIANCE_FLOOR`].
    pub dropped: Vec<usize>,
    pub fit: FitResult,
    pub target_exponent: f64,
    #[serde(skip)]
    pub records: Vec<RunRecord>,
}

/// `−(d+3)/(d−1)`
pub fn variance_exponent(d: usize) -> f64 {
    -((d + 3) as f64) / ((d - 1) as f64)
}

/// `−2/(d−1)`
pub fn deficit_exponent(d: usize) -> f64 {
    -2.0 / ((d - 1) as f64)
}

fn values(records: &[RunRecord]) -> Vec<f64> {
    records.iter().map(|r| r.value).collect()
}

/// Sample variance of `V_ℓ(K_n)` per `n` and its log-log slope.
pub fn run_variance_experiment(cfg: &ExperimentConfig) -> Result<VarianceReport> {
    require_kind(cfg, ExperimentKind::Variance)?;
    let exp = Experiment::new(cfg.clone())?;
    let mut per_n = Vec::new();
    let mut dropped = Vec::new();
    let mut records = Vec::new();
    for level in exp.run_all()? {
        let n = level[0].n;
        let v = values(&level);
        let var = sample_variance(&v);
        if var < VARIANCE_FLOOR {
            warn!("{}: variance {var:e} at n={n} below floor; dropping", cfg.name);
            dropped.push(n);
        } else {
            per_n.push(ScalingPoint {
                n,
                estimate: var,
                stderr: variance_jackknife_stderr(&v),
            });
        }
        records.extend(level);
    }
    let fit = fit_power_law(&per_n.iter().map(|p| (p.n as f64, p.estimate)).collect::<Vec<_>>())?;
    Ok(VarianceReport {
        per_n,
        dropped,
        fit,
        target_exponent: variance_exponent(cfg.dim()),
        records,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeanDeficitReport {
    pub reference: f64,
    pub per_n: Vec<ScalingPoint>,
    pub fit: FitResult,
    pub target_exponent: f64,
    /// `deficit · n^{2/(d−1)}` per `n`; approaches the limiting constant.
    pub plateau: Vec<(usize, f64)>,
    #[serde(skip)]
    pub records: Vec<RunRecord>,
}

impl MeanDeficitReport {
    /// Relative disagreement of the plateau estimate at the two largest `n`.
    pub fn plateau_spread(&self) -> f64 {
        match self.plateau.as_slice() {
            [.., (_, a), (_, b)] => (a - b).abs() / b.abs(),
            _ => f64::NAN,
        }
    }
}

/// Mean of `V_ℓ(K) − V_ℓ(K_n)` per `n` (common random numbers across `n`).
pub fn run_mean_deficit_experiment(cfg: &ExperimentConfig) -> Result<MeanDeficitReport> {
    require_kind(cfg, ExperimentKind::MeanDeficit)?;
    let reference = reference_intrinsic_volume(&cfg.body, cfg.ell)?;
    let exp = Experiment::new(cfg.clone())?;
    let rate = 2.0 / (cfg.dim() - 1) as f64;
    let mut per_n = Vec::new();
    let mut plateau = Vec::new();
    let mut records = Vec::new();
    for level in exp.run_all()? {
        let n = level[0].n;
        let deficits: Vec<f64> = level.iter().map(|r| reference - r.value).collect();
        let m = mean(&deficits);
        per_n.push(ScalingPoint {
            n,
            estimate: m,
            stderr: mean_stderr(&deficits),
        });
        plateau.push((n, m * (n as f64).powf(rate)));
        records.extend(level);
    }
    let fit = fit_power_law(&per_n.iter().map(|p| (p.n as f64, p.estimate)).collect::<Vec<_>>())?;
    Ok(MeanDeficitReport {
        reference,
        per_n,
        fit,
        target_exponent: deficit_exponent(cfg.dim()),
        plateau,
        records,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Standardization {
    /// Centre and scale by the sample mean and sample standard deviation.
    SampleMoments,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CltPoint {
    pub n: usize,
    pub d_k: f64,
    pub skewness: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CltResult {
    pub per_n: Vec<CltPoint>,
    pub standardization: Standardization,
    #[serde(skip)]
    pub records: Vec<RunRecord>,
}

impl CltResult {
    pub fn at(&self, n: usize) -> Option<&CltPoint> {
        self.per_n.iter().find(|p| p.n == n)
    }
}

/// Kolmogorov distance between the standardized sample and `N(0,1)`.
pub fn standardized_kolmogorov(values: &[f64]) -> Result<f64> {
    let mu = mean(values);
    let sd = sample_variance(values).sqrt();
    if !(sd > 0.0) {
        return Err(Error::ZeroVariance);
    }
    let z: Vec<f64> = values.iter().map(|v| (v - mu) / sd).collect();
    kolmogorov_distance(&z, normal_cdf)
}

/// Distance to normality of the standardized `V_ℓ(K_n)` per `n`.
pub fn run_clt_experiment(cfg: &ExperimentConfig) -> Result<CltResult> {
    require_kind(cfg, ExperimentKind::Clt)?;
    let exp = Experiment::new(cfg.clone())?;
    let mut per_n = Vec::new();
    let mut records = Vec::new();
    for level in exp.run_all()? {
        let v = values(&level);
        per_n.push(CltPoint {
            n: level[0].n,
            d_k: standardized_kolmogorov(&v)?,
            skewness: skewness(&v),
        });
        records.extend(level);
    }
    Ok(CltResult {
        per_n,
        standardization: Standardization::SampleMoments,
        records,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContainmentPoint {
    pub n: usize,
    pub tau: f64,
    pub surface_body_radius: f64,
    pub failure_fraction: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub per_n: Vec<ContainmentPoint>,
    #[serde(skip)]
    pub records: Vec<RunRecord>,
}

impl ContainmentReport {
    /// `(n, empirical failure probability)` pairs.
    pub fn failures(&self) -> Vec<(usize, f64)> {
        self.per_n.iter().map(|p| (p.n, p.failure_fraction)).collect()
    }
}

/// Fraction of replications in which the surface body `B(s ≥ τ_n)` is not
/// contained in `K_n`.
pub fn run_containment_experiment(cfg: &ExperimentConfig) -> Result<ContainmentReport> {
    require_kind(cfg, ExperimentKind::Containment)?;
    let exp = Experiment::new(cfg.clone())?;
    let mut per_n = Vec::new();
    let mut records = Vec::new();
    for level in exp.run_all()? {
        let n = level[0].n;
        let tau = tau_threshold(n as f64, cfg.c_alpha);
        per_n.push(ContainmentPoint {
            n,
            tau,
            surface_body_radius: surface_body_radius(tau, cfg.dim())?,
            failure_fraction: mean(&values(&level)),
        });
        records.extend(level);
    }
    Ok(ContainmentReport { per_n, records })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnglePoint {
    pub a: f64,
    pub hits: u64,
    pub probability: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrassmannReport {
    pub d: usize,
    pub ell: usize,
    pub samples: usize,
    pub per_a: Vec<AnglePoint>,
    /// Grid points without a single hit.
    pub dropped: Vec<f64>,
    pub fit: FitResult,
    pub target_exponent: f64,
}

/// Haar measure of `{L : ∢(e_1, L) ≤ a}` over `a_grid`, and its log-log slope.
pub fn run_grassmannian_experiment(
    d: usize,
    ell: usize,
    a_grid: &[f64],
    samples: usize,
    master_seed: u64,
) -> Result<GrassmannReport> {
    if !(2..=crate::vector::MAX_DIM).contains(&d) || ell == 0 || ell > d {
        return Err(Error::Config(format!("invalid Grassmannian G({d}, {ell})")));
    }
    if a_grid.iter().any(|a| !(*a > 0.0 && *a <= 0.5)) {
        return Err(Error::Config("angles must lie in (0, 0.5]".into()));
    }
    let z = Vector::unit(d, 0);
    let chunks = samples.div_ceil(GRASSMANN_CHUNK);
    let counts: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = RngStream::new(master_seed, c as u64);
            let size = GRASSMANN_CHUNK.min(samples - c * GRASSMANN_CHUNK);
            let mut hits = vec![0u64; a_grid.len()];
            for _ in 0..size {
                let angle = subspace_angle(&z, &sample_grassmannian(d, ell, &mut rng));
                for (h, a) in hits.iter_mut().zip(a_grid) {
                    if angle <= *a {
                        *h += 1;
                    }
                }
            }
            hits
        })
        .collect();
    let mut per_a = Vec::new();
    let mut dropped = Vec::new();
    for (i, &a) in a_grid.iter().enumerate() {
        let hits: u64 = counts.iter().map(|c| c[i]).sum();
        if hits == 0 {
            warn!("no Haar sample within angle {a}; dropping");
            dropped.push(a);
            continue;
        }
        per_a.push(AnglePoint {
            a,
            hits,
            probability: hits as f64 / samples as f64,
        });
    }
    let fit = fit_power_law(&per_a.iter().map(|p| (p.a, p.probability)).collect::<Vec<_>>())?;
    Ok(GrassmannReport {
        d,
        ell,
        samples,
        per_a,
        dropped,
        fit,
        target_exponent: (d - ell) as f64,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EfronSteinPoint {
    pub n: usize,
    /// `n · E[(V(K_{n+1}) − V(K_n))²]`
    pub jackknife: f64,
    pub jackknife_stderr: f64,
    pub variance: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EfronSteinReport {
    pub per_n: Vec<EfronSteinPoint>,
    /// Absent when some `J(n)` is zero.
    pub fit: Option<FitResult>,
    pub target_exponent: f64,
    #[serde(skip)]
    pub records: Vec<RunRecord>,
}

/// `n · mean((after − before)²)` over paired values.
pub fn efron_stein_jackknife(n: usize, pairs: impl IntoIterator<Item = (f64, f64)>) -> (f64, f64) {
    let sq: Vec<f64> = pairs.into_iter().map(|(a, b)| (b - a) * (b - a)).collect();
    let nf = n as f64;
    (nf * mean(&sq), nf * mean_stderr(&sq))
}

fn efron_stein_report(cfg: &ExperimentConfig, levels: Vec<Vec<RunRecord>>) -> Result<EfronSteinReport> {
    let mut per_n = Vec::new();
    let mut records = Vec::new();
    for level in levels {
        let n = level[0].n;
        let (jackknife, jackknife_stderr) =
            efron_stein_jackknife(n, level.iter().map(|r| (r.value, r.aux.unwrap_or(r.value))));
        let variance = sample_variance(&values(&level));
        per_n.push(EfronSteinPoint {
            n,
            jackknife,
            jackknife_stderr,
            variance,
            ratio: jackknife / variance,
        });
        records.extend(level);
    }
    let fit = if per_n.iter().all(|p| p.jackknife > 0.0) {
        Some(fit_power_law(&per_n.iter().map(|p| (p.n as f64, p.jackknife)).collect::<Vec<_>>())?)
    } else {
        None
    };
    Ok(EfronSteinReport {
        per_n,
        fit,
        target_exponent: variance_exponent(cfg.dim()),
        records,
    })
}

/// Efron–Stein jackknife `J(n)` with paired samples `K_n ⊆ K_{n+1}`.
pub fn efron_stein_estimate(cfg: &ExperimentConfig) -> Result<EfronSteinReport> {
    require_kind(cfg, ExperimentKind::EfronStein)?;
    let exp = Experiment::new(cfg.clone())?;
    efron_stein_report(cfg, exp.run_all()?)
}

/// Like [`efron_stein_estimate`] but with an arbitrary symmetric functional of
/// the sampled points in place of `V_ℓ` of their hull.
pub fn efron_stein_estimate_with<F>(cfg: &ExperimentConfig, functional: F) -> Result<EfronSteinReport>
where
    F: Fn(&[Vector]) -> Result<f64> + Sync,
{
    require_kind(cfg, ExperimentKind::EfronStein)?;
    let exp = Experiment::new(cfg.clone())?;
    let levels = cfg
        .n_grid
        .iter()
        .map(|&n| {
            (0..cfg.replications)
                .into_par_iter()
                .map(|rep| {
                    let pts = exp.draw(exp.stream_for(n, rep), n + 1);
                    Ok(RunRecord {
                        n,
                        replication: rep,
                        value: functional(&pts[..n])?,
                        aux: Some(functional(&pts)?),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    efron_stein_report(cfg, levels)
}

/// Geometric grid `start, start·ratio, …` up to and including `stop`.
pub fn geometric_grid(start: usize, stop: usize, ratio: usize) -> Vec<usize> {
    let mut grid = Vec::new();
    let mut n = start;
    while n <= stop && n > 0 {
        grid.push(n);
        if ratio <= 1 {
            break;
        }
        n *= ratio;
    }
    grid
}
