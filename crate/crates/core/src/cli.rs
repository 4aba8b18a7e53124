//! The `polylab` command line: config ingestion, campaign orchestration and
//! artifact emission.
//!
//! Every experiment writes `<name>_records.csv` and `<name>_summary.json` into
//! the output directory, plus `<name>_loglog.svg` whenever it produces a
//! power-law fit. Exit codes: 0 success, 2 configuration or I/O error, 3 a
//! threshold failed under `--check`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::experiments::{
    efron_stein_estimate, geometric_grid, run_clt_experiment, run_containment_experiment,
    run_grassmannian_experiment, run_mean_deficit_experiment, run_variance_experiment, ExperimentConfig,
    ExperimentKind, RunRecord,
};
use crate::geometry::{BodyKind, ConvexBody};
use crate::stats::FitResult;
use crate::surface_body::{cap_exponent_check, CapDirection};

/// Environment variable overriding the master seed of a config.
pub const SEED_ENV: &str = "POLYLAB_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

pub const CSV_HEADER: &str = "experiment,body,d,ell,n,replication,value,aux";

#[derive(Parser, Debug)]
#[command(name = "polylab", version, about = "Random inscribed polytopes: seeded scaling experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Variance of V_ℓ(K_n) against n.
    Variance(ExperimentArgs),
    /// Mean deficit V_ℓ(K) − V_ℓ(K_n) against n.
    MeanDeficit(ExperimentArgs),
    /// Kolmogorov distance of the standardized V_ℓ(K_n) to N(0,1).
    Clt(ExperimentArgs),
    /// Failure rate of surface-body containment in the unit ball.
    Containment(ExperimentArgs),
    /// Haar measure of subspaces within angle a of e_1.
    Grassmann(ExperimentArgs),
    /// Efron–Stein jackknife n·E[(V_ℓ(K_{n+1}) − V_ℓ(K_n))²].
    EfronStein(ExperimentArgs),
    /// Cap exponents of the unit ball (deterministic quadrature).
    Caps(CapsArgs),
    /// Run every experiment of a campaign file.
    Campaign(CampaignArgs),
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Exit with code 3 if an acceptance threshold fails.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// Experiment config (bare, or a previously emitted summary.json); flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    name: Option<String>,
    /// `ball` or `ellipsoid`.
    #[arg(long, value_parser = parse_body_kind)]
    body: Option<BodyKind>,
    #[arg(long)]
    d: Option<usize>,
    /// Comma-separated semiaxes for an ellipsoid.
    #[arg(long, value_delimiter = ',')]
    semiaxes: Option<Vec<f64>>,
    /// Intrinsic volume index (defaults to d).
    #[arg(long)]
    ell: Option<usize>,
    /// Sample sizes: `start:stop:xK`, a single n, or a comma list.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Kubota projection panel size (0 = exact path only).
    #[arg(long)]
    panel: Option<usize>,
    #[arg(long)]
    c_alpha: Option<f64>,
    /// Angle grid in radians: `lo:hi:count` (log-spaced) or a comma list.
    #[arg(long)]
    a_grid: Option<String>,
    /// Haar samples for `grassmann`.
    #[arg(long)]
    samples: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct CapsArgs {
    #[arg(long, default_value = "caps")]
    name: String,
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// ε grid: `lo:hi:count` (log-spaced) or a comma list.
    #[arg(long, default_value = "1e-6:1e-3:7")]
    eps: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct CampaignArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the campaign's output_dir.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the campaign's thread count.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    check: bool,
}

fn parse_body_kind(s: &str) -> std::result::Result<BodyKind, String> {
    match s {
        "ball" => Ok(BodyKind::Ball),
        "ellipsoid" => Ok(BodyKind::Ellipsoid),
        _ => Err(format!("unknown body {s:?}; expected ball or ellipsoid")),
    }
}

/// A campaign file: several experiments written to one directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignFile {
    pub experiments: Vec<ExperimentConfig>,
    pub output_dir: PathBuf,
    #[serde(default)]
    pub threads: usize,
}

impl CampaignFile {
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for e in &self.experiments {
            if !seen.insert(e.name.as_str()) {
                return Err(Error::Config(format!("duplicate experiment name {:?}", e.name)));
            }
            e.validate()?;
        }
        Ok(())
    }
}

/// One acceptance threshold evaluated on an experiment's output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub requirement: String,
    pub passed: bool,
}

impl Check {
    fn within(name: impl Into<String>, observed: f64, target: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            requirement: format!("within {tol} of {target}"),
            passed: (observed - target).abs() <= tol,
        }
    }

    fn at_most(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            requirement: format!("<= {bound}"),
            passed: observed <= bound,
        }
    }

    fn at_least(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            requirement: format!(">= {bound}"),
            passed: observed >= bound,
        }
    }

    fn below(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            requirement: format!("< {bound}"),
            passed: observed < bound,
        }
    }
}

/// Records plus the columns shared by every row.
pub struct RecordTable<'a> {
    pub experiment: &'a str,
    pub body: &'a str,
    pub d: usize,
    pub ell: usize,
    pub records: &'a [RunRecord],
}

impl<'a> RecordTable<'a> {
    pub fn for_config(cfg: &'a ExperimentConfig, records: &'a [RunRecord]) -> Self {
        Self {
            experiment: &cfg.name,
            body: cfg.body.kind().name(),
            d: cfg.dim(),
            ell: cfg.ell,
            records,
        }
    }
}

/// Reals with 17 significant digits, which round-trips every `f64`.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv(table: &RecordTable, mut w: impl Write) -> io::Result<()> {
    let mut buf = String::with_capacity(64 * (table.records.len() + 1));
    buf.push_str(CSV_HEADER);
    buf.push('\n');
    for r in table.records {
        let aux = r.aux.map(format_real).unwrap_or_default();
        let _ = writeln!(
            buf,
            "{},{},{},{},{},{},{},{}",
            table.experiment,
            table.body,
            table.d,
            table.ell,
            r.n,
            r.replication,
            format_real(r.value),
            aux
        );
    }
    w.write_all(buf.as_bytes())
}

pub fn emit_csv(table: &RecordTable, path: &Path) -> Result<()> {
    let mut f = io::BufWriter::new(fs::File::create(path)?);
    write_csv(table, &mut f)?;
    f.flush()?;
    Ok(())
}

/// Self-contained log-log chart of `fit`: data markers, fitted line, slope
/// label and, if given, a dashed reference line of slope `reference`.
pub fn render_svg_loglog(fit: &FitResult, reference: Option<f64>, title: &str) -> Result<String> {
    if fit.points.len() < 3 {
        return Err(Error::Contract("log-log chart needs at least 3 points".into()));
    }
    const W: f64 = 640.0;
    const H: f64 = 440.0;
    const M: f64 = 60.0;
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &fit.points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let pad_x = 0.05 * (x1 - x0).max(1e-9);
    let pad_y = 0.1 * (y1 - y0).max(1e-9);
    let (x0, x1, y0, y1) = (x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y);
    let px = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let py = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="13">"##
    );
    let _ = writeln!(s, r##"<rect width="{W}" height="{H}" fill="white"/>"##);
    let _ = writeln!(s, r##"<title>{}</title>"##, escape(title));
    let _ = writeln!(
        s,
        r##"<rect x="{M}" y="{M}" width="{}" height="{}" fill="none" stroke="#444"/>"##,
        W - 2.0 * M,
        H - 2.0 * M
    );
    let _ = writeln!(s, r##"<text x="{}" y="{}" text-anchor="middle">ln x</text>"##, W / 2.0, H - 20.0);
    let _ = writeln!(
        s,
        r##"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">ln y</text>"##,
        H / 2.0,
        H / 2.0
    );
    let _ = writeln!(s, r##"<text x="{M}" y="{}">{}</text>"##, M - 22.0, escape(title));
    let clip = r#"clip-path="url(#plot)""#;
    let _ = writeln!(
        s,
        r##"<clipPath id="plot"><rect x="{M}" y="{M}" width="{}" height="{}"/></clipPath>"##,
        W - 2.0 * M,
        H - 2.0 * M
    );
    let line = |a: f64, b: f64| (px(x0), py(a + b * x0), px(x1), py(a + b * x1));
    let (ax, ay, bx, by) = line(fit.intercept, fit.slope);
    let _ = writeln!(
        s,
        r##"<line class="fit" x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="#c0392b" stroke-width="2" {clip}/>"##
    );
    if let Some(r) = reference {
        let n = fit.points.len() as f64;
        let mx = fit.points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = fit.points.iter().map(|p| p.1).sum::<f64>() / n;
        let (ax, ay, bx, by) = line(my - r * mx, r);
        let _ = writeln!(
            s,
            r##"<line class="reference" x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="#2c3e50" stroke-width="1.5" stroke-dasharray="6,4" {clip}/>"##
        );
    }
    for &(x, y) in &fit.points {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="#2980b9"/>"##,
            px(x),
            py(y)
        );
    }
    let mut label = format!("slope={:.2} ± {:.2}", fit.slope, fit.slope_stderr);
    if let Some(r) = reference {
        let _ = write!(label, "  reference={r:.2}");
    }
    let _ = writeln!(s, r##"<text x="{}" y="{}">{}</text>"##, M + 10.0, M + 20.0, escape(&label));
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_svg_loglog(fit: &FitResult, reference: Option<f64>, title: &str, path: &Path) -> Result<()> {
    fs::write(path, render_svg_loglog(fit, reference, title)?)?;
    Ok(())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Sample-size grid: `start:stop:xK`, a single integer, or a comma list.
pub fn parse_n_grid(spec: &str) -> Result<Vec<usize>> {
    let bad = || Error::Config(format!("malformed n grid {spec:?}"));
    let int = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [start, stop, ratio] => {
            let ratio = ratio.trim().strip_prefix('x').ok_or_else(bad)?;
            let (start, stop, ratio) = (int(start)?, int(stop)?, int(ratio)?);
            if start == 0 || ratio < 2 || stop < start {
                return Err(bad());
            }
            Ok(geometric_grid(start, stop, ratio))
        }
        [single] => single.split(',').map(int).collect(),
        _ => Err(bad()),
    }
}

/// Real grid: `lo:hi:count` (geometrically spaced, inclusive) or a comma list.
pub fn parse_log_range(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::Config(format!("malformed grid {spec:?}"));
    let real = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [lo, hi, count] => {
            let (lo, hi) = (real(lo)?, real(hi)?);
            let count: usize = count.trim().parse().map_err(|_| bad())?;
            if !(lo > 0.0 && hi > lo) || count < 2 {
                return Err(bad());
            }
            let step = (hi / lo).ln() / (count - 1) as f64;
            Ok((0..count)
                .map(|i| if i + 1 == count { hi } else { lo * (step * i as f64).exp() })
                .collect())
        }
        [list] => list.split(',').map(real).collect(),
        _ => Err(bad()),
    }
}

fn kind_of(command: &Command) -> Option<ExperimentKind> {
    Some(match command {
        Command::Variance(_) => ExperimentKind::Variance,
        Command::MeanDeficit(_) => ExperimentKind::MeanDeficit,
        Command::Clt(_) => ExperimentKind::Clt,
        Command::Containment(_) => ExperimentKind::Containment,
        Command::Grassmann(_) => ExperimentKind::GrassmannAngle,
        Command::EfronStein(_) => ExperimentKind::EfronStein,
        Command::Caps(_) | Command::Campaign(_) => return None,
    })
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("{SEED_ENV}={v:?} is not a 64-bit integer"))),
        Err(_) => Ok(None),
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// Loads an experiment config from a bare config or a summary's `config` field.
pub fn load_experiment_config(path: &Path) -> Result<ExperimentConfig> {
    let mut v = read_json(path)?;
    if let Some(inner) = v.get_mut("config") {
        v = inner.take();
    }
    serde_json::from_value(v).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

pub fn load_campaign(path: &Path) -> Result<CampaignFile> {
    serde_json::from_value(read_json(path)?).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

const DEFAULT_A_GRID: &str = "0.05:0.5:8";
const DEFAULT_SAMPLES: usize = 1_000_000;
const DEFAULT_REPS: usize = 1000;
const DEFAULT_N_GRID: &str = "32:1024:x2";

fn build_config(kind: ExperimentKind, a: &ExperimentArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &a.config {
        Some(path) => {
            let c = load_experiment_config(path)?;
            if c.kind != kind {
                return Err(Error::Config(format!(
                    "{} holds a {} experiment, not {}",
                    path.display(),
                    c.kind.name(),
                    kind.name()
                )));
            }
            c
        }
        None => {
            let d = a.d.unwrap_or(2);
            let body = match (a.body.unwrap_or(BodyKind::Ball), &a.semiaxes) {
                (BodyKind::Ball, _) => ConvexBody::unit_ball(d)?,
                (BodyKind::Ellipsoid, Some(axes)) => {
                    if a.d.is_some_and(|d| d != axes.len()) {
                        return Err(Error::Config(format!("--d {d} disagrees with {} semiaxes", axes.len())));
                    }
                    ConvexBody::ellipsoid(axes)?
                }
                (BodyKind::Ellipsoid, None) => {
                    return Err(Error::Config("--body ellipsoid needs --semiaxes".into()));
                }
            };
            let ell = a.ell.unwrap_or(body.dim());
            let mut c = ExperimentConfig::new(kind.name(), kind, body, ell).with_replications(DEFAULT_REPS);
            if kind == ExperimentKind::GrassmannAngle {
                c.a_grid = parse_log_range(DEFAULT_A_GRID)?;
                c.samples = DEFAULT_SAMPLES;
                c.replications = 0;
            } else {
                c.n_grid = parse_n_grid(DEFAULT_N_GRID)?;
            }
            if let Some(seed) = env_seed()? {
                c.master_seed = seed;
            }
            c
        }
    };
    if a.config.is_some() {
        if let Some(seed) = env_seed()? {
            cfg.master_seed = seed;
        }
        if a.body.is_some() || a.d.is_some() || a.semiaxes.is_some() {
            return Err(Error::Config("--body/--d/--semiaxes cannot be combined with --config".into()));
        }
    }
    if let Some(name) = &a.name {
        cfg.name = name.clone();
    }
    if let Some(ell) = a.ell {
        cfg.ell = ell;
    }
    if let Some(n) = &a.n {
        cfg.n_grid = parse_n_grid(n)?;
    }
    if let Some(r) = a.reps {
        cfg.replications = r;
    }
    if let Some(seed) = a.seed {
        cfg.master_seed = seed;
    }
    if let Some(m) = a.panel {
        cfg.panel_size = m;
    }
    if let Some(c) = a.c_alpha {
        cfg.c_alpha = c;
    }
    if let Some(g) = &a.a_grid {
        cfg.a_grid = parse_log_range(g)?;
    }
    if let Some(s) = a.samples {
        cfg.samples = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Result of one experiment, ready to be written out.
pub struct Outcome {
    pub name: String,
    pub summary: Value,
    pub table_meta: (String, String, usize, usize),
    pub records: Vec<RunRecord>,
    pub fit: Option<(FitResult, f64)>,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs `cfg` on the current rayon pool and evaluates its acceptance checks.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Outcome> {
    let d = cfg.dim();
    let mut checks = Vec::new();
    let (report, records, fit) = match cfg.kind {
        ExperimentKind::Variance => {
            let r = run_variance_experiment(cfg)?;
            checks.push(Check::within("variance slope", r.fit.slope, r.target_exponent, 0.35));
            let fit = Some((r.fit.clone(), r.target_exponent));
            (serde_json::to_value(&r)?, r.records, fit)
        }
        ExperimentKind::MeanDeficit => {
            let r = run_mean_deficit_experiment(cfg)?;
            checks.push(Check::within("mean-deficit slope", r.fit.slope, r.target_exponent, 0.15));
            checks.push(Check::at_most("plateau spread", r.plateau_spread(), 0.10));
            let fit = Some((r.fit.clone(), r.target_exponent));
            (serde_json::to_value(&r)?, r.records, fit)
        }
        ExperimentKind::Clt => {
            let r = run_clt_experiment(cfg)?;
            let threshold = if d == 2 { 0.05 } else { 0.06 };
            let at = r.at(256).unwrap_or_else(|| r.per_n.last().expect("non-empty grid"));
            checks.push(Check::below(format!("d_K at n={}", at.n), at.d_k, threshold));
            if let [first, .., last] = r.per_n.as_slice() {
                checks.push(Check::at_most(
                    format!("d_K trend n={}..{}", first.n, last.n),
                    last.d_k - first.d_k,
                    0.02,
                ));
            }
            (serde_json::to_value(&r)?, r.records, None)
        }
        ExperimentKind::Containment => {
            let r = run_containment_experiment(cfg)?;
            // c_alpha < 1 undershoots the threshold on purpose: the check flips to
            // the direction test.
            for p in &r.per_n {
                checks.push(if cfg.c_alpha >= 1.0 {
                    Check::at_most(format!("failure at n={}", p.n), p.failure_fraction, 0.01)
                } else {
                    Check::at_least(format!("failure at n={} (undersized tau)", p.n), p.failure_fraction, 0.5)
                });
            }
            (serde_json::to_value(&r)?, r.records, None)
        }
        ExperimentKind::GrassmannAngle => {
            let r = run_grassmannian_experiment(d, cfg.ell, &cfg.a_grid, cfg.samples, cfg.master_seed)?;
            checks.push(Check::within("angle slope", r.fit.slope, r.target_exponent, 0.15));
            let records = r
                .per_a
                .iter()
                .enumerate()
                .map(|(i, p)| RunRecord {
                    n: r.samples,
                    replication: i,
                    value: p.probability,
                    aux: Some(p.a),
                })
                .collect();
            let fit = Some((r.fit.clone(), r.target_exponent));
            (serde_json::to_value(&r)?, records, fit)
        }
        ExperimentKind::EfronStein => {
            let r = efron_stein_estimate(cfg)?;
            match &r.fit {
                Some(f) => checks.push(Check::within("J slope", f.slope, r.target_exponent, 0.4)),
                None => checks.push(Check::at_least("J slope (no fit)", f64::NAN, 0.0)),
            }
            for p in &r.per_n {
                checks.push(Check::at_least(format!("J/Var at n={}", p.n), p.ratio, 0.8));
            }
            let fit = r.fit.clone().map(|f| (f, r.target_exponent));
            (serde_json::to_value(&r)?, r.records, fit)
        }
    };
    Ok(Outcome {
        name: cfg.name.clone(),
        summary: json!({
            "config": cfg,
            "report": report,
            "checks": checks,
        }),
        table_meta: (cfg.name.clone(), cfg.body.kind().name().to_string(), d, cfg.ell),
        records,
        fit,
        checks,
    })
}

/// Both cap relations of the unit ball over `eps_grid`.
pub fn run_caps(name: &str, d: usize, eps_grid: &[f64]) -> Result<Outcome> {
    let directions = [CapDirection::BoundaryOfVolumeCap, CapDirection::VolumeOfBoundaryCap];
    let mut checks = Vec::new();
    let mut fits = Vec::new();
    let mut records = Vec::new();
    for (k, dir) in directions.iter().enumerate() {
        let fit = cap_exponent_check(d, eps_grid, *dir)?;
        let target = dir.expected_exponent(d);
        checks.push(Check::within(format!("{dir:?} exponent"), fit.slope, target, 0.02));
        for (i, (&eps, &(_, ly))) in eps_grid.iter().zip(&fit.points).enumerate() {
            records.push(RunRecord {
                n: i,
                replication: k,
                value: ly.exp(),
                aux: Some(eps),
            });
        }
        fits.push((*dir, fit, target));
    }
    let summary = json!({
        "d": d,
        "eps_grid": eps_grid,
        "fits": fits.iter().map(|(dir, f, t)| json!({"direction": dir, "fit": f, "target_exponent": t})).collect::<Vec<_>>(),
        "checks": checks,
    });
    let (_, fit, target) = fits.swap_remove(0);
    Ok(Outcome {
        name: name.to_string(),
        summary,
        table_meta: (name.to_string(), BodyKind::Ball.name().to_string(), d, 0),
        records,
        fit: Some((fit, target)),
        checks,
    })
}

/// Writes the CSV, summary and (if fitted) SVG of `outcome` into `dir`.
pub fn write_outcome(outcome: &Outcome, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let (experiment, body, d, ell) = &outcome.table_meta;
    let table = RecordTable {
        experiment,
        body,
        d: *d,
        ell: *ell,
        records: &outcome.records,
    };
    emit_csv(&table, &dir.join(format!("{}_records.csv", outcome.name)))?;
    let summary = serde_json::to_string_pretty(&outcome.summary)?;
    fs::write(dir.join(format!("{}_summary.json", outcome.name)), summary + "\n")?;
    if let Some((fit, target)) = &outcome.fit {
        emit_svg_loglog(
            fit,
            Some(*target),
            &outcome.name,
            &dir.join(format!("{}_loglog.svg", outcome.name)),
        )?;
    }
    Ok(())
}

fn report(outcome: &Outcome) {
    if let Some((fit, target)) = &outcome.fit {
        println!(
            "{}: slope={:.4} ± {:.4} (reference {target:.4}, r²={:.4})",
            outcome.name, fit.slope, fit.slope_stderr, fit.r_squared
        );
    }
    for c in &outcome.checks {
        println!(
            "{}: {} {} = {:.6} (required {})",
            outcome.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.observed,
            c.requirement
        );
    }
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn execute(command: Command) -> Result<bool> {
    let kind = kind_of(&command);
    match command {
        Command::Caps(a) => {
            let grid = parse_log_range(&a.eps)?;
            let outcome = with_threads(a.output.threads.unwrap_or(0), || run_caps(&a.name, a.d, &grid))??;
            write_outcome(&outcome, &a.output.out)?;
            report(&outcome);
            Ok(!a.output.check || outcome.passed())
        }
        Command::Campaign(a) => {
            let mut campaign = load_campaign(&a.config)?;
            if let Some(seed) = env_seed()? {
                for e in &mut campaign.experiments {
                    e.master_seed = seed;
                }
            }
            if let Some(out) = a.out {
                campaign.output_dir = out;
            }
            campaign.validate()?;
            let threads = a.threads.unwrap_or(campaign.threads);
            let mut all_passed = true;
            for cfg in &campaign.experiments {
                let outcome = with_threads(threads, || run_experiment(cfg))??;
                write_outcome(&outcome, &campaign.output_dir)?;
                report(&outcome);
                all_passed &= outcome.passed();
            }
            Ok(!a.check || all_passed)
        }
        Command::Variance(a)
        | Command::MeanDeficit(a)
        | Command::Clt(a)
        | Command::Containment(a)
        | Command::Grassmann(a)
        | Command::EfronStein(a) => {
            let cfg = build_config(kind.expect("experiment subcommand"), &a)?;
            let outcome = with_threads(a.output.threads.unwrap_or(0), || run_experiment(&cfg))??;
            write_outcome(&outcome, &a.output.out)?;
            report(&outcome);
            Ok(!a.output.check || outcome.passed())
        }
    }
}

/// Parses `argv` (including the program name) and runs it; returns the exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            eprintln!("polylab: acceptance check failed");
            EXIT_CHECK
        }
        Err(e) => {
            eprintln!("polylab: {e}");
            EXIT_CONFIG
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::fit_power_law;

    #[test]
    fn grids_parse() {
        assert_eq!(parse_n_grid("32:1024:x2").unwrap(), vec![32, 64, 128, 256, 512, 1024]);
        assert_eq!(parse_n_grid("256").unwrap(), vec![256]);
        assert_eq!(parse_n_grid("16,500").unwrap(), vec![16, 500]);
        assert!(parse_n_grid("32:1024:2").is_err());
        assert!(parse_n_grid("32:16:x2").is_err());
        assert!(parse_n_grid("a").is_err());
        let g = parse_log_range("1e-6:1e-3:4").unwrap();
        assert_eq!(g.len(), 4);
        assert!((g[1] - 1e-5).abs() < 1e-18);
        assert_eq!(g[3], 1e-3);
        assert_eq!(parse_log_range("0.1,0.2").unwrap(), vec![0.1, 0.2]);
    }

    #[test]
    fn csv_rows() {
        let records = [RunRecord {
            n: 8,
            replication: 0,
            value: 0.1,
            aux: None,
        }];
        let table = RecordTable {
            experiment: "e",
            body: "ball",
            d: 2,
            ell: 2,
            records: &records,
        };
        let mut out = Vec::new();
        write_csv(&table, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text, format!("{CSV_HEADER}\ne,ball,2,2,8,0,1.0000000000000001e-1,\n"));
        let v: f64 = text.lines().nth(1).unwrap().split(',').nth(6).unwrap().parse().unwrap();
        assert_eq!(v, 0.1);
    }

    #[test]
    fn svg_contents() {
        let pts: Vec<(f64, f64)> = [32.0, 64.0, 128.0, 256.0, 512.0, 1024.0f64]
            .iter()
            .map(|&n| (n, n.powi(-5)))
            .collect();
        let fit = fit_power_law(&pts).unwrap();
        let svg = render_svg_loglog(&fit, Some(-3.0), "t").unwrap();
        assert!(svg.contains("slope=-5.00"));
        assert_eq!(svg.matches("<circle").count(), 6);
        assert!(svg.contains("stroke-dasharray"));
        let plain = render_svg_loglog(&fit, None, "t").unwrap();
        assert!(!plain.contains("stroke-dasharray"));
    }

    #[test]
    fn unknown_flag_is_config_error() {
        assert_eq!(run_command(["polylab", "variance", "--bogus"]), EXIT_CONFIG);
        assert_eq!(run_command(["polylab", "--help"]), EXIT_OK);
    }
}
