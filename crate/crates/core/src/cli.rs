//! Command-line driver. Exit codes: 0 pass, 1 verification failure,
//! 2 usage or configuration error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::{parse_grid, RunConfig};
use crate::error::{Error, Result};
use crate::lightlike::{solve_lightlike, subluminal_comparison, trajectory};
use crate::report::{matched_from_config, run_suite, ReportDocument};
use crate::solutions::{frw_metric, tov_gamma, tov_metric, tov_solve, FrwParameters};
use crate::tensor::{
    christoffel, einstein, multi_indices, ricci, ricci_scalar, riemann, Chart, MetricSpec,
    Minkowski, SpacetimePoint, TensorComponents,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "nullshock",
    version,
    about = "FRW/TOV lightlike shock matching and verification"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct CommonArgs {
    /// JSON file with flat RunConfig keys; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (JSON report, or CSV for `trajectory`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print JSON on stdout instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true)]
    pub sigma: Option<f64>,
    #[arg(long = "sigma-bar", global = true)]
    pub sigma_bar: Option<f64>,
    /// Use the exact lightlike solution.
    #[arg(long, global = true)]
    pub lightlike: bool,
    /// Scale the TOV density constant by `1 + eps`.
    #[arg(long = "perturb-gamma", global = true, allow_negative_numbers = true)]
    pub perturb_gamma: Option<f64>,
    /// `min,max,steps` in FRW time.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub grid: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print curvature components of a built-in metric at a point.
    Tensors {
        #[arg(long, value_enum, default_value_t = MetricSel::Minkowski)]
        metric: MetricSel,
        /// `x0,x1,x2,x3`: Cartesian for minkowski, `(t, r, θ, φ)` otherwise.
        #[arg(long, default_value = "0.5,0.5,1.2,0.3", allow_negative_numbers = true)]
        point: String,
        #[arg(long, value_enum, default_value_t = Quantity::Riemann)]
        quantity: Quantity,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Solve `s(σ) = 1`.
    SolveSigma,
    /// Matching identities, transverse vector and conservation jump.
    Match,
    /// Shock trajectory table as CSV.
    Trajectory,
    /// Null-junction jumps in MGS coordinates.
    Mgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MetricSel {
    Minkowski,
    Frw,
    Tov,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Christoffel,
    Riemann,
    Ricci,
    Scalar,
    Einstein,
}

/// Parse `args` and run; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidConfig(_) | Error::BadSigma(_) | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

/// File configuration merged with command-line overrides, validated.
pub fn resolve_config(c: &CommonArgs) -> Result<RunConfig> {
    let mut cfg = match &c.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if c.sigma.is_some() {
        cfg.sigma = c.sigma;
    }
    if c.sigma_bar.is_some() {
        cfg.sigma_bar = c.sigma_bar;
    }
    cfg.lightlike |= c.lightlike;
    if let Some(e) = c.perturb_gamma {
        cfg.perturb_gamma = e;
    }
    if let Some(g) = &c.grid {
        (cfg.t_min, cfg.t_max, cfg.steps) = parse_grid(g)?;
    }
    if c.out.is_some() {
        cfg.out = c.out.clone();
    }
    cfg.json |= c.json;
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<i32> {
    let cfg = resolve_config(&cli.common)?;
    match &cli.command {
        Command::Tensors {
            metric,
            point,
            quantity,
        } => cmd_tensors(&cfg, *metric, point, *quantity),
        Command::Verify { suite } => emit_report(&cfg, &run_suite(suite, &cfg)?, "verify"),
        Command::SolveSigma => cmd_solve_sigma(&cfg),
        Command::Match => emit_report(&cfg, &run_suite("match", &cfg)?, "match"),
        Command::Trajectory => cmd_trajectory(&cfg),
        Command::Mgs => emit_report(&cfg, &run_suite("null", &cfg)?, "mgs"),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Run metadata kept out of the deterministic payload.
fn write_sidecar(out: &Path, command: &str, cfg: &RunConfig) -> Result<()> {
    #[derive(Serialize)]
    struct Meta<'a> {
        tool: &'a str,
        version: &'a str,
        command: &'a str,
        unix_time: u64,
        tolerance_scale: f64,
        config: &'a RunConfig,
    }
    let meta = Meta {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command,
        unix_time: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        tolerance_scale: cfg.tolerance_scale()?,
        config: cfg,
    };
    let mut path = out.as_os_str().to_owned();
    path.push(".meta.json");
    write_file(Path::new(&path), &to_json(&meta))
}

fn to_json<T: Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(v).expect("report values serialize");
    s.push(b'\n');
    s
}

fn emit_report(cfg: &RunConfig, doc: &ReportDocument, command: &str) -> Result<i32> {
    if let Some(out) = &cfg.out {
        write_file(out, &to_json(doc))?;
        write_sidecar(out, command, cfg)?;
    }
    let mut stdout = std::io::stdout().lock();
    if cfg.json {
        stdout.write_all(&to_json(doc))?;
    } else {
        stdout.write_all(doc.to_text().as_bytes())?;
    }
    Ok(if doc.passed { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_solve_sigma(cfg: &RunConfig) -> Result<i32> {
    #[derive(Serialize)]
    struct Out {
        sigma2: f64,
        sigma_bar2: f64,
        s_residual: f64,
        sigma2_quoted: f64,
        smoller_temple: f64,
        difference: f64,
        distinct: bool,
    }
    let root = solve_lightlike()?;
    let cmp = subluminal_comparison()?;
    let out = Out {
        sigma2: root.sigma,
        sigma_bar2: root.sigma_bar,
        s_residual: root.residual,
        sigma2_quoted: cmp.sigma2_quoted,
        smoller_temple: cmp.sigma2_smoller_temple,
        difference: cmp.difference,
        distinct: cmp.distinct,
    };
    if let Some(p) = &cfg.out {
        write_file(p, &to_json(&out))?;
        write_sidecar(p, "solve-sigma", cfg)?;
    }
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "sigma2={:?}", out.sigma2)?;
    writeln!(stdout, "sigma2_quoted={:?}", out.sigma2_quoted)?;
    writeln!(stdout, "smoller_temple={:?}", out.smoller_temple)?;
    writeln!(stdout, "distinct={}", out.distinct)?;
    stdout.write_all(&to_json(&out))?;
    Ok(EXIT_PASS)
}

fn cmd_trajectory(cfg: &RunConfig) -> Result<i32> {
    let ms = matched_from_config(cfg)?;
    let rows = trajectory(&ms, (cfg.t_min, cfg.t_max), cfg.steps)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    match &cfg.out {
        Some(p) => {
            write_file(p, &bytes)?;
            write_sidecar(p, "trajectory", cfg)?;
        }
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(EXIT_PASS)
}

fn parse_point(s: &str) -> Result<[f64; 4]> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| {
            Error::InvalidConfig(format!(
                "point must be four comma-separated numbers, got {s:?}"
            ))
        })?;
    v.try_into()
        .map_err(|_| Error::InvalidConfig(format!("point must have four coordinates, got {s:?}")))
}

fn cmd_tensors(cfg: &RunConfig, sel: MetricSel, point: &str, q: Quantity) -> Result<i32> {
    let coords = parse_point(point)?;
    let sigma_bar = || -> Result<f64> {
        Ok(match (cfg.sigma_bar, cfg.sigma) {
            (Some(sb), _) => sb,
            (None, Some(s)) => crate::lightlike::eos_h(s)?,
            (None, None) => solve_lightlike()?.sigma_bar,
        })
    };
    let (m, chart): (Box<dyn MetricSpec>, Chart) = match sel {
        MetricSel::Minkowski => (Box::new(Minkowski::cartesian()), Chart::Cartesian),
        MetricSel::Frw => {
            let sb = sigma_bar()?;
            let sigma = match cfg.sigma {
                Some(s) => s,
                None => crate::lightlike::sigma_from_sigma_bar(sb)?,
            };
            let mut p = FrwParameters::new(sigma, tov_gamma(sb, cfg.g_newton));
            p.g_newton = cfg.g_newton;
            p.r0 = cfg.r0;
            p.t0 = cfg.t0;
            p.rbar0 = cfg.rbar0;
            (Box::new(frw_metric(p)?), Chart::Comoving)
        }
        MetricSel::Tov => {
            let p = tov_solve(sigma_bar()?, cfg.b0, cfg.rbar0, cfg.g_newton)?;
            (Box::new(tov_metric(p)?), Chart::Static)
        }
    };
    let x = SpacetimePoint::new(chart, coords);
    let tc: TensorComponents = match q {
        Quantity::Christoffel => christoffel(m.as_ref(), &x)?,
        Quantity::Riemann => riemann(m.as_ref(), &x)?,
        Quantity::Ricci => ricci(m.as_ref(), &x)?,
        Quantity::Scalar => TensorComponents::scalar(ricci_scalar(m.as_ref(), &x)?, x.clone()),
        Quantity::Einstein => einstein(m.as_ref(), &x)?,
    };
    #[derive(Serialize)]
    struct Entry {
        index: Vec<usize>,
        value: f64,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        metric: &'a str,
        quantity: Quantity,
        point: [f64; 4],
        contravariant_rank: usize,
        covariant_rank: usize,
        all_zero: bool,
        components: Vec<Entry>,
    }
    let components: Vec<Entry> = multi_indices(tc.rank())
        .map(|index| Entry {
            value: tc.get(&index),
            index,
        })
        .filter(|e| e.value != 0.0)
        .collect();
    let out = Out {
        metric: match sel {
            MetricSel::Minkowski => "minkowski",
            MetricSel::Frw => "frw",
            MetricSel::Tov => "tov",
        },
        quantity: q,
        point: coords,
        contravariant_rank: tc.contravariant_rank,
        covariant_rank: tc.covariant_rank,
        all_zero: components.is_empty(),
        components,
    };
    if let Some(p) = &cfg.out {
        write_file(p, &to_json(&out))?;
        write_sidecar(p, "tensors", cfg)?;
    }
    let mut stdout = std::io::stdout().lock();
    if cfg.json {
        stdout.write_all(&to_json(&out))?;
        return Ok(EXIT_PASS);
    }
    writeln!(stdout, "{} {:?} at {:?}", out.metric, q, coords)?;
    if out.all_zero {
        writeln!(stdout, "all components are zero")?;
    }
    for e in &out.components {
        let (up, down) = e.index.split_at(out.contravariant_rank);
        let fmt = |v: &[usize]| v.iter().map(|i| i.to_string()).collect::<String>();
        let label = match (up.is_empty(), down.is_empty()) {
            (true, true) => String::new(),
            (false, true) => format!("^{}", fmt(up)),
            (true, false) => format!("_{}", fmt(down)),
            (false, false) => format!("^{}_{}", fmt(up), fmt(down)),
        };
        writeln!(stdout, "{:?}{label} = {:?}", q, e.value)?;
    }
    Ok(EXIT_PASS)
}
