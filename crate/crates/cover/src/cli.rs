//! `cover` command line: solve / eval / check / render / instances.
//!
//! Exit codes: 0 ok, 2 usage or input error, 3 solve failure.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::covering::eval_bundle;
use crate::error::Error;
use crate::geometry::{screen_nondegenerate, Configuration, Point2, Region, RegionJson};
use crate::instances::{get_instance, INSTANCE_NAMES};
use crate::multistart::run_multistart;
use crate::optimize::{ALParams, EvalCounters};
use crate::oracle::{fd_gradient, fd_hessian};
use crate::render::{render_svg, RenderOptions};

#[derive(Parser)]
#[command(name = "cover", version, about = "Minimum-radius ball coverings of polygonal regions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the multistart solver and write the best covering found.
    Solve(SolveArgs),
    /// Evaluate G (and optionally derivatives) at a given configuration.
    Eval(EvalArgs),
    /// Compare exact derivatives against finite differences on random configs.
    Check(CheckArgs),
    /// Draw a region, optionally with a covering, as SVG.
    Render(RenderArgs),
    /// List or emit the built-in benchmark regions.
    Instances(InstancesArgs),
}

#[derive(Args)]
struct RegionSource {
    /// Region JSON file.
    #[arg(long, conflicts_with = "instance")]
    region: Option<PathBuf>,
    /// Built-in instance name.
    #[arg(long)]
    instance: Option<String>,
}

impl RegionSource {
    fn load(&self) -> Result<Region, Error> {
        match (&self.region, &self.instance) {
            (Some(path), None) => {
                let text = fs::read_to_string(path)?;
                serde_json::from_str::<RegionJson>(&text)?.into_region()
            }
            (None, Some(name)) => get_instance(name),
            _ => Err(Error::Domain("exactly one of --region/--instance is required".into())),
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: RegionSource,
    /// Number of balls.
    #[arg(long, short)]
    m: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    eps_feas: Option<f64>,
    #[arg(long)]
    eps_opt: Option<f64>,
    /// Solution JSON output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Wire format for solutions and for `eval --config` inputs.
#[derive(Debug, Serialize, Deserialize)]
pub struct SolutionJson {
    pub m: usize,
    pub r: f64,
    pub centers: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kkt_opt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kkt_feas: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counters: Option<EvalCounters>,
}

impl SolutionJson {
    pub fn configuration(&self) -> Configuration {
        Configuration::new(
            self.centers.iter().map(|&[x, y]| Point2::new(x, y)).collect(),
            self.r,
        )
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<(), Error> {
    if args.m == 0 || args.trials == 0 {
        return Err(Error::Domain("--m and --trials must be at least 1".into()));
    }
    let region = args.source.load()?;
    let mut params = ALParams::default();
    if let Some(e) = args.eps_feas {
        params.eps_feas = e;
    }
    if let Some(e) = args.eps_opt {
        params.eps_opt = e;
    }
    let report = run_multistart(&region, args.m, args.trials, args.seed, &params)?;
    let best = &report.best;
    let bundle = eval_bundle(&region, &best.cfg)?;
    let sol = SolutionJson {
        m: args.m,
        r: best.cfg.radius,
        centers: best.cfg.centers.iter().map(|p| [p.x, p.y]).collect(),
        g: Some(bundle.g),
        kkt_opt: Some(best.kkt_opt),
        kkt_feas: Some(best.kkt_feas),
        trial: Some(report.best_trial),
        seed: Some(report.seed),
        counters: Some(best.counters),
    };
    let text = serde_json::to_string_pretty(&sol)?;
    match &args.out {
        Some(path) => fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    let converged = report
        .summaries
        .iter()
        .filter(|s| s.status == crate::optimize::SolveStatus::Converged)
        .count();
    eprintln!(
        "m={} r={:.17e} trial={} conv={}/{} |G|={:.2e} kkt={:.2e} time={:.1}s",
        args.m,
        best.cfg.radius,
        report.best_trial,
        converged,
        report.trials,
        best.kkt_feas,
        best.kkt_opt,
        report.wall_time
    );
    Ok(())
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    source: RegionSource,
    /// Configuration JSON file ({"m":…,"r":…,"centers":[[x,y],…]}).
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    grad: bool,
    #[arg(long)]
    hess: bool,
    #[arg(long)]
    screen: bool,
}

#[derive(Serialize)]
struct ScreenJson {
    min_tangency_margin: f64,
    min_center_distance: f64,
    min_transversality: f64,
    near_triple_count: usize,
    near_vertex_count: usize,
    ok: bool,
}

#[derive(Serialize)]
struct EvalJson {
    g: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    grad: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hess: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    near_singular: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    screen: Option<ScreenJson>,
}

fn cmd_eval(args: &EvalArgs) -> Result<(), Error> {
    let region = args.source.load()?;
    let text = fs::read_to_string(&args.config)?;
    let cfg = serde_json::from_str::<SolutionJson>(&text)?.configuration();
    let bundle = eval_bundle(&region, &cfg)?;
    let out = EvalJson {
        g: bundle.g,
        grad: args.grad.then_some(bundle.grad),
        hess: args.hess.then(|| bundle.hess.to_dense()),
        near_singular: args.hess.then_some(bundle.diagnostics.near_singular),
        screen: args.screen.then(|| {
            let d = screen_nondegenerate(&region, &cfg);
            ScreenJson {
                min_tangency_margin: d.min_tangency_margin,
                min_center_distance: d.min_center_distance,
                min_transversality: d.min_transversality,
                near_triple_count: d.near_triple_count,
                near_vertex_count: d.near_vertex_count,
                ok: d.ok,
            }
        }),
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    source: RegionSource,
    #[arg(long, short)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of random screened configurations to test.
    #[arg(long, default_value_t = 10)]
    configs: usize,
    #[arg(long, default_value_t = 1e-6)]
    grad_tol: f64,
    #[arg(long, default_value_t = 1e-5)]
    hess_tol: f64,
}

/// Draws random configurations until `k` of them pass the degeneracy screen.
pub fn sample_screened_configs(
    region: &Region,
    m: usize,
    seed: u64,
    k: usize,
) -> Vec<Configuration> {
    let (lo, hi) = region.bounding_box();
    let scale = region.diameter();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let centers: Vec<Point2> = (0..m)
            .map(|_| Point2::new(rng.gen_range(lo.x..=hi.x), rng.gen_range(lo.y..=hi.y)))
            .collect();
        let r = scale / (m as f64).sqrt() * rng.gen_range(0.3..=0.9);
        let cfg = Configuration::new(centers, r);
        // Demand comfortable margins, not just the eps_deg screen: these
        // configurations feed finite-difference stencils that must not cross
        // a tangency or a grazing arc endpoint.
        let d = screen_nondegenerate(region, &cfg);
        if d.ok && d.min_tangency_margin >= 1e-3 * scale && d.min_transversality >= 0.05 {
            out.push(cfg);
        }
    }
    out
}

/// Max relative gradient error and max absolute-or-relative Hessian error of
/// the exact derivatives against central finite differences.
pub fn fd_errors(region: &Region, cfg: &Configuration) -> Result<(f64, f64), Error> {
    let bundle = eval_bundle(region, cfg)?;
    let h = 1e-6 * region.diameter();
    let fg = fd_gradient(region, cfg, h);
    let gscale = bundle.grad.iter().fold(1.0_f64, |a, &v| a.max(v.abs()));
    let grad_err = bundle
        .grad
        .iter()
        .zip(&fg)
        .fold(0.0_f64, |a, (&e, &f)| a.max((e - f).abs() / gscale));
    let fh = fd_hessian(region, cfg, h);
    let n = bundle.grad.len();
    let hscale = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .fold(1.0_f64, |a, (r, c)| a.max(bundle.hess.get(r, c).abs()));
    let mut hess_err = 0.0_f64;
    for r in 0..n {
        for c in 0..n {
            hess_err = hess_err.max((bundle.hess.get(r, c) - fh.get(r, c)).abs() / hscale);
        }
    }
    Ok((grad_err, hess_err))
}

fn cmd_check(args: &CheckArgs) -> Result<(), Error> {
    if args.configs == 0 || args.m == 0 {
        return Err(Error::Domain("--configs and --m must be at least 1".into()));
    }
    let region = args.source.load()?;
    let mut max_grad = 0.0_f64;
    let mut max_hess = 0.0_f64;
    let mut near_singular = 0usize;
    for cfg in sample_screened_configs(&region, args.m, args.seed, args.configs) {
        let bundle = eval_bundle(&region, &cfg)?;
        near_singular += bundle.diagnostics.near_singular;
        let (ge, he) = fd_errors(&region, &cfg)?;
        max_grad = max_grad.max(ge);
        max_hess = max_hess.max(he);
    }
    println!(
        "configs={} max_grad_err={:.3e} max_hess_err={:.3e} near_singular={}",
        args.configs, max_grad, max_hess, near_singular
    );
    if max_grad > args.grad_tol || max_hess > args.hess_tol {
        return Err(Error::Domain(format!(
            "finite-difference mismatch: grad {max_grad:.3e} hess {max_hess:.3e}"
        )));
    }
    Ok(())
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    source: RegionSource,
    /// Optional solution/configuration JSON to draw as disks.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Draw the straight cell edges of the restricted partition.
    #[arg(long)]
    partition: bool,
    /// Highlight the arcs of ∂Ω(x,r) ∩ A.
    #[arg(long)]
    arcs: bool,
}

fn cmd_render(args: &RenderArgs) -> Result<(), Error> {
    let region = args.source.load()?;
    let cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            Some(serde_json::from_str::<SolutionJson>(&text)?.configuration())
        }
        None => None,
    };
    let opt = RenderOptions {
        show_partition: args.partition,
        show_arcs: args.arcs,
        ..RenderOptions::default()
    };
    fs::write(&args.out, render_svg(&region, cfg.as_ref(), &opt))?;
    Ok(())
}

#[derive(Args)]
struct InstancesArgs {
    /// List the built-in instance names.
    #[arg(long, conflicts_with = "emit")]
    list: bool,
    /// Write the named instance as region JSON to stdout (or --out).
    #[arg(long)]
    emit: Option<String>,
    #[arg(long, requires = "emit")]
    out: Option<PathBuf>,
}

fn cmd_instances(args: &InstancesArgs) -> Result<(), Error> {
    if args.list {
        for name in INSTANCE_NAMES {
            println!("{name}");
        }
        return Ok(());
    }
    let Some(name) = &args.emit else {
        return Err(Error::Domain("pass --list or --emit NAME".into()));
    };
    let region = get_instance(name)?;
    let text = serde_json::to_string_pretty(&RegionJson::from_region(&region))?;
    match &args.out {
        Some(path) => fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Parses `std::env::args` and runs one subcommand; returns the process exit
/// code (0 ok, 2 usage/input, 3 solve failure).
pub fn run() -> i32 {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Eval(a) => cmd_eval(a),
        Cmd::Check(a) => cmd_check(a),
        Cmd::Render(a) => cmd_render(a),
        Cmd::Instances(a) => cmd_instances(a),
    };
    match result {
        Ok(()) => 0,
        Err(Error::NoConvergedTrial) => {
            eprintln!("error: {}", Error::NoConvergedTrial);
            3
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
