//! Command-line front end for the `minannuli` binary.
//!
//! Exit status: `0` success or all verdicts pass, `1` a failing verdict,
//! `2` usage or validation error, `3` numerical failure.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{
    check_data, classify_levels, compare_areas, compare_lengths, run_catalog, run_scenario, Expectation, MeasureReport,
    RunConfig, Scenario, ScenarioKind,
};
use crate::families::{
    catenoid_cover, figure_eight_with, perturbed_two_cover_with, FamilySpec, FigureEightParams, PerturbedCoverParams,
    DEFAULT_MARGIN,
};
use crate::laurent::{AnnulusWindow, C64};
use crate::measures::{
    circle_length, circle_length_closed, circle_length_dd, length_profile, marginally_stable_waist, slab_area,
    total_curvature, trace_level, CatenoidParams, LevelCurve,
};
use crate::svg::render_svg;
use crate::weierstrass::{Slab, WeierstrassData};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "minannuli",
    version,
    about = "Minimal annuli in a slab from Laurent Weierstrass data"
)]
pub struct Cli {
    /// Quadrature and tracing nodes on each circle.
    #[arg(long, global = true)]
    pub theta_nodes: Option<usize>,
    /// Coefficient tolerance for the period and symmetry predicates.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for randomized scenarios.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Strict JSON run configuration; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build Weierstrass data for a family and write it as JSON.
    Gen(GenArgs),
    /// Period, symmetry and Gauss-map winding checks.
    Check(DataOut),
    /// Circle lengths, slab area or total curvature.
    Measure(MeasureArgs),
    /// Trace one level curve.
    Trace(TraceArgs),
    /// Compare against a catenoid.
    Compare(CompareArgs),
    /// Run catalog scenarios.
    Report(ReportArgs),
    /// Re-run a scenario over a list of parameter values.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct DataOut {
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyArg {
    Catenoid,
    PerturbedTwoCover,
    FigureEight,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
    pub family: Option<FamilyArg>,
    /// Family specification JSON instead of flags.
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = std::f64::consts::TAU, allow_hyphen_values = true)]
    pub f3: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub center: f64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c1: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub eps1: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c2: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub eps2: Option<C64>,
    #[arg(long = "a-m1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub a_m1: Option<C64>,
    #[arg(long = "a-1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub a_1: Option<C64>,
    #[arg(long = "b-m1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub b_m1: Option<C64>,
    #[arg(long = "b-1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub b_1: Option<C64>,
    /// Reflection-symmetric member of the family.
    #[arg(long)]
    pub symmetric: bool,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    pub margin: f64,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Quantity {
    Length,
    Area,
    Curvature,
}

#[derive(Args, Debug)]
pub struct MeasureArgs {
    pub quantity: Quantity,
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,
    /// Circle radius for `length`; without it a profile over the window.
    #[arg(long)]
    pub r: Option<f64>,
    /// Profile samples for `length`.
    #[arg(long, default_value_t = 51)]
    pub samples: usize,
    /// Slab `lo,hi` for `area`; defaults to the thin slab.
    #[arg(long, value_parser = parse_slab, allow_hyphen_values = true)]
    pub slab: Option<Slab>,
    /// Annulus `r_inner,r_outer` for `curvature`; defaults to the window.
    #[arg(long, value_parser = parse_window)]
    pub window: Option<AnnulusWindow>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub height: f64,
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
    /// Add an `L`, `L''` inset to the SVG.
    #[arg(long)]
    pub inset: bool,
    /// Summary JSON; stdout when absent.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Against {
    /// Catenoid with matched vertical flux.
    C1,
    /// Double cover of the catenoid with matched vertical flux.
    C2,
    /// Marginally stable catenoid spanning the slab.
    Waist,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Expect {
    Below,
    Above,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,
    #[arg(long)]
    pub against: Against,
    /// Expected side; `c1` and `waist` default to above, `c2` to below.
    #[arg(long)]
    pub expect: Option<Expect>,
    #[arg(long, value_parser = parse_slab, allow_hyphen_values = true)]
    pub slab: Option<Slab>,
    /// Also classify the planar level curves.
    #[arg(long)]
    pub classify: bool,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long, required_unless_present_any = ["all", "list"])]
    pub scenario: Option<String>,
    #[arg(long, value_name = "FILE", requires = "scenario")]
    pub data: Option<PathBuf>,
    /// Run the whole catalog.
    #[arg(long, conflicts_with_all = ["scenario", "list"])]
    pub all: bool,
    /// List scenario names and exit.
    #[arg(long, conflicts_with = "scenario")]
    pub list: bool,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum SweepParam {
    Eps1,
    ThinFactor,
    ThetaNodes,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub scenario: String,
    #[arg(long)]
    pub param: SweepParam,
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub values: Vec<f64>,
    #[arg(long, value_name = "FILE")]
    pub data: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// Run configuration file; every field is optional and unknown fields are
/// rejected.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub theta_nodes: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub n_heights: Option<usize>,
    pub n_t: Option<usize>,
    pub random_sets: Option<usize>,
    pub eps1: Option<f64>,
    pub thin_factor: Option<f64>,
    pub slab: Option<Slab>,
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `x,y`, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    let (a, b) = (p(a)?, p(b)?);
    if !(a.is_finite() && b.is_finite()) {
        return Err(format!("non-finite value in `{s}`"));
    }
    Ok((a, b))
}

/// `re,im`.
pub fn parse_complex(s: &str) -> std::result::Result<C64, String> {
    parse_pair(s).map(|(re, im)| C64::new(re, im))
}

fn parse_slab(s: &str) -> std::result::Result<Slab, String> {
    let (lo, hi) = parse_pair(s)?;
    Slab::new(lo, hi).map_err(|e| e.to_string())
}

fn parse_window(s: &str) -> std::result::Result<AnnulusWindow, String> {
    let (lo, hi) = parse_pair(s)?;
    AnnulusWindow::new(lo, hi).map_err(|e| e.to_string())
}

/// Merges the config file and the global flags into a [`RunConfig`].
pub fn run_config(cli: &Cli) -> Result<RunConfig> {
    let file = match &cli.config {
        Some(p) => serde_json::from_str::<ConfigFile>(&read(p)?)?,
        None => ConfigFile::default(),
    };
    let mut c = RunConfig::default();
    macro_rules! set {
        ($($f:ident),*) => { $( if let Some(v) = file.$f { c.$f = v; } )* };
    }
    set!(tol, seed, n_heights, n_t, random_sets, eps1, thin_factor);
    if let Some(n) = file.theta_nodes {
        c.n_theta = n;
    }
    c.slab = file.slab;
    if let Some(n) = cli.theta_nodes {
        c.n_theta = n;
    }
    if let Some(t) = cli.tol {
        c.tol = t;
    }
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    validate_config(&c)?;
    Ok(c)
}

fn validate_config(c: &RunConfig) -> Result<()> {
    if c.n_theta < 8 {
        return Err(Error::Domain(format!(
            "--theta-nodes must be at least 8, got {}",
            c.n_theta
        )));
    }
    if !(c.tol > 0.0 && c.tol.is_finite()) {
        return Err(Error::Domain(format!("--tol must be positive, got {}", c.tol)));
    }
    if !(c.thin_factor > 0.0 && c.thin_factor <= 1.0) {
        return Err(Error::Domain(format!(
            "thin_factor must lie in (0, 1], got {}",
            c.thin_factor
        )));
    }
    if !(c.eps1.is_finite()) || c.n_heights < 3 || c.n_t < 3 {
        return Err(Error::Domain(
            "eps1 must be finite; n_heights and n_t at least 3".into(),
        ));
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn load_data(path: &Path) -> Result<WeierstrassData> {
    Ok(serde_json::from_str(&read(path)?)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => crate::write_atomic(p, text.as_bytes()),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::io("<stdout>", e)),
                _ => Ok(()),
            }
        }
    }
}

fn emit_json<T: Serialize + ?Sized>(out: Option<&Path>, value: &T) -> Result<()> {
    emit(out, &serde_json::to_string_pretty(value)?)
}

fn error_status(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_USAGE
    }
}

/// Worst status first: numerical, usage, failing verdict.
fn combine(statuses: impl IntoIterator<Item = i32>) -> i32 {
    let rank = |s: i32| match s {
        EXIT_NUMERICAL => 3,
        EXIT_USAGE => 2,
        EXIT_FAIL => 1,
        _ => 0,
    };
    statuses.into_iter().max_by_key(|&s| rank(s)).unwrap_or(EXIT_OK)
}

fn report_status(out: Option<&Path>, report: &MeasureReport) -> Result<i32> {
    emit_json(out, report)?;
    if let Some(f) = &report.failure {
        eprintln!("minannuli: {}: {}", report.scenario, f.message);
    }
    for (k, v) in report.verdicts.iter().filter(|(_, v)| !v.pass) {
        eprintln!(
            "minannuli: {}: verdict {k} failed (margin {:e})",
            report.scenario, v.margin
        );
    }
    Ok(report.exit_status())
}

fn scenario_kind(name: &str) -> Result<ScenarioKind> {
    ScenarioKind::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = ScenarioKind::ALL.iter().map(|k| k.name()).collect();
        Error::Domain(format!("unknown scenario `{name}`; known: {}", names.join(", ")))
    })
}

fn gen(args: &GenArgs) -> Result<WeierstrassData> {
    if let Some(p) = &args.spec {
        let spec: FamilySpec = serde_json::from_str(&read(p)?)?;
        return spec.build();
    }
    let need = |v: Option<C64>, name: &str| v.ok_or_else(|| Error::Domain(format!("--{name} is required")));
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    match args.family.expect("clap enforces --family or --spec") {
        FamilyArg::Catenoid => Ok(catenoid_cover(args.k, args.f3, args.center)?.0),
        FamilyArg::PerturbedTwoCover => {
            let (c1, e1) = (need(args.c1, "c1")?, need(args.eps1, "eps1")?);
            let p = if args.symmetric {
                reject_extra(&[(args.c2, "c2"), (args.eps2, "eps2")])?;
                PerturbedCoverParams::symmetric(c1, e1)?
            } else {
                PerturbedCoverParams::solve(c1, e1, args.c2.unwrap_or(one), args.eps2.unwrap_or(zero))?
            };
            perturbed_two_cover_with(&p, args.margin)
        }
        FamilyArg::FigureEight => {
            let (am, ap) = (need(args.a_m1, "a-m1")?, need(args.a_1, "a-1")?);
            let p = if args.symmetric {
                reject_extra(&[(args.b_m1, "b-m1"), (args.b_1, "b-1")])?;
                FigureEightParams::symmetric(am, ap)?
            } else {
                let bm = args.b_m1.unwrap_or(2.0 * ap.conj());
                let bp = args.b_1.unwrap_or(0.5 * am.conj());
                FigureEightParams::solve(am, ap, bm, bp)?
            };
            figure_eight_with(&p, args.margin)
        }
    }
}

fn reject_extra(v: &[(Option<C64>, &str)]) -> Result<()> {
    match v.iter().find(|(x, _)| x.is_some()) {
        Some((_, name)) => Err(Error::Domain(format!("--{name} is implied by --symmetric"))),
        None => Ok(()),
    }
}

fn measure(args: &MeasureArgs, cfg: &RunConfig) -> Result<MeasureReport> {
    let data = load_data(&args.data)?;
    let mut report = MeasureReport::new(
        match args.quantity {
            Quantity::Length => "measure_length",
            Quantity::Area => "measure_area",
            Quantity::Curvature => "measure_curvature",
        },
        cfg,
    );
    report.input("data", &data);
    match args.quantity {
        Quantity::Length => match args.r {
            Some(r) => {
                report.input("r", r);
                report.quantity("l", circle_length_closed(&data, r)?);
                report.quantity("l_quadrature", circle_length(&data, r, cfg.n_theta)?);
                report.quantity("l2", circle_length_dd(&data, r)?);
            }
            None => {
                let p = length_profile(&data, args.samples.max(2));
                report
                    .series
                    .insert("l".into(), p.samples.iter().map(|s| [s.t, s.l]).collect());
                report
                    .series
                    .insert("l2".into(), p.samples.iter().map(|s| [s.t, s.l2]).collect());
            }
        },
        Quantity::Area => {
            let slab = match &args.slab {
                Some(s) => crate::families::clip_to_slab(&data, s)?,
                None => crate::families::thin_slab(&data)?,
            };
            report.input("slab", slab);
            report.quantity("area", slab_area(&data, &slab, cfg.n_theta)?);
        }
        Quantity::Curvature => {
            let w = args.window.unwrap_or_else(|| data.window());
            report.input("window", w);
            report.quantity("total_curvature", total_curvature(&data, &w, cfg.n_theta)?);
        }
    }
    Ok(report)
}

#[derive(Serialize)]
struct TraceSummary<'a> {
    h: f64,
    length: f64,
    nodes: usize,
    self_intersections: usize,
    multiplicity: usize,
    rotation_index: i32,
    max_height_error: f64,
    crossings: &'a [crate::measures::Crossing],
}

fn trace(args: &TraceArgs, cfg: &RunConfig) -> Result<()> {
    let data = load_data(&args.data)?;
    let curve: LevelCurve = trace_level(&data, args.height, cfg.n_theta)?;
    if let Some(p) = &args.csv {
        crate::write_atomic(p, curve.to_csv().as_bytes())?;
    }
    if let Some(p) = &args.svg {
        let profile = args.inset.then(|| length_profile(&data, 101));
        render_svg(std::slice::from_ref(&curve), profile.as_ref(), p)?;
    }
    let summary = TraceSummary {
        h: curve.h,
        length: curve.length,
        nodes: curve.nodes.len(),
        self_intersections: curve.self_intersections,
        multiplicity: curve.multiplicity,
        rotation_index: curve.rotation_index,
        max_height_error: curve.max_height_error(),
        crossings: &curve.crossings,
    };
    emit_json(args.out.as_deref(), &summary)
}

fn compare(args: &CompareArgs, cfg: &RunConfig) -> Result<MeasureReport> {
    let data = load_data(&args.data)?;
    let slab = match args.slab.or(cfg.slab) {
        Some(s) => crate::families::clip_to_slab(&data, &s)?,
        None => crate::families::attained_range(&data, cfg.n_theta.max(256))?.scaled(cfg.thin_factor)?,
    };
    let expectation = match (args.expect, args.against) {
        (Some(Expect::Below), _) | (None, Against::C2) => Expectation::SigmaBelow,
        _ => Expectation::SigmaAbove,
    };
    let name = match args.against {
        Against::C1 => "compare_c1",
        Against::C2 => "compare_c2",
        Against::Waist => "compare_waist",
    };
    let mut report = MeasureReport::new(name, cfg);
    report.input("data", &data);
    report.input("slab", slab);
    report.input("expectation", expectation);
    match args.against {
        Against::C1 | Against::C2 => {
            let cover = if matches!(args.against, Against::C1) { 1 } else { 2 };
            let cat = CatenoidParams::new(data.flux()?.f3, slab.center(), cover)?;
            report.input("catenoid", cat);
            let grid = slab_grid(&slab, cfg.n_heights);
            report.absorb("lengths", compare_lengths(&data, &cat, &slab, &grid, expectation, cfg)?);
            report.absorb("area", compare_areas(&data, &cat, &slab, expectation, cfg)?);
        }
        Against::Waist => {
            let cat = marginally_stable_waist(&slab)?;
            report.input("catenoid", cat);
            report.absorb("area", compare_areas(&data, &cat, &slab, expectation, cfg)?);
        }
    }
    if args.classify {
        report.absorb("levels", classify_levels(&data, &slab, 9, None, cfg)?);
    }
    Ok(report)
}

fn slab_grid(slab: &Slab, n: usize) -> Vec<f64> {
    let n = n.max(3) | 1;
    (0..n)
        .map(|i| slab.center() + slab.half_height() * ((2 * i) as f64 / (n - 1) as f64 - 1.0))
        .collect()
}

fn report(args: &ReportArgs, cfg: &RunConfig) -> Result<i32> {
    if args.list {
        for k in ScenarioKind::ALL {
            let aliases = k.aliases();
            let aka = if aliases.is_empty() {
                String::new()
            } else {
                format!(" [{}]", aliases.join(", "))
            };
            emit(None, &format!("{:<30} {}{aka}", k.name(), k.summary()))?;
        }
        return Ok(EXIT_OK);
    }
    if args.all {
        let reports = run_catalog(cfg);
        emit_json(args.out.as_deref(), &reports)?;
        for r in &reports {
            eprintln!("{:<30} {}", r.scenario, if r.all_pass() { "pass" } else { "FAIL" });
        }
        return Ok(combine(reports.iter().map(MeasureReport::exit_status)));
    }
    let kind = scenario_kind(args.scenario.as_deref().expect("clap enforces --scenario"))?;
    let mut s = Scenario::new(kind).with_config(cfg.clone());
    if let Some(p) = &args.data {
        s = s.with_data(load_data(p)?);
    }
    report_status(args.out.as_deref(), &run_scenario(&s))
}

#[derive(Serialize)]
struct SweepPoint {
    value: f64,
    exit_status: i32,
    report: MeasureReport,
}

fn sweep(args: &SweepArgs, cfg: &RunConfig) -> Result<i32> {
    let kind = scenario_kind(&args.scenario)?;
    let data = args.data.as_deref().map(load_data).transpose()?;
    let mut configs = Vec::with_capacity(args.values.len());
    for &v in &args.values {
        let mut c = cfg.clone();
        match args.param {
            SweepParam::Eps1 => c.eps1 = v,
            SweepParam::ThinFactor => c.thin_factor = v,
            SweepParam::ThetaNodes => {
                if !(v >= 1.0 && v.fract() == 0.0) {
                    return Err(Error::Domain(format!(
                        "theta_nodes must be a positive integer, got {v}"
                    )));
                }
                c.n_theta = v as usize;
            }
        }
        validate_config(&c)?;
        configs.push((v, c));
    }
    let points: Vec<SweepPoint> = configs
        .into_iter()
        .map(|(value, c)| {
            let mut s = Scenario::new(kind).with_config(c);
            if let Some(d) = &data {
                s = s.with_data(d.clone());
            }
            let report = run_scenario(&s);
            eprintln!(
                "{}={value}: {}",
                args.param
                    .to_possible_value()
                    .map(|p| p.get_name().to_owned())
                    .unwrap_or_default(),
                if report.all_pass() { "pass" } else { "FAIL" }
            );
            SweepPoint {
                value,
                exit_status: report.exit_status(),
                report,
            }
        })
        .collect();
    emit_json(args.out.as_deref(), &points)?;
    Ok(combine(points.iter().map(|p| p.exit_status)))
}

/// Runs a parsed command line and returns the exit status.
pub fn dispatch(cli: &Cli) -> Result<i32> {
    let cfg = run_config(cli)?;
    match &cli.command {
        Command::Gen(a) => {
            let data = gen(a)?;
            emit_json(a.out.as_deref(), &data)?;
            Ok(EXIT_OK)
        }
        Command::Check(a) => report_status(a.out.as_deref(), &check_data(&load_data(&a.data)?, &cfg)),
        Command::Measure(a) => {
            let r = measure(a, &cfg)?;
            report_status(a.out.as_deref(), &r)
        }
        Command::Trace(a) => trace(a, &cfg).map(|_| EXIT_OK),
        Command::Compare(a) => {
            let r = compare(a, &cfg)?;
            report_status(a.out.as_deref(), &r)
        }
        Command::Report(a) => report(a, &cfg),
        Command::Sweep(a) => sweep(a, &cfg),
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("minannuli: {e}");
            error_status(&e)
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_pairs() {
        assert_eq!(parse_complex("1,0").unwrap(), C64::new(1.0, 0.0));
        assert_eq!(parse_complex("-0.5, 2e-3").unwrap(), C64::new(-0.5, 2e-3));
        assert!(parse_complex("1").is_err());
        assert!(parse_complex("1,nan").is_err());
    }

    #[test]
    fn worst_status_wins() {
        assert_eq!(combine([0, 1, 0]), 1);
        assert_eq!(combine([1, 2, 0]), 2);
        assert_eq!(combine([2, 3, 1]), 3);
        assert_eq!(combine([]), 0);
    }

    #[test]
    fn usage_errors_exit_2_and_help_exits_0() {
        assert_eq!(run(["minannuli", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["minannuli", "gen"]), EXIT_USAGE);
        assert_eq!(run(["minannuli", "--help"]), EXIT_OK);
        assert_eq!(run(["minannuli", "report", "--scenario", "no_such"]), EXIT_USAGE);
    }

    #[test]
    fn config_file_is_strict() {
        assert!(serde_json::from_str::<ConfigFile>(r#"{"theta_nodes": 512}"#).is_ok());
        assert!(serde_json::from_str::<ConfigFile>(r#"{"theta_node": 512}"#).is_err());
    }
}
