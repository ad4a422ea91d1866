//! arnold-cat: construct symmetric multi-well polynomial potentials, solve
//! their bound states, estimate deep-well spectra, and chart relocalization
//! catastrophes.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 numerical or
//! I/O failure.

mod config;
mod csvio;
mod figures;
mod svg;

use arnold_core::catastrophe::{self, Estimator, FamilyPath, NumericConfig, PathKind};
use arnold_core::diophantine;
use arnold_core::perturbation::{self, Multiplicity, WellModel};
use arnold_core::spectral::{self, shell_partition, solve_fn_with_regions};
use arnold_core::{ArnoldPotential, GridSpec, ShiftParameters, SpectralResult};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};

#[derive(Debug)]
pub enum CliError {
    /// Bad user input; exit code 2.
    Validation(String),
    /// Numerical or I/O failure while running; exit code 3.
    Runtime(String),
}

impl From<arnold_core::PotentialError> for CliError {
    fn from(e: arnold_core::PotentialError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<arnold_core::SpectralError> for CliError {
    fn from(e: arnold_core::SpectralError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<arnold_core::CatastropheError> for CliError {
    fn from(e: arnold_core::CatastropheError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<perturbation::PerturbationError> for CliError {
    fn from(e: perturbation::PerturbationError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn validation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}

#[derive(Parser)]
#[command(
    name = "arnold-cat",
    version,
    about = "Symmetric multi-well polynomial potentials: exact couplings, \
             bound states, deep-well estimates, and relocalization loci"
)]
struct Cli {
    /// Reserved for future stochastic operations; accepted and ignored.
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a potential and print its JSON description
    Build(BuildArgs),
    /// Find the minimal integer weight tuple for N barriers
    Weights(WeightsArgs),
    /// Solve the bound-state problem described by a run config
    Solve(SolveArgs),
    /// Print per-well harmonic level estimates
    Estimate(EstimateArgs),
    /// Chart critical parameter values across a potential family
    Locus(LocusArgs),
    /// Sweep a family numerically, recording ground-state localization
    Scan(ScanArgs),
    /// Rebuild a bundled figure (fig1..fig6, or all) as CSV + SVG
    Reproduce(ReproduceArgs),
}

fn main() {
    // die quietly on a closed pipe (`arnold-cat ... | head`) like other
    // unix tools instead of panicking mid-print
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return 2;
    }
    let result = match cli.command {
        Command::Build(args) => run_build(args),
        Command::Weights(args) => run_weights(args),
        Command::Solve(args) => run_solve(args),
        Command::Estimate(args) => run_estimate(args),
        Command::Locus(args) => run_locus(args),
        Command::Scan(args) => run_scan(args),
        Command::Reproduce(args) => figures::run(&args.target, &args.out_dir),
    };
    match result {
        Ok(()) => 0,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    }
}

/// ARNOLD_CAT_THREADS caps the rayon pool used by sweeps.
fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("ARNOLD_CAT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("ARNOLD_CAT_THREADS must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err("ARNOLD_CAT_THREADS must be at least 1".to_string());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| format!("cannot size the thread pool: {e}"))
}

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

#[derive(Args)]
struct BuildArgs {
    /// Shift generators alpha,beta,... (comma separated)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Option<Vec<f64>>,

    /// Plain polynomial couplings c_1..c_2N (comma separated)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    couplings: Option<Vec<f64>>,

    /// Barrier count; inferred from the value list when omitted
    #[arg(long)]
    n: Option<usize>,

    /// Integer shift weights w_1..w_{N-1}
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u64>>,

    /// Mass term lambda^2 = hbar^2 / (2 mu)
    #[arg(long, default_value_t = 1.0)]
    lambda_sq: f64,

    /// Write the JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run_build(args: BuildArgs) -> Result<(), CliError> {
    let json = match (&args.params, &args.couplings) {
        (Some(_), Some(_)) => {
            return Err(CliError::Validation(
                "--params and --couplings are mutually exclusive; give exactly one".into(),
            ));
        }
        (None, None) => {
            return Err(CliError::Validation(
                "one of --params or --couplings is required".into(),
            ));
        }
        (Some(params), None) => {
            if let Some(n) = args.n {
                if n != params.len() {
                    return Err(CliError::Validation(format!(
                        "--n {n} disagrees with the {} generators given",
                        params.len()
                    )));
                }
            }
            let shift = match &args.weights {
                Some(w) => ShiftParameters::new(params, w),
                None => ShiftParameters::with_default_weights(params),
            }
            .map_err(validation)?;
            let pot = ArnoldPotential::from_shift(&shift)
                .with_lambda_sq(args.lambda_sq)
                .map_err(validation)?;
            pot.to_json(Some(&shift))
        }
        (None, Some(raw)) => {
            let n = match args.n {
                Some(n) => n,
                None if raw.len() % 2 == 0 && !raw.is_empty() => raw.len() / 2,
                None => {
                    return Err(CliError::Validation(format!(
                        "couplings come as c_1..c_2N; got {} values",
                        raw.len()
                    )));
                }
            };
            let pot = ArnoldPotential::from_raw_couplings(n, raw, args.lambda_sq)
                .map_err(validation)?;
            let shift = pot.couplings_to_shifts(args.weights.as_deref()).ok();
            pot.to_json(shift.as_ref())
        }
    };
    let mut text =
        serde_json::to_string_pretty(&json).map_err(|e| CliError::Runtime(e.to_string()))?;
    text.push('\n');
    match &args.out {
        Some(path) => {
            csvio::write_file(path, &text)?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// weights
// ---------------------------------------------------------------------------

#[derive(Args)]
struct WeightsArgs {
    /// Barrier count N (2..=10; N = 1 needs no weights)
    #[arg(long)]
    n: usize,

    /// Largest weight value the search will try
    #[arg(long, default_value_t = 512)]
    bound: u64,

    /// Also print the integer coupling polynomials
    #[arg(long)]
    emit_formulas: bool,
}

fn run_weights(args: WeightsArgs) -> Result<(), CliError> {
    if !(2..=10).contains(&args.n) {
        return Err(CliError::Validation(format!(
            "--n must be in 2..=10, got {}",
            args.n
        )));
    }
    if args.bound == 0 {
        return Err(CliError::Validation("--bound must be at least 1".into()));
    }
    let cand = diophantine::minimal_weights(args.n, args.bound)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let tuple = |w: &[u64]| {
        w.iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    println!("({})", tuple(&cand.weights));
    match diophantine::reference_weights(args.n) {
        Some(r) if r == cand.weights.as_slice() => println!("matches the reference tuple"),
        Some(r) => println!("differs from the reference tuple ({})", tuple(r)),
        None => {}
    }
    if args.emit_formulas {
        let formulas = diophantine::coupling_formulas(args.n, &cand.weights)
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        let names: Vec<&str> = diophantine::GENERATOR_NAMES[..args.n].to_vec();
        for (i, f) in formulas.iter().enumerate() {
            println!("{} = {}", diophantine::coupling_name(i + 1), f.render(&names));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

#[derive(Args)]
struct SolveArgs {
    /// Run configuration (JSON, schema 1)
    #[arg(long)]
    config: PathBuf,

    /// Spectrum CSV destination
    #[arg(long)]
    out: PathBuf,

    /// Also dump the wavefunctions on the grid
    #[arg(long)]
    dump_psi: Option<PathBuf>,
}

fn load_config(path: &Path) -> Result<config::RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    config::parse_config(&text).map_err(|errs| {
        CliError::Validation(format!(
            "invalid config {}:\n  - {}",
            path.display(),
            errs.join("\n  - ")
        ))
    })
}

/// Resolve the config's potential; the shell geometry must be recoverable
/// because the localization columns are defined by it.
fn resolve_potential(
    cfg: &config::RunConfig,
) -> Result<(ArnoldPotential, ShiftParameters), CliError> {
    let (pot, shift) = cfg.potential.resolve().map_err(validation)?;
    let shift = shift.ok_or_else(|| {
        CliError::Runtime(
            "cannot recover the shell geometry from the given couplings; \
             give the generator form instead"
                .into(),
        )
    })?;
    Ok((pot, shift))
}

fn make_grid(cfg: &config::RunConfig, pot: &ArnoldPotential) -> Result<GridSpec, CliError> {
    match cfg.half_width {
        Some(l) => GridSpec::new(l, cfg.points, pot.lambda_sq()).map_err(validation),
        None => GridSpec::auto_for(pot, cfg.states, pot.lambda_sq(), cfg.points)
            .map_err(CliError::from),
    }
}

fn run_solve(args: SolveArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let (pot, shift) = resolve_potential(&cfg)?;
    let grid = make_grid(&cfg, &pot)?;
    let regions = shell_partition(&shift, grid.half_width());
    let result = solve_fn_with_regions(|x| pot.evaluate(x), &grid, cfg.states, regions)?;
    csvio::write_file(&args.out, &csvio::spectrum_csv(&result))?;
    println!(
        "wrote {} ({} states, {} regions, half_width = {}, points = {})",
        args.out.display(),
        result.n_states(),
        result.regions.len(),
        csvio::fnum(result.half_width),
        grid.points()
    );
    if let Some(psi_path) = &args.dump_psi {
        csvio::write_file(psi_path, &csvio::psi_csv(&result))?;
        println!("wrote {}", psi_path.display());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

#[derive(Args)]
struct EstimateArgs {
    /// Run configuration (JSON, schema 1)
    #[arg(long)]
    config: PathBuf,

    /// Solve numerically and print matched levels next to the estimates
    #[arg(long)]
    with_numeric: bool,
}

fn run_estimate(args: EstimateArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let (pot, shift) = resolve_potential(&cfg)?;
    let wells = perturbation::well_models(&shift, pot.lambda_sq())?;

    // With --with-numeric, bucket each solved state into the well whose
    // barrier-bounded region(s) hold most of its probability.
    let numeric: Option<(SpectralResult, Vec<Vec<f64>>)> = if args.with_numeric {
        let grid = make_grid(&cfg, &pot)?;
        let result = spectral::solve(&pot, &grid, cfg.states)?;
        let buckets = bucket_states(&result, &wells);
        Some((result, buckets))
    } else {
        None
    };

    println!(
        "potential: N = {}, lambda_sq = {}",
        pot.n(),
        csvio::fnum(pot.lambda_sq())
    );
    for (w, well) in wells.iter().enumerate() {
        let mult: usize = match well.multiplicity {
            Multiplicity::Central => 1,
            Multiplicity::Pair => 2,
        };
        println!(
            "well ring {} (x_min = {}, multiplicity {mult}): depth = {}, omega = {}",
            well.ring,
            csvio::fnum(well.x_min),
            csvio::fnum(well.depth),
            csvio::fnum(well.omega_sq.max(0.0).sqrt())
        );
        if well.omega_sq <= 0.0 {
            println!("  degenerate well: no harmonic ladder");
            continue;
        }
        match &numeric {
            None => {
                println!("  n  harmonic");
                for n in 0..=cfg.level_max {
                    println!("  {n}  {}", csvio::fnum(well.level(n)));
                }
            }
            Some((_, buckets)) => {
                // A ring pair hosts even/odd doublets: harmonic level n
                // lines up with the n-th pair of bucketed states.
                println!("  n  harmonic            numeric");
                for n in 0..=cfg.level_max {
                    let chunk: Vec<String> = buckets[w]
                        .chunks(mult)
                        .nth(n)
                        .map(|c| c.iter().map(|e| csvio::fnum(*e)).collect())
                        .unwrap_or_default();
                    let num = if chunk.is_empty() {
                        "-".to_string()
                    } else {
                        chunk.join(", ")
                    };
                    println!("  {n}  {}  {num}", csvio::fnum(well.level(n)));
                }
            }
        }
    }
    Ok(())
}

/// Energies of the states that put more than half their weight into each
/// well's region(s), in spectral order.
fn bucket_states(result: &SpectralResult, wells: &[WellModel]) -> Vec<Vec<f64>> {
    let region_of = |x: f64| {
        result
            .regions
            .iter()
            .position(|&(lo, hi)| x >= lo && x <= hi)
    };
    let mut buckets = vec![Vec::new(); wells.len()];
    for (w, well) in wells.iter().enumerate() {
        let plus = region_of(well.x_min);
        let minus = region_of(-well.x_min);
        for s in 0..result.n_states() {
            let mut weight = 0.0;
            if let Some(i) = plus {
                weight += result.localization[s][i];
            }
            if let (Some(i), Some(j)) = (minus, plus) {
                if i != j {
                    weight += result.localization[s][i];
                }
            }
            if weight > 0.5 {
                buckets[w].push(result.energies[s]);
            }
        }
    }
    buckets
}

// ---------------------------------------------------------------------------
// locus / scan
// ---------------------------------------------------------------------------

fn parse_path_kind(s: &str) -> Result<PathKind, String> {
    match s {
        "k5_mu_ratio" => Ok(PathKind::K5MuRatio),
        "k5_alpha_beta" => Ok(PathKind::K5AlphaBeta),
        "k7_eta" => Ok(PathKind::K7Eta),
        "k7_sigma" => Ok(PathKind::K7Sigma),
        _ => Err(format!(
            "unknown path \"{s}\"; expected k5_mu_ratio, k5_alpha_beta, k7_eta, or k7_sigma"
        )),
    }
}

/// lo:hi:step, inclusive of both ends when they sit on the step lattice.
fn parse_range(spec: &str, what: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let err = |msg: String| CliError::Validation(format!("{what}: {msg}"));
    if parts.len() != 3 {
        return Err(err(format!("expected lo:hi:step, got \"{spec}\"")));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| err(format!("cannot parse \"{spec}\": {e}")))?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) {
        return Err(err(format!("values must be finite, got \"{spec}\"")));
    }
    if step <= 0.0 {
        return Err(err(format!("step must be positive, got {step}")));
    }
    if hi < lo {
        return Err(err(format!("upper end {hi} is below lower end {lo}")));
    }
    if (hi - lo) / step > 200_000.0 {
        return Err(err(format!(
            "range \"{spec}\" has more than 200000 points"
        )));
    }
    Ok(figures::range_grid(lo, hi, step))
}

#[derive(Args)]
struct LocusArgs {
    /// Family path: k5_mu_ratio | k5_alpha_beta | k7_eta | k7_sigma
    #[arg(long, value_parser = parse_path_kind)]
    path: PathKind,

    /// Fixed-alpha grid lo:hi:step (paths with fixed alpha)
    #[arg(long)]
    alpha_range: Option<String>,

    /// Fixed-beta grid lo:hi:step (the r-ratio path)
    #[arg(long)]
    beta_range: Option<String>,

    /// Gap estimator: harmonic | numeric
    #[arg(long, default_value = "harmonic")]
    estimator: String,

    /// Mass term lambda^2 used by both estimators
    #[arg(long, default_value_t = 1.0)]
    lambda_sq: f64,

    /// Bisection tolerance on the swept parameter
    #[arg(long, default_value_t = catastrophe::DEFAULT_ROOT_TOL)]
    tol: f64,

    /// Grid points for the numeric estimator
    #[arg(long, default_value_t = 2001)]
    points: usize,

    /// States solved per point by the numeric estimator
    #[arg(long, default_value_t = 6)]
    states: usize,

    /// Explicit box half-width for the numeric estimator
    #[arg(long)]
    half_width: Option<f64>,

    /// Locus CSV destination
    #[arg(long)]
    out: PathBuf,
}

fn pick_fixed_range(
    kind: PathKind,
    alpha_range: &Option<String>,
    beta_range: &Option<String>,
) -> Result<Vec<f64>, CliError> {
    let (want, given, other_flag) = match kind.fixed_name() {
        "beta" => (
            "--beta-range",
            beta_range.as_ref(),
            alpha_range.as_ref().map(|_| "--alpha-range"),
        ),
        _ => (
            "--alpha-range",
            alpha_range.as_ref(),
            beta_range.as_ref().map(|_| "--beta-range"),
        ),
    };
    if let Some(flag) = other_flag {
        return Err(CliError::Validation(format!(
            "{flag} does not apply to this path; its fixed generator is {}",
            kind.fixed_name()
        )));
    }
    let spec = given.ok_or_else(|| {
        CliError::Validation(format!("this path fixes {}; give {want}", kind.fixed_name()))
    })?;
    parse_range(spec, want)
}

fn make_estimator(
    name: &str,
    points: usize,
    states: usize,
    half_width: Option<f64>,
) -> Result<Estimator, CliError> {
    match name {
        "harmonic" => Ok(Estimator::Harmonic),
        "numeric" => Ok(Estimator::Numeric(NumericConfig {
            points,
            n_states: states,
            half_width,
        })),
        other => Err(CliError::Validation(format!(
            "unknown estimator \"{other}\"; expected harmonic or numeric"
        ))),
    }
}

fn run_locus(args: LocusArgs) -> Result<(), CliError> {
    if !(args.lambda_sq.is_finite() && args.lambda_sq > 0.0) {
        return Err(CliError::Validation(format!(
            "--lambda-sq must be positive, got {}",
            args.lambda_sq
        )));
    }
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::Validation(format!(
            "--tol must be positive, got {}",
            args.tol
        )));
    }
    let fixed = pick_fixed_range(args.path, &args.alpha_range, &args.beta_range)?;
    let estimator = make_estimator(&args.estimator, args.points, args.states, args.half_width)?;
    let points = catastrophe::locus_curve(
        args.path,
        args.lambda_sq,
        &fixed,
        &estimator,
        args.tol,
    )?;

    let mut branches: Vec<&str> = Vec::new();
    for p in &points {
        if !branches.contains(&p.branch) {
            branches.push(p.branch);
        }
    }
    for b in branches {
        let total = points.iter().filter(|p| p.branch == b).count();
        let found = points
            .iter()
            .filter(|p| p.branch == b && p.critical.is_some())
            .count();
        println!("branch {b}: {found}/{total} roots");
    }
    csvio::write_file(&args.out, &csvio::locus_csv(&points))?;
    println!("wrote {}", args.out.display());
    Ok(())
}

#[derive(Args)]
struct ScanArgs {
    /// Family path: k5_mu_ratio | k5_alpha_beta | k7_eta | k7_sigma
    #[arg(long, value_parser = parse_path_kind)]
    path: PathKind,

    /// Fixed alpha (paths with fixed alpha)
    #[arg(long)]
    alpha: Option<f64>,

    /// Fixed beta (the r-ratio path)
    #[arg(long)]
    beta: Option<f64>,

    /// Swept eta grid lo:hi:step (k7_eta)
    #[arg(long)]
    eta_range: Option<String>,

    /// Swept beta grid lo:hi:step (k5_alpha_beta)
    #[arg(long)]
    beta_range: Option<String>,

    /// Swept ratio grid lo:hi:step (k5_mu_ratio)
    #[arg(long)]
    r_range: Option<String>,

    /// Swept sigma grid lo:hi:step (k7_sigma)
    #[arg(long)]
    sigma_range: Option<String>,

    /// Mass term lambda^2
    #[arg(long, default_value_t = 1.0)]
    lambda_sq: f64,

    /// Grid points per solve
    #[arg(long, default_value_t = 2001)]
    points: usize,

    /// States solved per point
    #[arg(long, default_value_t = 6)]
    states: usize,

    /// Explicit box half-width (chosen from the well geometry when omitted)
    #[arg(long)]
    half_width: Option<f64>,

    /// Scan CSV destination
    #[arg(long)]
    out: PathBuf,
}

fn run_scan(args: ScanArgs) -> Result<(), CliError> {
    let fixed = match args.path.fixed_name() {
        "beta" => {
            if args.alpha.is_some() {
                return Err(CliError::Validation(
                    "--alpha does not apply to this path; its fixed generator is beta".into(),
                ));
            }
            args.beta.ok_or_else(|| {
                CliError::Validation("this path fixes beta; give --beta".into())
            })?
        }
        _ => {
            if args.beta.is_some() {
                return Err(CliError::Validation(
                    "--beta does not apply to this path; its fixed generator is alpha".into(),
                ));
            }
            args.alpha.ok_or_else(|| {
                CliError::Validation("this path fixes alpha; give --alpha".into())
            })?
        }
    };

    let ranges = [
        ("eta", "--eta-range", &args.eta_range),
        ("beta", "--beta-range", &args.beta_range),
        ("r", "--r-range", &args.r_range),
        ("sigma", "--sigma-range", &args.sigma_range),
    ];
    let swept_name = args.path.swept_name();
    for (name, flag, value) in &ranges {
        if value.is_some() && *name != swept_name {
            return Err(CliError::Validation(format!(
                "{flag} does not apply to this path; its swept parameter is {swept_name}"
            )));
        }
    }
    let (_, want_flag, spec) = ranges
        .iter()
        .find(|(name, _, _)| *name == swept_name)
        .expect("every path has a swept range flag");
    let spec = spec.as_ref().ok_or_else(|| {
        CliError::Validation(format!(
            "this path sweeps {swept_name}; give {want_flag}"
        ))
    })?;
    let values = parse_range(spec, want_flag)?;

    let path = FamilyPath::new(args.path, fixed)
        .and_then(|p| p.with_lambda_sq(args.lambda_sq))
        .map_err(validation)?;
    let cfg = NumericConfig {
        points: args.points,
        n_states: args.states,
        half_width: args.half_width,
    };
    let samples = catastrophe::relocalization_scan(&path, &values, &cfg)?;
    match catastrophe::relocalization_crossing(&samples) {
        Some(at) => println!(
            "inner-weight crossing at {swept_name} = {}",
            csvio::fnum(at)
        ),
        None => println!("no inner-weight crossing on the grid (monotone)"),
    }
    csvio::write_file(&args.out, &csvio::scan_csv(&samples))?;
    println!("wrote {}", args.out.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

#[derive(Args)]
struct ReproduceArgs {
    /// Figure target: fig1..fig6, or all
    target: String,

    /// Directory the CSV/SVG pair is written into
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}
