//! Command-line front end: argument/config-file resolution, dispatch to the
//! analysis and sweep modules, and deterministic table emission.
//!
//! Natural units ħ = 1 throughout; the default mass is 1.  Exit codes:
//! 0 success, 2 usage error, 3 numeric failure, 4 I/O failure.

use crate::disk::{
    differential_cross_section, phase_shift_sweep, total_cross_section, PartialWaveSum,
};
use crate::dynamics::{
    classify_outcome, evolve, gaussian_packet, read_checkpoint, write_checkpoint, GridState,
    Hamiltonian, PotentialMask,
};
use crate::experiments::table::fmt_f64;
use crate::experiments::{
    bound_report, coincidence_sweep, microscope_sweep, report_table, threshold_products,
    CoincidenceConfig, CoincidenceSummary, ExperimentsError, MicroscopeConfig, OrderSweepConfig,
    RunManifest, Table, ThresholdProduct,
};
use crate::halfplane::{
    closed_form_sigma_f, exact_field, failure_cross_section, scattering_amplitude, HalfPlaneConfig,
    HalfPlaneError,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(
    name = "tempord",
    version,
    about = "Temporal-ordering measurement laboratory (natural units, hbar = 1)"
)]
struct Cli {
    /// Output directory for tables and manifests (path)
    #[arg(long, global = true, env = "TEMPORD_OUT_DIR", default_value = "tempord-out")]
    out_dir: PathBuf,
    /// TOML config file; explicit command-line flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for sweep points (default: available parallelism)
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Half-plane diffraction: screen-field scan, f(theta), failure cross section
    Halfplane(HalfplaneArgs),
    /// Hard-disk scattering: phase shifts, the delta1/delta0 ratio, sigma(theta)
    Disk(DiskArgs),
    /// Single 2D wavepacket run with quadrant outcome and checkpointing
    Evolve(EvolveArgs),
    /// Order-of-arrival failure sweep over the wavenumber list
    SweepOrder(SweepOrderArgs),
    /// Coincidence (shift-ratio) sweep over ka
    SweepCoincidence(SweepCoincidenceArgs),
    /// Detector-placement distinguishability versus offset
    Microscope(MicroscopeArgs),
    /// Aggregate the bound report from sweep summaries
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct HalfplaneArgs {
    /// Wavenumber k (inverse length, > 0)
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Incidence angle theta0 (radians, in (0, pi/2); 0 allowed with --sigma-f)
    #[arg(long, default_value_t = PI / 4.0)]
    theta0: f64,
    /// Emit the field along rays (table over kr and theta)
    #[arg(long)]
    field: bool,
    /// Emit |f(theta)|^2 over the angular grid
    #[arg(long)]
    amplitude: bool,
    /// Emit the regularized failure cross section and its closed form
    #[arg(long)]
    sigma_f: bool,
    /// Exclusion cone half-width around the shadow boundaries (radians)
    #[arg(long, default_value_t = 0.1)]
    cone: f64,
    /// Angular sample count
    #[arg(long, default_value_t = 181)]
    theta_points: usize,
}

#[derive(Args, Debug)]
struct DiskArgs {
    /// Emit the delta1/delta0 ratio curve over a log-spaced ka grid
    #[arg(long)]
    ratio: bool,
    /// Emit continuous-branch phase shifts for orders --m over the ka grid
    #[arg(long)]
    shifts: bool,
    /// Emit sigma(theta) at --ka (table over theta)
    #[arg(long)]
    sigma: bool,
    /// Smallest ka (dimensionless, > 0)
    #[arg(long, default_value_t = 1e-3)]
    ka_min: f64,
    /// Largest ka (dimensionless)
    #[arg(long, default_value_t = 100.0)]
    ka_max: f64,
    /// Number of ka samples
    #[arg(long, default_value_t = 200)]
    points: usize,
    /// Partial-wave orders for --shifts (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    m: Vec<u32>,
    /// ka for --sigma (dimensionless)
    #[arg(long, default_value_t = 1.0)]
    ka: f64,
    /// Wavenumber k fixing the length scale (inverse length)
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Angular sample count for --sigma
    #[arg(long, default_value_t = 361)]
    theta_points: usize,
}

#[derive(Args, Debug, Clone)]
struct EvolveArgs {
    /// Grid points per side
    #[arg(long, default_value_t = 512)]
    grid: usize,
    /// Grid spacing (length)
    #[arg(long, default_value_t = 0.05)]
    h: f64,
    /// Particle mass along x (natural units)
    #[arg(long, default_value_t = 1.0)]
    mass_x: f64,
    /// Particle mass along y (natural units)
    #[arg(long, default_value_t = 1.0)]
    mass_y: f64,
    /// Hard potential: free | edge | wall | disk | strip
    #[arg(long, default_value = "edge")]
    mask: String,
    /// Disk radius or strip half-length (length)
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Packet center x (length)
    #[arg(long, default_value_t = 6.0)]
    x0: f64,
    /// Packet center y (length)
    #[arg(long, default_value_t = 6.0)]
    y0: f64,
    /// Packet width sigma_x (length)
    #[arg(long, default_value_t = 1.0)]
    sigma_x: f64,
    /// Packet width sigma_y (length)
    #[arg(long, default_value_t = 1.0)]
    sigma_y: f64,
    /// Mean momentum p_x (natural units)
    #[arg(long, default_value_t = -4.0)]
    px: f64,
    /// Mean momentum p_y (natural units)
    #[arg(long, default_value_t = -4.0)]
    py: f64,
    /// Time step (natural units); default 0.45 h^2 min(m)
    #[arg(long)]
    dt: Option<f64>,
    /// Number of steps
    #[arg(long, default_value_t = 1000)]
    steps: u64,
    /// Resume from a checkpoint file instead of building a fresh packet
    #[arg(long)]
    checkpoint_in: Option<PathBuf>,
    /// Write the final state to this checkpoint file
    #[arg(long)]
    checkpoint_out: Option<PathBuf>,
    /// Also report quadrant content every N steps (0 = only at the end)
    #[arg(long, default_value_t = 0)]
    report_every: u64,
}

#[derive(Args, Debug, Clone)]
struct SweepOrderArgs {
    /// Wavenumbers to sweep (comma separated, strictly increasing)
    #[arg(long, value_delimiter = ',')]
    k: Option<Vec<f64>>,
    /// Grid points per side
    #[arg(long)]
    grid: Option<usize>,
    /// Packet width sigma (length)
    #[arg(long)]
    sigma: Option<f64>,
    /// Measurement time factor over the crossing time
    #[arg(long)]
    time_factor: Option<f64>,
    /// p_fail thresholds for the delta-t * E-bar products (comma separated)
    #[arg(long, value_delimiter = ',')]
    thresholds: Option<Vec<f64>>,
}

#[derive(Args, Debug, Clone)]
struct SweepCoincidenceArgs {
    /// Smallest ka (dimensionless)
    #[arg(long)]
    ka_min: Option<f64>,
    /// Largest ka (dimensionless)
    #[arg(long)]
    ka_max: Option<f64>,
    /// Number of log-spaced samples
    #[arg(long)]
    points: Option<usize>,
    /// Wavenumber fixing the length scale (inverse length)
    #[arg(long)]
    k: Option<f64>,
}

#[derive(Args, Debug, Clone)]
struct MicroscopeArgs {
    /// Wavenumber of the probe (inverse length)
    #[arg(long)]
    k: Option<f64>,
    /// Disk radius (length)
    #[arg(long)]
    a: Option<f64>,
    /// Offsets in wavelengths (comma separated)
    #[arg(long, value_delimiter = ',')]
    offsets: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Threshold-product summary from sweep-order (JSON path)
    #[arg(long)]
    order: PathBuf,
    /// Summary from sweep-coincidence (JSON path)
    #[arg(long)]
    coincidence: PathBuf,
}

/// Optional TOML file mirroring the sweep flags; unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(default)]
    sweep_order: OrderFileConfig,
    #[serde(default)]
    sweep_coincidence: CoincFileConfig,
    #[serde(default)]
    microscope: MicFileConfig,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderFileConfig {
    k: Option<Vec<f64>>,
    grid: Option<usize>,
    sigma: Option<f64>,
    time_factor: Option<f64>,
    thresholds: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoincFileConfig {
    ka_min: Option<f64>,
    ka_max: Option<f64>,
    points: Option<usize>,
    k: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct MicFileConfig {
    k: Option<f64>,
    a: Option<f64>,
    offsets: Option<Vec<f64>>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numeric(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<ExperimentsError> for CliError {
    fn from(e: ExperimentsError) -> Self {
        match e {
            ExperimentsError::BadSpec(m) => CliError::Usage(m),
            ExperimentsError::ReportIncomplete(m) => CliError::Usage(m),
            ExperimentsError::Dynamics(d) => d.into(),
            ExperimentsError::Disk(d) => CliError::Numeric(d.to_string()),
        }
    }
}

impl From<HalfPlaneError> for CliError {
    fn from(e: HalfPlaneError) -> Self {
        match e {
            HalfPlaneError::Domain(m) => CliError::Usage(m),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

impl From<crate::dynamics::DynamicsError> for CliError {
    fn from(e: crate::dynamics::DynamicsError) -> Self {
        match e {
            crate::dynamics::DynamicsError::Io(io) => CliError::Io(io),
            crate::dynamics::DynamicsError::Domain(m) => CliError::Usage(m),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

/// Entry point returning the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(CliError::Usage(m)) => {
            eprintln!("usage error: {m}");
            2
        }
        Err(CliError::Numeric(m)) => {
            eprintln!("numeric failure: {m}");
            3
        }
        Err(CliError::Io(e)) => {
            eprintln!("io failure: {e}");
            4
        }
    }
}

fn load_file_config(path: &Option<PathBuf>) -> Result<FileConfig, CliError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)?;
            toml::from_str(&text).map_err(|e| CliError::Usage(format!("config file: {e}")))
        }
    }
}

fn write_table(dir: &Path, name: &str, table: &Table) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, table.to_dsv())?;
    Ok(path)
}

fn write_manifest(dir: &Path, name: &str, manifest: &RunManifest) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), manifest.to_json())?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let t0 = Instant::now();
    let file_cfg = load_file_config(&cli.config)?;
    match cli.cmd {
        Command::Halfplane(a) => run_halfplane(&cli.out_dir, a, t0),
        Command::Disk(a) => run_disk(&cli.out_dir, a, t0),
        Command::Evolve(a) => run_evolve(&cli.out_dir, a, t0),
        Command::SweepOrder(a) => run_sweep_order(&cli.out_dir, a, file_cfg, cli.workers, t0),
        Command::SweepCoincidence(a) => run_sweep_coincidence(&cli.out_dir, a, file_cfg, t0),
        Command::Microscope(a) => run_microscope(&cli.out_dir, a, file_cfg, t0),
        Command::Report(a) => run_report(&cli.out_dir, a, t0),
    }
}

fn run_halfplane(out: &Path, a: HalfplaneArgs, t0: Instant) -> Result<(), CliError> {
    if !(a.field || a.amplitude || a.sigma_f) {
        return Err(CliError::Usage(
            "choose at least one of --field, --amplitude, --sigma-f".into(),
        ));
    }
    if !(a.k > 0.0) {
        return Err(CliError::Usage(format!("k must be > 0, got {}", a.k)));
    }
    if a.sigma_f {
        let mut t = Table::new(
            "tempord.halfplane_sigma_f",
            &["k", "theta0", "cone_halfwidth", "sigma_f_regularized", "closed_form"],
        );
        let closed = closed_form_sigma_f(a.k, a.theta0);
        let reg = if a.theta0 > 0.0 && a.theta0 < PI / 2.0 {
            let cfg = HalfPlaneConfig::new(a.k, a.theta0)?;
            failure_cross_section(&cfg, a.cone)?.sigma_f
        } else if a.theta0 == 0.0 {
            // grazing limit: only the closed form is defined
            f64::NAN
        } else {
            return Err(CliError::Usage(format!(
                "theta0 must lie in [0, pi/2), got {}",
                a.theta0
            )));
        };
        t.push_f64_row(&[a.k, a.theta0, a.cone, reg, closed]);
        let p = write_table(out, "halfplane_sigma_f.dsv", &t)?;
        println!("sigma_f closed form {} -> {}", fmt_f64(closed), p.display());
    }
    if a.field || a.amplitude {
        let cfg = HalfPlaneConfig::new(a.k, a.theta0)?;
        if a.field {
            let mut t = Table::new(
                "tempord.halfplane_field",
                &["kr", "theta", "re_psi", "im_psi", "abs_psi"],
            );
            for &kr in &[0.5, 2.0, 10.0, 50.0, 200.0, 1000.0] {
                for i in 0..a.theta_points {
                    let th = 2.0 * PI * i as f64 / a.theta_points as f64;
                    let v = exact_field(kr / cfg.k, th, &cfg)?;
                    t.push_f64_row(&[kr, th, v.re, v.im, v.norm()]);
                }
            }
            let p = write_table(out, "halfplane_field.dsv", &t)?;
            println!("field table -> {}", p.display());
        }
        if a.amplitude {
            let mut t = Table::new(
                "tempord.halfplane_amplitude",
                &["theta", "re_f", "im_f", "abs_f_sq"],
            );
            for i in 0..a.theta_points {
                let th = 2.0 * PI * (i as f64 + 0.5) / a.theta_points as f64;
                match scattering_amplitude(th, &cfg) {
                    Ok(f) => t.push_f64_row(&[th, f.re, f.im, f.norm_sqr()]),
                    Err(HalfPlaneError::Pole(_)) => {
                        t.push_f64_row(&[th, f64::NAN, f64::NAN, f64::NAN])
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            let p = write_table(out, "halfplane_amplitude.dsv", &t)?;
            println!("amplitude table -> {}", p.display());
        }
    }
    let manifest = RunManifest::new(
        "tempord.halfplane",
        &serde_json::json!({"k": a.k, "theta0": a.theta0, "cone": a.cone}),
        t0.elapsed().as_secs_f64(),
    );
    write_manifest(out, "halfplane_manifest.json", &manifest)
}

fn run_disk(out: &Path, a: DiskArgs, t0: Instant) -> Result<(), CliError> {
    if !(a.ratio || a.shifts || a.sigma) {
        return Err(CliError::Usage(
            "choose at least one of --ratio, --shifts, --sigma".into(),
        ));
    }
    if !(a.ka_min > 0.0 && a.ka_max > a.ka_min && a.points >= 2) {
        return Err(CliError::Usage(format!(
            "need 0 < ka_min < ka_max and points >= 2, got [{}, {}] x {}",
            a.ka_min, a.ka_max, a.points
        )));
    }
    let kas: Vec<f64> = (0..a.points)
        .map(|i| a.ka_min * ((a.ka_max / a.ka_min).ln() * i as f64 / (a.points - 1) as f64).exp())
        .collect();
    if a.ratio {
        let d0 = phase_shift_sweep(0, &kas);
        let d1 = phase_shift_sweep(1, &kas);
        let mut t = Table::new("tempord.disk_ratio", &["ka", "delta0", "delta1", "ratio"]);
        for (s0, s1) in d0.iter().zip(&d1) {
            t.push_f64_row(&[s0.ka, s0.delta, s1.delta, s1.delta / s0.delta]);
        }
        let p = write_table(out, "disk_ratio.dsv", &t)?;
        println!("ratio table ({} points) -> {}", kas.len(), p.display());
    }
    if a.shifts {
        let cols: Vec<String> = std::iter::once("ka".to_string())
            .chain(a.m.iter().map(|m| format!("delta{m}")))
            .collect();
        let col_refs: Vec<&str> = cols.iter().map(|s| s.as_str()).collect();
        let mut t = Table::new("tempord.disk_shifts", &col_refs);
        let sweeps: Vec<_> = a.m.iter().map(|&m| phase_shift_sweep(m, &kas)).collect();
        for (i, &ka) in kas.iter().enumerate() {
            let mut row = vec![ka];
            for sw in &sweeps {
                row.push(sw[i].delta);
            }
            t.push_f64_row(&row);
        }
        let p = write_table(out, "disk_shifts.dsv", &t)?;
        println!("shift table -> {}", p.display());
    }
    if a.sigma {
        let pw =
            PartialWaveSum::new(a.k, a.ka / a.k).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut t = Table::new("tempord.disk_sigma", &["theta", "sigma"]);
        for i in 0..a.theta_points {
            let th = 2.0 * PI * i as f64 / a.theta_points as f64;
            t.push_f64_row(&[th, differential_cross_section(th, &pw)]);
        }
        let p = write_table(out, "disk_sigma.dsv", &t)?;
        println!(
            "sigma(theta) at ka={} (total {}) -> {}",
            fmt_f64(a.ka),
            fmt_f64(total_cross_section(&pw)),
            p.display()
        );
    }
    let manifest = RunManifest::new(
        "tempord.disk",
        &serde_json::json!({
            "ka_min": a.ka_min, "ka_max": a.ka_max, "points": a.points,
            "m": a.m, "ka": a.ka, "k": a.k
        }),
        t0.elapsed().as_secs_f64(),
    );
    write_manifest(out, "disk_manifest.json", &manifest)
}

fn parse_mask(kind: &str, grid: &GridState, a: f64) -> Result<PotentialMask, CliError> {
    Ok(match kind {
        "free" => PotentialMask::free(grid),
        "edge" => PotentialMask::edge(grid),
        "wall" => PotentialMask::wall(grid),
        "disk" => PotentialMask::disk(grid, a),
        "strip" => PotentialMask::strip(grid, a),
        other => {
            return Err(CliError::Usage(format!(
                "unknown mask '{other}' (use free|edge|wall|disk|strip)"
            )))
        }
    })
}

fn run_evolve(out: &Path, a: EvolveArgs, t0: Instant) -> Result<(), CliError> {
    for (name, v) in [
        ("h", a.h),
        ("mass-x", a.mass_x),
        ("mass-y", a.mass_y),
        ("sigma-x", a.sigma_x),
        ("sigma-y", a.sigma_y),
        ("a", a.a),
    ] {
        if !(v > 0.0) {
            return Err(CliError::Usage(format!("--{name} must be > 0, got {v}")));
        }
    }
    let mut grid = match &a.checkpoint_in {
        Some(p) => read_checkpoint(fs::File::open(p)?)?,
        None => {
            let mut g = GridState::centered(a.grid, a.grid, a.h)?;
            gaussian_packet(&mut g, (a.x0, a.y0), (a.sigma_x, a.sigma_y), (a.px, a.py));
            g
        }
    };
    let mask = parse_mask(&a.mask, &grid, a.a)?;
    mask.apply(&mut grid);
    grid.normalize();
    let ham = Hamiltonian {
        mass_x: a.mass_x,
        mass_y: a.mass_y,
    };
    let dt = a
        .dt
        .unwrap_or(0.45 * grid.h * grid.h * a.mass_x.min(a.mass_y));
    let mut table = Table::new(
        "tempord.evolve",
        &["time", "p1", "p2", "p3", "p4", "p_fail", "norm"],
    );
    let push_state = |g: &GridState, tbl: &mut Table| {
        let q = g.quadrant_probabilities();
        let o = classify_outcome(&q);
        tbl.push_f64_row(&[g.time, q.p1, q.p2, q.p3, q.p4, o.p_fail, q.sum()]);
    };
    push_state(&grid, &mut table);
    let chunk = if a.report_every == 0 {
        a.steps
    } else {
        a.report_every
    };
    let mut done = 0;
    let mut warned = false;
    while done < a.steps {
        let n = chunk.min(a.steps - done);
        let rep = evolve(&mut grid, &ham, &mask, dt, n)?;
        if rep.cfl_accuracy_warning && !warned {
            eprintln!(
                "warning: dt {} exceeds the accuracy bound h^2*m/2 = {}",
                fmt_f64(dt),
                fmt_f64(0.5 * grid.h * grid.h * a.mass_x.min(a.mass_y))
            );
            warned = true;
        }
        done += n;
        push_state(&grid, &mut table);
    }
    let p = write_table(out, "evolve_quadrants.dsv", &table)?;
    println!("quadrant table -> {}", p.display());
    if let Some(cp) = &a.checkpoint_out {
        if let Some(parent) = cp.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent)?;
            }
        }
        write_checkpoint(&grid, fs::File::create(cp)?)?;
        println!("checkpoint -> {}", cp.display());
    }
    let manifest = RunManifest::new(
        "tempord.evolve",
        &serde_json::json!({
            "grid": a.grid, "h": a.h, "mask": a.mask, "a": a.a,
            "mass_x": a.mass_x, "mass_y": a.mass_y,
            "center": [a.x0, a.y0], "sigma": [a.sigma_x, a.sigma_y],
            "momentum": [a.px, a.py], "dt": dt, "steps": a.steps
        }),
        t0.elapsed().as_secs_f64(),
    );
    write_manifest(out, "evolve_manifest.json", &manifest)
}

fn run_sweep_order(
    out: &Path,
    a: SweepOrderArgs,
    file_cfg: FileConfig,
    workers: Option<usize>,
    t0: Instant,
) -> Result<(), CliError> {
    let defaults = OrderSweepConfig::default();
    let cfg = OrderSweepConfig {
        k_values: a.k.or(file_cfg.sweep_order.k).unwrap_or(defaults.k_values),
        grid_n: a
            .grid
            .or(file_cfg.sweep_order.grid)
            .unwrap_or(defaults.grid_n),
        sigma: a
            .sigma
            .or(file_cfg.sweep_order.sigma)
            .unwrap_or(defaults.sigma),
        time_factor: a
            .time_factor
            .or(file_cfg.sweep_order.time_factor)
            .unwrap_or(defaults.time_factor),
        mass: defaults.mass,
        fail_thresholds: a
            .thresholds
            .or(file_cfg.sweep_order.thresholds)
            .unwrap_or(defaults.fail_thresholds),
    };
    cfg.validate()?;
    let n_workers = workers
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .max(1);
    // sweep points are independent; run on a small pool, collect in order
    let rows = {
        let ks = &cfg.k_values;
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots: Vec<_> = ks.iter().map(|_| std::sync::Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for _ in 0..n_workers.min(ks.len()) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if i >= ks.len() {
                        break;
                    }
                    let res = crate::experiments::order_point(&cfg, ks[i]);
                    *slots[i].lock().expect("no poisoned worker") = Some(res);
                });
            }
        });
        let mut rows = Vec::with_capacity(ks.len());
        for s in slots {
            match s.into_inner().expect("no poisoned slot") {
                Some(Ok(r)) => rows.push(r),
                Some(Err(e)) => return Err(e.into()),
                None => return Err(CliError::Numeric("sweep point never ran".into())),
            }
        }
        rows
    };
    let table = crate::experiments::order::rows_to_table(&rows);
    let p = write_table(out, "order_sweep.dsv", &table)?;
    println!("order sweep table -> {}", p.display());
    for r in &rows {
        println!(
            "  k={} p_fail={} p_fail*k*w={} flagged={}",
            fmt_f64(r.k),
            fmt_f64(r.p_fail),
            fmt_f64(r.product),
            r.flagged
        );
    }
    let products = threshold_products(&cfg, &rows)?;
    fs::write(
        out.join("order_products.json"),
        serde_json::to_string_pretty(&products).expect("serializable"),
    )?;
    for tp in &products {
        println!(
            "  threshold p_fail={}: k*={} dt*E={}",
            fmt_f64(tp.threshold),
            fmt_f64(tp.k_star),
            fmt_f64(tp.product)
        );
    }
    let manifest = RunManifest::new("tempord.order_sweep", &cfg, t0.elapsed().as_secs_f64());
    write_manifest(out, "order_sweep_manifest.json", &manifest)
}

fn run_sweep_coincidence(
    out: &Path,
    a: SweepCoincidenceArgs,
    file_cfg: FileConfig,
    t0: Instant,
) -> Result<(), CliError> {
    let d = CoincidenceConfig::default();
    let cfg = CoincidenceConfig {
        ka_min: a
            .ka_min
            .or(file_cfg.sweep_coincidence.ka_min)
            .unwrap_or(d.ka_min),
        ka_max: a
            .ka_max
            .or(file_cfg.sweep_coincidence.ka_max)
            .unwrap_or(d.ka_max),
        points: a
            .points
            .or(file_cfg.sweep_coincidence.points)
            .unwrap_or(d.points),
        k: a.k.or(file_cfg.sweep_coincidence.k).unwrap_or(d.k),
        crossover_level: d.crossover_level,
    };
    let (summary, table) = coincidence_sweep(&cfg)?;
    let p = write_table(out, "coincidence_sweep.dsv", &table)?;
    println!("coincidence table -> {}", p.display());
    match summary.crossover_ka {
        Some(ka) => println!(
            "  crossover ka* = {} (dt_c * E = {})",
            fmt_f64(ka),
            fmt_f64(0.5 * ka)
        ),
        None => println!("  no crossover within the swept range"),
    }
    fs::write(
        out.join("coincidence_summary.json"),
        serde_json::to_string_pretty(&summary).expect("serializable"),
    )?;
    let manifest = RunManifest::new("tempord.coincidence_sweep", &cfg, t0.elapsed().as_secs_f64());
    write_manifest(out, "coincidence_sweep_manifest.json", &manifest)
}

fn run_microscope(
    out: &Path,
    a: MicroscopeArgs,
    file_cfg: FileConfig,
    t0: Instant,
) -> Result<(), CliError> {
    let d = MicroscopeConfig::default();
    let cfg = MicroscopeConfig {
        k: a.k.or(file_cfg.microscope.k).unwrap_or(d.k),
        a: a.a.or(file_cfg.microscope.a).unwrap_or(d.a),
        offsets_in_wavelengths: a
            .offsets
            .or(file_cfg.microscope.offsets)
            .unwrap_or(d.offsets_in_wavelengths),
    };
    let (rows, table) = microscope_sweep(&cfg)?;
    let p = write_table(out, "microscope.dsv", &table)?;
    println!("microscope table -> {}", p.display());
    for (f, tv) in &rows {
        println!("  offset {} wavelengths: TV = {}", fmt_f64(*f), fmt_f64(*tv));
    }
    let manifest = RunManifest::new("tempord.microscope", &cfg, t0.elapsed().as_secs_f64());
    write_manifest(out, "microscope_manifest.json", &manifest)
}

fn run_report(out: &Path, a: ReportArgs, t0: Instant) -> Result<(), CliError> {
    let order: Vec<ThresholdProduct> = serde_json::from_str(&fs::read_to_string(&a.order)?)
        .map_err(|e| CliError::Usage(format!("order summary: {e}")))?;
    let coincidence: CoincidenceSummary =
        serde_json::from_str(&fs::read_to_string(&a.coincidence)?)
            .map_err(|e| CliError::Usage(format!("coincidence summary: {e}")))?;
    let report = bound_report(Some(&order), Some(&coincidence))?;
    let table = report_table(&report);
    let p = write_table(out, "bound_report.dsv", &table)?;
    println!("bound report -> {}", p.display());
    for e in &report.entries {
        println!(
            "  {} {}: dt*E = {} in [{}, {}] -> {}",
            e.experiment,
            e.label,
            fmt_f64(e.product),
            fmt_f64(e.window_lo),
            fmt_f64(e.window_hi),
            if e.in_window { "ok" } else { "OUT OF WINDOW" }
        );
    }
    if !report.all_in_window {
        return Err(CliError::Numeric(
            "one or more bound products fell outside the order-unity window".into(),
        ));
    }
    let manifest = RunManifest::new(
        "tempord.report",
        &serde_json::json!({"order": a.order, "coincidence": a.coincidence}),
        t0.elapsed().as_secs_f64(),
    );
    write_manifest(out, "report_manifest.json", &manifest)
}
