//! Subcommand argument records and their handlers.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::Args;
use rayon::prelude::*;

use plate_core::elliptic::{exact_cn_solution, period_tau};
use plate_core::modal::{
    build_two_mode_elliptic, integrate_with, longitudinal_index, ForcingSpec, IntegrateOptions,
    ModalError, ModalState, ModalSystem, RetainedMode, Trajectory,
};
use plate_core::physical::nondimensionalize;
use plate_core::prevailing::{
    crossover_frequencies, prevailing_mode, symmetric_mode_table, LinearModeParams,
};
use plate_core::spectrum::{degenerate_wavenumbers, least_eigenvalues, solve_mu, solve_nu};
use plate_core::stability::{classify_trajectory, StabilityVerdict, TorsionalDecay};
use plate_core::PlateGeometry;

use crate::config::{load_json, DeckConfig, ScanConfig, SimulateConfig};
use crate::error::CliError;
use crate::output::{
    amplitude_curves_plot, atlas_plot, comparison_plot, file_name, fmt_f64, plot_path,
    prevailing_plot, spectrum_json, spectrum_plot, spectrum_table, trajectory_plot,
    write_amplitude_curves_csv, write_atlas_csv, write_json, write_manifest,
    write_plot_script, write_prevailing_csv, write_trajectory_csv, AtlasRow, PrevailingRow,
};

/// Global output switches shared by every subcommand.
pub struct Ctx {
    pub quiet: bool,
    pub emit_plot: bool,
}

impl Ctx {
    fn note(&self, line: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", line.as_ref());
        }
    }
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Number of eigenvalues to enumerate, smallest first.
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    /// Half-width of the plate domain (0, pi) x (-ell, ell).
    #[arg(long, default_value_t = PI / 150.0)]
    pub ell: f64,
    /// Poisson ratio of the plate material.
    #[arg(long, default_value_t = 0.2)]
    pub sigma: f64,
    /// Write the eigenmode rows as a JSON array to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print a fixed-width text table to stdout.
    #[arg(long)]
    pub table: bool,
}

pub fn spectrum(args: &SpectrumArgs, ctx: &Ctx) -> Result<(), CliError> {
    let geom = PlateGeometry::new(args.ell, args.sigma)?;
    let modes = least_eigenvalues(args.n, &geom)?;
    let m_max = modes.iter().map(|e| e.m).max().unwrap_or(0);
    let degenerate = degenerate_wavenumbers(&geom, m_max);
    if !degenerate.is_empty() {
        eprintln!(
            "warning: eigenvalue lambda = m^4 is nearly degenerate at m = {degenerate:?}; \
             nearby roots may lose accuracy"
        );
    }
    if args.table || args.out.is_none() {
        print!("{}", spectrum_table(&modes));
    }
    if let Some(out) = &args.out {
        write_json(out, &spectrum_json(&modes))?;
        let plot = plot_path(out);
        let mut outputs: Vec<&Path> = vec![out];
        if ctx.emit_plot {
            write_plot_script(&plot, &spectrum_plot(&modes))?;
            outputs.push(&plot);
        }
        let params = serde_json::json!({
            "n": args.n,
            "ell": args.ell,
            "sigma": args.sigma,
        });
        write_manifest(out, "spectrum", params, &outputs)?;
        ctx.note(format!("wrote {} ({} modes)", out.display(), modes.len()));
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Trajectory CSV destination.
    #[arg(long)]
    pub out: PathBuf,
}

fn write_trajectory_outputs(
    out: &Path,
    params: serde_json::Value,
    sys: &ModalSystem,
    traj: &Trajectory,
    ctx: &Ctx,
) -> Result<(), CliError> {
    write_trajectory_csv(out, sys, traj)?;
    let plot = plot_path(out);
    let mut outputs: Vec<&Path> = vec![out];
    if ctx.emit_plot {
        write_plot_script(&plot, &trajectory_plot(&file_name(out), sys.dim()))?;
        outputs.push(&plot);
    }
    write_manifest(out, "simulate", params, &outputs)?;
    Ok(())
}

pub fn simulate(args: &SimulateArgs, ctx: &Ctx) -> Result<(), CliError> {
    let cfg: SimulateConfig = load_json(&args.config)?;
    let (sys, ic) = cfg.build()?;
    let opts = IntegrateOptions {
        dt: cfg.dt,
        t_end: cfg.t_end,
        record_energy: true,
        alpha: cfg.alpha_energy,
        enforce_step_cap: true,
        adaptive_rel_tol: cfg.adaptive_rel_tol,
    };
    let params = serde_json::to_value(&cfg)?;
    match integrate_with(&sys, &ic, &opts) {
        Ok(traj) => {
            write_trajectory_outputs(&args.out, params, &sys, &traj, ctx)?;
            ctx.note(format!(
                "wrote {} ({} samples, {} modes)",
                args.out.display(),
                traj.len(),
                sys.dim()
            ));
            Ok(())
        }
        Err(ModalError::BlowUp { t, partial }) => {
            write_trajectory_outputs(&args.out, params, &sys, &partial, ctx)?;
            eprintln!(
                "partial trajectory ({} samples) flushed to {}",
                partial.len(),
                args.out.display()
            );
            Err(CliError::Numerical(format!("blow-up detected at t = {t}")))
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Args)]
pub struct VerifyExactArgs {
    /// Wavenumber of the driven longitudinal mode.
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// Wavenumber of the passive torsional mode.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Damping coefficient.
    #[arg(long, default_value_t = 0.58)]
    pub delta: f64,
    /// Stretching coefficient.
    #[arg(long = "S", default_value_t = 279.0)]
    pub stretch: f64,
    /// Forcing amplitude; the closed-form orbit has amplitude A/delta.
    #[arg(long = "A", default_value_t = 0.2645)]
    pub amplitude: f64,
    /// Fixed integration steps per orbit period.
    #[arg(long, default_value_t = 4096)]
    pub steps_per_period: u32,
    /// Number of periods to integrate.
    #[arg(long, default_value_t = 1)]
    pub periods: u32,
    /// Optional CSV of integrated versus closed-form samples.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn verify_exact(args: &VerifyExactArgs, ctx: &Ctx) -> Result<(), CliError> {
    if args.steps_per_period == 0 || args.periods == 0 {
        return Err(CliError::config(
            "`steps-per-period` and `periods` must be at least 1",
        ));
    }
    let geom = PlateGeometry::default();
    let sys = build_two_mode_elliptic(
        args.m,
        args.n,
        args.delta,
        args.stretch,
        args.amplitude,
        &geom,
    )?;
    let li = longitudinal_index(&sys).expect("two-mode system retains a longitudinal mode");
    let (b, k) = match sys.forcing[li] {
        ForcingSpec::EllipticCnDrive { b, k, .. } => (b, k),
        _ => unreachable!("elliptic builder installs the cn drive"),
    };
    let tau = period_tau(b, k);
    let dt = tau / args.steps_per_period as f64;
    let t_end = args.periods as f64 * tau;
    let scale = args.amplitude / args.delta;
    let mut h = vec![0.0; sys.dim()];
    h[li] = -scale;
    let ic = ModalState::new(0.0, h, vec![0.0; sys.dim()]);
    let traj = integrate_with(&sys, &ic, &IntegrateOptions::fixed(dt, t_end))?;
    let mut worst = 0.0f64;
    for s in &traj.samples {
        let exact = exact_cn_solution(args.amplitude, args.delta, b, k, s.t);
        worst = worst.max((s.h[li] - exact).abs() / scale);
    }
    println!("tau = {}", fmt_f64(tau));
    println!("max relative deviation = {}", fmt_f64(worst));
    if let Some(out) = &args.out {
        let mut csv = String::from("t,integrated,exact\n");
        for s in &traj.samples {
            let exact = exact_cn_solution(args.amplitude, args.delta, b, k, s.t);
            csv.push_str(&format!(
                "{},{},{}\n",
                fmt_f64(s.t),
                fmt_f64(s.h[li]),
                fmt_f64(exact)
            ));
        }
        std::fs::write(out, csv).map_err(CliError::from)?;
        let plot = plot_path(out);
        let mut outputs: Vec<&Path> = vec![out];
        if ctx.emit_plot {
            write_plot_script(&plot, &comparison_plot(&file_name(out)))?;
            outputs.push(&plot);
        }
        let params = serde_json::json!({
            "m": args.m,
            "n": args.n,
            "delta": args.delta,
            "S": args.stretch,
            "A": args.amplitude,
            "steps_per_period": args.steps_per_period,
            "periods": args.periods,
        });
        write_manifest(out, "verify-exact", params, &outputs)?;
        ctx.note(format!("wrote {} ({} samples)", out.display(), traj.len()));
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct StabilityScanArgs {
    /// JSON scan configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Atlas CSV destination.
    #[arg(long)]
    pub out: PathBuf,
}

fn scan_system(
    mu: &RetainedMode,
    nu: &RetainedMode,
    cfg: &ScanConfig,
    amplitude: f64,
    omega: f64,
) -> Result<(ModalSystem, ModalState), CliError> {
    let force = ForcingSpec::Sinusoid { amplitude, omega };
    let (modes, forcing, li, ti) = if mu.lambda < nu.lambda {
        (vec![*mu, *nu], vec![force, ForcingSpec::Zero], 0, 1)
    } else {
        (vec![*nu, *mu], vec![ForcingSpec::Zero, force], 1, 0)
    };
    let sys = ModalSystem::new(modes, cfg.delta, cfg.prestress, cfg.stretch, forcing)?;
    let mut h = vec![0.0; 2];
    h[li] = cfg.alpha;
    h[ti] = cfg.beta;
    Ok((sys, ModalState::new(0.0, h, vec![0.0; 2])))
}

fn scan_point(
    mu: &RetainedMode,
    nu: &RetainedMode,
    cfg: &ScanConfig,
    amplitude: f64,
    omega: f64,
) -> Result<AtlasRow, CliError> {
    let (sys, ic) = scan_system(mu, nu, cfg, amplitude, omega)?;
    let row = |verdict: String, v: &StabilityVerdict| AtlasRow {
        amplitude,
        omega,
        verdict,
        peak_torsional: v.peak_torsional_coord,
        eta_fit: v.decay_rate_estimate,
    };
    match integrate_with(&sys, &ic, &IntegrateOptions::fixed(cfg.dt, cfg.t_end)) {
        Ok(traj) => {
            let v = classify_trajectory(&traj, &sys, cfg.window, cfg.tol);
            Ok(row(v.torsional_decay.to_string(), &v))
        }
        Err(ModalError::BlowUp { partial, .. }) => {
            let v = classify_trajectory(&partial, &sys, cfg.window, cfg.tol);
            Ok(row("blow_up".into(), &v))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn stability_scan(args: &StabilityScanArgs, ctx: &Ctx) -> Result<(), CliError> {
    let cfg: ScanConfig = load_json(&args.config)?;
    cfg.validate()?;
    let geom = PlateGeometry::new(cfg.ell, cfg.sigma)?;
    let mu = RetainedMode::from(&solve_mu(cfg.m, 1, &geom)?);
    let nu = RetainedMode::from(&solve_nu(cfg.n, 2, &geom)?);
    // Fail fast on grid-independent preconditions (prestress margin, step
    // cap) before fanning out.
    let probe = scan_system(&mu, &nu, &cfg, cfg.amplitude.min, cfg.omega.min)?;
    if cfg.dt * probe.0.lambda_max().sqrt() > 0.1 * (1.0 + 1e-12) {
        return Err(CliError::config(format!(
            "`dt` = {} is too large for the stiffest mode: dt*sqrt(lambda_max) must not exceed 0.1",
            cfg.dt
        )));
    }
    let mut points = Vec::with_capacity(cfg.amplitude.count * cfg.omega.count);
    for i in 0..cfg.amplitude.count {
        for j in 0..cfg.omega.count {
            points.push((cfg.amplitude.at(i), cfg.omega.at(j)));
        }
    }
    // Indexed parallel map; collect preserves grid order regardless of
    // completion order.
    let rows = points
        .par_iter()
        .map(|&(a, w)| scan_point(&mu, &nu, &cfg, a, w))
        .collect::<Result<Vec<AtlasRow>, CliError>>()?;
    write_atlas_csv(&args.out, &rows)?;
    let plot = plot_path(&args.out);
    let mut outputs: Vec<&Path> = vec![&args.out];
    if ctx.emit_plot {
        write_plot_script(&plot, &atlas_plot(&file_name(&args.out)))?;
        outputs.push(&plot);
    }
    write_manifest(&args.out, "stability-scan", serde_json::to_value(&cfg)?, &outputs)?;
    let count = |verdict: &str| rows.iter().filter(|r| r.verdict == verdict).count();
    ctx.note(format!(
        "wrote {} ({} points: {} decayed, {} persistent, {} undetermined, {} blow_up)",
        args.out.display(),
        rows.len(),
        count(&TorsionalDecay::Decayed.to_string()),
        count(&TorsionalDecay::Persistent.to_string()),
        count(&TorsionalDecay::Undetermined.to_string()),
        count("blow_up")
    ));
    Ok(())
}

#[derive(Debug, Args)]
pub struct PrevailingArgs {
    /// Prestress coefficient.
    #[arg(long = "P", default_value_t = 0.0)]
    pub prestress: f64,
    /// Damping coefficient.
    #[arg(long, default_value_t = 0.58)]
    pub delta: f64,
    /// Upper end of the frequency sweep.
    #[arg(long, default_value_t = 260.0)]
    pub omega_max: f64,
    /// Largest odd wavenumber admitted to the mode table.
    #[arg(long, default_value_t = 17)]
    pub m_max: u32,
    /// Breakpoint-interval CSV destination.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write response-amplitude samples of every table mode here.
    #[arg(long)]
    pub amplitude_curves: Option<PathBuf>,
}

/// Sample count of the amplitude-curve grid over [0, omega_max].
const CURVE_SAMPLES: usize = 1000;

pub fn prevailing(args: &PrevailingArgs, ctx: &Ctx) -> Result<(), CliError> {
    if !(args.delta > 0.0) || !args.delta.is_finite() {
        return Err(CliError::config("`delta` must be positive"));
    }
    if !(args.omega_max > 0.0) || !args.omega_max.is_finite() {
        return Err(CliError::config("`omega-max` must be positive"));
    }
    if !(args.prestress >= 0.0) || !args.prestress.is_finite() {
        return Err(CliError::config("`P` must be nonnegative"));
    }
    if args.m_max == 0 {
        return Err(CliError::config("`m-max` must be at least 1"));
    }
    let geom = PlateGeometry::default();
    let table: Vec<LinearModeParams> =
        symmetric_mode_table(&geom, args.prestress, args.delta, args.m_max)?;
    let breaks = crossover_frequencies(args.prestress, args.delta, &table, args.omega_max);
    let mut edges = Vec::with_capacity(breaks.len() + 2);
    edges.push(0.0);
    edges.extend_from_slice(&breaks);
    edges.push(args.omega_max);
    let mut rows = Vec::with_capacity(edges.len() - 1);
    for pair in edges.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        rows.push(PrevailingRow {
            omega_lo: pair[0],
            omega_hi: pair[1],
            prevailing_m: prevailing_mode(mid, args.prestress, args.delta, &table)?,
        });
    }
    write_prevailing_csv(&args.out, &rows)?;
    let plot = plot_path(&args.out);
    let mut outputs: Vec<&Path> = vec![&args.out];
    if ctx.emit_plot {
        write_plot_script(&plot, &prevailing_plot(&file_name(&args.out)))?;
        outputs.push(&plot);
    }
    let curves_plot;
    if let Some(curves) = &args.amplitude_curves {
        let omegas: Vec<f64> = (0..=CURVE_SAMPLES)
            .map(|i| args.omega_max * i as f64 / CURVE_SAMPLES as f64)
            .collect();
        write_amplitude_curves_csv(curves, &table, &omegas)?;
        outputs.push(curves);
        if ctx.emit_plot {
            curves_plot = plot_path(curves);
            write_plot_script(&curves_plot, &amplitude_curves_plot(&file_name(curves), table.len()))?;
            outputs.push(&curves_plot);
        }
    }
    let params = serde_json::json!({
        "P": args.prestress,
        "delta": args.delta,
        "omega_max": args.omega_max,
        "m_max": args.m_max,
    });
    write_manifest(&args.out, "prevailing", params, &outputs)?;
    ctx.note(format!(
        "wrote {} ({} intervals, {} crossovers)",
        args.out.display(),
        rows.len(),
        breaks.len()
    ));
    Ok(())
}

#[derive(Debug, Args)]
pub struct ScaleArgs {
    /// JSON deck and wind description.
    #[arg(long)]
    pub config: PathBuf,
    /// Write the model coefficients here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn scale(args: &ScaleArgs, ctx: &Ctx) -> Result<(), CliError> {
    let deck: DeckConfig = load_json(&args.config)?;
    let model = nondimensionalize(&deck.to_physical())?;
    // Keys follow the simulate configuration schema, so the output can be
    // merged straight into a run file.
    let value = serde_json::json!({
        "delta": model.delta,
        "S": model.stretch,
        "ell": model.ell_nd,
        "sigma": model.sigma,
        "P": model.prestress,
        "forcing": {
            "variant": "sinusoid",
            "A": model.forcing_amp,
            "omega": model.forcing_omega,
        },
    });
    match &args.out {
        Some(out) => {
            write_json(out, &value)?;
            write_manifest(out, "scale", serde_json::to_value(deck)?, &[out])?;
            ctx.note(format!("wrote {}", out.display()));
        }
        None => println!("{value:#}"),
    }
    Ok(())
}
