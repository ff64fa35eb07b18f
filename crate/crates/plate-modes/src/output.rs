//! Deterministic artifact writers: CSV time series, JSON tables, the run
//! manifest, and gnuplot companion scripts. Floats are printed in shortest
//! round-trip form so identical runs produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use plate_core::modal::{ModalSystem, Trajectory};
use plate_core::prevailing::{amplitude, LinearModeParams};
use plate_core::spectrum::Eigenmode;

use crate::error::CliError;

/// Shortest round-trip decimal, switching to scientific notation outside
/// [1e-4, 1e16) so deeply decayed values never print as long zero runs.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Companion gnuplot script path: the output path with a .gnuplot extension.
pub fn plot_path(out: &Path) -> PathBuf {
    out.with_extension("gnuplot")
}

/// File name component used in manifests and plot scripts, so the artifacts
/// reference each other relative to their shared directory.
pub fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string_lossy().into_owned())
}

/// Writes manifest.json next to `primary_out`, recording the tool version,
/// the subcommand, its effective parameters, and the artifact file names.
pub fn write_manifest(
    primary_out: &Path,
    command: &str,
    parameters: serde_json::Value,
    outputs: &[&Path],
) -> Result<PathBuf, CliError> {
    let names: Vec<String> = outputs.iter().map(|p| file_name(p)).collect();
    let manifest = serde_json::json!({
        "tool": "plate-modes",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "parameters": parameters,
        "outputs": names,
    });
    let dir = primary_out.parent().unwrap_or_else(|| Path::new("."));
    let path = dir.join("manifest.json");
    fs::write(&path, format!("{manifest:#}\n"))?;
    Ok(path)
}

/// Trajectory CSV: t, h_1..h_K, hdot_1..hdot_K, and when energies were
/// recorded E_total, E_L, E_T, E_C.
pub fn write_trajectory_csv(
    path: &Path,
    sys: &ModalSystem,
    traj: &Trajectory,
) -> Result<(), CliError> {
    let dim = sys.dim();
    let mut out = String::from("t");
    for i in 1..=dim {
        let _ = write!(out, ",h_{i}");
    }
    for i in 1..=dim {
        let _ = write!(out, ",hdot_{i}");
    }
    if traj.energy.is_some() {
        out.push_str(",E_total,E_L,E_T,E_C");
    }
    out.push('\n');
    for (i, s) in traj.samples.iter().enumerate() {
        out.push_str(&fmt_f64(s.t));
        for &h in &s.h {
            out.push(',');
            out.push_str(&fmt_f64(h));
        }
        for &v in &s.hdot {
            out.push(',');
            out.push_str(&fmt_f64(v));
        }
        if let Some(energies) = &traj.energy {
            let e = &energies[i];
            for value in [e.total, e.longitudinal, e.torsional, e.coupling] {
                out.push(',');
                out.push_str(&fmt_f64(value));
            }
        }
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// One grid point of a stability scan.
pub struct AtlasRow {
    pub amplitude: f64,
    pub omega: f64,
    pub verdict: String,
    pub peak_torsional: f64,
    pub eta_fit: Option<f64>,
}

/// Atlas CSV: A, omega, verdict, peak_torsional, eta_fit (empty when no
/// decay rate was fitted).
pub fn write_atlas_csv(path: &Path, rows: &[AtlasRow]) -> Result<(), CliError> {
    let mut out = String::from("A,omega,verdict,peak_torsional,eta_fit\n");
    for row in rows {
        let _ = write!(
            out,
            "{},{},{},{}",
            fmt_f64(row.amplitude),
            fmt_f64(row.omega),
            row.verdict,
            fmt_f64(row.peak_torsional)
        );
        out.push(',');
        if let Some(eta) = row.eta_fit {
            out.push_str(&fmt_f64(eta));
        }
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// One frequency interval on which a single mode dominates the linear
/// response.
pub struct PrevailingRow {
    pub omega_lo: f64,
    pub omega_hi: f64,
    pub prevailing_m: u32,
}

pub fn write_prevailing_csv(path: &Path, rows: &[PrevailingRow]) -> Result<(), CliError> {
    let mut out = String::from("omega_lo,omega_hi,prevailing_m\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_f64(row.omega_lo),
            fmt_f64(row.omega_hi),
            row.prevailing_m
        );
    }
    fs::write(path, out)?;
    Ok(())
}

/// Response amplitude curves A_m(omega) sampled on a uniform grid, one
/// column per table mode.
pub fn write_amplitude_curves_csv(
    path: &Path,
    table: &[LinearModeParams],
    omegas: &[f64],
) -> Result<(), CliError> {
    let mut out = String::from("omega");
    for params in table {
        let _ = write!(out, ",A_{}", params.m);
    }
    out.push('\n');
    for &omega in omegas {
        out.push_str(&fmt_f64(omega));
        for params in table {
            out.push(',');
            out.push_str(&fmt_f64(amplitude(params, omega)));
        }
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// JSON rows for the spectrum table.
pub fn spectrum_json(modes: &[Eigenmode]) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = modes
        .iter()
        .map(|e| {
            serde_json::json!({
                "kind": if e.is_torsional() { "nu" } else { "mu" },
                "m": e.m,
                "k": e.k(),
                "lambda": e.lambda,
                "sqrt_lambda": e.s(),
                "gamma": e.gamma,
                "sup_norm": e.sup_norm,
                "norm_const": e.norm_const,
            })
        })
        .collect();
    serde_json::Value::Array(rows)
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    fs::write(path, format!("{value:#}\n"))?;
    Ok(())
}

/// Fixed-width text table of eigenmodes, one row per mode, ascending.
pub fn spectrum_table(modes: &[Eigenmode]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>3}  {:<10} {:>3} {:>3} {:>14} {:>14} {:>12} {:>12}",
        "#", "mode", "m", "k", "sqrt_lambda", "lambda", "gamma", "sup_norm"
    );
    for (i, e) in modes.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>3}  {:<10} {:>3} {:>3} {:>14.6} {:>14.4} {:>12.6} {:>12.4}",
            i + 1,
            e.kind.to_string(),
            e.m,
            e.k(),
            e.s(),
            e.lambda,
            e.gamma,
            e.sup_norm
        );
    }
    out
}

const PLOT_PREAMBLE: &str = "set datafile separator ','\nset key autotitle columnhead\nset grid\n";

pub fn write_plot_script(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body)?;
    Ok(())
}

/// Modal coordinates against time, one line per retained mode.
pub fn trajectory_plot(csv: &str, dim: usize) -> String {
    let mut plots = Vec::with_capacity(dim);
    for i in 0..dim {
        plots.push(format!("'{csv}' using 1:{} with lines", i + 2));
    }
    format!(
        "{PLOT_PREAMBLE}set xlabel 't'\nset ylabel 'modal coordinate'\nplot {}\n",
        plots.join(", \\\n     ")
    )
}

/// Scatter of the scan grid colored by peak torsional coordinate.
pub fn atlas_plot(csv: &str) -> String {
    format!(
        "{PLOT_PREAMBLE}set xlabel 'omega'\nset ylabel 'A'\nset cblabel 'peak torsional'\n\
         plot '{csv}' using 2:1:4 with points pt 7 palette notitle\n"
    )
}

/// Step plot of the prevailing wavenumber against forcing frequency.
pub fn prevailing_plot(csv: &str) -> String {
    format!(
        "{PLOT_PREAMBLE}set xlabel 'omega'\nset ylabel 'prevailing m'\n\
         plot '{csv}' using 1:3 with steps notitle\n"
    )
}

/// Response amplitude curves on a log scale, one line per mode column.
pub fn amplitude_curves_plot(csv: &str, n_modes: usize) -> String {
    let mut plots = Vec::with_capacity(n_modes);
    for i in 0..n_modes {
        plots.push(format!("'{csv}' using 1:{} with lines", i + 2));
    }
    format!(
        "{PLOT_PREAMBLE}set xlabel 'omega'\nset ylabel 'A_m(omega)'\nset logscale y\nplot {}\n",
        plots.join(", \\\n     ")
    )
}

/// Eigenvalue staircase with the data inlined, torsional modes in a second
/// color.
pub fn spectrum_plot(modes: &[Eigenmode]) -> String {
    let mut data = String::new();
    for (i, e) in modes.iter().enumerate() {
        let _ = writeln!(
            data,
            "{} {} {}",
            i + 1,
            fmt_f64(e.s()),
            1 + u8::from(e.is_torsional())
        );
    }
    format!(
        "$spectrum << EOD\n{data}EOD\nset xlabel 'index'\nset ylabel 'sqrt(lambda)'\nset grid\n\
         plot $spectrum using 1:2:3 with points pt 7 lc variable notitle\n"
    )
}

/// Side-by-side comparison of an integrated coordinate and its closed form.
pub fn comparison_plot(csv: &str) -> String {
    format!(
        "{PLOT_PREAMBLE}set xlabel 't'\nplot '{csv}' using 1:2 with lines, \\\n     \
         '{csv}' using 1:3 with lines dashtype 2\n"
    )
}
