//! Command-line front end for the plate model: spectrum tables, modal
//! trajectory simulation, exact-benchmark verification, stability atlases,
//! resonance tables, and physical parameter scaling.

// Negated comparisons like `!(x > 0.0)` are deliberate: they reject NaN,
// which the suggested `x <= 0.0` rewrite would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod output;

use clap::{Parser, Subcommand};

use commands::{
    Ctx, PrevailingArgs, ScaleArgs, SimulateArgs, SpectrumArgs, StabilityScanArgs,
    VerifyExactArgs,
};

#[derive(Parser)]
#[command(
    name = "plate-modes",
    version,
    about = "Spectral and dynamical analysis of a rectangular plate model",
    propagate_version = true
)]
struct Cli {
    /// Suppress summary lines on stdout.
    #[arg(long, global = true)]
    quiet: bool,
    /// Write a gnuplot companion script next to each file output.
    #[arg(long, global = true)]
    emit_plot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the lowest eigenvalues with their mode data.
    Spectrum(SpectrumArgs),
    /// Integrate a modal system described by a JSON configuration.
    Simulate(SimulateArgs),
    /// Check the integrator against the closed-form periodic orbit.
    VerifyExact(VerifyExactArgs),
    /// Classify torsional behavior over an amplitude-frequency grid.
    StabilityScan(StabilityScanArgs),
    /// Tabulate which mode dominates the linear response per frequency band.
    Prevailing(PrevailingArgs),
    /// Convert dimensional deck parameters to model coefficients.
    Scale(ScaleArgs),
}

fn main() {
    // Rust starts with SIGPIPE ignored, so `plate-modes ... | head` would
    // panic on the closed pipe; restore the default quiet termination.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let ctx = Ctx {
        quiet: cli.quiet,
        emit_plot: cli.emit_plot,
    };
    let result = match &cli.command {
        Command::Spectrum(args) => commands::spectrum(args, &ctx),
        Command::Simulate(args) => commands::simulate(args, &ctx),
        Command::VerifyExact(args) => commands::verify_exact(args, &ctx),
        Command::StabilityScan(args) => commands::stability_scan(args, &ctx),
        Command::Prevailing(args) => commands::prevailing(args, &ctx),
        Command::Scale(args) => commands::scale(args, &ctx),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
