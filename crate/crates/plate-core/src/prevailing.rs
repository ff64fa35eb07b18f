//! Linear response of single modes to sinusoidal forcing and the
//! prevailing-mode map.
//!
//! Dropping the nonlinear stretching term and the coupling, each symmetric
//! longitudinal coordinate obeys a damped driven oscillator
//!
//!   S̈_k + δ Ṡ_k + (λ_k − P m²) S_k = γ_k W² sin(ωt),
//!   S_k(0) = Ṡ_k(0) = 0.
//!
//! The response amplitude in the sup norm is
//! A_k(ω) = γ_k ‖w_k‖_∞ / √((λ_k − Pm² − ω²)² + δ²ω²); the prevailing mode
//! at a forcing frequency ω is the k maximizing A_k(ω). Sweeping ω and
//! locating the argmax switches reproduces the frequency ranges in which
//! each mode dominates the linear response.

use crate::geometry::PlateGeometry;
use crate::num;
use crate::prelude::*;
use crate::spectrum::{self, SpectrumError};
use core::fmt;

/// Spectral data of one symmetric longitudinal mode together with the
/// analysis parameters entering its linear oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearModeParams {
    pub lambda_k: f64,
    pub m: u32,
    pub gamma_k: f64,
    pub sup_norm: f64,
    pub prestress: f64,
    pub delta: f64,
}

impl LinearModeParams {
    /// Validates positivity and the stiffness margin λ_k − P m² > 0.
    pub fn new(
        lambda_k: f64,
        m: u32,
        gamma_k: f64,
        sup_norm: f64,
        prestress: f64,
        delta: f64,
    ) -> Result<Self, PrevailingError> {
        let params = LinearModeParams {
            lambda_k,
            m,
            gamma_k,
            sup_norm,
            prestress,
            delta,
        };
        if !(lambda_k > 0.0 && gamma_k > 0.0 && sup_norm > 0.0 && delta > 0.0)
            || !(prestress >= 0.0)
            || !(params.stiffness() > 0.0)
        {
            return Err(PrevailingError::NonpositiveStiffness {
                lambda_k,
                m,
                prestress,
            });
        }
        Ok(params)
    }

    /// Effective linear stiffness λ_k − P m².
    pub fn stiffness(&self) -> f64 {
        let mf = self.m as f64;
        self.lambda_k - self.prestress * mf * mf
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PrevailingError {
    NonpositiveStiffness { lambda_k: f64, m: u32, prestress: f64 },
    EmptyModeTable,
    Spectrum(SpectrumError),
}

impl fmt::Display for PrevailingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrevailingError::NonpositiveStiffness { lambda_k, m, prestress } => write!(
                f,
                "mode (lambda = {lambda_k}, m = {m}) has nonpositive stiffness at prestress {prestress}"
            ),
            PrevailingError::EmptyModeTable => write!(f, "mode table is empty"),
            PrevailingError::Spectrum(e) => write!(f, "spectrum: {e}"),
        }
    }
}

impl From<SpectrumError> for PrevailingError {
    fn from(e: SpectrumError) -> Self {
        PrevailingError::Spectrum(e)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PrevailingError {}

/// |denominator|² of the frequency response: (c − ω²)² + δ²ω².
fn response_denom_sq(stiffness: f64, delta: f64, omega: f64) -> f64 {
    let detune = stiffness - omega * omega;
    detune * detune + delta * delta * omega * omega
}

/// Closed-form response S_k(t) of the driven mode from rest.
///
/// For 4(λ_k − Pm²) > δ² the solution is the steady sinusoid plus an
/// exponentially damped transient chosen so that S_k(0) = Ṡ_k(0) = 0. At or
/// beyond critical damping the closed form is inapplicable and the ODE is
/// integrated numerically instead.
pub fn linear_response(params: &LinearModeParams, w_speed: f64, omega: f64, t: f64) -> f64 {
    let c = params.stiffness();
    let delta = params.delta;
    let drive = params.gamma_k * w_speed * w_speed;
    if 4.0 * c > delta * delta {
        let r = drive / response_denom_sq(c, delta, omega);
        let detune = c - omega * omega;
        let steady = r * (detune * num::sin(omega * t) - delta * omega * num::cos(omega * t));
        let omega_d = num::sqrt(c - 0.25 * delta * delta);
        // Grouped as in `steady` so the two cancel exactly at t = 0.
        let c1 = r * (delta * omega);
        let c2 = r * omega * (0.5 * delta * delta - detune) / omega_d;
        let transient =
            num::exp(-0.5 * delta * t) * (c1 * num::cos(omega_d * t) + c2 * num::sin(omega_d * t));
        steady + transient
    } else {
        overdamped_response(c, delta, drive, omega, t)
    }
}

/// Fixed-step fourth-order integration of
/// s̈ + δṡ + c·s = drive·sin(ωt) from rest, used past critical damping.
fn overdamped_response(c: f64, delta: f64, drive: f64, omega: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let scale = num::max(num::max(omega, num::sqrt(num::abs(c))), num::max(delta, 1.0));
    let dt_target = 0.01 / scale;
    let n = num::max(1.0, num::ceil(num::abs(t) / dt_target)) as usize;
    let dt = t / n as f64;
    let accel = |tau: f64, s: f64, v: f64| drive * num::sin(omega * tau) - delta * v - c * s;
    let mut tau = 0.0;
    let mut s = 0.0;
    let mut v = 0.0;
    for _ in 0..n {
        let k1s = v;
        let k1v = accel(tau, s, v);
        let k2s = v + 0.5 * dt * k1v;
        let k2v = accel(tau + 0.5 * dt, s + 0.5 * dt * k1s, v + 0.5 * dt * k1v);
        let k3s = v + 0.5 * dt * k2v;
        let k3v = accel(tau + 0.5 * dt, s + 0.5 * dt * k2s, v + 0.5 * dt * k2v);
        let k4s = v + dt * k3v;
        let k4v = accel(tau + dt, s + dt * k3s, v + dt * k3v);
        s += dt / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        tau += dt;
    }
    s
}

/// Response amplitude A_k(ω) = γ_k ‖w_k‖_∞ / √((λ_k − Pm² − ω²)² + δ²ω²).
pub fn amplitude(params: &LinearModeParams, omega: f64) -> f64 {
    amplitude_at(params, params.prestress, params.delta, omega)
}

/// Amplitude with the prestress and damping of the table entry overridden,
/// so one spectral table serves several analysis settings.
fn amplitude_at(params: &LinearModeParams, prestress: f64, delta: f64, omega: f64) -> f64 {
    let mf = params.m as f64;
    let c = params.lambda_k - prestress * mf * mf;
    params.gamma_k * params.sup_norm / num::sqrt(response_denom_sq(c, delta, omega))
}

/// Index into `mode_table` of the largest amplitude at ω; ties go to the
/// earliest entry.
fn argmax_amplitude(mode_table: &[LinearModeParams], prestress: f64, delta: f64, omega: f64) -> usize {
    let mut best = 0;
    let mut best_amp = amplitude_at(&mode_table[0], prestress, delta, omega);
    for (i, params) in mode_table.iter().enumerate().skip(1) {
        let amp = amplitude_at(params, prestress, delta, omega);
        if amp > best_amp {
            best = i;
            best_amp = amp;
        }
    }
    best
}

/// Wavenumber m of the mode with the largest response amplitude at ω.
/// Ties break toward the earlier table entry, so with the table sorted by
/// eigenvalue the smaller mode wins.
pub fn prevailing_mode(
    omega: f64,
    prestress: f64,
    delta: f64,
    mode_table: &[LinearModeParams],
) -> Result<u32, PrevailingError> {
    if mode_table.is_empty() {
        return Err(PrevailingError::EmptyModeTable);
    }
    Ok(mode_table[argmax_amplitude(mode_table, prestress, delta, omega)].m)
}

/// Scan step used to bracket argmax switches of the amplitude curves.
const CROSSOVER_SCAN_STEP: f64 = 0.01;
/// Bisection interval width at which a crossing is considered located.
const CROSSOVER_TOL: f64 = 1e-6;

/// Frequencies in (0, ω_max] at which the prevailing mode changes,
/// ascending. Each switch is bracketed by a uniform scan and refined by
/// bisection on the amplitude difference of the two competing modes.
pub fn crossover_frequencies(
    prestress: f64,
    delta: f64,
    mode_table: &[LinearModeParams],
    omega_max: f64,
) -> Vec<f64> {
    let mut breakpoints = Vec::new();
    if mode_table.is_empty() || !(omega_max > 0.0) {
        return breakpoints;
    }
    let mut prev_omega = 0.0;
    let mut prev_idx = argmax_amplitude(mode_table, prestress, delta, prev_omega);
    let steps = num::ceil(omega_max / CROSSOVER_SCAN_STEP) as usize;
    for i in 1..=steps {
        let omega = num::min(i as f64 * CROSSOVER_SCAN_STEP, omega_max);
        let idx = argmax_amplitude(mode_table, prestress, delta, omega);
        if idx != prev_idx {
            let gap = |w: f64| {
                amplitude_at(&mode_table[idx], prestress, delta, w)
                    - amplitude_at(&mode_table[prev_idx], prestress, delta, w)
            };
            let mut lo = prev_omega;
            let mut hi = omega;
            while hi - lo > CROSSOVER_TOL {
                let mid = 0.5 * (lo + hi);
                if gap(mid) > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            breakpoints.push(0.5 * (lo + hi));
            prev_idx = idx;
        }
        prev_omega = omega;
    }
    breakpoints
}

/// ω = St·W/H, the shedding frequency of wind at speed W past a deck of
/// frontal height H.
pub fn wind_to_frequency(w_speed: f64, strouhal: f64, height: f64) -> f64 {
    strouhal * w_speed / height
}

/// Builds the table of symmetric longitudinal modes (odd m, first branch)
/// up to and including wavenumber `m_max`, sorted by eigenvalue.
pub fn symmetric_mode_table(
    geom: &PlateGeometry,
    prestress: f64,
    delta: f64,
    m_max: u32,
) -> Result<Vec<LinearModeParams>, PrevailingError> {
    let mut table = Vec::new();
    let mut m = 1;
    while m <= m_max {
        let mode = spectrum::solve_mu(m, 1, geom)?;
        table.push(LinearModeParams::new(
            mode.lambda,
            m,
            mode.gamma,
            mode.sup_norm,
            prestress,
            delta,
        )?);
        m += 2;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_mode() -> LinearModeParams {
        LinearModeParams::new(0.9702, 1, 0.0326599, 2.764, 0.0, 0.58).unwrap()
    }

    fn synthetic_table(delta: f64) -> Vec<LinearModeParams> {
        vec![
            LinearModeParams::new(1.0, 1, 1.0, 1.0, 0.0, delta).unwrap(),
            LinearModeParams::new(100.0, 3, 0.5, 5.0, 0.0, delta).unwrap(),
        ]
    }

    #[test]
    fn response_starts_from_rest() {
        let p = sample_mode();
        let s0 = linear_response(&p, 10.0, 3.0, 0.0);
        assert_eq!(s0, 0.0);
        let h = 1e-6;
        let sdot = (linear_response(&p, 10.0, 3.0, h) - s0) / h;
        assert!(sdot.abs() < 1e-4);
    }

    #[test]
    fn zero_wind_zero_response() {
        let p = sample_mode();
        for i in 0..10 {
            assert_eq!(linear_response(&p, 0.0, 3.0, i as f64), 0.0);
        }
    }

    #[test]
    fn closed_form_satisfies_the_oscillator_equation() {
        let p = sample_mode();
        let (w, omega) = (7.0, 2.5);
        let h = 1e-4;
        for &t in &[0.3, 1.7, 4.0, 11.0] {
            let sm = linear_response(&p, w, omega, t - h);
            let s0 = linear_response(&p, w, omega, t);
            let sp = linear_response(&p, w, omega, t + h);
            let sdd = (sp - 2.0 * s0 + sm) / (h * h);
            let sd = (sp - sm) / (2.0 * h);
            let residual = sdd + p.delta * sd + p.stiffness() * s0
                - p.gamma_k * w * w * num::sin(omega * t);
            assert!(residual.abs() < 1e-5, "residual {residual} at t = {t}");
        }
    }

    #[test]
    fn steady_amplitude_matches_formula() {
        let p = sample_mode();
        let (w, omega) = (10.0, 3.0);
        // After many damping times the transient is negligible; sample one
        // forcing period densely.
        let t0 = 60.0;
        let period = 2.0 * core::f64::consts::PI / omega;
        let mut max_abs = 0.0f64;
        for i in 0..=4000 {
            let t = t0 + period * i as f64 / 4000.0;
            max_abs = num::max(max_abs, num::abs(linear_response(&p, w, omega, t)));
        }
        let expected =
            p.gamma_k * w * w / num::sqrt(response_denom_sq(p.stiffness(), p.delta, omega));
        assert!((max_abs - expected).abs() <= 1e-6 * expected);
    }

    #[test]
    fn overdamped_fallback_matches_independent_solution() {
        // delta² > 4c: distinct real roots r± of r² + δr + c = 0.
        let p = LinearModeParams::new(1.0, 1, 0.5, 1.0, 0.0, 4.0).unwrap();
        let (w, omega) = (3.0, 2.0);
        let c = p.stiffness();
        let drive = p.gamma_k * w * w;
        let disc = num::sqrt(p.delta * p.delta - 4.0 * c);
        let (r1, r2) = (0.5 * (-p.delta + disc), 0.5 * (-p.delta - disc));
        let r = drive / response_denom_sq(c, p.delta, omega);
        let detune = c - omega * omega;
        let sp0 = -r * p.delta * omega;
        let spd0 = r * detune * omega;
        // a + b = −S_p(0), r1·a + r2·b = −Ṡ_p(0).
        let b = (-spd0 + r1 * sp0) / (r2 - r1);
        let a = -sp0 - b;
        for &t in &[0.5, 2.0, 8.0] {
            let exact = r * (detune * num::sin(omega * t) - p.delta * omega * num::cos(omega * t))
                + a * num::exp(r1 * t)
                + b * num::exp(r2 * t);
            let got = linear_response(&p, w, omega, t);
            assert!((got - exact).abs() < 1e-7, "t = {t}: {got} vs {exact}");
        }
    }

    #[test]
    fn amplitude_zero_coupling_is_zero() {
        let mut p = sample_mode();
        p.gamma_k = 0.0;
        for i in 0..20 {
            assert_eq!(amplitude(&p, 0.5 * i as f64), 0.0);
        }
    }

    #[test]
    fn amplitude_static_limit() {
        let p = sample_mode();
        let a0 = amplitude(&p, 0.0);
        let expected = p.gamma_k * p.sup_norm / p.lambda_k;
        assert!((a0 - expected).abs() <= 1e-15 * expected);
    }

    #[test]
    fn amplitude_peaks_at_damped_resonance() {
        let p = LinearModeParams::new(50.0, 1, 1.0, 1.0, 0.0, 0.58).unwrap();
        let peak = num::sqrt(p.stiffness() - 0.5 * p.delta * p.delta);
        let at_peak = amplitude(&p, peak);
        assert!(at_peak > amplitude(&p, peak - 1e-3));
        assert!(at_peak > amplitude(&p, peak + 1e-3));
    }

    #[test]
    fn prevailing_mode_switches_at_resonance() {
        let table = synthetic_table(0.1);
        assert_eq!(prevailing_mode(0.5, 0.0, 0.1, &table).unwrap(), 1);
        assert_eq!(prevailing_mode(10.0, 0.0, 0.1, &table).unwrap(), 3);
    }

    #[test]
    fn prevailing_mode_tie_prefers_earlier_entry() {
        let dup = LinearModeParams::new(1.0, 1, 1.0, 1.0, 0.0, 0.1).unwrap();
        let mut second = dup;
        second.m = 5;
        let table = vec![dup, second];
        assert_eq!(prevailing_mode(2.0, 0.0, 0.1, &table).unwrap(), 1);
    }

    #[test]
    fn empty_table_rejected() {
        assert!(matches!(
            prevailing_mode(1.0, 0.0, 0.58, &[]),
            Err(PrevailingError::EmptyModeTable)
        ));
    }

    #[test]
    fn crossover_is_an_amplitude_crossing() {
        let table = synthetic_table(0.1);
        let breaks = crossover_frequencies(0.0, 0.1, &table, 12.0);
        assert_eq!(breaks.len(), 1);
        let w = breaks[0];
        let gap = amplitude_at(&table[0], 0.0, 0.1, w) - amplitude_at(&table[1], 0.0, 0.1, w);
        let scale = amplitude_at(&table[0], 0.0, 0.1, w);
        assert!(gap.abs() < 1e-4 * scale, "gap {gap} at {w}");
    }

    #[test]
    fn crossovers_ascend() {
        let table = synthetic_table(0.3);
        let breaks = crossover_frequencies(0.0, 0.3, &table, 12.0);
        for pair in breaks.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn shedding_frequency_is_linear_in_wind() {
        assert_eq!(wind_to_frequency(10.0, 0.2, 1.0), 2.0);
        assert_eq!(wind_to_frequency(20.0, 0.2, 1.0), 4.0);
        assert_eq!(wind_to_frequency(10.0, 0.2, 2.0), 1.0);
    }

    #[test]
    fn stiffness_invariant_enforced() {
        assert!(LinearModeParams::new(1.0, 2, 0.1, 1.0, 0.5, 0.58).is_err());
        assert!(LinearModeParams::new(1.0, 1, 0.1, 1.0, 0.5, 0.58).is_ok());
    }
}
