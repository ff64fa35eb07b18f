//! Trajectory classification and certified asymptotic bounds.
//!
//! Torsional decay is judged on the norm pair ‖u_t^T‖_{L²} + ‖u^T‖_{H²*}
//! (modal sums over torsional coordinates). The bound reports evaluate a
//! chain of limsup estimates that hold for every solution with bounded
//! forcing: an energy bound E_α(∞), then L², stretched-L², kinetic, and H²*
//! bounds derived from it, each compared against the trailing-window sup of
//! the corresponding modal quantity. The decay threshold χ certifies
//! exponential torsional decay whenever limsup ‖u_x‖²_{L²} stays below it.

use crate::modal::{energy, ModalSystem, Trajectory};
use crate::num;
use crate::prelude::*;
use core::fmt;

/// Outcome of the torsional-decay test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionalDecay {
    Decayed,
    Persistent,
    Undetermined,
}

impl fmt::Display for TorsionalDecay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TorsionalDecay::Decayed => "decayed",
            TorsionalDecay::Persistent => "persistent",
            TorsionalDecay::Undetermined => "undetermined",
        };
        f.write_str(s)
    }
}

/// Classification of one trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityVerdict {
    pub torsional_decay: TorsionalDecay,
    /// Sup of the torsional norm pair over the trailing window.
    pub trailing_torsional_sup: f64,
    /// True when some torsional coordinate started at rest with
    /// |h_n(0)| ≥ 0.01, grew beyond 10·|h_n(0)| at some sample, and the
    /// trajectory nevertheless decayed.
    pub local_instability_flag: bool,
    /// Max over time and torsional coordinates of |h_n(t)|.
    pub peak_torsional_coord: f64,
    /// Fitted exponential rate of the squared torsional norm pair, when the
    /// verdict is Decayed and a fit is possible.
    pub decay_rate_estimate: Option<f64>,
}

/// One theoretical-vs-observed asymptotic bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bound_name: &'static str,
    pub theoretical_value: f64,
    pub observed_value: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StabilityError {
    /// The threshold requires 0 ≤ P < ν (the reference torsional eigenvalue).
    PrestressAtOrAboveTorsional { prestress: f64, nu: f64 },
    NonpositiveDamping,
}

impl fmt::Display for StabilityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityError::PrestressAtOrAboveTorsional { prestress, nu } => {
                write!(f, "prestress {prestress} must be below the torsional eigenvalue {nu}")
            }
            StabilityError::NonpositiveDamping => write!(f, "damping must be positive"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for StabilityError {}

/// ‖u_t^T‖_{L²} + ‖u^T‖_{H²*} at one sample, by modal sums.
fn torsional_norm_pair(sys: &ModalSystem, h: &[f64], v: &[f64]) -> f64 {
    let mut kinetic = 0.0;
    let mut bending = 0.0;
    for (k, mode) in sys.modes.iter().enumerate() {
        if mode.is_torsional() {
            kinetic += v[k] * v[k];
            bending += mode.lambda * h[k] * h[k];
        }
    }
    num::sqrt(kinetic) + num::sqrt(bending)
}

/// Squared variant ‖u^T‖²_{H²*} + ‖u_t^T‖²_{L²} used for rate fitting.
fn torsional_norm_squared(sys: &ModalSystem, h: &[f64], v: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (k, mode) in sys.modes.iter().enumerate() {
        if mode.is_torsional() {
            acc += v[k] * v[k] + mode.lambda * h[k] * h[k];
        }
    }
    acc
}

/// Classifies the torsional behavior of a trajectory.
///
/// Decayed: the sup of the torsional norm pair over the trailing window of
/// length `window` is below `tol` and at most 1% of the global max.
/// Persistent: the trailing sup exceeds 10% of the global max. Otherwise,
/// or when the trajectory covers fewer than 3 windows, Undetermined.
pub fn classify_trajectory(
    traj: &Trajectory,
    sys: &ModalSystem,
    window: f64,
    tol: f64,
) -> StabilityVerdict {
    let mut verdict = StabilityVerdict {
        torsional_decay: TorsionalDecay::Undetermined,
        trailing_torsional_sup: 0.0,
        local_instability_flag: false,
        peak_torsional_coord: 0.0,
        decay_rate_estimate: None,
    };
    let n = traj.samples.len();
    if n == 0 {
        return verdict;
    }
    let t_end = traj.samples[n - 1].t;
    let mut global_max = 0.0f64;
    let mut trailing_sup = 0.0f64;
    let mut peak_coord = 0.0f64;
    for s in &traj.samples {
        let pair = torsional_norm_pair(sys, &s.h, &s.hdot);
        global_max = num::max(global_max, pair);
        if s.t >= t_end - window {
            trailing_sup = num::max(trailing_sup, pair);
        }
        for (k, mode) in sys.modes.iter().enumerate() {
            if mode.is_torsional() {
                peak_coord = num::max(peak_coord, num::abs(s.h[k]));
            }
        }
    }
    verdict.trailing_torsional_sup = trailing_sup;
    verdict.peak_torsional_coord = peak_coord;
    if traj.duration() < 3.0 * window {
        return verdict;
    }
    verdict.torsional_decay = if trailing_sup < tol && trailing_sup <= 0.01 * global_max {
        TorsionalDecay::Decayed
    } else if trailing_sup > 0.1 * global_max {
        TorsionalDecay::Persistent
    } else {
        TorsionalDecay::Undetermined
    };
    if verdict.torsional_decay == TorsionalDecay::Decayed {
        let start = &traj.samples[0];
        for (k, mode) in sys.modes.iter().enumerate() {
            if !mode.is_torsional() {
                continue;
            }
            let h0 = num::abs(start.h[k]);
            if start.hdot[k] != 0.0 || 10.0 * h0 < 0.1 {
                continue;
            }
            let grew = traj
                .samples
                .iter()
                .any(|s| num::abs(s.h[k]) > 10.0 * h0);
            if grew {
                verdict.local_instability_flag = true;
                break;
            }
        }
        verdict.decay_rate_estimate = fit_decay_rate(traj, sys);
    }
    verdict
}

/// Least-squares exponential rate η of the squared torsional norm pair over
/// the trailing half of the trajectory: the norm behaves like e^{−ηt}, so η
/// is minus the fitted slope of its logarithm. Samples at or below underflow
/// level, and anything after the first such sample, are excluded.
pub fn fit_decay_rate(traj: &Trajectory, sys: &ModalSystem) -> Option<f64> {
    let n = traj.samples.len();
    if n < 4 {
        return None;
    }
    let t_end = traj.samples[n - 1].t;
    let t_mid = t_end - 0.5 * traj.duration();
    let mut ts: Vec<f64> = Vec::new();
    let mut logs: Vec<f64> = Vec::new();
    for s in &traj.samples {
        if s.t < t_mid {
            continue;
        }
        let q = torsional_norm_squared(sys, &s.h, &s.hdot);
        if q <= 1e-300 {
            break;
        }
        ts.push(s.t);
        logs.push(num::ln(q));
    }
    if ts.len() < 2 {
        return None;
    }
    let n = ts.len() as f64;
    let mean_t = ts.iter().sum::<f64>() / n;
    let mean_l = logs.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (t, l) in ts.iter().zip(&logs) {
        sxx += (t - mean_t) * (t - mean_t);
        sxy += (t - mean_t) * (l - mean_l);
    }
    if sxx == 0.0 {
        return None;
    }
    Some(-sxy / sxx)
}

/// Fraction of the horizon treated as "trailing" when operationalizing a
/// limsup.
const TRAILING_FRACTION: f64 = 0.25;

/// Minimum number of damping e-folds the horizon must cover before the
/// asymptotic bounds are considered observable.
const MIN_EFOLDS: f64 = 10.0;

fn trailing_start(traj: &Trajectory) -> f64 {
    let t_end = traj.samples[traj.samples.len() - 1].t;
    t_end - TRAILING_FRACTION * traj.duration()
}

/// Evaluates the certified limsup bounds against the trajectory.
///
/// `g_inf` is limsup_t ‖g(t)‖_{L²} (for modal forcing, √Σ_k g_k(t)²),
/// supplied by the caller since it is a property of the forcing. Returns one
/// report per bound, with the observed value being the trailing-window sup
/// of the matching modal quantity. Empty when the horizon is shorter than
/// 10/δ (the asymptotic regime is not observable) or the trajectory is
/// empty.
///
/// Bound chain (all with λ₁ the smallest retained eigenvalue and
/// Λ = λ₁ − P > 0):
/// * "energy": E_α(∞) ≤ Ē where (α, Ē) = (δ/2, 2g∞²/δ²) when δ² ≤ 4Λ,
///   else (δ/2 − √(δ² − 4Λ)/2, g∞²/(2Λ));
/// * "u_l2": ‖u‖²_{L²} ≤ Ψ := 4Ē/(√(Λ² + 4SĒ) + Λ);
/// * "ux_l2": ‖u_x‖²_{L²} ≤ (4Ē + 2α²Ψ)/(√(Λ² + 2S(2Ē + α²Ψ)) + Λ);
/// * "ut_l2": ‖u_t‖²_{L²} ≤ 2(2Ē + max_{s∈[0,Ψ]}((2α² − Λ)s − (S/2)s²)),
///   the λ = 1 member of a one-parameter family of kinetic bounds;
/// * "u_h2": ‖u‖²_{H²*} ≤ (2λ₁/Λ)(Ē + α²Ψ/2).
pub fn energy_bound_report(
    traj: &Trajectory,
    sys: &ModalSystem,
    g_inf: f64,
) -> Vec<BoundReport> {
    if traj.samples.is_empty() || !(sys.delta > 0.0) {
        return Vec::new();
    }
    if traj.duration() < MIN_EFOLDS / sys.delta {
        return Vec::new();
    }
    let delta = sys.delta;
    let lambda_1 = sys.lambda_min();
    let gap = lambda_1 - sys.prestress;
    let s_coef = sys.stretch;
    let (alpha, e_bar) = if delta * delta <= 4.0 * gap {
        (0.5 * delta, 2.0 * g_inf * g_inf / (delta * delta))
    } else {
        (
            0.5 * delta - 0.5 * num::sqrt(delta * delta - 4.0 * gap),
            g_inf * g_inf / (2.0 * gap),
        )
    };
    let psi = 4.0 * e_bar / (num::sqrt(gap * gap + 4.0 * s_coef * e_bar) + gap);
    let ux_num = 4.0 * e_bar + 2.0 * alpha * alpha * psi;
    let ux_bound = ux_num / (num::sqrt(gap * gap + 2.0 * s_coef * (2.0 * e_bar + alpha * alpha * psi)) + gap);
    let ut_bound = 2.0 * (2.0 * e_bar + parabola_max(2.0 * alpha * alpha - gap, s_coef, psi));
    let h2_bound = 2.0 * lambda_1 / gap * (e_bar + 0.5 * alpha * alpha * psi);

    let t_from = trailing_start(traj);
    let mut obs_energy = f64::NEG_INFINITY;
    let mut obs_l2 = 0.0f64;
    let mut obs_ux = 0.0f64;
    let mut obs_ut = 0.0f64;
    let mut obs_h2 = 0.0f64;
    for s in &traj.samples {
        if s.t < t_from {
            continue;
        }
        obs_energy = num::max(obs_energy, energy(sys, s, alpha).total);
        let mut l2 = 0.0;
        let mut ux = 0.0;
        let mut ut = 0.0;
        let mut h2 = 0.0;
        for (k, mode) in sys.modes.iter().enumerate() {
            let (h, v) = (s.h[k], s.hdot[k]);
            let mf = mode.m as f64;
            l2 += h * h;
            ux += mf * mf * h * h;
            ut += v * v;
            h2 += mode.lambda * h * h;
        }
        obs_l2 = num::max(obs_l2, l2);
        obs_ux = num::max(obs_ux, ux);
        obs_ut = num::max(obs_ut, ut);
        obs_h2 = num::max(obs_h2, h2);
    }
    let report = |name, theo: f64, obs: f64| BoundReport {
        bound_name: name,
        theoretical_value: theo,
        observed_value: obs,
        satisfied: obs <= theo * (1.0 + BOUND_TOL),
    };
    vec![
        report("energy", e_bar, obs_energy),
        report("u_l2", psi, obs_l2),
        report("ux_l2", ux_bound, obs_ux),
        report("ut_l2", ut_bound, obs_ut),
        report("u_h2", h2_bound, obs_h2),
    ]
}

/// Relative slack when comparing observed against theoretical bounds.
const BOUND_TOL: f64 = 1e-9;

/// max over s ∈ [0, cap] of c·s − (S/2)·s².
fn parabola_max(c: f64, s_coef: f64, cap: f64) -> f64 {
    let eval = |s: f64| c * s - 0.5 * s_coef * s * s;
    let mut best = num::max(eval(0.0), eval(cap));
    if s_coef > 0.0 {
        let vertex = c / s_coef;
        if vertex > 0.0 && vertex < cap {
            best = num::max(best, eval(vertex));
        }
    }
    best
}

/// Largest certified threshold χ on limsup ‖u_x‖²_{L²} below which the
/// torsional component decays exponentially:
///
///   χ = max over η ∈ (0, δ/2) of √(γ·K²/ν·[1 + max(4K/(δ−2η)², 1)]^{−1})/S,
///   K = ν − P − η(δ − η),
///
/// maximized over a 128-point geometric grid of η. `nu` is the lowest
/// torsional eigenvalue of the configuration (ν_{1,2} at default geometry)
/// and `gamma_const` the embedding constant, conservatively 1 − σ².
pub fn torsion_decay_threshold(
    delta: f64,
    prestress: f64,
    stretch: f64,
    nu: f64,
    gamma_const: f64,
) -> Result<f64, StabilityError> {
    if !(delta > 0.0) {
        return Err(StabilityError::NonpositiveDamping);
    }
    if !(prestress >= 0.0 && prestress < nu) {
        return Err(StabilityError::PrestressAtOrAboveTorsional { prestress, nu });
    }
    // η_j = (δ/2)·r^j sweeps (0, δ/2) densely toward 0, where the certified
    // threshold is largest.
    let half = 0.5 * delta;
    let ratio = num::pow(1e-10, 1.0 / 128.0);
    let mut best = 0.0f64;
    let mut eta = half;
    for _ in 0..128 {
        eta *= ratio;
        let k_margin = nu - prestress - eta * (delta - eta);
        if k_margin <= 0.0 {
            continue;
        }
        let gap = delta - 2.0 * eta;
        let penalty = 1.0 + num::max(4.0 * k_margin / (gap * gap), 1.0);
        let chi = num::sqrt(gamma_const * k_margin * k_margin / nu / penalty) / stretch;
        best = num::max(best, chi);
    }
    Ok(best)
}
