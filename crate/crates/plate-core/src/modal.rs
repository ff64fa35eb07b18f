//! Reduced modal dynamics of the plate.
//!
//! Expanding the deflection u(ξ, t) = Σ_k h_k(t)·w_k(ξ) over normalized
//! eigenmodes turns the plate equation into the coupled system
//!
//!   ḧ_k + δ·ḣ_k + λ_k·h_k + m_k²·[−P + S·Σ_j m_j² h_j²]·h_k = g_k(t),
//!
//! whose only nonlinearity is the shared stretching sum Σ_j m_j² h_j². The
//! module assembles truncated systems (including the driven two-mode
//! longitudinal/torsional pairs used throughout the stability experiments),
//! integrates them with a classical fourth-order one-step scheme (fixed step,
//! optional step-doubling adaptivity), and evaluates the energy functional
//!
//!   E_α = ½‖u_t‖² + ½‖u‖²_{H²*} − (P/2)‖u_x‖² + (S/4)‖u_x‖⁴ + α∫u·u_t
//!
//! split into longitudinal, torsional, and coupling parts via modal sums.

use crate::elliptic::{self, Modulus};
use crate::geometry::PlateGeometry;
use crate::num;
use crate::prelude::*;
use crate::spectrum::{self, Eigenmode, ModeKind, SpectrumError};
use core::fmt;

/// Slim per-mode record kept by a [`ModalSystem`]: everything the dynamics
/// needs (eigenvalue, x-wavenumber, parity class), nothing it does not.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetainedMode {
    pub kind: ModeKind,
    pub lambda: f64,
    pub m: u32,
}

impl RetainedMode {
    pub fn is_torsional(&self) -> bool {
        self.kind.is_torsional()
    }

    fn m_squared(&self) -> f64 {
        let mf = self.m as f64;
        mf * mf
    }
}

impl From<&Eigenmode> for RetainedMode {
    fn from(mode: &Eigenmode) -> Self {
        RetainedMode {
            kind: mode.kind,
            lambda: mode.lambda,
            m: mode.m,
        }
    }
}

/// Scalar forcing g_k(t) attached to one retained mode.
#[derive(Debug, Clone, PartialEq)]
pub enum ForcingSpec {
    Zero,
    /// amplitude·sin(omega·t).
    Sinusoid { amplitude: f64, omega: f64 },
    /// amplitude·b·sn(b·t, k)·dn(b·t, k), the waveform whose driven response
    /// is the closed-form cn orbit; construction keeps k² < 1/2.
    EllipticCnDrive { amplitude: f64, b: f64, k: Modulus },
    /// Piecewise-linear interpolation of (t, value) samples sorted by t;
    /// zero outside the sampled range.
    Custom { samples: Vec<(f64, f64)> },
}

impl ForcingSpec {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            ForcingSpec::Zero => 0.0,
            ForcingSpec::Sinusoid { amplitude, omega } => amplitude * num::sin(omega * t),
            ForcingSpec::EllipticCnDrive { amplitude, b, k } => {
                let (sn, _, dn) = elliptic::jacobi(b * t, *k);
                amplitude * b * sn * dn
            }
            ForcingSpec::Custom { samples } => {
                let n = samples.len();
                if n == 0 || t < samples[0].0 || t > samples[n - 1].0 {
                    return 0.0;
                }
                let pos = samples.partition_point(|&(ts, _)| ts <= t);
                if pos == 0 {
                    return samples[0].1;
                }
                if pos == n {
                    return samples[n - 1].1;
                }
                let (t0, v0) = samples[pos - 1];
                let (t1, v1) = samples[pos];
                if t1 == t0 {
                    return v0;
                }
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ForcingSpec::Zero)
    }
}

/// Truncated modal system: retained modes, damping δ, prestress P, stretch
/// coefficient S, and one forcing per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalSystem {
    pub modes: Vec<RetainedMode>,
    pub delta: f64,
    pub prestress: f64,
    pub stretch: f64,
    pub forcing: Vec<ForcingSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModalError {
    Spectrum(SpectrumError),
    EmptySystem,
    /// Modes must be strictly increasing in λ.
    UnsortedModes,
    DimensionMismatch { expected: usize, got: usize },
    /// Requires 0 ≤ P < λ_1.
    PrestressTooLarge { prestress: f64, lambda_1: f64 },
    NegativeStretch,
    NegativeDamping,
    NonpositiveAmplitude,
    BadTimeStep { dt: f64 },
    /// Fixed-step safety cap dt·√λ_max ≤ 0.1 violated.
    StepTooLarge { dt: f64, lambda_max: f64 },
    BadTimeSpan { t_start: f64, t_end: f64 },
    /// Adaptive stepping contracted below resolvable width.
    StepUnderflow { t: f64 },
    /// Non-finite state; the trajectory up to the failure is preserved.
    BlowUp { t: f64, partial: Trajectory },
}

impl fmt::Display for ModalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModalError::Spectrum(e) => write!(f, "{e}"),
            ModalError::EmptySystem => write!(f, "modal system retains no modes"),
            ModalError::UnsortedModes => {
                write!(f, "retained modes must be distinct and sorted by eigenvalue")
            }
            ModalError::DimensionMismatch { expected, got } => {
                write!(f, "state dimension {got} does not match system dimension {expected}")
            }
            ModalError::PrestressTooLarge { prestress, lambda_1 } => {
                write!(f, "prestress {prestress} must satisfy 0 <= P < lambda_1 = {lambda_1}")
            }
            ModalError::NegativeStretch => write!(f, "stretch coefficient must be nonnegative"),
            ModalError::NegativeDamping => write!(f, "damping must be nonnegative"),
            ModalError::NonpositiveAmplitude => write!(f, "forcing amplitude must be positive"),
            ModalError::BadTimeStep { dt } => write!(f, "time step {dt} must be positive"),
            ModalError::StepTooLarge { dt, lambda_max } => {
                write!(
                    f,
                    "dt too large for stiffest mode: dt*sqrt(lambda_max) = {} > 0.1",
                    dt * num::sqrt(*lambda_max)
                )
            }
            ModalError::BadTimeSpan { t_start, t_end } => {
                write!(f, "integration span ({t_start}, {t_end}] is empty")
            }
            ModalError::StepUnderflow { t } => {
                write!(f, "adaptive step size underflow at t = {t}")
            }
            ModalError::BlowUp { t, .. } => write!(f, "blow-up detected at t = {t}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ModalError {}

impl From<SpectrumError> for ModalError {
    fn from(e: SpectrumError) -> Self {
        ModalError::Spectrum(e)
    }
}

impl ModalSystem {
    /// Validates the invariants: modes non-empty and strictly λ-sorted,
    /// δ ≥ 0, S ≥ 0, 0 ≤ P < λ_1, one forcing per mode.
    pub fn new(
        modes: Vec<RetainedMode>,
        delta: f64,
        prestress: f64,
        stretch: f64,
        forcing: Vec<ForcingSpec>,
    ) -> Result<Self, ModalError> {
        if modes.is_empty() {
            return Err(ModalError::EmptySystem);
        }
        if modes.windows(2).any(|w| !(w[0].lambda < w[1].lambda)) {
            return Err(ModalError::UnsortedModes);
        }
        if forcing.len() != modes.len() {
            return Err(ModalError::DimensionMismatch {
                expected: modes.len(),
                got: forcing.len(),
            });
        }
        if !(delta >= 0.0) {
            return Err(ModalError::NegativeDamping);
        }
        if !(stretch >= 0.0) {
            return Err(ModalError::NegativeStretch);
        }
        let lambda_1 = modes[0].lambda;
        if !(prestress >= 0.0 && prestress < lambda_1) {
            return Err(ModalError::PrestressTooLarge {
                prestress,
                lambda_1,
            });
        }
        Ok(ModalSystem {
            modes,
            delta,
            prestress,
            stretch,
            forcing,
        })
    }

    pub fn dim(&self) -> usize {
        self.modes.len()
    }

    pub fn lambda_min(&self) -> f64 {
        self.modes[0].lambda
    }

    pub fn lambda_max(&self) -> f64 {
        self.modes[self.modes.len() - 1].lambda
    }

    /// Σ_j m_j² h_j², the nonlocal stretching sum shared by every equation.
    pub fn stretch_sum(&self, h: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (mode, hk) in self.modes.iter().zip(h) {
            acc += mode.m_squared() * hk * hk;
        }
        acc
    }

    pub fn forcing_at(&self, index: usize, t: f64) -> f64 {
        self.forcing[index].eval(t)
    }
}

/// Instantaneous state (t, h, ḣ) of a modal system.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalState {
    pub t: f64,
    pub h: Vec<f64>,
    pub hdot: Vec<f64>,
}

impl ModalState {
    pub fn new(t: f64, h: Vec<f64>, hdot: Vec<f64>) -> Self {
        ModalState { t, h, hdot }
    }

    /// All coordinates and velocities zero.
    pub fn rest(dim: usize) -> Self {
        ModalState {
            t: 0.0,
            h: vec![0.0; dim],
            hdot: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.h.len()
    }
}

/// Energy functional value split by mode parity: total = longitudinal +
/// torsional + coupling to round-off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub alpha: f64,
    pub total: f64,
    pub longitudinal: f64,
    pub torsional: f64,
    pub coupling: f64,
}

/// Time-ordered sequence of states with optional per-sample energies.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub samples: Vec<ModalState>,
    pub energy: Option<Vec<EnergyBreakdown>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> Option<&ModalState> {
        self.samples.first()
    }

    pub fn last(&self) -> Option<&ModalState> {
        self.samples.last()
    }

    pub fn duration(&self) -> f64 {
        match (self.samples.first(), self.samples.last()) {
            (Some(a), Some(b)) => b.t - a.t,
            _ => 0.0,
        }
    }
}

/// Accelerations ḧ_k of the modal system at the given state.
///
/// The stretching sum is computed once per call; the per-mode stiffness is
/// applied as a single factor so that an exactly-zero coordinate with zero
/// velocity and zero forcing yields an exactly-zero acceleration.
pub fn rhs(sys: &ModalSystem, state: &ModalState) -> Vec<f64> {
    assert_eq!(state.dim(), sys.dim(), "state dimension mismatch");
    let mut acc = vec![0.0; sys.dim()];
    rhs_into(sys, state.t, &state.h, &state.hdot, &mut acc);
    acc
}

fn rhs_into(sys: &ModalSystem, t: f64, h: &[f64], v: &[f64], out: &mut [f64]) {
    let stretch_sum = sys.stretch_sum(h);
    for (k, mode) in sys.modes.iter().enumerate() {
        let stiffness =
            mode.lambda + mode.m_squared() * (sys.stretch * stretch_sum - sys.prestress);
        out[k] = sys.forcing_at(k, t) - sys.delta * v[k] - stiffness * h[k];
    }
}

/// E_α at a state, split by parity. Modal Parseval sums stand in for the
/// continuum norms: ‖u_t‖² = Σḣ², ‖u‖²_{H²*} = Σλh², ‖u_x‖² = Σm²h²,
/// ∫u·u_t = Σh·ḣ, each restricted to one parity class; the coupling part is
/// (S/2)·‖u_x^L‖²·‖u_x^T‖².
pub fn energy(sys: &ModalSystem, state: &ModalState, alpha: f64) -> EnergyBreakdown {
    assert_eq!(state.dim(), sys.dim(), "state dimension mismatch");
    let mut kinetic = [0.0f64; 2];
    let mut cross = [0.0f64; 2];
    let mut bending = [0.0f64; 2];
    let mut ux = [0.0f64; 2];
    for (k, mode) in sys.modes.iter().enumerate() {
        let side = usize::from(mode.is_torsional());
        let (h, v) = (state.h[k], state.hdot[k]);
        kinetic[side] += v * v;
        cross[side] += h * v;
        bending[side] += mode.lambda * h * h;
        ux[side] += mode.m_squared() * h * h;
    }
    let part = |side: usize| {
        0.5 * kinetic[side] + alpha * cross[side] + 0.5 * bending[side]
            - 0.5 * sys.prestress * ux[side]
            + 0.25 * sys.stretch * ux[side] * ux[side]
    };
    let longitudinal = part(0);
    let torsional = part(1);
    let coupling = 0.5 * sys.stretch * ux[0] * ux[1];
    EnergyBreakdown {
        alpha,
        total: longitudinal + torsional + coupling,
        longitudinal,
        torsional,
        coupling,
    }
}

/// Options for [`integrate_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    /// Fixed step, or initial step in adaptive mode.
    pub dt: f64,
    pub t_end: f64,
    pub record_energy: bool,
    /// α of the recorded energy functional.
    pub alpha: f64,
    /// Enforce the dt·√λ_max ≤ 0.1 safety cap (fixed-step mode only).
    pub enforce_step_cap: bool,
    /// Step-doubling adaptive mode with this relative tolerance.
    pub adaptive_rel_tol: Option<f64>,
}

impl IntegrateOptions {
    pub fn fixed(dt: f64, t_end: f64) -> Self {
        IntegrateOptions {
            dt,
            t_end,
            record_energy: false,
            alpha: 0.0,
            enforce_step_cap: true,
            adaptive_rel_tol: None,
        }
    }
}

/// Safety cap on dt·√λ_max for fixed-step runs.
const STEP_CAP: f64 = 0.1;

/// Fixed-step integration with the safety cap enforced; see
/// [`integrate_with`] for the override and adaptive variants.
pub fn integrate(
    sys: &ModalSystem,
    ic: &ModalState,
    t_end: f64,
    dt: f64,
    record_energy: bool,
    alpha: f64,
) -> Result<Trajectory, ModalError> {
    integrate_with(
        sys,
        ic,
        &IntegrateOptions {
            dt,
            t_end,
            record_energy,
            alpha,
            enforce_step_cap: true,
            adaptive_rel_tol: None,
        },
    )
}

pub fn integrate_with(
    sys: &ModalSystem,
    ic: &ModalState,
    opts: &IntegrateOptions,
) -> Result<Trajectory, ModalError> {
    if ic.dim() != sys.dim() || ic.hdot.len() != sys.dim() {
        return Err(ModalError::DimensionMismatch {
            expected: sys.dim(),
            got: ic.dim(),
        });
    }
    if !(opts.dt > 0.0) || !opts.dt.is_finite() {
        return Err(ModalError::BadTimeStep { dt: opts.dt });
    }
    if !(opts.t_end > ic.t) {
        return Err(ModalError::BadTimeSpan {
            t_start: ic.t,
            t_end: opts.t_end,
        });
    }
    match opts.adaptive_rel_tol {
        None => integrate_fixed(sys, ic, opts),
        Some(rel_tol) => integrate_adaptive(sys, ic, opts, rel_tol),
    }
}

struct Recorder<'a> {
    sys: &'a ModalSystem,
    alpha: f64,
    traj: Trajectory,
}

impl<'a> Recorder<'a> {
    fn new(sys: &'a ModalSystem, record_energy: bool, alpha: f64) -> Self {
        Recorder {
            sys,
            alpha,
            traj: Trajectory {
                samples: Vec::new(),
                energy: record_energy.then(Vec::new),
            },
        }
    }

    fn push(&mut self, t: f64, h: &[f64], v: &[f64]) {
        let state = ModalState::new(t, h.to_vec(), v.to_vec());
        if let Some(energies) = &mut self.traj.energy {
            energies.push(energy(self.sys, &state, self.alpha));
        }
        self.traj.samples.push(state);
    }
}

struct Rk4Scratch {
    k1h: Vec<f64>,
    k1v: Vec<f64>,
    k2h: Vec<f64>,
    k2v: Vec<f64>,
    k3h: Vec<f64>,
    k3v: Vec<f64>,
    k4h: Vec<f64>,
    k4v: Vec<f64>,
    th: Vec<f64>,
    tv: Vec<f64>,
}

impl Rk4Scratch {
    fn new(dim: usize) -> Self {
        let z = || vec![0.0; dim];
        Rk4Scratch {
            k1h: z(),
            k1v: z(),
            k2h: z(),
            k2v: z(),
            k3h: z(),
            k3v: z(),
            k4h: z(),
            k4v: z(),
            th: z(),
            tv: z(),
        }
    }
}

/// One classical fourth-order step of (h, v) in place.
fn rk4_step(
    sys: &ModalSystem,
    t: f64,
    dt: f64,
    h: &mut [f64],
    v: &mut [f64],
    s: &mut Rk4Scratch,
) {
    let dim = h.len();
    // Stage 1 at (t, y): dh = v, dv = acc.
    s.k1h.copy_from_slice(v);
    rhs_into(sys, t, h, v, &mut s.k1v);
    // Stage 2 at (t + dt/2, y + dt/2·k1).
    for i in 0..dim {
        s.th[i] = h[i] + 0.5 * dt * s.k1h[i];
        s.tv[i] = v[i] + 0.5 * dt * s.k1v[i];
    }
    s.k2h.copy_from_slice(&s.tv);
    rhs_into(sys, t + 0.5 * dt, &s.th, &s.tv, &mut s.k2v);
    // Stage 3 at (t + dt/2, y + dt/2·k2).
    for i in 0..dim {
        s.th[i] = h[i] + 0.5 * dt * s.k2h[i];
        s.tv[i] = v[i] + 0.5 * dt * s.k2v[i];
    }
    s.k3h.copy_from_slice(&s.tv);
    rhs_into(sys, t + 0.5 * dt, &s.th, &s.tv, &mut s.k3v);
    // Stage 4 at (t + dt, y + dt·k3).
    for i in 0..dim {
        s.th[i] = h[i] + dt * s.k3h[i];
        s.tv[i] = v[i] + dt * s.k3v[i];
    }
    s.k4h.copy_from_slice(&s.tv);
    rhs_into(sys, t + dt, &s.th, &s.tv, &mut s.k4v);
    let w = dt / 6.0;
    for i in 0..dim {
        h[i] += w * (s.k1h[i] + 2.0 * s.k2h[i] + 2.0 * s.k3h[i] + s.k4h[i]);
        v[i] += w * (s.k1v[i] + 2.0 * s.k2v[i] + 2.0 * s.k3v[i] + s.k4v[i]);
    }
}

fn all_finite(h: &[f64], v: &[f64]) -> bool {
    h.iter().chain(v).all(|x| x.is_finite())
}

fn integrate_fixed(
    sys: &ModalSystem,
    ic: &ModalState,
    opts: &IntegrateOptions,
) -> Result<Trajectory, ModalError> {
    if opts.enforce_step_cap && opts.dt * num::sqrt(sys.lambda_max()) > STEP_CAP * (1.0 + 1e-12) {
        return Err(ModalError::StepTooLarge {
            dt: opts.dt,
            lambda_max: sys.lambda_max(),
        });
    }
    let span = opts.t_end - ic.t;
    let ratio = span / opts.dt;
    let n_steps = if (ratio - num::round(num::abs(ratio))).abs() < 1e-9 {
        num::round(ratio) as usize
    } else {
        ratio as usize + 1
    }
    .max(1);
    let mut h = ic.h.clone();
    let mut v = ic.hdot.clone();
    let mut scratch = Rk4Scratch::new(sys.dim());
    let mut rec = Recorder::new(sys, opts.record_energy, opts.alpha);
    rec.push(ic.t, &h, &v);
    for step in 0..n_steps {
        // Uniform steps, with the final one trimmed to land exactly on t_end.
        let t = ic.t + step as f64 * opts.dt;
        let dt = if step + 1 == n_steps {
            opts.t_end - t
        } else {
            opts.dt
        };
        rk4_step(sys, t, dt, &mut h, &mut v, &mut scratch);
        let t_next = if step + 1 == n_steps {
            opts.t_end
        } else {
            ic.t + (step + 1) as f64 * opts.dt
        };
        if !all_finite(&h, &v) {
            return Err(ModalError::BlowUp {
                t: t_next,
                partial: rec.traj,
            });
        }
        rec.push(t_next, &h, &v);
    }
    Ok(rec.traj)
}

fn integrate_adaptive(
    sys: &ModalSystem,
    ic: &ModalState,
    opts: &IntegrateOptions,
    rel_tol: f64,
) -> Result<Trajectory, ModalError> {
    const ABS_TOL: f64 = 1e-12;
    let dim = sys.dim();
    let mut t = ic.t;
    let mut h = ic.h.clone();
    let mut v = ic.hdot.clone();
    let mut dt = opts.dt;
    let mut scratch = Rk4Scratch::new(dim);
    let mut rec = Recorder::new(sys, opts.record_energy, opts.alpha);
    rec.push(t, &h, &v);
    let (mut bh, mut bv) = (vec![0.0; dim], vec![0.0; dim]);
    let (mut fh, mut fv) = (vec![0.0; dim], vec![0.0; dim]);
    while t < opts.t_end {
        if dt < 1e-13 * num::max(num::abs(t), 1.0) {
            return Err(ModalError::StepUnderflow { t });
        }
        dt = num::min(dt, opts.t_end - t);
        // One full step versus two half steps; their gap estimates the error.
        bh.copy_from_slice(&h);
        bv.copy_from_slice(&v);
        rk4_step(sys, t, dt, &mut bh, &mut bv, &mut scratch);
        fh.copy_from_slice(&h);
        fv.copy_from_slice(&v);
        rk4_step(sys, t, 0.5 * dt, &mut fh, &mut fv, &mut scratch);
        rk4_step(sys, t + 0.5 * dt, 0.5 * dt, &mut fh, &mut fv, &mut scratch);
        let finite = all_finite(&bh, &bv) && all_finite(&fh, &fv);
        let mut err = 0.0f64;
        if finite {
            for i in 0..dim {
                let sh = ABS_TOL + rel_tol * num::max(num::abs(fh[i]), num::abs(h[i]));
                let sv = ABS_TOL + rel_tol * num::max(num::abs(fv[i]), num::abs(v[i]));
                err = num::max(err, num::abs(bh[i] - fh[i]) / sh);
                err = num::max(err, num::abs(bv[i] - fv[i]) / sv);
            }
        }
        if finite && err <= 1.0 {
            for i in 0..dim {
                h[i] = fh[i] + (fh[i] - bh[i]) / 15.0;
                v[i] = fv[i] + (fv[i] - bv[i]) / 15.0;
            }
            t += dt;
            if !all_finite(&h, &v) {
                return Err(ModalError::BlowUp {
                    t,
                    partial: rec.traj,
                });
            }
            rec.push(t, &h, &v);
            let grow = if err < 1e-10 {
                2.0
            } else {
                num::min(2.0, 0.9 * num::pow(1.0 / err, 0.2))
            };
            dt *= grow;
        } else {
            let shrink = if finite {
                num::max(0.2, 0.9 * num::pow(1.0 / err, 0.2))
            } else {
                0.2
            };
            dt *= shrink;
        }
    }
    Ok(rec.traj)
}

/// Driven two-mode system pairing the first longitudinal eigenvalue at
/// wavenumber m with the second torsional eigenvalue at wavenumber n, forced
/// by the elliptic waveform whose exact response is −(A/δ)·cn(b·t, k):
/// b = √(μ + S·m⁴A²/δ²), k = √(S·m⁴A² / (2(μδ² + S·m⁴A²))). P = 0.
pub fn build_two_mode_elliptic(
    m: u32,
    n: u32,
    delta: f64,
    stretch: f64,
    amplitude: f64,
    geom: &PlateGeometry,
) -> Result<ModalSystem, ModalError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(ModalError::NegativeDamping);
    }
    if !(amplitude > 0.0 && amplitude.is_finite()) {
        return Err(ModalError::NonpositiveAmplitude);
    }
    if !(stretch >= 0.0 && stretch.is_finite()) {
        return Err(ModalError::NegativeStretch);
    }
    let mu = spectrum::solve_mu(m, 1, geom)?;
    let nu = spectrum::solve_nu(n, 2, geom)?;
    let m4 = num::powi(m as f64, 4);
    let drive = stretch * m4 * amplitude * amplitude;
    let b = num::sqrt(mu.lambda + drive / (delta * delta));
    let k = Modulus::new(num::sqrt(
        drive / (2.0 * (mu.lambda * delta * delta + drive)),
    ))
    .expect("k^2 = x/(2(c+x)) < 1/2 for x >= 0, c > 0");
    let longitudinal_force = ForcingSpec::EllipticCnDrive { amplitude, b, k };
    two_mode_system(&mu, &nu, delta, stretch, longitudinal_force)
}

/// As [`build_two_mode_elliptic`] but with plain sinusoidal forcing
/// A·sin(ω·t) on the longitudinal mode. P = 0.
pub fn build_two_mode_sinusoid(
    m: u32,
    n: u32,
    delta: f64,
    stretch: f64,
    amplitude: f64,
    omega: f64,
    geom: &PlateGeometry,
) -> Result<ModalSystem, ModalError> {
    if !(delta >= 0.0) {
        return Err(ModalError::NegativeDamping);
    }
    if !(stretch >= 0.0) {
        return Err(ModalError::NegativeStretch);
    }
    let mu = spectrum::solve_mu(m, 1, geom)?;
    let nu = spectrum::solve_nu(n, 2, geom)?;
    let longitudinal_force = ForcingSpec::Sinusoid { amplitude, omega };
    two_mode_system(&mu, &nu, delta, stretch, longitudinal_force)
}

fn two_mode_system(
    mu: &Eigenmode,
    nu: &Eigenmode,
    delta: f64,
    stretch: f64,
    longitudinal_force: ForcingSpec,
) -> Result<ModalSystem, ModalError> {
    let long = RetainedMode::from(mu);
    let tors = RetainedMode::from(nu);
    let (modes, forcing) = if long.lambda < tors.lambda {
        (
            vec![long, tors],
            vec![longitudinal_force, ForcingSpec::Zero],
        )
    } else {
        (
            vec![tors, long],
            vec![ForcingSpec::Zero, longitudinal_force],
        )
    };
    ModalSystem::new(modes, delta, 0.0, stretch, forcing)
}

/// Index of the first torsional retained mode, if any.
pub fn torsional_index(sys: &ModalSystem) -> Option<usize> {
    sys.modes.iter().position(|m| m.is_torsional())
}

/// Index of the first longitudinal retained mode, if any.
pub fn longitudinal_index(sys: &ModalSystem) -> Option<usize> {
    sys.modes.iter().position(|m| !m.is_torsional())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bare_system(specs: &[(u32, f64, bool)], delta: f64, p: f64, s: f64) -> ModalSystem {
        let modes = specs
            .iter()
            .map(|&(m, lambda, torsional)| RetainedMode {
                kind: if torsional {
                    ModeKind::TorsionalNu { m, k: 2 }
                } else {
                    ModeKind::LongitudinalMu { m, k: 1 }
                },
                lambda,
                m,
            })
            .collect::<Vec<_>>();
        let forcing = vec![ForcingSpec::Zero; specs.len()];
        ModalSystem::new(modes, delta, p, s, forcing).unwrap()
    }

    #[test]
    fn rhs_matches_hand_evaluation() {
        let sys = bare_system(&[(1, 2.0, false), (2, 9.0, true)], 0.0, 0.0, 1.0);
        let state = ModalState::new(0.0, vec![1.0, 1.0], vec![0.0, 0.0]);
        let acc = rhs(&sys, &state);
        // Stretch sum = 1·1 + 4·1 = 5.
        assert!((acc[0] - (-2.0 - 5.0)).abs() < 1e-14);
        assert!((acc[1] - (-9.0 - 20.0)).abs() < 1e-14);
    }

    #[test]
    fn rhs_single_linear_mode() {
        let sys = bare_system(&[(1, 3.0, false)], 0.0, 0.0, 0.0);
        let state = ModalState::new(0.0, vec![1.0], vec![0.0]);
        assert_eq!(rhs(&sys, &state)[0], -3.0);
    }

    #[test]
    fn harmonic_solution_tracked() {
        let lambda = 4.0;
        let sys = bare_system(&[(1, lambda, false)], 0.0, 0.0, 0.0);
        let omega = num::sqrt(lambda);
        let dt = 0.025 / omega;
        let t_end = 10.0 * 2.0 * core::f64::consts::PI / omega;
        let ic = ModalState::new(0.0, vec![1.0], vec![0.0]);
        let traj = integrate(&sys, &ic, t_end, dt, false, 0.0).unwrap();
        let worst = traj
            .samples
            .iter()
            .map(|s| num::abs(s.h[0] - num::cos(omega * s.t)))
            .fold(0.0, num::max);
        assert!(worst <= 1e-6, "max error {worst:e}");
    }

    #[test]
    fn zero_torsional_start_stays_bitwise_zero() {
        let sys = bare_system(&[(2, 15.0, false), (1, 11000.0, true)], 0.3, 0.0, 100.0);
        let mut sys = sys;
        sys.forcing[0] = ForcingSpec::Sinusoid {
            amplitude: 5.0,
            omega: 2.0,
        };
        let ic = ModalState::new(0.0, vec![0.01, 0.0], vec![0.0, 0.0]);
        let dt = 0.1 / num::sqrt(sys.lambda_max());
        let traj = integrate(&sys, &ic, 500.0 * dt, dt, false, 0.0).unwrap();
        for s in &traj.samples {
            assert_eq!(s.h[1].to_bits(), 0.0f64.to_bits());
            assert_eq!(s.hdot[1].to_bits(), 0.0f64.to_bits());
        }
    }

    #[test]
    fn energy_hand_example() {
        let lambda = 0.96;
        let sys = bare_system(&[(1, lambda, false)], 0.0, 0.0, 2.0);
        let state = ModalState::new(0.0, vec![1.0], vec![0.0]);
        let e = energy(&sys, &state, 0.0);
        assert!((e.total - (lambda / 2.0 + 0.5)).abs() < 1e-14);
        assert_eq!(e.torsional, 0.0);
        assert_eq!(e.coupling, 0.0);
    }

    #[test]
    fn zero_state_zero_energy() {
        let sys = bare_system(&[(1, 1.0, false), (2, 30.0, true)], 0.5, 0.0, 10.0);
        let e = energy(&sys, &ModalState::rest(2), 0.3);
        assert_eq!(e.total, 0.0);
        assert_eq!(e.longitudinal, 0.0);
        assert_eq!(e.torsional, 0.0);
        assert_eq!(e.coupling, 0.0);
    }

    #[test]
    fn step_cap_enforced_and_overridable() {
        let sys = bare_system(&[(1, 10000.0, false)], 0.0, 0.0, 0.0);
        let ic = ModalState::new(0.0, vec![1.0], vec![0.0]);
        let err = integrate(&sys, &ic, 1.0, 0.01, false, 0.0).unwrap_err();
        assert!(matches!(err, ModalError::StepTooLarge { .. }));
        let mut opts = IntegrateOptions::fixed(0.01, 1.0);
        opts.enforce_step_cap = false;
        assert!(integrate_with(&sys, &ic, &opts).is_ok());
    }

    #[test]
    fn prestress_validated() {
        let modes = vec![RetainedMode {
            kind: ModeKind::LongitudinalMu { m: 1, k: 1 },
            lambda: 1.0,
            m: 1,
        }];
        let err = ModalSystem::new(modes, 0.1, 2.0, 1.0, vec![ForcingSpec::Zero]).unwrap_err();
        assert!(matches!(err, ModalError::PrestressTooLarge { .. }));
    }

    #[test]
    fn custom_forcing_interpolates() {
        let f = ForcingSpec::Custom {
            samples: vec![(0.0, 0.0), (1.0, 2.0), (3.0, 2.0)],
        };
        assert_eq!(f.eval(-1.0), 0.0);
        assert_eq!(f.eval(4.0), 0.0);
        assert!((f.eval(0.5) - 1.0).abs() < 1e-15);
        assert!((f.eval(2.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_matches_fixed_on_smooth_run() {
        let sys = bare_system(&[(1, 4.0, false)], 0.2, 0.0, 1.0);
        let ic = ModalState::new(0.0, vec![0.5], vec![0.0]);
        let fixed = integrate(&sys, &ic, 10.0, 0.002, false, 0.0).unwrap();
        let mut opts = IntegrateOptions::fixed(0.01, 10.0);
        opts.adaptive_rel_tol = Some(1e-11);
        let adaptive = integrate_with(&sys, &ic, &opts).unwrap();
        let hf = fixed.last().unwrap().h[0];
        let ha = adaptive.last().unwrap().h[0];
        assert!((hf - ha).abs() < 1e-7, "fixed {hf} vs adaptive {ha}");
    }
}
