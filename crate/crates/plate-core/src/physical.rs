//! Conversion of dimensional deck and wind parameters to the nondimensional
//! model coefficients.
//!
//! The plate is rescaled so that its length becomes π and time is measured
//! in units of √(M/D)·(L/π)². Under that change of scales the damping,
//! stretching stiffness, half-width, and forcing frequency transform as
//!
//!   δ  = (L²/π²) ε/√(D·M),
//!   S  = A·E·L/(2·D·π²),
//!   ℓ′ = π ℓ/L,
//!   ω′ = √(M/D) (L²/π²) ω,
//!
//! with the Poisson ratio and prestress carried over unchanged. Vortex
//! shedding from wind at speed W drives the deck at ω = St·W/H with force
//! density (ρ/2)W²(H/2ℓ)C_L.

use crate::num;
use core::f64::consts::{LN_10, PI};
use core::fmt;

/// Dimensional description of the deck and the wind acting on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Deck length.
    pub l_length: f64,
    /// Deck half-width.
    pub ell: f64,
    /// Deck thickness.
    pub d_thickness: f64,
    /// Frontal height exposed to the wind.
    pub h_height: f64,
    /// Cross-section area, 2ℓd for a full rectangular section.
    pub a_cross: f64,
    /// Poisson ratio of the deck material.
    pub sigma: f64,
    /// Flexural rigidity.
    pub d_rigidity: f64,
    /// Surface mass density.
    pub m_mass: f64,
    /// Axial prestress.
    pub p_prestress: f64,
    /// Damping coefficient.
    pub eps: f64,
    /// Young modulus.
    pub e_young: f64,
    /// Air density.
    pub rho: f64,
    /// Wind speed.
    pub w_speed: f64,
    /// Lift coefficient.
    pub c_lift: f64,
    /// Strouhal number of the section.
    pub strouhal: f64,
}

/// Nondimensional coefficients consumed by the modal system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub delta: f64,
    pub stretch: f64,
    /// Rescaled half-width πℓ/L.
    pub ell_nd: f64,
    pub sigma: f64,
    pub prestress: f64,
    /// Forcing amplitude W² (multiplicative section constants dropped).
    pub forcing_amp: f64,
    /// Rescaled shedding frequency ω′.
    pub forcing_omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhysicalError {
    /// D·M ≤ 0: the time rescaling √(M/D) is undefined.
    RigidityMassNonpositive,
    ParameterOutOfRange { name: &'static str },
}

impl fmt::Display for PhysicalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhysicalError::RigidityMassNonpositive => {
                write!(f, "flexural rigidity and mass density must be positive")
            }
            PhysicalError::ParameterOutOfRange { name } => {
                write!(f, "parameter {name} is out of range")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PhysicalError {}

fn require_positive(value: f64, name: &'static str) -> Result<(), PhysicalError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(PhysicalError::ParameterOutOfRange { name })
    }
}

fn require_nonnegative(value: f64, name: &'static str) -> Result<(), PhysicalError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(PhysicalError::ParameterOutOfRange { name })
    }
}

/// Applies the change of scales to dimensional parameters.
pub fn nondimensionalize(p: &PhysicalParams) -> Result<ModelParams, PhysicalError> {
    if !(p.d_rigidity * p.m_mass > 0.0) || !p.d_rigidity.is_finite() || !p.m_mass.is_finite() {
        return Err(PhysicalError::RigidityMassNonpositive);
    }
    require_positive(p.l_length, "L")?;
    require_positive(p.ell, "ell")?;
    require_positive(p.d_thickness, "d")?;
    require_positive(p.h_height, "H")?;
    require_positive(p.a_cross, "A")?;
    require_positive(p.d_rigidity, "D")?;
    require_positive(p.m_mass, "M")?;
    require_positive(p.e_young, "E")?;
    require_positive(p.eps, "eps")?;
    require_nonnegative(p.p_prestress, "P")?;
    require_nonnegative(p.rho, "rho")?;
    require_nonnegative(p.w_speed, "W")?;
    require_nonnegative(p.c_lift, "C_L")?;
    require_nonnegative(p.strouhal, "St")?;
    if !(p.sigma > 0.0 && p.sigma < 1.0) {
        return Err(PhysicalError::ParameterOutOfRange { name: "sigma" });
    }
    let length_sq = p.l_length * p.l_length / (PI * PI);
    let omega = if p.h_height > 0.0 {
        p.strouhal * p.w_speed / p.h_height
    } else {
        0.0
    };
    Ok(ModelParams {
        delta: length_sq * p.eps / num::sqrt(p.d_rigidity * p.m_mass),
        stretch: p.a_cross * p.e_young * p.l_length / (2.0 * p.d_rigidity * PI * PI),
        ell_nd: PI * p.ell / p.l_length,
        sigma: p.sigma,
        prestress: p.p_prestress,
        forcing_amp: p.w_speed * p.w_speed,
        forcing_omega: num::sqrt(p.m_mass / p.d_rigidity) * length_sq * omega,
    })
}

/// Damping coefficient making free oscillations decay to 1% of their
/// starting amplitude in 20 time units: solving e^{−20ε/M} = 1/100 gives
/// ε = M·ln(100)/20, independent of the elastic stiffness. Callers should
/// keep ε < 2√(αM) so the oscillator stays underdamped.
pub fn damping_from_decay(m_mass: f64) -> f64 {
    m_mass * LN_10 / 10.0
}

/// Amplitude and frequency of the vortex-shedding force on the deck:
/// amplitude (ρ/2)W²(H/2ℓ)C_L, frequency St·W/H.
pub fn vortex_forcing(
    rho: f64,
    w_speed: f64,
    height: f64,
    ell: f64,
    c_lift: f64,
    strouhal: f64,
) -> (f64, f64) {
    let amplitude = 0.5 * rho * w_speed * w_speed * (height / (2.0 * ell)) * c_lift;
    let omega = strouhal * w_speed / height;
    (amplitude, omega)
}
