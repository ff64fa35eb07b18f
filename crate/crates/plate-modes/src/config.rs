//! JSON run configurations: schema, validation, and construction of the
//! modal systems they describe. Unknown keys are rejected so a typo cannot
//! silently fall back to a default.

use serde::{Deserialize, Serialize};

use plate_core::modal::{
    build_two_mode_elliptic, build_two_mode_sinusoid, longitudinal_index, torsional_index,
    ForcingSpec, ModalState, ModalSystem, RetainedMode,
};
use plate_core::physical::{damping_from_decay, PhysicalParams};
use plate_core::spectrum::{least_eigenvalues, solve_mu, solve_nu};
use plate_core::PlateGeometry;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub m: u32,
    pub n: u32,
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(deny_unknown_fields, tag = "variant", rename_all = "snake_case")]
pub enum ForcingConfig {
    /// Unforced.
    None,
    /// A·sin(ω t) on the driven longitudinal mode; for least-N systems the
    /// spatially uniform load projects to γ_k·A on every mode.
    Sinusoid {
        #[serde(rename = "A")]
        a: f64,
        omega: f64,
    },
    /// The waveform whose exact response on the driven mode is the cn orbit
    /// of amplitude A/δ. Only meaningful for a two-mode pair at P = 0.
    EllipticCn {
        #[serde(rename = "A")]
        a: f64,
    },
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InitialAmplitudes {
    /// Initial coordinate of the lowest longitudinal mode.
    #[serde(default)]
    pub alpha: f64,
    /// Initial coordinate of the lowest torsional mode.
    #[serde(default)]
    pub beta: f64,
}

fn default_sigma() -> f64 {
    0.2
}

fn default_ell() -> f64 {
    std::f64::consts::PI / 150.0
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    /// Least-N truncation; exactly one of `modes` and `pair` must be given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modes: Option<usize>,
    /// Longitudinal wavenumber m paired with torsional wavenumber n.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairSpec>,
    pub delta: f64,
    #[serde(rename = "P", default)]
    pub prestress: f64,
    #[serde(rename = "S")]
    pub stretch: f64,
    pub forcing: ForcingConfig,
    pub ic: InitialAmplitudes,
    pub t_end: f64,
    pub dt: f64,
    #[serde(default)]
    pub alpha_energy: f64,
    /// Switch to adaptive stepping at this relative tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adaptive_rel_tol: Option<f64>,
    #[serde(default = "default_ell")]
    pub ell: f64,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
}

impl SimulateConfig {
    pub fn geometry(&self) -> Result<PlateGeometry, CliError> {
        Ok(PlateGeometry::new(self.ell, self.sigma)?)
    }

    fn check_ranges(&self) -> Result<(), CliError> {
        match (self.modes, &self.pair) {
            (None, None) => {
                return Err(CliError::config(
                    "one of `modes` (least-N truncation) or `pair` ({m, n}) is required",
                ))
            }
            (Some(_), Some(_)) => {
                return Err(CliError::config(
                    "`modes` and `pair` are mutually exclusive",
                ))
            }
            (Some(0), None) => return Err(CliError::config("`modes` must be at least 1")),
            _ => {}
        }
        if let Some(pair) = &self.pair {
            if pair.m == 0 || pair.n == 0 {
                return Err(CliError::config("`pair` wavenumbers must be at least 1"));
            }
        }
        if !(self.delta >= 0.0) || !self.delta.is_finite() {
            return Err(CliError::config("`delta` must be nonnegative"));
        }
        if !(self.stretch >= 0.0) || !self.stretch.is_finite() {
            return Err(CliError::config("`S` must be nonnegative"));
        }
        if !(self.prestress >= 0.0) || !self.prestress.is_finite() {
            return Err(CliError::config("`P` must be nonnegative"));
        }
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return Err(CliError::config("`t_end` must be positive"));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(CliError::config("`dt` must be positive"));
        }
        if let ForcingConfig::Sinusoid { a, omega } = self.forcing {
            if !a.is_finite() || !omega.is_finite() {
                return Err(CliError::config("forcing `A` and `omega` must be finite"));
            }
        }
        if let ForcingConfig::EllipticCn { a } = self.forcing {
            if !(a > 0.0) || !a.is_finite() {
                return Err(CliError::config("elliptic forcing `A` must be positive"));
            }
            if self.pair.is_none() {
                return Err(CliError::config(
                    "elliptic_cn forcing requires a `pair` system (its closed form drives a single longitudinal mode)",
                ));
            }
            if self.prestress != 0.0 {
                return Err(CliError::config(
                    "elliptic_cn forcing requires P = 0 (the closed-form orbit is derived without prestress)",
                ));
            }
            if !(self.delta > 0.0) {
                return Err(CliError::config(
                    "elliptic_cn forcing requires positive `delta` (the orbit amplitude is A/δ)",
                ));
            }
        }
        Ok(())
    }

    /// Builds the configured system and its initial state.
    pub fn build(&self) -> Result<(ModalSystem, ModalState), CliError> {
        self.check_ranges()?;
        let geom = self.geometry()?;
        let sys = if let Some(pair) = &self.pair {
            match self.forcing {
                ForcingConfig::EllipticCn { a } => {
                    build_two_mode_elliptic(pair.m, pair.n, self.delta, self.stretch, a, &geom)?
                }
                ForcingConfig::Sinusoid { a, omega } if self.prestress == 0.0 => {
                    build_two_mode_sinusoid(
                        pair.m,
                        pair.n,
                        self.delta,
                        self.stretch,
                        a,
                        omega,
                        &geom,
                    )?
                }
                _ => {
                    let mu = solve_mu(pair.m, 1, &geom)?;
                    let nu = solve_nu(pair.n, 2, &geom)?;
                    let forcing = match self.forcing {
                        ForcingConfig::Sinusoid { a, omega } => {
                            ForcingSpec::Sinusoid { amplitude: a, omega }
                        }
                        _ => ForcingSpec::Zero,
                    };
                    let long = RetainedMode::from(&mu);
                    let tors = RetainedMode::from(&nu);
                    let (modes, forcing) = if long.lambda < tors.lambda {
                        (vec![long, tors], vec![forcing, ForcingSpec::Zero])
                    } else {
                        (vec![tors, long], vec![ForcingSpec::Zero, forcing])
                    };
                    ModalSystem::new(modes, self.delta, self.prestress, self.stretch, forcing)?
                }
            }
        } else {
            let n = self.modes.unwrap();
            let eigenmodes = least_eigenvalues(n, &geom)?;
            let forcing = eigenmodes
                .iter()
                .map(|mode| match self.forcing {
                    ForcingConfig::None => ForcingSpec::Zero,
                    ForcingConfig::Sinusoid { a, omega } => ForcingSpec::Sinusoid {
                        amplitude: mode.gamma * a,
                        omega,
                    },
                    ForcingConfig::EllipticCn { .. } => unreachable!("rejected in check_ranges"),
                })
                .collect();
            let modes = eigenmodes.iter().map(RetainedMode::from).collect();
            ModalSystem::new(modes, self.delta, self.prestress, self.stretch, forcing)?
        };
        let mut h = vec![0.0; sys.dim()];
        if self.ic.alpha != 0.0 {
            match longitudinal_index(&sys) {
                Some(i) => h[i] = self.ic.alpha,
                None => {
                    return Err(CliError::config(
                        "ic.alpha given but the system retains no longitudinal mode",
                    ))
                }
            }
        }
        if self.ic.beta != 0.0 {
            match torsional_index(&sys) {
                Some(i) => h[i] = self.ic.beta,
                None => {
                    return Err(CliError::config(
                        "ic.beta given but the system retains no torsional mode",
                    ))
                }
            }
        }
        let hdot = vec![0.0; sys.dim()];
        Ok((sys, ModalState::new(0.0, h, hdot)))
    }
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn validate(&self, name: &str) -> Result<(), CliError> {
        if self.count == 0 {
            return Err(CliError::config(format!("`{name}.count` must be at least 1")));
        }
        if !self.min.is_finite() || !self.max.is_finite() || self.min > self.max {
            return Err(CliError::config(format!(
                "`{name}` must satisfy min ≤ max with finite endpoints"
            )));
        }
        if self.count == 1 && self.min != self.max {
            return Err(CliError::config(format!(
                "`{name}.count` = 1 requires min = max"
            )));
        }
        Ok(())
    }

    pub fn at(&self, i: usize) -> f64 {
        if self.count == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.count - 1) as f64
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub m: u32,
    pub n: u32,
    pub delta: f64,
    #[serde(rename = "S")]
    pub stretch: f64,
    #[serde(rename = "P", default)]
    pub prestress: f64,
    pub amplitude: GridAxis,
    pub omega: GridAxis,
    #[serde(default)]
    pub alpha: f64,
    pub beta: f64,
    pub t_end: f64,
    pub dt: f64,
    /// Trailing-window length handed to the verdict classifier.
    pub window: f64,
    /// Decay tolerance handed to the verdict classifier.
    pub tol: f64,
    #[serde(default = "default_ell")]
    pub ell: f64,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.m == 0 || self.n == 0 {
            return Err(CliError::config("wavenumbers must be at least 1"));
        }
        if !(self.delta >= 0.0) || !(self.stretch >= 0.0) || !(self.prestress >= 0.0) {
            return Err(CliError::config("`delta`, `S`, `P` must be nonnegative"));
        }
        if !(self.t_end > 0.0) || !(self.dt > 0.0) {
            return Err(CliError::config("`t_end` and `dt` must be positive"));
        }
        if !(self.window > 0.0) || !(self.tol > 0.0) {
            return Err(CliError::config("`window` and `tol` must be positive"));
        }
        self.amplitude.validate("amplitude")?;
        self.omega.validate("omega")?;
        PlateGeometry::new(self.ell, self.sigma)?;
        Ok(())
    }
}

/// Dimensional deck and wind parameters. Field names follow the structural
/// notation: L deck length, ell half-width, d thickness, H frontal height,
/// A_cross section area (defaults to 2ℓd), D flexural rigidity, M surface
/// mass density, E Young modulus, eps damping (defaults to the 1%-in-20s
/// calibration M·ln(100)/20).
#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DeckConfig {
    #[serde(rename = "L")]
    pub l_length: f64,
    pub ell: f64,
    pub d: f64,
    #[serde(rename = "H")]
    pub h_height: f64,
    #[serde(rename = "A_cross", default, skip_serializing_if = "Option::is_none")]
    pub a_cross: Option<f64>,
    pub sigma: f64,
    #[serde(rename = "D")]
    pub d_rigidity: f64,
    #[serde(rename = "M")]
    pub m_mass: f64,
    #[serde(rename = "P", default)]
    pub p_prestress: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(rename = "E")]
    pub e_young: f64,
    #[serde(default)]
    pub rho: f64,
    #[serde(rename = "W", default)]
    pub w_speed: f64,
    #[serde(rename = "C_L", default)]
    pub c_lift: f64,
    #[serde(rename = "St", default)]
    pub strouhal: f64,
}

impl DeckConfig {
    pub fn to_physical(self) -> PhysicalParams {
        PhysicalParams {
            l_length: self.l_length,
            ell: self.ell,
            d_thickness: self.d,
            h_height: self.h_height,
            a_cross: self.a_cross.unwrap_or(2.0 * self.ell * self.d),
            sigma: self.sigma,
            d_rigidity: self.d_rigidity,
            m_mass: self.m_mass,
            p_prestress: self.p_prestress,
            eps: self.eps.unwrap_or_else(|| damping_from_decay(self.m_mass)),
            e_young: self.e_young,
            rho: self.rho,
            w_speed: self.w_speed,
            c_lift: self.c_lift,
            strouhal: self.strouhal,
        }
    }
}

pub fn load_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
