//! Nondimensional plate geometry.

use core::fmt;

/// Half-width and Poisson ratio of the nondimensional plate
/// Ω = (0, π) × (−ℓ, ℓ).
///
/// The default is the narrow deck used throughout the reference experiments:
/// ℓ = π/150 (width-to-length ratio 1:75) and σ = 0.2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateGeometry {
    /// Half-width ℓ of the cross-section interval (−ℓ, ℓ).
    pub half_width: f64,
    /// Poisson ratio σ of the deck material.
    pub poisson: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryError {
    /// Half-width must be strictly positive.
    NonPositiveHalfWidth,
    /// Poisson ratio must lie strictly inside (0, 1).
    PoissonOutOfRange,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::NonPositiveHalfWidth => {
                write!(f, "plate half-width must be positive")
            }
            GeometryError::PoissonOutOfRange => {
                write!(f, "Poisson ratio must lie strictly between 0 and 1")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for GeometryError {}

impl PlateGeometry {
    /// Builds a geometry after validating ℓ > 0 and σ ∈ (0, 1).
    pub fn new(half_width: f64, poisson: f64) -> Result<Self, GeometryError> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(GeometryError::NonPositiveHalfWidth);
        }
        if !(poisson > 0.0 && poisson < 1.0) {
            return Err(GeometryError::PoissonOutOfRange);
        }
        Ok(PlateGeometry {
            half_width,
            poisson,
        })
    }
}

impl Default for PlateGeometry {
    fn default() -> Self {
        PlateGeometry {
            half_width: core::f64::consts::PI / 150.0,
            poisson: 0.2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_narrow_deck() {
        let g = PlateGeometry::default();
        assert!((g.half_width - core::f64::consts::PI / 150.0).abs() < 1e-15);
        assert_eq!(g.poisson, 0.2);
    }

    #[test]
    fn validation_rejects_bad_inputs() {
        assert_eq!(
            PlateGeometry::new(0.0, 0.2),
            Err(GeometryError::NonPositiveHalfWidth)
        );
        assert_eq!(
            PlateGeometry::new(-1.0, 0.2),
            Err(GeometryError::NonPositiveHalfWidth)
        );
        assert_eq!(
            PlateGeometry::new(0.1, 0.0),
            Err(GeometryError::PoissonOutOfRange)
        );
        assert_eq!(
            PlateGeometry::new(0.1, 1.0),
            Err(GeometryError::PoissonOutOfRange)
        );
        assert!(PlateGeometry::new(0.1, 0.3).is_ok());
    }
}
