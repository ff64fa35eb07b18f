use plate_core::elliptic::EllipticError;
use plate_core::geometry::GeometryError;
use plate_core::modal::ModalError;
use plate_core::physical::PhysicalError;
use plate_core::prevailing::PrevailingError;
use plate_core::spectrum::SpectrumError;

/// Failure classes mapped to exit codes: configuration 2, numerics 3, I/O 4.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<PhysicalError> for CliError {
    fn from(e: PhysicalError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<EllipticError> for CliError {
    fn from(e: EllipticError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::RootNotIsolated { .. } | SpectrumError::ProfileCollapse { .. } => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<ModalError> for CliError {
    fn from(e: ModalError) -> Self {
        match e {
            ModalError::Spectrum(inner) => inner.into(),
            ModalError::BlowUp { .. } | ModalError::StepUnderflow { .. } => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<PrevailingError> for CliError {
    fn from(e: PrevailingError) -> Self {
        match e {
            PrevailingError::Spectrum(inner) => inner.into(),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Config(e.to_string())
    }
}
