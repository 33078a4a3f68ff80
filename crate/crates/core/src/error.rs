//! Crate-wide error type and its coarse classification.

use thiserror::Error;

use crate::model::ModelError;
use crate::pollaczek::PollaczekError;
use crate::resolvent::ResolventError;
use crate::scattering::ScatteringError;
use crate::specfun::SpecfunError;
use crate::spectrum::SpectrumError;
use crate::wavefunction::WavefunctionError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Pollaczek(#[from] PollaczekError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error(transparent)]
    Resolvent(#[from] ResolventError),
    #[error(transparent)]
    Wavefunction(#[from] WavefunctionError),
}

/// Bad input, out-of-domain physics, or a numerical method that gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    Config,
    Domain,
    Convergence,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Specfun(e) => specfun_kind(e),
            Error::Pollaczek(e) => pollaczek_kind(e),
            Error::Model(e) => model_kind(e),
            Error::Spectrum(e) => spectrum_kind(e),
            Error::Scattering(e) => match e {
                ScatteringError::NotScattering { .. } => ErrorKind::Domain,
                ScatteringError::Fit(_) => ErrorKind::Config,
                ScatteringError::Model(m) => model_kind(m),
                ScatteringError::Pollaczek(p) => pollaczek_kind(p),
            },
            Error::Resolvent(e) => match e {
                ResolventError::NoConvergence { .. } | ResolventError::SpectrumProximity { .. } => {
                    ErrorKind::Convergence
                }
                ResolventError::InvalidInput(_) => ErrorKind::Config,
                ResolventError::Model(m) => model_kind(m),
            },
            Error::Wavefunction(e) => match e {
                WavefunctionError::KineticBalanceSingular { .. } | WavefunctionError::BasisExponent { .. } => {
                    ErrorKind::Domain
                }
                WavefunctionError::Grid(_)
                | WavefunctionError::QuadratureOrder { .. }
                | WavefunctionError::Truncation { .. }
                | WavefunctionError::Radius { .. } => ErrorKind::Config,
                WavefunctionError::Model(m) => model_kind(m),
                WavefunctionError::Spectrum(s) => spectrum_kind(s),
                WavefunctionError::Specfun(s) => specfun_kind(s),
            },
        }
    }
}

fn specfun_kind(e: &SpecfunError) -> ErrorKind {
    match e {
        SpecfunError::Pole { .. } | SpecfunError::BottomPole { .. } => ErrorKind::Domain,
        SpecfunError::Convergence { .. } => ErrorKind::Convergence,
        SpecfunError::InvalidArgument(_) => ErrorKind::Config,
    }
}

fn pollaczek_kind(e: &PollaczekError) -> ErrorKind {
    match e {
        PollaczekError::InvalidParams(_) | PollaczekError::NormalizationMismatch { .. } => ErrorKind::Config,
        PollaczekError::Degenerate
        | PollaczekError::Radius { .. }
        | PollaczekError::Branch { .. }
        | PollaczekError::Angle { .. } => ErrorKind::Domain,
        PollaczekError::Specfun(s) => specfun_kind(s),
    }
}

fn model_kind(e: &ModelError) -> ErrorKind {
    match e {
        ModelError::InvalidParams(_) => ErrorKind::Config,
        ModelError::Supercritical { .. } | ModelError::Threshold | ModelError::SingularMap { .. } => ErrorKind::Domain,
        ModelError::Pollaczek(p) => pollaczek_kind(p),
    }
}

fn spectrum_kind(e: &SpectrumError) -> ErrorKind {
    match e {
        SpectrumError::Repulsive { .. } | SpectrumError::NotBound { .. } => ErrorKind::Domain,
        SpectrumError::ZeroDepth => ErrorKind::Config,
        SpectrumError::Model(m) => model_kind(m),
    }
}
