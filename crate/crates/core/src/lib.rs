//! Tridiagonal (J-matrix) treatment of the Dirac-Coulomb problem.
//!
//! The radial Dirac-Coulomb operator becomes tridiagonal in a Laguerre basis,
//! so the expansion coefficients of the upper spinor component obey a
//! three-term recurrence solved by Pollaczek polynomials. This crate evaluates
//! those polynomials and derives everything else from them:
//!
//! * [`spectrum`]: bound-state energies from the vanishing of the dominant
//!   Darboux term, checked against the Sommerfeld fine-structure formula.
//! * [`scattering`]: phase shifts and amplitudes from the oscillatory
//!   asymptotics of the orthonormal polynomials.
//! * [`resolvent`]: the Green function as a continued fraction and the
//!   spectral density by Stieltjes inversion.
//! * [`wavefunction`]: basis functions, expansion coefficients, kinetic
//!   balance and direct checks of the tridiagonal structure.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the companion `dirac-jmatrix-cli` crate.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod jacobi;
pub mod model;
pub mod pollaczek;
pub mod resolvent;
pub mod scattering;
pub mod specfun;
pub mod spectrum;
pub mod wavefunction;

pub use error::{Error, ErrorKind};
pub use jacobi::JacobiMatrix;
pub use model::{DerivedParams, EnergyPoint, PhysicalParams, Regime};
pub use pollaczek::{PollaczekParams, PolynomialSequence};

/// Complex scalar used throughout (`re`, `im` in `f64`).
pub type ComplexVal = num_complex::Complex64;
