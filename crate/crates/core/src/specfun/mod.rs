//! Special-function kernel: complex log-Gamma, Pochhammer symbols, Laguerre
//! polynomials, terminating Gauss hypergeometric sums and Gauss rules built
//! from Jacobi matrices.
//!
//! Everything here is a pure function of its arguments.

mod gamma;
mod hypergeometric;
mod laguerre;
mod quadrature;

pub use gamma::{ln_gamma_real, log_gamma, pochhammer, POCHHAMMER_PRODUCT_MAX};
pub use hypergeometric::hyp2f1_terminating;
pub use laguerre::{laguerre, laguerre_derivative, laguerre_sequence};
pub use quadrature::{
    gauss_laguerre, gauss_rule_from_jacobi, symmetric_tridiagonal_eigenvalues, QuadratureRule,
    DEFAULT_SWEEPS_PER_EIGENVALUE,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("PoleError: Gamma has a pole at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },
    #[error("BottomPoleError: bottom Pochhammer factor vanishes at term k = {k} of the degree-{n} sum")]
    BottomPole { n: usize, k: usize },
    #[error("ConvergenceError: tridiagonal eigen-iteration exceeded {sweeps} sweeps")]
    Convergence { sweeps: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
