//! Pollaczek polynomials `P_n^λ(x; a, b)`.
//!
//! The defining recurrence is
//!
//! ```text
//! [(n+λ+a)x + b] P_n = ½(n+2λ-1) P_{n-1} + ½(n+1) P_{n+1},
//! P_0 = 1,  P_1 = 2(λ+a)x + 2b.
//! ```
//!
//! Three normalizations are provided: the monic-like `P_n`, the symmetric
//! `Q_n = P_n / √(Γ(n+2λ) / (n! Γ(2λ+1)))` (so `Q_0 = √(2λ)`), and the
//! orthonormal `p_n = √(n! (λ+a+n) / Γ(n+2λ)) P_n`.

mod asymptotics;
mod extended;
mod generating;

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::jacobi::{first_solution, second_solution, JacobiMatrix};
use crate::specfun::{ln_gamma_real, SpecfunError};

pub use asymptotics::{asymptotic_bound, asymptotic_scattering, BoundAsymptotic, Branch, DarbouxScattering};
pub use extended::{eval_p_extended, DoubleDouble};
pub use generating::{generating_partial_sum, RADIUS_MARGIN};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PollaczekError {
    #[error("invalid Pollaczek parameters: {0}")]
    InvalidParams(&'static str),
    #[error("normalization mismatch: expected {expected:?}, got {found:?}")]
    NormalizationMismatch { expected: Normalization, found: Normalization },
    #[error("DegenerateError: off-diagonal b_0 vanishes, second solution undefined")]
    Degenerate,
    #[error("RadiusError: |t| = {t_abs} exceeds the admissible radius {limit}")]
    Radius { t_abs: f64, limit: f64 },
    #[error("BranchError: asymptotic form needs |x| > 1, got x = {x}")]
    Branch { x: f64 },
    #[error("scattering asymptotics need 0 < theta < pi, got {theta}")]
    Angle { theta: f64 },
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

/// Parameters `(λ, a, b)` of the Pollaczek family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PollaczekParams {
    pub lam: f64,
    pub a: f64,
    pub b: f64,
}

impl PollaczekParams {
    pub fn new(lam: f64, a: f64, b: f64) -> Result<Self, PollaczekError> {
        if !(lam > 0.0) || !lam.is_finite() {
            return Err(PollaczekError::InvalidParams("lambda must be positive and finite"));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(PollaczekError::InvalidParams("a and b must be finite"));
        }
        if !(lam + a > 0.0) {
            return Err(PollaczekError::InvalidParams("lambda + a must be positive"));
        }
        Ok(Self { lam, a, b })
    }

    /// `Φ(θ) = (a cos θ + b) / sin θ`.
    pub fn phi(&self, theta: Complex64) -> Complex64 {
        (theta.cos() * self.a + self.b) / theta.sin()
    }

    /// Jacobi matrix of the orthonormal polynomials.
    pub fn orthonormal_jacobi(&self) -> OrthonormalJacobi {
        OrthonormalJacobi { params: *self }
    }

    /// `p_0 = √((λ+a) / Γ(2λ))`.
    pub fn orthonormal_p0(&self) -> f64 {
        (0.5 * ((self.lam + self.a).ln() - ln_gamma_real(2.0 * self.lam))).exp()
    }

    /// `ln` of the factor taking `P_n` to `p_n`.
    fn ln_orthonormal_factor(&self, n: usize) -> f64 {
        let nf = n as f64;
        0.5 * (ln_gamma_real(nf + 1.0) + (self.lam + self.a + nf).ln() - ln_gamma_real(nf + 2.0 * self.lam))
    }

    /// `ln` of the factor taking `Q_n` to `P_n`.
    fn ln_symmetric_factor(&self, n: usize) -> f64 {
        let nf = n as f64;
        0.5 * (ln_gamma_real(nf + 2.0 * self.lam) - ln_gamma_real(nf + 1.0) - ln_gamma_real(2.0 * self.lam + 1.0))
    }
}

/// Jacobi matrix of the orthonormal Pollaczek polynomials:
/// `a_n = -b / (n+λ+a)`, `b_n = ½ √((n+1)(n+2λ) / ((n+λ+a)(n+λ+a+1)))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthonormalJacobi {
    pub params: PollaczekParams,
}

impl JacobiMatrix for OrthonormalJacobi {
    fn diag(&self, n: usize) -> f64 {
        let p = &self.params;
        -p.b / (n as f64 + p.lam + p.a)
    }

    fn offdiag(&self, n: usize) -> f64 {
        let p = &self.params;
        let nf = n as f64;
        let c = nf + p.lam + p.a;
        0.5 * ((nf + 1.0) * (nf + 2.0 * p.lam) / (c * (c + 1.0))).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    P,
    PStar,
    Q,
    Orthonormal,
}

/// Values `v_0, ..., v_N` of one normalization at a fixed argument.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSequence {
    pub values: Vec<f64>,
    pub argument: f64,
    pub normalization: Normalization,
    pub params: PollaczekParams,
}

impl PolynomialSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `P_0(x), ..., P_N(x)` by forward recurrence.
pub fn eval_p(params: &PollaczekParams, x: f64, n: usize) -> PolynomialSequence {
    let PollaczekParams { lam, a, b } = *params;
    let mut values = Vec::with_capacity(n + 1);
    values.push(1.0);
    if n >= 1 {
        values.push(2.0 * ((lam + a) * x + b));
    }
    for k in 1..n {
        let kf = k as f64;
        let lhs = ((kf + lam + a) * x + b) * values[k];
        let next = (2.0 * lhs - (kf + 2.0 * lam - 1.0) * values[k - 1]) / (kf + 1.0);
        values.push(next);
    }
    PolynomialSequence { values, argument: x, normalization: Normalization::P, params: *params }
}

/// `P_0(z), ..., P_N(z)` at complex argument.
pub fn eval_p_complex(params: &PollaczekParams, z: Complex64, n: usize) -> Vec<Complex64> {
    let PollaczekParams { lam, a, b } = *params;
    let mut values = Vec::with_capacity(n + 1);
    values.push(Complex64::new(1.0, 0.0));
    if n >= 1 {
        values.push((z * (lam + a) + b) * 2.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let lhs = (z * (kf + lam + a) + b) * values[k];
        let next = (lhs * 2.0 - values[k - 1] * (kf + 2.0 * lam - 1.0)) / (kf + 1.0);
        values.push(next);
    }
    values
}

/// Orthonormal `p_0(x), ..., p_N(x)` evaluated directly through the Jacobi
/// recurrence, which stays bounded for `x ∈ (-1, 1)` at any `N`.
pub fn eval_orthonormal(params: &PollaczekParams, x: f64, n: usize) -> PolynomialSequence {
    let p0 = params.orthonormal_p0();
    let values = first_solution(&params.orthonormal_jacobi(), x, n).into_iter().map(|v| v * p0).collect();
    PolynomialSequence { values, argument: x, normalization: Normalization::Orthonormal, params: *params }
}

/// Second solution `P*_n` of the symmetric (orthonormal) recurrence with
/// `P*_0 = 0`, `P*_1 = 1 / b_0`.
pub fn eval_pstar(params: &PollaczekParams, x: f64, n: usize) -> Result<PolynomialSequence, PollaczekError> {
    let jac = params.orthonormal_jacobi();
    if !(jac.offdiag(0) != 0.0 && jac.offdiag(0).is_finite()) {
        return Err(PollaczekError::Degenerate);
    }
    let values = second_solution(&jac, x, n).ok_or(PollaczekError::Degenerate)?;
    Ok(PolynomialSequence { values, argument: x, normalization: Normalization::PStar, params: *params })
}

fn expect_p(seq: &PolynomialSequence) -> Result<(), PollaczekError> {
    if seq.normalization == Normalization::P {
        Ok(())
    } else {
        Err(PollaczekError::NormalizationMismatch { expected: Normalization::P, found: seq.normalization })
    }
}

/// `Q_n = P_n / √(Γ(n+2λ) / (n! Γ(2λ+1)))`.
pub fn to_symmetric_q(seq: &PolynomialSequence) -> Result<PolynomialSequence, PollaczekError> {
    expect_p(seq)?;
    let values = seq
        .values
        .iter()
        .enumerate()
        .map(|(n, v)| v * (-seq.params.ln_symmetric_factor(n)).exp())
        .collect();
    Ok(PolynomialSequence { values, normalization: Normalization::Q, ..*seq })
}

/// `p_n = √(n! (λ+a+n) / Γ(n+2λ)) P_n`.
pub fn to_orthonormal(seq: &PolynomialSequence) -> Result<PolynomialSequence, PollaczekError> {
    expect_p(seq)?;
    let values = seq
        .values
        .iter()
        .enumerate()
        .map(|(n, v)| v * seq.params.ln_orthonormal_factor(n).exp())
        .collect();
    Ok(PolynomialSequence { values, normalization: Normalization::Orthonormal, ..*seq })
}
