//! Darboux asymptotics of Pollaczek polynomials.

use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{PollaczekError, PollaczekParams};
use crate::specfun::log_gamma;

/// Leading large-`n` behaviour of the orthonormal `p_n(cos θ)` for real
/// `θ ∈ (0, π)`:
///
/// ```text
/// p_n ≈ A cos(nθ + ψ_n),
/// A   = 2 e^{(π/2-θ)Φ} / (|Γ(λ+iΦ)| (2 sin θ)^λ),
/// ψ_n = ψ + λ(θ - π/2) - Φ ln(2n sin θ),   ψ = arg Γ(λ+iΦ).
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarbouxScattering {
    pub lam: f64,
    pub theta: f64,
    pub phi: f64,
    /// `arg Γ(λ+iΦ)` wrapped to `(-π, π]`.
    pub psi: f64,
    pub amplitude: f64,
}

impl DarbouxScattering {
    pub fn new(params: &PollaczekParams, theta: f64) -> Result<Self, PollaczekError> {
        if !(theta > 0.0 && theta < PI) {
            return Err(PollaczekError::Angle { theta });
        }
        let phi = (params.a * theta.cos() + params.b) / theta.sin();
        Self::from_phi(params.lam, theta, phi)
    }

    /// Same as [`DarbouxScattering::new`] with `Φ` supplied by the caller,
    /// for callers that have a more accurate `Φ` than `b / sin θ`.
    pub fn from_phi(lam: f64, theta: f64, phi: f64) -> Result<Self, PollaczekError> {
        if !(theta > 0.0 && theta < PI) {
            return Err(PollaczekError::Angle { theta });
        }
        let lg = log_gamma(Complex64::new(lam, phi))?;
        let psi = wrap_phase(lg.im);
        let log_amp = 2.0f64.ln() + (FRAC_PI_2 - theta) * phi - lg.re - lam * (2.0 * theta.sin()).ln();
        Ok(Self { lam, theta, phi, psi, amplitude: log_amp.exp() })
    }

    /// The slowly varying phase `ψ_n`.
    pub fn psi_n(&self, n: usize) -> f64 {
        self.psi + self.lam * (self.theta - FRAC_PI_2) - self.phi * (2.0 * n as f64 * self.theta.sin()).ln()
    }

    /// `A cos(nθ + ψ_n)`.
    pub fn value(&self, n: usize) -> f64 {
        self.amplitude * (n as f64 * self.theta + self.psi_n(n)).cos()
    }
}

/// Wrap an angle into `(-π, π]`.
pub(crate) fn wrap_phase(a: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut w = a - two_pi * (a / two_pi).round();
    if w <= -PI {
        w += two_pi;
    }
    w
}

/// Darboux approximant of the orthonormal `p_n(cos θ)`.
pub fn asymptotic_scattering(params: &PollaczekParams, theta: f64, n: usize) -> Result<f64, PollaczekError> {
    Ok(DarbouxScattering::new(params, theta)?.value(n.max(1)))
}

/// Which side of the oscillatory band `x` lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `x > 1`, `θ = -i arccosh x`, `|e^{iθ}| > 1`.
    Upper,
    /// `x < -1`, `θ = π + i arccosh|x|`, roles of `e^{±iθ}` exchanged.
    Lower,
}

/// Leading Darboux term of `P_n(x)` for `|x| > 1`, stored as
/// `mantissa · exp(log_scale)` so that large `n` do not overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundAsymptotic {
    pub mantissa: Complex64,
    pub log_scale: f64,
    pub branch: Branch,
    /// `λ - iΦ` on the upper branch, `λ + iΦ` on the lower one. It is real
    /// and the term vanishes when it is a non-positive integer.
    pub gamma_argument: f64,
}

impl BoundAsymptotic {
    pub fn value(&self) -> Complex64 {
        self.mantissa * self.log_scale.exp()
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == Complex64::new(0.0, 0.0)
    }
}

/// Leading term of `P_n(x)` for `|x| > 1`:
///
/// ```text
/// x > 1:   n^{λ-iΦ-1} e^{inθ}  (1 - e^{-2iθ})^{-λ-iΦ} / Γ(λ-iΦ)
/// x < -1:  n^{λ+iΦ-1} e^{-inθ} (1 - e^{2iθ})^{-λ+iΦ}  / Γ(λ+iΦ)
/// ```
pub fn asymptotic_bound(params: &PollaczekParams, x: f64, n: usize) -> Result<BoundAsymptotic, PollaczekError> {
    if !(x.abs() > 1.0) {
        return Err(PollaczekError::Branch { x });
    }
    let n = n.max(1);
    let nf = n as f64;
    let lam = params.lam;
    let (branch, u) = if x > 1.0 { (Branch::Upper, x.acosh()) } else { (Branch::Lower, (-x).acosh()) };
    let w = (params.a * x + params.b) / u.sinh();
    // Upper: iΦ = -w; lower: iΦ = -w as well, but the mirror formula uses
    // λ + iΦ and exponent -λ + iΦ.
    let (c, expo) = match branch {
        Branch::Upper => (lam + w, -lam + w),
        Branch::Lower => (lam - w, -lam - w),
    };
    let k = c.round();
    if k <= 0.0 && (c - k).abs() <= 1e-12 * c.abs().max(1.0) {
        return Ok(BoundAsymptotic { mantissa: Complex64::new(0.0, 0.0), log_scale: 0.0, branch, gamma_argument: c });
    }
    let (ln_abs_gamma, gamma_sign) = libm::lgamma_r(c);
    let one_minus = -(-2.0 * u).exp_m1();
    let log_scale = (c - 1.0) * nf.ln() + nf * u + expo * one_minus.ln() - ln_abs_gamma;
    let mut sign = f64::from(gamma_sign);
    if branch == Branch::Lower && n % 2 == 1 {
        sign = -sign;
    }
    Ok(BoundAsymptotic { mantissa: Complex64::new(sign, 0.0), log_scale, branch, gamma_argument: c })
}
