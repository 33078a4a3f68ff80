//! Physical parameterization of the Dirac-Coulomb problem.
//!
//! Energies are dimensionless (`ε = E / mc²`) and lengths are in Bohr radii,
//! so the Compton length `λ̄` equals the fine-structure constant for a
//! physical electron. The attractive Coulomb case has `Z < 0`.
//!
//! For `κ < 0` every formula is used with `γ` replaced by `-γ - 1`; the
//! replacement is applied once, in [`DerivedParams::effective_gamma`].

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::jacobi::JacobiMatrix;
use crate::pollaczek::{Branch, PollaczekError, PollaczekParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("SupercriticalError: |compton * Z / kappa| = {ratio} >= 1, gamma is not real")]
    Supercritical { ratio: f64 },
    #[error("ThresholdError: |eps| = 1 has no theta/Phi decomposition")]
    Threshold,
    #[error("SingularMapError: eps^2 - 1 + beta^2 vanishes at eps = {eps}")]
    SingularMap { eps: f64 },
    #[error(transparent)]
    Pollaczek(#[from] PollaczekError),
}

/// User-facing physical inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Charge coupling; negative is attractive.
    pub z: f64,
    /// Spin-orbit quantum number, nonzero.
    pub kappa: i32,
    /// Compton length `λ̄` in Bohr radii.
    pub compton: f64,
    /// Laguerre basis scale `ω`.
    pub omega: f64,
}

impl PhysicalParams {
    pub fn new(z: f64, kappa: i32, compton: f64, omega: f64) -> Result<Self, ModelError> {
        let p = Self { z, kappa, compton, omega };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.kappa == 0 {
            return Err(ModelError::InvalidParams("kappa must be nonzero"));
        }
        if !self.z.is_finite() {
            return Err(ModelError::InvalidParams("Z must be finite"));
        }
        if !(self.compton > 0.0 && self.compton.is_finite()) {
            return Err(ModelError::InvalidParams("compton must be positive"));
        }
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(ModelError::InvalidParams("omega must be positive"));
        }
        let ratio = (self.compton * self.z / f64::from(self.kappa)).abs();
        if ratio >= 1.0 {
            return Err(ModelError::Supercritical { ratio });
        }
        Ok(())
    }

    pub fn derive(&self) -> Result<DerivedParams, ModelError> {
        derive(self)
    }
}

/// Quantities derived once from [`PhysicalParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub z: f64,
    pub kappa: i32,
    pub compton: f64,
    pub omega: f64,
    /// `γ = κ √(1 - (λ̄Z/κ)²)`, carrying the sign of `κ`.
    pub gamma: f64,
    /// `α = λ̄² ω Z`.
    pub alpha: f64,
    /// `β = λ̄ ω / 2`.
    pub beta: f64,
    /// Orbital quantum number: `κ` for `κ > 0`, `-κ - 1` for `κ < 0`.
    pub ell: u32,
}

pub fn derive(p: &PhysicalParams) -> Result<DerivedParams, ModelError> {
    p.validate()?;
    let kappa = f64::from(p.kappa);
    let s = p.compton * p.z / kappa;
    let gamma = kappa * ((1.0 - s) * (1.0 + s)).sqrt();
    let ell = if p.kappa > 0 { p.kappa as u32 } else { (-p.kappa - 1) as u32 };
    Ok(DerivedParams {
        z: p.z,
        kappa: p.kappa,
        compton: p.compton,
        omega: p.omega,
        gamma,
        alpha: p.compton * p.compton * p.omega * p.z,
        beta: 0.5 * p.compton * p.omega,
        ell,
    })
}

impl DerivedParams {
    pub fn physical(&self) -> PhysicalParams {
        PhysicalParams { z: self.z, kappa: self.kappa, compton: self.compton, omega: self.omega }
    }

    /// `γ` for `κ > 0`, `-γ - 1` for `κ < 0`.
    pub fn effective_gamma(&self) -> f64 {
        if self.kappa > 0 {
            self.gamma
        } else {
            -self.gamma - 1.0
        }
    }

    /// Pollaczek `λ = γ_eff + 1`.
    pub fn pollaczek_lambda(&self) -> f64 {
        if self.kappa > 0 {
            self.gamma + 1.0
        } else {
            -self.gamma
        }
    }

    /// Rotation angle `ξ` with `sin ξ = λ̄Z/κ`, `cos ξ = γ/κ`.
    pub fn xi(&self) -> f64 {
        let kappa = f64::from(self.kappa);
        (self.compton * self.z / kappa).atan2(self.gamma / kappa)
    }

    pub fn recursion_coefficients(&self) -> RecursionCoefficients {
        RecursionCoefficients { gamma: self.effective_gamma() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Bound,
    Scattering,
    Threshold,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPoint {
    pub eps: f64,
    pub regime: Regime,
}

impl EnergyPoint {
    pub fn new(eps: f64) -> Self {
        let a = eps.abs();
        let regime = if a < 1.0 {
            Regime::Bound
        } else if a > 1.0 {
            Regime::Scattering
        } else {
            Regime::Threshold
        };
        Self { eps, regime }
    }

    /// `1 - ε²` computed as `(1 - ε)(1 + ε)`.
    pub fn one_minus_eps2(&self) -> f64 {
        (1.0 - self.eps) * (1.0 + self.eps)
    }
}

/// Result of the energy-to-Pollaczek identification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PollaczekMap {
    pub params: PollaczekParams,
    pub x: f64,
    /// `ε² - 1 + β²`.
    pub denominator: f64,
}

/// `x = (ε² - 1 - β²)/(ε² - 1 + β²)`, `a = 0`, `b = -αε/(ε² - 1 + β²)`,
/// `λ = γ_eff + 1`.
pub fn map_to_pollaczek(d: &DerivedParams, e: &EnergyPoint) -> Result<PollaczekMap, ModelError> {
    if e.regime == Regime::Threshold {
        return Err(ModelError::Threshold);
    }
    let s = e.one_minus_eps2();
    let b2 = d.beta * d.beta;
    let den = b2 - s;
    if den.abs() <= 4.0 * f64::EPSILON * (1.0 + e.eps * e.eps) {
        return Err(ModelError::SingularMap { eps: e.eps });
    }
    let x = -(s + b2) / den;
    let b = -d.alpha * e.eps / den;
    let params = PollaczekParams::new(d.pollaczek_lambda(), 0.0, b)?;
    Ok(PollaczekMap { params, x, denominator: den })
}

/// `θ` and `Φ = b / sin θ` with the branch resolved per regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaPhi {
    pub theta: Complex64,
    pub phi: Complex64,
    /// `None` in the scattering regime.
    pub branch: Option<Branch>,
}

/// Scattering: `θ = 2 atan(β / √(ε²-1)) ∈ (0, π)`, `Φ` real.
/// Bound, `x > 1`: `θ = -i u` with `e^{u} = (√(1-ε²)+β)/(√(1-ε²)-β)`.
/// Bound, `x < -1`: `θ = π + i v` with `e^{v} = (β+√(1-ε²))/(β-√(1-ε²))`.
/// In both bound branches `Φ` is imaginary and `λ ∓ iΦ = λ + αε/(2β√(1-ε²))`.
pub fn theta_phi(d: &DerivedParams, e: &EnergyPoint) -> Result<ThetaPhi, ModelError> {
    match e.regime {
        Regime::Threshold => Err(ModelError::Threshold),
        Regime::Scattering => {
            let k = (-e.one_minus_eps2()).sqrt();
            let theta = 2.0 * d.beta.atan2(k);
            let phi = -d.alpha * e.eps / (2.0 * d.beta * k);
            Ok(ThetaPhi { theta: Complex64::new(theta, 0.0), phi: Complex64::new(phi, 0.0), branch: None })
        }
        Regime::Bound => {
            let k = e.one_minus_eps2().sqrt();
            let q = d.alpha * e.eps / (2.0 * d.beta * k);
            if k > d.beta {
                let u = 2.0 * (d.beta / k).atanh();
                Ok(ThetaPhi {
                    theta: Complex64::new(0.0, -u),
                    phi: Complex64::new(0.0, q),
                    branch: Some(Branch::Upper),
                })
            } else if k < d.beta {
                let v = 2.0 * (k / d.beta).atanh();
                Ok(ThetaPhi {
                    theta: Complex64::new(PI, v),
                    phi: Complex64::new(0.0, -q),
                    branch: Some(Branch::Lower),
                })
            } else {
                Err(ModelError::SingularMap { eps: e.eps })
            }
        }
    }
}

/// Coefficients of the three-term recurrence
/// `[a_n x + b] f_n = b_{n-1} f_{n-1} + b_n f_{n+1}` with
/// `a_n = n + γ + 1`, `b_n = ½ √((n+1)(n+2γ+2))`.
///
/// `gamma` already has the `κ < 0` replacement applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecursionCoefficients {
    pub gamma: f64,
}

impl RecursionCoefficients {
    pub fn a(&self, n: usize) -> f64 {
        n as f64 + self.gamma + 1.0
    }

    pub fn b(&self, n: usize) -> f64 {
        let nf = n as f64;
        0.5 * ((nf + 1.0) * (nf + 2.0 * self.gamma + 2.0)).sqrt()
    }
}

impl JacobiMatrix for RecursionCoefficients {
    fn diag(&self, n: usize) -> f64 {
        self.a(n)
    }
    fn offdiag(&self, n: usize) -> f64 {
        self.b(n)
    }
}

pub fn recursion_coefficients(d: &DerivedParams) -> RecursionCoefficients {
    d.recursion_coefficients()
}

/// Applies `[[cos ξ/2, sin ξ/2], [-sin ξ/2, cos ξ/2]]` to `(upper, lower)`.
///
/// With `ξ` from [`DerivedParams::xi`] this takes the original spinor
/// components `(χ⁺, χ⁻)` to the rotated `(φ⁺, φ⁻)`; `spinor_rotation(-ξ, ..)`
/// is the inverse.
pub fn spinor_rotation(xi: f64, upper: f64, lower: f64) -> (f64, f64) {
    let (s, c) = (0.5 * xi).sin_cos();
    (c * upper + s * lower, -s * upper + c * lower)
}

/// `(Z, κ, ε) → (-Z, -κ, -ε)`; the flag tells callers to exchange the upper
/// and lower spinor components.
pub fn negative_energy_map(p: &PhysicalParams, e: &EnergyPoint) -> (PhysicalParams, EnergyPoint, bool) {
    let mapped = PhysicalParams { z: -p.z, kappa: -p.kappa, ..*p };
    (mapped, EnergyPoint::new(-e.eps), true)
}
