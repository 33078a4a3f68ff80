//! Green function `G(z) = ⟨0|(z - J)^{-1}|0⟩ = lim P*_n(z) / P_n(z)` of a
//! Jacobi matrix, evaluated as the continued fraction
//!
//! ```text
//! G(z) = 1 / (z - a_0 - b_0² / (z - a_1 - b_1² / (z - a_2 - ...)))
//! ```
//!
//! With this sign convention `Im G(x + iη) ≤ 0` for `η > 0`, and the spectral
//! density is `ρ(x) = -Im G(x + i0) / π`.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::jacobi::JacobiMatrix;
use crate::model::{map_to_pollaczek, EnergyPoint, ModelError, PhysicalParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResolventError {
    #[error("NoConvergence: continued fraction not converged after {depth} levels (last delta {last_delta:e})")]
    NoConvergence { depth: usize, last_delta: f64 },
    #[error("SpectrumProximity: partial denominator vanished at level {depth} for real z")]
    SpectrumProximity { depth: usize },
    #[error("invalid resolvent input: {0}")]
    InvalidInput(&'static str),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventEstimate {
    pub z: Complex64,
    pub value: Complex64,
    pub depth: usize,
    pub converged: bool,
    pub last_delta: f64,
}

const TINY: f64 = 1e-30;
const PROXIMITY: f64 = 1e-14;

/// Modified-Lentz evaluation of `G(z)`, stopping when the multiplicative
/// update satisfies `|Δ - 1| ≤ tol`.
pub fn continued_fraction_g<J: JacobiMatrix + ?Sized>(
    jac: &J,
    z: Complex64,
    tol: f64,
    max_depth: usize,
) -> Result<ResolventEstimate, ResolventError> {
    if !(tol > 0.0) {
        return Err(ResolventError::InvalidInput("tolerance must be positive"));
    }
    if max_depth == 0 {
        return Err(ResolventError::InvalidInput("max_depth must be positive"));
    }
    let real_axis = z.im == 0.0;
    let tiny = Complex64::new(TINY, 0.0);
    let floor = |v: Complex64| if v.norm() < TINY { tiny } else { v };
    // f = A_1/(B_1 + A_2/(B_2 + ...)), A_1 = 1, A_{k+1} = -b_{k-1}², B_k = z - a_{k-1}.
    let mut f = tiny;
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    let mut last_delta = f64::INFINITY;
    for k in 0..max_depth {
        let a_k = if k == 0 { 1.0 } else { -jac.offdiag(k - 1).powi(2) };
        let b_k = z - jac.diag(k);
        let den = b_k + d * a_k;
        if real_axis && den.norm() < PROXIMITY * (1.0 + b_k.norm()) {
            return Err(ResolventError::SpectrumProximity { depth: k + 1 });
        }
        d = floor(den).inv();
        c = floor(b_k + c.inv() * a_k);
        let delta = c * d;
        f *= delta;
        last_delta = (delta - 1.0).norm();
        if k > 0 && last_delta <= tol {
            return Ok(ResolventEstimate { z, value: f, depth: k + 1, converged: true, last_delta });
        }
    }
    Err(ResolventError::NoConvergence { depth: max_depth, last_delta })
}

/// `G` of the leading `depth × depth` block, evaluated from the bottom up.
/// This equals the Gauss-rule resolvent `Σ w_k / (z - x_k)` of that block.
pub fn truncated_g<J: JacobiMatrix + ?Sized>(jac: &J, z: Complex64, depth: usize) -> Result<ResolventEstimate, ResolventError> {
    if depth == 0 {
        return Err(ResolventError::InvalidInput("depth must be positive"));
    }
    let eval = |depth: usize| -> Result<Complex64, ResolventError> {
        let mut tail = Complex64::new(0.0, 0.0);
        for k in (0..depth).rev() {
            let coupling = if k + 1 < depth { jac.offdiag(k).powi(2) } else { 0.0 };
            let den = z - jac.diag(k) - tail * coupling;
            if den.norm() < PROXIMITY * (1.0 + z.norm()) {
                return Err(ResolventError::SpectrumProximity { depth: k + 1 });
            }
            tail = den.inv();
        }
        Ok(tail)
    };
    let value = eval(depth)?;
    let last_delta = if depth > 1 { (value - eval(depth - 1)?).norm() } else { f64::INFINITY };
    Ok(ResolventEstimate { z, value, depth, converged: false, last_delta })
}

/// `ρ_η(x) = -Im G(x + iη) / π`.
pub fn spectral_density<J: JacobiMatrix + ?Sized>(
    jac: &J,
    x: f64,
    eta: f64,
    tol: f64,
    max_depth: usize,
) -> Result<f64, ResolventError> {
    if !(eta > 0.0) {
        return Err(ResolventError::InvalidInput("eta must be positive"));
    }
    let g = continued_fraction_g(jac, Complex64::new(x, eta), tol, max_depth)?;
    Ok(-g.value.im / core::f64::consts::PI)
}

/// Density of the Pollaczek measure at the physical energy `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyDensity {
    pub eps: f64,
    /// Pollaczek variable `x(ε)`.
    pub x: f64,
    /// `ρ_η` in the variable `x`, with `λ` and `b` frozen at `ε`.
    pub rho_x: f64,
    /// Numerical `dx/dε`.
    pub dx_deps: f64,
    /// `ρ_η(x) |dx/dε|`.
    pub rho_eps: f64,
}

/// Density in the Pollaczek variable at the energy `eps`, and its
/// translation to `ε` through a central-difference Jacobian of `x(ε)`.
pub fn density_in_energy(
    p: &PhysicalParams,
    eps: f64,
    eta: f64,
    tol: f64,
    max_depth: usize,
) -> Result<EnergyDensity, ResolventError> {
    let d = p.derive()?;
    let map = map_to_pollaczek(&d, &EnergyPoint::new(eps))?;
    let jac = map.params.orthonormal_jacobi();
    let rho_x = spectral_density(&jac, map.x, eta, tol, max_depth)?;
    let h = 1e-6 * eps.abs().max(1e-3);
    let xp = map_to_pollaczek(&d, &EnergyPoint::new(eps + h))?.x;
    let xm = map_to_pollaczek(&d, &EnergyPoint::new(eps - h))?.x;
    let dx_deps = (xp - xm) / (2.0 * h);
    Ok(EnergyDensity { eps, x: map.x, rho_x, dx_deps, rho_eps: rho_x * dx_deps.abs() })
}

/// `ρ_η` on a grid of `x` values.
pub fn density_scan<J: JacobiMatrix + ?Sized>(
    jac: &J,
    xs: &[f64],
    eta: f64,
    tol: f64,
    max_depth: usize,
) -> Result<Vec<f64>, ResolventError> {
    xs.iter().map(|&x| spectral_density(jac, x, eta, tol, max_depth)).collect()
}
