//! Bound-state spectrum.
//!
//! A bound state is an energy at which the expansion coefficients `f_n`
//! are the minimal solution of the recurrence. In Pollaczek language the
//! dominant Darboux term carries `1/Γ(λ - iΦ)`, which vanishes exactly when
//! `λ - iΦ = -n`, giving `ε_n = [1 + (λ̄Z/(n+λ))²]^{-1/2}`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::model::{DerivedParams, EnergyPoint, ModelError, PhysicalParams, Regime};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("RepulsiveError: bound states need Z < 0, got Z = {z}")]
    Repulsive { z: f64 },
    #[error("energy {eps} is not in the bound regime |eps| < 1")]
    NotBound { eps: f64 },
    #[error("minimal-solution depth must be positive")]
    ZeroDepth,
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn require_attractive(z: f64) -> Result<(), SpectrumError> {
    if z < 0.0 {
        Ok(())
    } else {
        Err(SpectrumError::Repulsive { z })
    }
}

/// `q = λ̄Z / (n + λ)` for the `n`-th level.
fn level_ratio(d: &DerivedParams, n: usize) -> f64 {
    d.compton * d.z / (n as f64 + d.pollaczek_lambda())
}

/// `ε_n - 1 = -q² / (√(1+q²) (1 + √(1+q²)))`, accurate when `q` is small.
fn binding_from_ratio(q: f64) -> f64 {
    let r = q.hypot(1.0);
    -q * q / (r * (1.0 + r))
}

/// Energy of the `n`-th bound level for the given `κ`.
pub fn bound_energy(p: &PhysicalParams, n: usize) -> Result<f64, SpectrumError> {
    require_attractive(p.z)?;
    let d = p.derive()?;
    Ok(1.0 / level_ratio(&d, n).hypot(1.0))
}

/// `ε_n - 1` without the cancellation of forming `ε_n` first.
pub fn binding_energy(p: &PhysicalParams, n: usize) -> Result<f64, SpectrumError> {
    require_attractive(p.z)?;
    let d = p.derive()?;
    Ok(binding_from_ratio(level_ratio(&d, n)))
}

/// `(ε_n - 1) / λ̄²`, which tends to the Rydberg value `-Z²/(2N²)` with
/// `N = n + ℓ + 1` as `λ̄ → 0`.
pub fn nonrelativistic_limit_check(p: &PhysicalParams, n: usize) -> Result<f64, SpectrumError> {
    Ok(binding_energy(p, n)? / (p.compton * p.compton))
}

/// Sommerfeld fine-structure energy
/// `[1 + (Zλ̄/(n_r + √(κ² - (Zλ̄)²)))²]^{-1/2}`.
pub fn sommerfeld_energy(z: f64, kappa: i32, compton: f64, n_r: usize) -> f64 {
    let za = z * compton;
    let k = f64::from(kappa);
    let gs = (k * k - za * za).sqrt();
    let t = za / (n_r as f64 + gs);
    (1.0 + t * t).sqrt().recip()
}

/// Radial quantum number matching level `n` of [`bound_energy`].
pub fn sommerfeld_radial_number(kappa: i32, n: usize) -> usize {
    if kappa > 0 {
        n + 1
    } else {
        n
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub n: usize,
    pub kappa: i32,
    pub eps: f64,
    /// `|ε_n - ε_Sommerfeld| / ε_Sommerfeld`.
    pub oracle_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumTable {
    pub entries: Vec<SpectrumEntry>,
}

/// Levels `n = 0..=n_max` with their Sommerfeld residuals.
pub fn spectrum_table(p: &PhysicalParams, n_max: usize) -> Result<SpectrumTable, SpectrumError> {
    let entries = (0..=n_max)
        .map(|n| {
            let eps = bound_energy(p, n)?;
            let oracle = sommerfeld_energy(p.z, p.kappa, p.compton, sommerfeld_radial_number(p.kappa, n));
            Ok(SpectrumEntry { n, kappa: p.kappa, eps, oracle_residual: ((eps - oracle) / oracle).abs() })
        })
        .collect::<Result<_, SpectrumError>>()?;
    Ok(SpectrumTable { entries })
}

/// Negative-energy levels, obtained from the positive-energy levels of the
/// mapped problem `(Z, κ) → (-Z, -κ)`. Requires `Z > 0`.
pub fn negative_energy_levels(p: &PhysicalParams, n_max: usize) -> Result<Vec<f64>, SpectrumError> {
    let mapped = PhysicalParams { z: -p.z, kappa: -p.kappa, ..*p };
    (0..=n_max).map(|n| bound_energy(&mapped, n).map(|e| -e)).collect()
}

/// `λ - iΦ` at a bound-regime energy: `λ + λ̄Zε/√(1-ε²)`.
///
/// Both branches of `θ` give the same real value, which is smooth in `ε`,
/// decreasing, and equal to `-n` at the `n`-th level.
pub fn quantization_condition(d: &DerivedParams, eps: f64) -> Result<f64, SpectrumError> {
    require_attractive(d.z)?;
    let e = EnergyPoint::new(eps);
    match e.regime {
        Regime::Bound => Ok(d.pollaczek_lambda() + d.compton * d.z * eps / e.one_minus_eps2().sqrt()),
        Regime::Threshold => Err(ModelError::Threshold.into()),
        Regime::Scattering => Err(SpectrumError::NotBound { eps }),
    }
}

/// Extra indices used beyond the requested depth by the backward recurrence.
pub const MILLER_GUARD: usize = 40;

/// Minimal solution `f_0 = 1, f_1, ..., f_N` of the recurrence at a
/// bound-regime energy, by backward (Miller) recurrence started at
/// `N + MILLER_GUARD`.
///
/// The recurrence is used in the scaled form
/// `c_n f_n = D (b_{n-1} f_{n-1} + b_n f_{n+1})` with
/// `c_n = a_n (ε²-1-β²) - αε` and `D = ε²-1+β²`, which stays regular where
/// the Pollaczek map itself is singular.
pub fn minimal_solution(d: &DerivedParams, eps: f64, n: usize) -> Result<Vec<f64>, SpectrumError> {
    Ok(miller(d, eps, n)?.0)
}

/// Backward sweep. Returns the normalized solution and the row-0 defect.
fn miller(d: &DerivedParams, eps: f64, n: usize) -> Result<(Vec<f64>, f64), SpectrumError> {
    if n == 0 {
        return Err(SpectrumError::ZeroDepth);
    }
    let e = EnergyPoint::new(eps);
    match e.regime {
        Regime::Bound => {}
        Regime::Threshold => return Err(ModelError::Threshold.into()),
        Regime::Scattering => return Err(SpectrumError::NotBound { eps }),
    }
    let rc = d.recursion_coefficients();
    let s = e.one_minus_eps2();
    let b2 = d.beta * d.beta;
    let den = b2 - s;
    if den == 0.0 {
        return Err(ModelError::SingularMap { eps }.into());
    }
    let c = |k: usize| -rc.a(k) * (s + b2) - d.alpha * eps;
    let top = n + MILLER_GUARD;
    let mut f = alloc::vec![0.0f64; top + 2];
    f[top] = 1.0;
    for k in (1..=top).rev() {
        let v = (c(k) * f[k] - den * rc.b(k) * f[k + 1]) / (den * rc.b(k - 1));
        f[k - 1] = v;
        if v.abs() > 1e200 {
            for x in &mut f[k - 1..=top] {
                *x *= 1e-200;
            }
        }
    }
    let residual = c(0) * f[0] - den * rc.b(0) * f[1];
    let row = rc.a(0) * (s + b2).abs() + (d.alpha * eps).abs() + (den * rc.b(0)).abs();
    let scale = row * f[0].abs().max(f[1].abs());
    let defect = if scale == 0.0 { 0.0 } else { residual.abs() / scale };
    let f0 = f[0];
    f.truncate(n + 1);
    if f0 != 0.0 {
        for x in &mut f {
            *x /= f0;
        }
    }
    Ok((f, defect))
}

/// Outcome of [`minimal_solution_detect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimalSolutionDiagnostic {
    pub eps: f64,
    /// Row-0 residual `|c_0 f_0 - D b_0 f_1|` of the backward solution,
    /// divided by `(a_0 |1-ε²+β²| + |αε| + |D b_0|) max(|f_0|, |f_1|)`.
    /// Small exactly when the minimal solution also satisfies the `n = 0`
    /// row, i.e. at a bound state.
    pub defect: f64,
    /// `f_1 / f_0` from the backward sweep.
    pub backward_ratio: f64,
    /// `f_1 / f_0` demanded by the `n = 0` row.
    pub forward_ratio: f64,
    pub depth: usize,
}

/// Backward-recurrence bound-state test at `eps` with depth `n`.
pub fn minimal_solution_detect(
    d: &DerivedParams,
    eps: f64,
    n: usize,
) -> Result<MinimalSolutionDiagnostic, SpectrumError> {
    let (f, defect) = miller(d, eps, n)?;
    let rc = d.recursion_coefficients();
    let e = EnergyPoint::new(eps);
    let s = e.one_minus_eps2();
    let den = d.beta * d.beta - s;
    let c0 = -rc.a(0) * (s + d.beta * d.beta) - d.alpha * eps;
    Ok(MinimalSolutionDiagnostic {
        eps,
        defect,
        backward_ratio: f[1],
        forward_ratio: c0 / (den * rc.b(0)),
        depth: n,
    })
}
