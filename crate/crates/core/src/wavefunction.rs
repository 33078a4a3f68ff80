//! Laguerre basis, expansion coefficients and radial wavefunctions.
//!
//! The upper component is expanded as `φ⁺(r) = Σ f_n ζ_n(r)` with
//!
//! ```text
//! ζ_n(r) = A_n y^{γ+1} e^{-y/2} L_n^{2γ+1}(y),  y = ωr,
//! A_n = √(ω n! / Γ(n+2γ+2)),
//! ```
//!
//! where `γ` is the effective exponent (`-γ-1` for `κ < 0`). With this `A_n`
//! the wave operator is exactly `D · J(ε)` with `J` the tridiagonal matrix of
//! the coefficient recurrence and `D = 2(k² - ω²/4)`, `k² = (1-ε²)/λ̄²`. The
//! basis is not orthonormal: its Gram matrix is `2 tridiag(-b_n, a_n, -b_n)`.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::model::{theta_phi, DerivedParams, EnergyPoint, ModelError, Regime};
use crate::specfun::{gauss_laguerre, hyp2f1_terminating, laguerre_sequence, ln_gamma_real, pochhammer, SpecfunError};
use crate::spectrum::{minimal_solution, SpectrumError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WavefunctionError {
    #[error("KineticBalanceSingular: |eps + gamma/kappa| = {value:e} is below 1e-12")]
    KineticBalanceSingular { value: f64 },
    #[error("GridError: {0}")]
    Grid(&'static str),
    #[error("QuadratureOrderError: N = {requested} exceeds the exactness budget {max}")]
    QuadratureOrder { requested: usize, max: usize },
    #[error("truncation {requested} exceeds the {available} available coefficients")]
    Truncation { requested: usize, available: usize },
    #[error("basis exponent gamma = {gamma} is outside the supported range")]
    BasisExponent { gamma: f64 },
    #[error("radius must be positive, got {r}")]
    Radius { r: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

/// The family `{ζ_n}` for one `(γ, ω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreBasis {
    pub gamma: f64,
    pub omega: f64,
}

impl LaguerreBasis {
    pub fn new(gamma: f64, omega: f64) -> Result<Self, WavefunctionError> {
        if !(gamma > -1.0) || !(omega > 0.0) {
            return Err(WavefunctionError::BasisExponent { gamma });
        }
        Ok(Self { gamma, omega })
    }

    /// Basis of the upper component for `d` (uses the effective `γ`).
    pub fn for_params(d: &DerivedParams) -> Result<Self, WavefunctionError> {
        Self::new(d.effective_gamma(), d.omega)
    }

    fn nu(&self) -> f64 {
        2.0 * self.gamma + 1.0
    }

    /// `A_n = √(ω n! / Γ(n+2γ+2))`.
    pub fn normalization(&self, n: usize) -> f64 {
        let nf = n as f64;
        (0.5 * (self.omega.ln() + ln_gamma_real(nf + 1.0) - ln_gamma_real(nf + 2.0 * self.gamma + 2.0))).exp()
    }

    pub fn element(&self, n: usize) -> BasisElement {
        BasisElement { n, gamma: self.gamma, omega: self.omega, normalization: self.normalization(n) }
    }

    /// `[ζ_0(r), ..., ζ_{count-1}(r)]`.
    pub fn values(&self, count: usize, r: f64) -> Vec<f64> {
        if count == 0 {
            return Vec::new();
        }
        let y = self.omega * r;
        let envelope = ((self.gamma + 1.0) * y.ln() - 0.5 * y).exp();
        laguerre_sequence(count - 1, self.nu(), y)
            .into_iter()
            .enumerate()
            .map(|(n, l)| self.normalization(n) * envelope * l)
            .collect()
    }

    /// `[ζ_0'(r), ...]` from
    /// `dζ_n/dr = ω A_n y^γ e^{-y/2} [(γ+1-y/2) L_n^ν(y) - y L_{n-1}^{ν+1}(y)]`.
    pub fn derivatives(&self, count: usize, r: f64) -> Vec<f64> {
        if count == 0 {
            return Vec::new();
        }
        let y = self.omega * r;
        let envelope = (self.gamma * y.ln() - 0.5 * y).exp();
        let l = laguerre_sequence(count - 1, self.nu(), y);
        let l1 = laguerre_sequence(count - 1, self.nu() + 1.0, y);
        (0..count)
            .map(|n| {
                let dl = if n == 0 { 0.0 } else { -l1[n - 1] };
                self.omega * self.normalization(n) * envelope * ((self.gamma + 1.0 - 0.5 * y) * l[n] + y * dl)
            })
            .collect()
    }

    /// `[ζ_0''(r), ...]` from the Laguerre equation:
    /// `ζ_n'' = ω² [γ(γ+1)/y² - (n+γ+1)/y + 1/4] ζ_n`.
    pub fn second_derivatives(&self, count: usize, r: f64) -> Vec<f64> {
        let y = self.omega * r;
        let g = self.gamma;
        let w2 = self.omega * self.omega;
        self.values(count, r)
            .into_iter()
            .enumerate()
            .map(|(n, z)| w2 * (g * (g + 1.0) / (y * y) - (n as f64 + g + 1.0) / y + 0.25) * z)
            .collect()
    }

    /// Overlap matrix `∫ ζ_m ζ_n dr` (row-major `count × count`) by
    /// generalized Gauss-Laguerre quadrature.
    pub fn gram_matrix(&self, count: usize) -> Result<Vec<f64>, WavefunctionError> {
        let rule = gauss_laguerre(count + 4, self.nu())?;
        let norms: Vec<f64> = (0..count).map(|n| self.normalization(n)).collect();
        let mut s = alloc::vec![0.0; count * count];
        for (&y, &w) in rule.nodes.iter().zip(&rule.weights) {
            let l = laguerre_sequence(count.saturating_sub(1), self.nu(), y);
            for m in 0..count {
                for n in 0..count {
                    s[m * count + n] += w * y * norms[m] * norms[n] * l[m] * l[n] / self.omega;
                }
            }
        }
        Ok(s)
    }
}

/// One basis function `ζ_n` with its normalization `A_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisElement {
    pub n: usize,
    pub gamma: f64,
    pub omega: f64,
    pub normalization: f64,
}

/// `A_n (ωr)^{γ+1} e^{-ωr/2} L_n^{2γ+1}(ωr)`.
pub fn basis_value(elem: &BasisElement, r: f64) -> f64 {
    let y = elem.omega * r;
    let l = laguerre_sequence(elem.n, 2.0 * elem.gamma + 1.0, y)[elem.n];
    elem.normalization * ((elem.gamma + 1.0) * y.ln() - 0.5 * y).exp() * l
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientSource {
    Recursion,
    ClosedForm,
    Minimal,
}

/// Expansion coefficients `f_0, ..., f_N` at one energy, normalized to `f_0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    pub values: Vec<Complex64>,
    pub eps: f64,
    pub source: CoefficientSource,
}

impl CoefficientVector {
    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }
}

/// Scaled recurrence rows `c_n f_n = D (b_{n-1} f_{n-1} + b_n f_{n+1})`.
struct ScaledRows {
    den: f64,
    shift: f64,
    alpha_eps: f64,
    gamma: f64,
}

impl ScaledRows {
    fn new(d: &DerivedParams, eps: f64) -> Result<Self, WavefunctionError> {
        let e = EnergyPoint::new(eps);
        if e.regime == Regime::Threshold {
            return Err(ModelError::Threshold.into());
        }
        let s = e.one_minus_eps2();
        let b2 = d.beta * d.beta;
        let den = b2 - s;
        if den == 0.0 {
            return Err(ModelError::SingularMap { eps }.into());
        }
        Ok(Self { den, shift: s + b2, alpha_eps: d.alpha * eps, gamma: d.effective_gamma() })
    }

    fn a(&self, n: usize) -> f64 {
        n as f64 + self.gamma + 1.0
    }

    fn b(&self, n: usize) -> f64 {
        let nf = n as f64;
        0.5 * ((nf + 1.0) * (nf + 2.0 * self.gamma + 2.0)).sqrt()
    }

    fn c(&self, n: usize) -> f64 {
        -self.a(n) * self.shift - self.alpha_eps
    }
}

/// Forward recurrence from `f_0 = 1`; `f_1 = (a_0 x + b) / b_0`.
pub fn coefficients_recursion(d: &DerivedParams, eps: f64, n: usize) -> Result<CoefficientVector, WavefunctionError> {
    let rows = ScaledRows::new(d, eps)?;
    let mut f = Vec::with_capacity(n + 1);
    f.push(1.0);
    for k in 0..n {
        let back = if k == 0 { 0.0 } else { rows.b(k - 1) * f[k - 1] };
        f.push((rows.c(k) * f[k] / rows.den - back) / rows.b(k));
    }
    Ok(CoefficientVector {
        values: f.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
        eps,
        source: CoefficientSource::Recursion,
    })
}

/// Relative residual of the recurrence on `f`, maximized over rows `0..len-1`.
pub fn recursion_residual(d: &DerivedParams, eps: f64, f: &[f64]) -> Result<f64, WavefunctionError> {
    let rows = ScaledRows::new(d, eps)?;
    let mut worst: f64 = 0.0;
    for k in 0..f.len().saturating_sub(1) {
        let back = if k == 0 { 0.0 } else { rows.b(k - 1) * f[k - 1] };
        let lhs = rows.c(k) * f[k];
        let rhs = rows.den * (back + rows.b(k) * f[k + 1]);
        let scale = lhs.abs() + rows.den.abs() * (back.abs() + (rows.b(k) * f[k + 1]).abs());
        if scale > 0.0 {
            worst = worst.max((lhs - rhs).abs() / scale);
        }
    }
    Ok(worst)
}

/// Bound-regime minimal solution (Miller backward recurrence).
pub fn coefficients_minimal(d: &DerivedParams, eps: f64, n: usize) -> Result<CoefficientVector, WavefunctionError> {
    let f = minimal_solution(d, eps, n)?;
    Ok(CoefficientVector {
        values: f.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
        eps,
        source: CoefficientSource::Minimal,
    })
}

/// Which hypergeometric display to evaluate in [`coefficients_closed_form`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormVariant {
    /// Prefactor `√(Γ(2λ)(n+λ) / (λ Γ(n+2λ) n!))`, bottom parameter `-n-λ+iΦ`.
    AsPrinted,
    /// Prefactor `√(Γ(2λ) / (Γ(n+2λ) n!))`, bottom parameter `-n-λ+1+iΦ`.
    Corrected,
}

/// `f_n = pref_n e^{inθ} (λ-iΦ)_n ₂F₁(-n, λ+iΦ; c_n; e^{-2iθ})`, `λ = γ_eff + 1`.
///
/// The representative of `θ` is chosen with `|e^{-2iθ}| ≤ 1`.
pub fn coefficients_closed_form(
    d: &DerivedParams,
    eps: f64,
    n: usize,
    variant: ClosedFormVariant,
) -> Result<CoefficientVector, WavefunctionError> {
    let tp = theta_phi(d, &EnergyPoint::new(eps))?;
    let i = Complex64::i();
    let (mut theta, mut phi) = (tp.theta, tp.phi);
    if (-2.0 * i * theta).exp().norm() > 1.0 {
        theta = -theta;
        phi = -phi;
    }
    let lam = d.pollaczek_lambda();
    let z = (-2.0 * i * theta).exp();
    let top = Complex64::new(lam, 0.0) + i * phi;
    let rising = Complex64::new(lam, 0.0) - i * phi;
    let ln_g2 = ln_gamma_real(2.0 * lam);
    let mut values = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let kf = k as f64;
        let (ln_pref, bottom) = match variant {
            ClosedFormVariant::Corrected => (
                0.5 * (ln_g2 - ln_gamma_real(kf + 2.0 * lam) - ln_gamma_real(kf + 1.0)),
                Complex64::new(-kf - lam + 1.0, 0.0) + i * phi,
            ),
            ClosedFormVariant::AsPrinted => (
                0.5 * (ln_g2 - lam.ln() + (kf + lam).ln() - ln_gamma_real(kf + 2.0 * lam) - ln_gamma_real(kf + 1.0)),
                Complex64::new(-kf - lam, 0.0) + i * phi,
            ),
        };
        let f = hyp2f1_terminating(k, top, bottom, z)?;
        values.push((i * theta * kf).exp() * pochhammer(rising, k) * f * ln_pref.exp());
    }
    Ok(CoefficientVector { values, eps, source: CoefficientSource::ClosedForm })
}

/// Truncated upper component on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub values: Vec<f64>,
    /// `Σ_{n ≥ N_trunc} |f_n|² / Σ |f_n|²` when the vector is longer than the truncation.
    pub tail_fraction: Option<f64>,
}

fn check_truncation(coeffs: &CoefficientVector, n_trunc: usize) -> Result<(), WavefunctionError> {
    if n_trunc > coeffs.values.len() {
        return Err(WavefunctionError::Truncation { requested: n_trunc, available: coeffs.values.len() });
    }
    Ok(())
}

fn check_radius(r: f64) -> Result<(), WavefunctionError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(WavefunctionError::Radius { r })
    }
}

/// `φ⁺(r) = Σ_{n < N_trunc} f_n ζ_n(r)` at each grid point.
pub fn reconstruct_upper(
    coeffs: &CoefficientVector,
    d: &DerivedParams,
    r_grid: &[f64],
    n_trunc: usize,
) -> Result<Reconstruction, WavefunctionError> {
    check_truncation(coeffs, n_trunc)?;
    let basis = LaguerreBasis::for_params(d)?;
    let f = coeffs.real_parts();
    let values = r_grid
        .iter()
        .map(|&r| {
            check_radius(r)?;
            Ok(dot(&f[..n_trunc], &basis.values(n_trunc, r)))
        })
        .collect::<Result<Vec<f64>, WavefunctionError>>()?;
    let tail_fraction = (f.len() > n_trunc).then(|| {
        let total: f64 = f.iter().map(|v| v * v).sum();
        let tail: f64 = f[n_trunc..].iter().map(|v| v * v).sum();
        tail / total
    });
    Ok(Reconstruction { values, tail_fraction })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn kinetic_prefactor(d: &DerivedParams, eps: f64) -> Result<f64, WavefunctionError> {
    let kappa = f64::from(d.kappa);
    let value = eps + d.gamma / kappa;
    if value.abs() < 1e-12 {
        return Err(WavefunctionError::KineticBalanceSingular { value: value.abs() });
    }
    Ok(d.compton / value)
}

/// Both spinor components of the rotated problem at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorSample {
    pub r: f64,
    pub upper: f64,
    pub lower: f64,
}

impl SpinorSample {
    /// Exchange upper and lower components (negative-energy sector).
    pub fn swapped(self) -> Self {
        Self { upper: self.lower, lower: self.upper, ..self }
    }
}

/// `φ⁻ = λ̄/(ε+γ/κ) (-Z/κ + γ/r + d/dr) φ⁺` with analytic basis derivatives.
pub fn lower_component(
    coeffs: &CoefficientVector,
    n_trunc: usize,
    r: f64,
    d: &DerivedParams,
) -> Result<f64, WavefunctionError> {
    Ok(spinor_at(coeffs, n_trunc, r, d)?.lower)
}

/// `(φ⁺, φ⁻)` at `r`.
pub fn spinor_at(
    coeffs: &CoefficientVector,
    n_trunc: usize,
    r: f64,
    d: &DerivedParams,
) -> Result<SpinorSample, WavefunctionError> {
    check_truncation(coeffs, n_trunc)?;
    check_radius(r)?;
    let pref = kinetic_prefactor(d, coeffs.eps)?;
    let basis = LaguerreBasis::for_params(d)?;
    let f = coeffs.real_parts();
    let upper = dot(&f[..n_trunc], &basis.values(n_trunc, r));
    let du = dot(&f[..n_trunc], &basis.derivatives(n_trunc, r));
    let kappa = f64::from(d.kappa);
    let lower = pref * ((-d.z / kappa + d.gamma / r) * upper + du);
    Ok(SpinorSample { r, upper, lower })
}

/// Spinor samples on a grid.
pub fn sample_spinor(
    coeffs: &CoefficientVector,
    n_trunc: usize,
    r_grid: &[f64],
    d: &DerivedParams,
) -> Result<Vec<SpinorSample>, WavefunctionError> {
    r_grid.iter().map(|&r| spinor_at(coeffs, n_trunc, r, d)).collect()
}

/// Residual of the unrotated first-order system
///
/// ```text
/// (1 + λ̄²Z/r - ε) χ⁺ + λ̄ (κ/r - d/dr) χ⁻ = 0
/// λ̄ (κ/r + d/dr) χ⁺ + (-1 + λ̄²Z/r - ε) χ⁻ = 0
/// ```
///
/// with `χ` obtained from `(φ⁺, φ⁻)` by the inverse rotation. Each row is
/// divided by the sum of the magnitudes of its terms; the larger is returned.
pub fn dirac_residual(
    coeffs: &CoefficientVector,
    n_trunc: usize,
    r: f64,
    d: &DerivedParams,
) -> Result<f64, WavefunctionError> {
    check_truncation(coeffs, n_trunc)?;
    check_radius(r)?;
    let eps = coeffs.eps;
    let pref = kinetic_prefactor(d, eps)?;
    let basis = LaguerreBasis::for_params(d)?;
    let f = &coeffs.real_parts()[..n_trunc];
    let u = dot(f, &basis.values(n_trunc, r));
    let du = dot(f, &basis.derivatives(n_trunc, r));
    let ddu = dot(f, &basis.second_derivatives(n_trunc, r));
    let kappa = f64::from(d.kappa);
    let (g, z, c) = (d.gamma, d.z, d.compton);
    let lo = pref * ((-z / kappa + g / r) * u + du);
    let dlo = pref * (-g / (r * r) * u + (-z / kappa + g / r) * du + ddu);
    let xi = d.xi();
    let (sp, cp) = (0.5 * xi).sin_cos();
    // χ = Uᵀ φ with U = [[c, s], [-s, c]].
    let chi_u = cp * u - sp * lo;
    let chi_l = sp * u + cp * lo;
    let dchi_u = cp * du - sp * dlo;
    let dchi_l = sp * du + cp * dlo;
    let v = c * c * z / r;
    let t1 = [(1.0 + v - eps) * chi_u, c * kappa / r * chi_l, -c * dchi_l];
    let t2 = [c * kappa / r * chi_u, c * dchi_u, (-1.0 + v - eps) * chi_l];
    let rel = |t: [f64; 3]| {
        let scale: f64 = t.iter().map(|x| x.abs()).sum();
        if scale == 0.0 {
            0.0
        } else {
            (t[0] + t[1] + t[2]).abs() / scale
        }
    };
    Ok(rel(t1).max(rel(t2)))
}

/// `max |L φ| / max (|φ''| + |V φ| + |k² φ|)` over the interior of a uniform
/// grid, where `L = -d²/dr² + γ(γ+1)/r² + 2Zε/r + (1-ε²)/λ̄²` and `φ''` is
/// the fourth-order central difference.
pub fn schrodinger_residual(phi: &[f64], r_grid: &[f64], d: &DerivedParams, eps: f64) -> Result<f64, WavefunctionError> {
    if phi.len() != r_grid.len() {
        return Err(WavefunctionError::Grid("values and grid differ in length"));
    }
    if r_grid.len() < 5 {
        return Err(WavefunctionError::Grid("need at least 5 grid points"));
    }
    let h = r_grid[1] - r_grid[0];
    if !(h > 0.0) || r_grid.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h) {
        return Err(WavefunctionError::Grid("grid must be uniform and increasing"));
    }
    if r_grid[0] <= 0.0 {
        return Err(WavefunctionError::Grid("grid must be strictly positive"));
    }
    let g = d.gamma;
    let k2 = EnergyPoint::new(eps).one_minus_eps2() / (d.compton * d.compton);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 2..phi.len() - 2 {
        let r = r_grid[i];
        let d2 = (-phi[i - 2] + 16.0 * phi[i - 1] - 30.0 * phi[i] + 16.0 * phi[i + 1] - phi[i + 2]) / (12.0 * h * h);
        let pot = (g * (g + 1.0) / (r * r) + 2.0 * d.z * eps / r) * phi[i];
        let res = -d2 + pot + k2 * phi[i];
        worst = worst.max(res.abs());
        scale = scale.max(d2.abs() + pot.abs() + (k2 * phi[i]).abs());
    }
    Ok(if scale == 0.0 { 0.0 } else { worst / scale })
}

/// Largest `N` accepted by [`verify_tridiagonal`].
pub const MAX_TRIDIAGONAL_N: usize = 200;

/// Matrix of the wave operator in the basis and its comparison with the
/// tridiagonal prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalDiagnostic {
    pub n: usize,
    pub gamma: f64,
    pub eps: f64,
    /// Row-major `n × n` matrix `⟨ζ_m| L |ζ_n⟩`.
    pub matrix: Vec<f64>,
    /// `max |H_mn|` over `|m-n| > 1` divided by `max |H_mn|` over `|m-n| ≤ 1`.
    pub off_band_ratio: f64,
    /// Largest band deviation from `D·[(a_n x + b) δ_mn - b_n δ_{m,n±1}]`,
    /// relative to the largest predicted entry.
    pub band_deviation: f64,
}

/// Builds `⟨ζ_m| -d²/dr² + γ(γ+1)/r² + 2Zε/r + k² |ζ_n⟩` by quadrature,
/// with the kinetic term integrated by parts (`∫ζ_m' ζ_n' dr`).
///
/// All integrands are `y^{2γ} e^{-y}` times a polynomial of degree at most
/// `2N`, so the Gauss-Laguerre rule of order `N + 4` is exact.
pub fn verify_tridiagonal(d: &DerivedParams, eps: f64, n: usize) -> Result<TridiagonalDiagnostic, WavefunctionError> {
    if n > MAX_TRIDIAGONAL_N {
        return Err(WavefunctionError::QuadratureOrder { requested: n, max: MAX_TRIDIAGONAL_N });
    }
    let e = EnergyPoint::new(eps);
    if e.regime == Regime::Threshold {
        return Err(ModelError::Threshold.into());
    }
    let basis = LaguerreBasis::for_params(d)?;
    let g = basis.gamma;
    if !(g > -0.5) {
        return Err(WavefunctionError::BasisExponent { gamma: g });
    }
    let w = d.omega;
    let k2 = e.one_minus_eps2() / (d.compton * d.compton);
    let rule = gauss_laguerre(n + 4, 2.0 * g)?;
    let mut h = alloc::vec![0.0; n * n];
    for (&y, &wt) in rule.nodes.iter().zip(&rule.weights) {
        let r = y / w;
        // Strip y^{2γ} e^{-y} (absorbed in the weight) from ζ and ζ'.
        let strip = (-(g * y.ln() - 0.5 * y)).exp();
        let z: Vec<f64> = basis.values(n, r).into_iter().map(|v| v * strip).collect();
        let dz: Vec<f64> = basis.derivatives(n, r).into_iter().map(|v| v * strip).collect();
        let pot = g * (g + 1.0) / (r * r) + 2.0 * d.z * eps / r + k2;
        for m in 0..n {
            for k in 0..n {
                h[m * n + k] += wt / w * (dz[m] * dz[k] + pot * z[m] * z[k]);
            }
        }
    }
    let rc = d.recursion_coefficients();
    let quarter = 0.25 * w * w;
    let predicted = |m: usize, k: usize| -> f64 {
        if m == k {
            2.0 * rc.a(m) * k2 + 0.5 * rc.a(m) * w * w + 2.0 * d.z * eps * w
        } else if m.abs_diff(k) == 1 {
            -2.0 * rc.b(m.min(k)) * (k2 - quarter)
        } else {
            0.0
        }
    };
    let (mut band_max, mut off_max, mut dev_max, mut pred_max) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for m in 0..n {
        for k in 0..n {
            let v = h[m * n + k];
            if m.abs_diff(k) <= 1 {
                band_max = band_max.max(v.abs());
                let p = predicted(m, k);
                pred_max = pred_max.max(p.abs());
                dev_max = dev_max.max((v - p).abs());
            } else {
                off_max = off_max.max(v.abs());
            }
        }
    }
    Ok(TridiagonalDiagnostic {
        n,
        gamma: g,
        eps,
        matrix: h,
        off_band_ratio: if band_max == 0.0 { 0.0 } else { off_max / band_max },
        band_deviation: if pred_max == 0.0 { dev_max } else { dev_max / pred_max },
    })
}
