//! Phase shifts and amplitudes from the oscillatory asymptotics of the
//! orthonormal coefficients, and an extractor that fits the same form to
//! recurrence output.

use core::f64::consts::PI;
use core::ops::Range;

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::model::{map_to_pollaczek, theta_phi, EnergyPoint, ModelError, PhysicalParams, Regime};
use crate::pollaczek::{DarbouxScattering, Normalization, PollaczekError, PolynomialSequence};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatteringError {
    #[error("energy {eps} is not in the scattering regime |eps| > 1")]
    NotScattering { eps: f64 },
    #[error("FitError: {0}")]
    Fit(&'static str),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Pollaczek(#[from] PollaczekError),
}

/// Asymptotic data at one scattering energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShiftResult {
    pub eps: f64,
    pub theta: f64,
    pub phi: f64,
    /// `arg Γ(λ+iΦ)`; principal value unless unwrapped along a sweep.
    pub psi: f64,
    pub amplitude: f64,
    /// Pollaczek `λ`.
    pub lam: f64,
}

impl PhaseShiftResult {
    fn darboux(&self) -> DarbouxScattering {
        DarbouxScattering { lam: self.lam, theta: self.theta, phi: self.phi, psi: self.psi, amplitude: self.amplitude }
    }

    /// `ψ_n = ψ + λ(θ - π/2) - Φ ln(2n sin θ)`.
    pub fn psi_n(&self, n: usize) -> f64 {
        self.darboux().psi_n(n)
    }

    /// `A cos(nθ + ψ_n)`.
    pub fn approximant(&self, n: usize) -> f64 {
        self.darboux().value(n)
    }
}

/// Phase shift and amplitude at `|eps| > 1`.
pub fn phase_shift(p: &PhysicalParams, eps: f64) -> Result<PhaseShiftResult, ScatteringError> {
    let d = p.derive()?;
    let e = EnergyPoint::new(eps);
    match e.regime {
        Regime::Scattering => {}
        Regime::Threshold => return Err(ModelError::Threshold.into()),
        Regime::Bound => return Err(ScatteringError::NotScattering { eps }),
    }
    let map = map_to_pollaczek(&d, &e)?;
    let tp = theta_phi(&d, &e)?;
    let dar = DarbouxScattering::from_phi(map.params.lam, tp.theta.re, tp.phi.re)?;
    Ok(PhaseShiftResult {
        eps,
        theta: dar.theta,
        phi: dar.phi,
        psi: dar.psi,
        amplitude: dar.amplitude,
        lam: dar.lam,
    })
}

/// Nearest-branch continuation: a `2π` jump is removed whenever consecutive
/// values differ by more than `π`.
pub fn unwrap_phases(values: &mut [f64]) {
    let two_pi = 2.0 * PI;
    let mut offset = 0.0;
    for i in 1..values.len() {
        let prev = values[i - 1];
        let mut cur = values[i] + offset;
        while cur - prev > PI {
            cur -= two_pi;
            offset -= two_pi;
        }
        while cur - prev < -PI {
            cur += two_pi;
            offset += two_pi;
        }
        values[i] = cur;
    }
}

/// [`phase_shift`] over a grid with `ψ` unwrapped along the grid. The grid
/// should lie inside one scattering interval.
pub fn phase_shift_sweep(p: &PhysicalParams, grid: &[f64]) -> Result<Vec<PhaseShiftResult>, ScatteringError> {
    let mut out: Vec<PhaseShiftResult> = grid.iter().map(|&e| phase_shift(p, e)).collect::<Result<_, _>>()?;
    let mut psi: Vec<f64> = out.iter().map(|r| r.psi).collect();
    unwrap_phases(&mut psi);
    for (r, v) in out.iter_mut().zip(psi) {
        r.psi = v;
    }
    Ok(out)
}

/// Fit model options.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FitOptions {
    /// Number of `1/n` correction terms beyond the leading cosine (0 or 1).
    pub correction_order: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { correction_order: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub theta: f64,
    pub amplitude: f64,
    pub psi: f64,
    pub phi: f64,
    /// RMS misfit over the window divided by the amplitude.
    pub residual: f64,
}

pub const MIN_WINDOW_START: usize = 100;
pub const MIN_WINDOW_LEN: usize = 200;

/// Fits `p_n ≈ Re[C e^{iφ_n}] + Re[E e^{iφ_n}]/n` over `window`, with
/// `φ_n = nθ + λ(θ - π/2) - Φ(θ) ln(2n sin θ)`, and reports `θ`,
/// `A = |C|`, `ψ = arg C`.
///
/// `θ` starts from the three-term ratio `(p_{n+1}+p_{n-1})/(2p_n)` with a
/// first-order drift correction and is then refined by minimizing the
/// linear least-squares misfit.
pub fn fit_asymptotics(
    seq: &PolynomialSequence,
    window: Range<usize>,
    options: FitOptions,
) -> Result<FitResult, ScatteringError> {
    if seq.normalization != Normalization::Orthonormal {
        return Err(ScatteringError::Fit("sequence must be in orthonormal normalization"));
    }
    if !(seq.argument.abs() < 1.0) {
        return Err(ScatteringError::Fit("argument outside (-1, 1): sequence is not oscillatory"));
    }
    if window.start < MIN_WINDOW_START || window.len() < MIN_WINDOW_LEN {
        return Err(ScatteringError::Fit("window must start at n >= 100 and span at least 200 terms"));
    }
    if window.end + 1 > seq.values.len() {
        return Err(ScatteringError::Fit("window exceeds the sequence length"));
    }
    if options.correction_order > 1 {
        return Err(ScatteringError::Fit("correction order must be 0 or 1"));
    }
    let p = &seq.values;
    let (mut num, mut den) = (0.0, 0.0);
    for n in window.clone() {
        num += p[n] * (p[n + 1] + p[n - 1]);
        den += 2.0 * p[n] * p[n];
    }
    if den == 0.0 {
        return Err(ScatteringError::Fit("sequence vanishes on the window"));
    }
    let ratio = (num / den).clamp(-1.0, 1.0);
    let raw = ratio.acos();
    let mean_inv: f64 = window.clone().map(|n| 1.0 / n as f64).sum::<f64>() / window.len() as f64;
    let params = seq.params;
    let phi_of = |t: f64| (params.a * t.cos() + params.b) / t.sin();
    let theta0 = (raw + phi_of(raw.max(1e-12)) * mean_inv).clamp(1e-12, PI - 1e-12);

    let misfit = |t: f64| solve_window(p, &window, params.lam, t, phi_of(t), options).map(|s| s.rss);
    let half = 0.5 / window.len() as f64;
    let lo = (theta0 - half).max(1e-12);
    let hi = (theta0 + half).min(PI - 1e-12);
    let theta = golden_min(lo, hi, 1e-14, |t| misfit(t).unwrap_or(f64::INFINITY));
    let sol = solve_window(p, &window, params.lam, theta, phi_of(theta), options)
        .ok_or(ScatteringError::Fit("least-squares system is singular"))?;
    let amplitude = sol.c_re.hypot(sol.c_im);
    if !(amplitude > 0.0) {
        return Err(ScatteringError::Fit("zero fitted amplitude"));
    }
    Ok(FitResult {
        theta,
        amplitude,
        psi: sol.c_im.atan2(sol.c_re),
        phi: phi_of(theta),
        residual: (sol.rss / window.len() as f64).sqrt() / amplitude,
    })
}

struct WindowFit {
    c_re: f64,
    c_im: f64,
    rss: f64,
}

fn solve_window(p: &[f64], window: &Range<usize>, lam: f64, theta: f64, phi: f64, options: FitOptions) -> Option<WindowFit> {
    let cols = 2 + 2 * options.correction_order;
    let offset = lam * (theta - 0.5 * PI);
    let ln_sin = (2.0 * theta.sin()).ln();
    let mut rows: Vec<[f64; 4]> = Vec::with_capacity(window.len());
    let mut rhs = Vec::with_capacity(window.len());
    for n in window.clone() {
        let nf = n as f64;
        let arg = nf * theta + offset - phi * (nf.ln() + ln_sin);
        let (s, c) = arg.sin_cos();
        rows.push([c, -s, c / nf, -s / nf]);
        rhs.push(p[n]);
    }
    let (coef, rss) = least_squares(&rows, &rhs, cols)?;
    Some(WindowFit { c_re: coef[0], c_im: coef[1], rss })
}

/// Householder QR least squares on the first `cols` columns.
fn least_squares(rows: &[[f64; 4]], rhs: &[f64], cols: usize) -> Option<([f64; 4], f64)> {
    let m = rows.len();
    let mut a: Vec<[f64; 4]> = rows.to_vec();
    let mut y = rhs.to_vec();
    for k in 0..cols {
        let norm = (k..m).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            return None;
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..m).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|t| t * t).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for j in k..cols {
            let dot: f64 = (k..m).map(|i| v[i - k] * a[i][j]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in k..m {
                a[i][j] -= f * v[i - k];
            }
        }
        let dot: f64 = (k..m).map(|i| v[i - k] * y[i]).sum();
        let f = 2.0 * dot / vnorm2;
        for i in k..m {
            y[i] -= f * v[i - k];
        }
    }
    let mut x = [0.0; 4];
    for k in (0..cols).rev() {
        let s: f64 = (k + 1..cols).map(|j| a[k][j] * x[j]).sum();
        if a[k][k] == 0.0 {
            return None;
        }
        x[k] = (y[k] - s) / a[k][k];
    }
    let rss = y[cols..].iter().map(|t| t * t).sum();
    Some((x, rss))
}

fn golden_min<F: Fn(f64) -> f64>(mut a: f64, mut b: f64, tol: f64, f: F) -> f64 {
    let g = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol * (1.0 + a.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
