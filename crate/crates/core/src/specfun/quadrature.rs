use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{ln_gamma_real, SpecfunError};

/// Sweep budget per eigenvalue for [`symmetric_tridiagonal_eigenvalues`].
pub const DEFAULT_SWEEPS_PER_EIGENVALUE: usize = 50;

/// Gauss quadrature rule: `∫ f dμ ≈ Σ w_i f(x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `offdiag` (`offdiag.len() + 1 == diag.len()`),
/// by implicit QL with Wilkinson shifts.
pub fn symmetric_tridiagonal_eigenvalues(
    diag: &[f64],
    offdiag: &[f64],
    sweeps_per_eigenvalue: usize,
) -> Result<Vec<f64>, SpecfunError> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if offdiag.len() + 1 != n {
        return Err(SpecfunError::InvalidArgument("off-diagonal length must be one less than the diagonal"));
    }
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= 1e-14 * dd || e[m].abs() < f64::MIN_POSITIVE {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > sweeps_per_eigenvalue {
                return Err(SpecfunError::Convergence { sweeps: sweeps_per_eigenvalue });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Gauss rule for the measure of total mass `mass` whose orthonormal
/// polynomials have the given Jacobi matrix.
///
/// Nodes are the eigenvalues of the truncated matrix. Weights are computed as
/// `mass / Σ_k p_k(x_i)²` with the orthonormal recurrence, which keeps small
/// weights accurate to relative precision.
pub fn gauss_rule_from_jacobi(
    diag: &[f64],
    offdiag: &[f64],
    mass: f64,
) -> Result<QuadratureRule, SpecfunError> {
    if diag.is_empty() {
        return Err(SpecfunError::InvalidArgument("quadrature order must be at least 1"));
    }
    if offdiag.iter().any(|&b| b <= 0.0) {
        return Err(SpecfunError::InvalidArgument("Jacobi off-diagonal must be positive"));
    }
    let nodes = symmetric_tridiagonal_eigenvalues(diag, offdiag, DEFAULT_SWEEPS_PER_EIGENVALUE)?;
    let weights = nodes.iter().map(|&x| mass * inverse_christoffel(diag, offdiag, x)).collect();
    Ok(QuadratureRule { nodes, weights })
}

/// `1 / Σ_{k<N} p_k(x)²` with overflow-safe rescaling.
fn inverse_christoffel(diag: &[f64], offdiag: &[f64], x: f64) -> f64 {
    const BIG: f64 = 1e150;
    let n = diag.len();
    let mut log_scale = 0.0f64;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut sum = 1.0;
    for k in 0..n - 1 {
        let back = if k == 0 { 0.0 } else { offdiag[k - 1] * prev };
        let next = ((x - diag[k]) * cur - back) / offdiag[k];
        prev = cur;
        cur = next;
        sum += cur * cur;
        if cur.abs() > BIG {
            prev /= BIG;
            cur /= BIG;
            sum /= BIG * BIG;
            log_scale += 2.0 * BIG.ln();
        }
    }
    (-sum.ln() - log_scale).exp()
}

/// Generalized Gauss-Laguerre rule for the weight `x^ν e^{-x}` on `[0, ∞)`.
pub fn gauss_laguerre(order: usize, nu: f64) -> Result<QuadratureRule, SpecfunError> {
    if nu <= -1.0 {
        return Err(SpecfunError::InvalidArgument("Laguerre exponent must exceed -1"));
    }
    let diag: Vec<f64> = (0..order).map(|k| 2.0 * k as f64 + nu + 1.0).collect();
    let offdiag: Vec<f64> = (1..order).map(|k| (k as f64 * (k as f64 + nu)).sqrt()).collect();
    gauss_rule_from_jacobi(&diag, &offdiag, ln_gamma_real(nu + 1.0).exp())
}
