use num_complex::Complex64;

use super::{eval_p_complex, PollaczekError, PollaczekParams};

/// `|t|` must stay below this fraction of the convergence radius.
pub const RADIUS_MARGIN: f64 = 0.95;

/// `Σ_{n=0}^{N} P_n(cos θ) t^n`, the partial sum of the generating function
/// `(1 - t e^{iθ})^{-λ+iΦ} (1 - t e^{-iθ})^{-λ-iΦ}`.
pub fn generating_partial_sum(
    params: &PollaczekParams,
    theta: Complex64,
    t: Complex64,
    n: usize,
) -> Result<Complex64, PollaczekError> {
    let i = Complex64::i();
    let radius = (i * theta).exp().norm().min((-i * theta).exp().norm());
    let limit = RADIUS_MARGIN * radius;
    if !(t.norm() < limit) {
        return Err(PollaczekError::Radius { t_abs: t.norm(), limit });
    }
    let values = eval_p_complex(params, theta.cos(), n);
    // Horner from the top.
    Ok(values.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &v| acc * t + v))
}
