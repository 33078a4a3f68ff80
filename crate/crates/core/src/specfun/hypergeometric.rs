use num_complex::Complex64;

use super::SpecfunError;

/// Terminating `₂F₁(-n, b; c; z) = Σ_{k=0}^{n} (-n)_k (b)_k / ((c)_k k!) z^k`.
///
/// Terms are generated by their ratio and accumulated with compensated
/// (Kahan) summation. No transformation formulas are applied.
pub fn hyp2f1_terminating(
    n: usize,
    b: Complex64,
    c: Complex64,
    z: Complex64,
) -> Result<Complex64, SpecfunError> {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut carry = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let kf = k as f64;
        let bottom = c + kf;
        if bottom.norm() <= 1e-13 * (1.0 + c.norm()) {
            return Err(SpecfunError::BottomPole { n, k });
        }
        term = term * (kf - n as f64) * (b + kf) / (bottom * (kf + 1.0)) * z;
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    Ok(sum)
}
