use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::SpecfunError;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Largest `n` for which [`pochhammer`] multiplies factors directly.
pub const POCHHAMMER_PRODUCT_MAX: usize = 64;

/// Radius beyond which the Stirling series is summed directly.
const STIRLING_RADIUS: f64 = 15.0;

/// `B_{2k} / (2k (2k - 1))` for k = 1..8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    let k = z.re.round();
    k <= 0.0 && (z.re - k).abs() <= 1e-13 && z.im.abs() <= 1e-13
}

/// Complex logarithm of the Gamma function.
///
/// For `Re z >= 0.5` the result is the branch that is continuous in the right
/// half-plane and real on the positive axis (so `Im log_gamma(x + iy)` is the
/// unwrapped `arg Γ`). For `Re z < 0.5` it goes through the reflection formula
/// and the imaginary part is only fixed modulo `2π`.
pub fn log_gamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(SpecfunError::InvalidArgument("log_gamma of a non-finite value"));
    }
    if is_nonpositive_integer(z) {
        return Err(SpecfunError::Pole { re: z.re, im: z.im });
    }
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        return Ok(Complex64::new(LN_PI, 0.0) - log_sin_pi(z) - log_gamma_right(one - z));
    }
    Ok(log_gamma_right(z))
}

fn log_gamma_right(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < STIRLING_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    stirling(w) - shift
}

fn stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    for &c in STIRLING_COEFFS.iter().rev() {
        series = series * inv2 + c;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + series * inv
}

/// `ln sin(πz)` modulo `2πi`, stable for large `|Im z|`.
fn log_sin_pi(z: Complex64) -> Complex64 {
    // sin(π(z - 2k)) = sin(πz); the reduction is exact in floating point.
    let re = z.re - 2.0 * (z.re / 2.0).round();
    let z = Complex64::new(re, z.im);
    let i = Complex64::i();
    if z.im.abs() < 10.0 {
        return (z * PI).sin().ln();
    }
    let two_i = Complex64::new(0.0, 2.0);
    if z.im > 0.0 {
        let small = (two_i * PI * z).exp();
        -i * PI * z + ((small - 1.0) / two_i).ln()
    } else {
        let small = (-two_i * PI * z).exp();
        i * PI * z + ((1.0 - small) / two_i).ln()
    }
}

/// `ln Γ(x)` for real `x > 0`.
pub fn ln_gamma_real(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// Rising factorial `c (c+1) ... (c+n-1)`.
///
/// Direct product up to [`POCHHAMMER_PRODUCT_MAX`] factors, log-Gamma
/// difference beyond that.
pub fn pochhammer(c: Complex64, n: usize) -> Complex64 {
    if n <= POCHHAMMER_PRODUCT_MAX || is_nonpositive_integer(c) || is_nonpositive_integer(c + n as f64) {
        // A factor hits zero, or both Gammas have poles: the product is exact.
        if is_nonpositive_integer(c) && (-c.re.round()) < n as f64 {
            return Complex64::new(0.0, 0.0);
        }
        return pochhammer_product(c, n);
    }
    match (log_gamma(c + n as f64), log_gamma(c)) {
        (Ok(top), Ok(bottom)) => (top - bottom).exp(),
        _ => pochhammer_product(c, n),
    }
}

fn pochhammer_product(c: Complex64, n: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for k in 0..n {
        acc *= c + k as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.572_364_942_924_700_1).abs() < 1e-14);
        assert!(half.im.abs() < 1e-15);
    }

    #[test]
    fn modulus_on_line_one_plus_iy() {
        // |Γ(1+iy)|² = πy / sinh(πy)
        for &y in &[0.1, 0.5, 1.0, 5.0, 20.0] {
            let lg = log_gamma(c(1.0, y)).unwrap();
            let lhs = (2.0 * lg.re).exp() * (PI * y).sinh() / (PI * y);
            assert!((lhs - 1.0).abs() < 1e-11, "y={y} lhs={lhs}");
        }
        let g = log_gamma(c(1.0, 1.0)).unwrap().re.exp();
        assert!((g - 0.521_564_046_864_94).abs() < 1e-12);
    }

    #[test]
    fn factorials() {
        let mut fact = 1.0f64;
        for n in 1..30 {
            fact *= n as f64;
            let lg = log_gamma(c(n as f64 + 1.0, 0.0)).unwrap();
            assert!((lg.re - fact.ln()).abs() <= 1e-13 * fact.ln().max(1.0), "n={n}");
        }
    }

    #[test]
    fn negative_real_axis() {
        // Γ(-0.5) = -2√π
        let lg = log_gamma(c(-0.5, 0.0)).unwrap();
        let g = lg.exp();
        assert!((g.re + 2.0 * PI.sqrt()).abs() < 1e-13, "{g}");
        assert!(g.im.abs() < 1e-13);
    }

    #[test]
    fn poles() {
        for k in 0..5 {
            assert!(matches!(log_gamma(c(-(k as f64), 0.0)), Err(SpecfunError::Pole { .. })));
        }
        assert!(log_gamma(c(-3.0, 1e-6)).is_ok());
    }

    #[test]
    fn recurrence_far_from_axis() {
        // ln Γ(z+1) - ln Γ(z) = ln z (mod 2πi)
        for &(re, im) in &[(0.7, 150.0), (-30.5, 80.0), (120.0, -190.0), (3.0, 0.0)] {
            let z = c(re, im);
            let d = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
            let k = (d.im / (2.0 * PI)).round();
            assert!(d.re.abs() < 1e-11, "{z}: {d}");
            assert!((d.im - 2.0 * PI * k).abs() < 1e-10, "{z}: {d}");
        }
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(0.3, 2.0), 0), c(1.0, 0.0));
        assert_eq!(pochhammer(c(3.0, 0.0), 4), c(360.0, 0.0));
        assert_eq!(pochhammer(c(-2.0, 0.0), 4), c(0.0, 0.0));
        assert_eq!(pochhammer(c(-2.0, 0.0), 2), c(2.0, 0.0));
        assert_eq!(pochhammer(c(-2.0, 0.0), 100), c(0.0, 0.0));
    }

    #[test]
    fn pochhammer_branches_agree_at_crossover() {
        for &(re, im) in &[(0.5, 0.0), (1.3, 0.7), (2.0, -3.0), (0.01, 0.2)] {
            let z = c(re, im);
            for n in [POCHHAMMER_PRODUCT_MAX, POCHHAMMER_PRODUCT_MAX + 1] {
                let prod = pochhammer_product(z, n);
                let lg = (log_gamma(z + n as f64).unwrap() - log_gamma(z).unwrap()).exp();
                assert!((prod - lg).norm() <= 1e-12 * prod.norm(), "{z} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn reflection_identity(re in -20.0f64..20.0, im in -15.0f64..15.0) {
            let z = c(re, im);
            prop_assume!((re - re.round()).abs() > 0.05 || im.abs() > 0.05);
            let lhs = log_gamma(z).unwrap() + log_gamma(c(1.0, 0.0) - z).unwrap();
            let rhs = c(PI, 0.0).ln() - (z * PI).sin().ln();
            let d = lhs - rhs;
            let k = (d.im / (2.0 * PI)).round();
            prop_assert!(d.re.abs() < 1e-11 * (1.0 + rhs.re.abs()));
            prop_assert!((d.im - 2.0 * PI * k).abs() < 1e-11 * (1.0 + rhs.im.abs()));
        }

        #[test]
        fn pochhammer_step(re in -5.0f64..5.0, im in -5.0f64..5.0, n in 0usize..60) {
            let z = c(re, im);
            let next = pochhammer(z, n + 1);
            let stepped = pochhammer(z, n) * (z + n as f64);
            prop_assert_eq!(next, stepped);
        }
    }
}
