use alloc::vec::Vec;

/// Associated Laguerre polynomial `L_n^ν(x)` by the forward recurrence
/// `(k+1) L_{k+1} = (2k + ν + 1 - x) L_k - (k + ν) L_{k-1}`.
pub fn laguerre(n: usize, nu: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + nu - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + nu + 1.0 - x) * cur - (kf + nu) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `[L_0^ν(x), ..., L_{n_max}^ν(x)]`.
pub fn laguerre_sequence(n_max: usize, nu: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push(1.0 + nu - x);
    for k in 1..n_max {
        let kf = k as f64;
        let next = ((2.0 * kf + nu + 1.0 - x) * out[k] - (kf + nu) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

/// `d/dx L_n^ν(x) = -L_{n-1}^{ν+1}(x)`.
pub fn laguerre_derivative(n: usize, nu: f64, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -laguerre(n - 1, nu + 1.0, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Explicit sum `Σ_k (-1)^k C(n+ν, n-k) x^k / k!`.
    /// Explicit sum and the sum of term magnitudes.
    fn laguerre_series(n: usize, nu: f64, x: f64) -> (f64, f64) {
        let (mut sum, mut mag) = (0.0, 0.0);
        for k in 0..=n {
            let mut binom = 1.0;
            for j in 0..(n - k) {
                binom *= (nu + (k + 1 + j) as f64) / (j + 1) as f64;
            }
            let mut term = binom;
            for j in 1..=k {
                term *= -x / j as f64;
            }
            sum += term;
            mag += f64::abs(term);
        }
        (sum, mag)
    }

    #[test]
    fn examples() {
        assert_eq!(laguerre(0, 3.7, 1.2), 1.0);
        assert!(laguerre(1, 2.0, 3.0).abs() < 1e-15);
        assert!((laguerre(2, 0.0, 2.0) + 1.0).abs() < 1e-15);
        assert_eq!(laguerre_derivative(0, 1.0, 4.0), 0.0);
        assert!((laguerre_derivative(1, 0.0, 7.3) + 1.0).abs() < 1e-15);
        assert!((laguerre_derivative(2, 1.0, 1.5) + 1.5).abs() < 1e-15);
    }

    #[test]
    fn matches_series() {
        for n in 0..12 {
            for &nu in &[0.0, 0.5, 2.3] {
                for &x in &[0.0, 0.4, 2.0, 7.5] {
                    let a = laguerre(n, nu, x);
                    let (b, mag) = laguerre_series(n, nu, x);
                    assert!((a - b).abs() <= 1e-14 * mag, "n={n} nu={nu} x={x}");
                }
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-5;
        for n in 0..15 {
            for &x in &[0.3, 1.0, 4.0] {
                let fd = (laguerre(n, 1.5, x + h) - laguerre(n, 1.5, x - h)) / (2.0 * h);
                assert!((fd - laguerre_derivative(n, 1.5, x)).abs() < 1e-8 * (1.0 + fd.abs()));
            }
        }
    }

    #[test]
    fn recurrence_residual_up_to_200() {
        for &nu in &[0.0, 1.0, 3.5] {
            for &x in &[0.5, 10.0, 60.0] {
                let l = laguerre_sequence(201, nu, x);
                for n in 1..200 {
                    let nf = n as f64;
                    let r = (nf + 1.0) * l[n + 1] - (2.0 * nf + nu + 1.0 - x) * l[n] + (nf + nu) * l[n - 1];
                    let scale = (nf + 1.0) * l[n + 1].abs() + (2.0 * nf + nu + 1.0 + x) * l[n].abs()
                        + (nf + nu) * l[n - 1].abs();
                    assert!(r.abs() <= 1e-10 * scale, "n={n} nu={nu} x={x}");
                }
            }
        }
    }
}
