//! Symmetric Jacobi matrices and the two independent solutions of their
//! three-term recurrence.
//!
//! For a matrix with diagonal `a_n` and off-diagonal `b_n > 0` the recurrence
//! is `x p_n = b_{n-1} p_{n-1} + a_n p_n + b_n p_{n+1}`. The first solution
//! starts from `p_{-1} = 0, p_0 = 1`; the second ("associated") solution
//! starts from `p*_0 = 0, p*_1 = 1 / b_0`.

use alloc::vec::Vec;

use num_complex::Complex64;

/// Semi-infinite symmetric tridiagonal matrix given by its entries.
pub trait JacobiMatrix {
    /// Diagonal entry `a_n`.
    fn diag(&self, n: usize) -> f64;
    /// Off-diagonal entry `b_n` coupling rows `n` and `n + 1`.
    fn offdiag(&self, n: usize) -> f64;

    /// The leading `size × size` block as `(diagonal, off-diagonal)`.
    fn truncate(&self, size: usize) -> (Vec<f64>, Vec<f64>) {
        let d = (0..size).map(|n| self.diag(n)).collect();
        let e = (0..size.saturating_sub(1)).map(|n| self.offdiag(n)).collect();
        (d, e)
    }
}

impl<J: JacobiMatrix + ?Sized> JacobiMatrix for &J {
    fn diag(&self, n: usize) -> f64 {
        (**self).diag(n)
    }
    fn offdiag(&self, n: usize) -> f64 {
        (**self).offdiag(n)
    }
}

/// Explicit finite table of entries, extended by its last values.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedJacobi {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl JacobiMatrix for TabulatedJacobi {
    fn diag(&self, n: usize) -> f64 {
        self.diag[n.min(self.diag.len() - 1)]
    }
    fn offdiag(&self, n: usize) -> f64 {
        self.offdiag[n.min(self.offdiag.len() - 1)]
    }
}

/// `[p_0(x), ..., p_n(x)]` for the first solution with `p_0 = 1`.
pub fn first_solution<J: JacobiMatrix + ?Sized>(jac: &J, x: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    let mut prev = 0.0;
    for k in 0..n {
        let cur = out[k];
        let back = if k == 0 { 0.0 } else { jac.offdiag(k - 1) * prev };
        out.push(((x - jac.diag(k)) * cur - back) / jac.offdiag(k));
        prev = cur;
    }
    out
}

/// `[p*_0(x), ..., p*_n(x)]` for the second solution (`p*_0 = 0`).
///
/// Returns `None` when `b_0 = 0`, which leaves the second solution undefined.
pub fn second_solution<J: JacobiMatrix + ?Sized>(jac: &J, x: f64, n: usize) -> Option<Vec<f64>> {
    let b0 = jac.offdiag(0);
    if b0 == 0.0 {
        return None;
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    if n == 0 {
        return Some(out);
    }
    out.push(1.0 / b0);
    for k in 1..n {
        let next = ((x - jac.diag(k)) * out[k] - jac.offdiag(k - 1) * out[k - 1]) / jac.offdiag(k);
        out.push(next);
    }
    Some(out)
}

/// First solution at complex argument.
pub fn first_solution_complex<J: JacobiMatrix + ?Sized>(jac: &J, z: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Complex64::new(1.0, 0.0));
    let mut prev = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let cur = out[k];
        let back = if k == 0 { Complex64::new(0.0, 0.0) } else { prev * jac.offdiag(k - 1) };
        out.push(((z - jac.diag(k)) * cur - back) / jac.offdiag(k));
        prev = cur;
    }
    out
}

/// Casoratian `b_n (p_n p*_{n+1} - p_{n+1} p*_n)` of the two solutions at
/// each `n < len - 1`. It equals 1 for every `n` in exact arithmetic.
pub fn casoratian<J: JacobiMatrix + ?Sized>(jac: &J, p: &[f64], pstar: &[f64]) -> Vec<f64> {
    let len = p.len().min(pstar.len());
    (0..len.saturating_sub(1))
        .map(|n| jac.offdiag(n) * (p[n] * pstar[n + 1] - p[n + 1] * pstar[n]))
        .collect()
}
