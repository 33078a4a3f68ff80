//! Dispatch from a [`RunConfig`] to the core routines.

use dirac_jmatrix::model::{derive, EnergyPoint, Regime};
use dirac_jmatrix::resolvent::{continued_fraction_g, density_in_energy, spectral_density};
use dirac_jmatrix::scattering::{phase_shift, unwrap_phases};
use dirac_jmatrix::spectrum::{binding_energy, bound_energy, negative_energy_levels, spectrum_table};
use dirac_jmatrix::wavefunction::{
    coefficients_closed_form, coefficients_minimal, coefficients_recursion, sample_spinor, verify_tridiagonal,
    ClosedFormVariant, CoefficientVector,
};
use dirac_jmatrix::{ComplexVal, DerivedParams, JacobiMatrix, PhysicalParams};
use rayon::prelude::*;

use crate::cli::{Command, MatrixArg, RunConfig, SourceArg, VariantArg};
use crate::error::{core, CliError};
use crate::grid::{energy_points, Grid};
use crate::output::{Cell, Table};

/// Evaluates `f` at every point in parallel, keeping grid order. The first
/// failing point (in grid order) decides the error.
fn rows_over<F>(points: &[f64], f: F) -> Result<Vec<Vec<Cell>>, CliError>
where
    F: Fn(f64) -> Result<Vec<Cell>, CliError> + Sync,
{
    points.par_iter().map(|&x| f(x)).collect::<Vec<_>>().into_iter().collect()
}

pub fn run(config: &RunConfig) -> Result<Table, CliError> {
    config.validate()?;
    let p = config.params;
    let d = derive(&p).map_err(core)?;
    match &config.command {
        Command::Spectrum { n_max, negative } => spectrum(&p, *n_max, *negative),
        Command::PhaseShift { eps, grid, split, unwrap } => {
            let points = match (eps, grid) {
                (Some(e), _) => energy_points(&Grid::single(*e), *split)?,
                (None, Some(g)) => energy_points(g, *split)?,
                (None, None) => return Err(CliError::config("phase-shift needs --eps or --grid")),
            };
            phase_shifts(&p, &points, *unwrap)
        }
        Command::Coefficients { eps, n, source, variant } => {
            let c = coefficients(&d, *eps, *n, *source, *variant)?;
            let mut t = Table::new("coefficients", &["n", "re", "im"]);
            for (k, v) in c.values.iter().enumerate() {
                t.push(vec![k.into(), v.re.into(), v.im.into()]);
            }
            Ok(t)
        }
        Command::Green { matrix, eps, re, re_grid, im, tol, max_depth } => {
            let points = match (re, re_grid) {
                (Some(r), _) => vec![*r],
                (None, Some(g)) => g.points(),
                (None, None) => return Err(CliError::config("green needs --re or --re-grid")),
            };
            let jac = matrix_for(&d, *matrix, *eps)?;
            let mut t = Table::new("green", &["re", "im", "g_re", "g_im", "depth", "last_delta"]);
            t.rows = rows_over(&points, |x| {
                let z = ComplexVal::new(x, *im);
                let g = continued_fraction_g(jac.as_ref(), z, *tol, *max_depth).map_err(core)?;
                Ok(vec![x.into(), (*im).into(), g.value.re.into(), g.value.im.into(), g.depth.into(), g.last_delta.into()])
            })?;
            Ok(t)
        }
        Command::Density { matrix, eps, x_grid, energy_grid, eta, split, tol, max_depth } => {
            if let Some(g) = energy_grid {
                let points = energy_points(g, *split)?;
                let mut t = Table::new("density", &["eps", "x", "eta", "rho_x", "dx_deps", "rho_eps"]);
                t.rows = rows_over(&points, |e| {
                    let r = density_in_energy(&p, e, *eta, *tol, *max_depth).map_err(core)?;
                    Ok(vec![e.into(), r.x.into(), (*eta).into(), r.rho_x.into(), r.dx_deps.into(), r.rho_eps.into()])
                })?;
                return Ok(t);
            }
            let grid = x_grid.ok_or_else(|| CliError::config("density needs --x-grid or --energy-grid"))?;
            let jac = matrix_for(&d, *matrix, *eps)?;
            let mut t = Table::new("density", &["x", "eta", "rho"]);
            t.rows = rows_over(&grid.points(), |x| {
                let rho = spectral_density(jac.as_ref(), x, *eta, *tol, *max_depth).map_err(core)?;
                Ok(vec![x.into(), (*eta).into(), rho.into()])
            })?;
            Ok(t)
        }
        Command::Wavefunction { eps, level, n, source, r_grid } => {
            let eps = match (eps, level) {
                (Some(e), _) => *e,
                (None, Some(k)) => bound_energy(&p, *k).map_err(core)?,
                (None, None) => return Err(CliError::config("wavefunction needs --eps or --level")),
            };
            let source = source.unwrap_or(if EnergyPoint::new(eps).regime == Regime::Bound {
                SourceArg::Minimal
            } else {
                SourceArg::Recursion
            });
            let c = coefficients(&d, eps, *n, source, VariantArg::Corrected)?;
            let samples = sample_spinor(&c, *n, &r_grid.points(), &d).map_err(core)?;
            let mut t = Table::new("wavefunction", &["r", "upper", "lower"]);
            for s in samples {
                t.push(vec![s.r.into(), s.upper.into(), s.lower.into()]);
            }
            Ok(t)
        }
        Command::Verify { eps, n } => {
            let v = verify_tridiagonal(&d, *eps, *n).map_err(core)?;
            let mut t = Table::new("verify", &["n", "gamma", "eps", "off_band_ratio", "band_deviation"]);
            t.push(vec![v.n.into(), v.gamma.into(), v.eps.into(), v.off_band_ratio.into(), v.band_deviation.into()]);
            Ok(t)
        }
    }
}

fn spectrum(p: &PhysicalParams, n_max: usize, negative: bool) -> Result<Table, CliError> {
    let mut t = Table::new("spectrum", &["n", "kappa", "eps", "binding", "oracle_residual"]);
    if negative {
        let levels = negative_energy_levels(p, n_max).map_err(core)?;
        let mapped = PhysicalParams { z: -p.z, kappa: -p.kappa, ..*p };
        let table = spectrum_table(&mapped, n_max).map_err(core)?;
        for (n, (eps, entry)) in levels.into_iter().zip(&table.entries).enumerate() {
            let binding = -binding_energy(&mapped, n).map_err(core)?;
            t.push(vec![n.into(), p.kappa.into(), eps.into(), binding.into(), entry.oracle_residual.into()]);
        }
        return Ok(t);
    }
    let table = spectrum_table(p, n_max).map_err(core)?;
    for e in &table.entries {
        let binding = binding_energy(p, e.n).map_err(core)?;
        t.push(vec![e.n.into(), e.kappa.into(), e.eps.into(), binding.into(), e.oracle_residual.into()]);
    }
    Ok(t)
}

fn phase_shifts(p: &PhysicalParams, points: &[f64], unwrap: bool) -> Result<Table, CliError> {
    let results: Vec<_> = points
        .par_iter()
        .map(|&e| phase_shift(p, e).map_err(core))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<_, _>>()?;
    let mut psi: Vec<f64> = results.iter().map(|r| r.psi).collect();
    if unwrap {
        unwrap_phases(&mut psi);
    }
    let mut t = Table::new("phase_shift", &["eps", "theta", "phi", "psi", "amplitude"]);
    for (r, psi) in results.iter().zip(psi) {
        t.push(vec![r.eps.into(), r.theta.into(), r.phi.into(), psi.into(), r.amplitude.into()]);
    }
    Ok(t)
}

fn coefficients(
    d: &DerivedParams,
    eps: f64,
    n: usize,
    source: SourceArg,
    variant: VariantArg,
) -> Result<CoefficientVector, CliError> {
    let variant = match variant {
        VariantArg::Corrected => ClosedFormVariant::Corrected,
        VariantArg::Printed => ClosedFormVariant::AsPrinted,
    };
    match source {
        SourceArg::Recursion => coefficients_recursion(d, eps, n),
        SourceArg::ClosedForm => coefficients_closed_form(d, eps, n, variant),
        SourceArg::Minimal => coefficients_minimal(d, eps, n),
    }
    .map_err(core)
}

fn matrix_for(d: &DerivedParams, matrix: MatrixArg, eps: Option<f64>) -> Result<Box<dyn JacobiMatrix + Sync>, CliError> {
    match matrix {
        MatrixArg::Recursion => Ok(Box::new(d.recursion_coefficients())),
        MatrixArg::Pollaczek => {
            let eps = eps.ok_or_else(|| CliError::config("--matrix pollaczek needs --eps"))?;
            let map = dirac_jmatrix::model::map_to_pollaczek(d, &EnergyPoint::new(eps)).map_err(core)?;
            Ok(Box::new(map.params.orthonormal_jacobi()))
        }
    }
}
