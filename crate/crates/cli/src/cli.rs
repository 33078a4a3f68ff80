//! Command-line definition and its translation into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dirac_jmatrix::PhysicalParams;

use crate::config::{ParamFile, DEFAULT_COMPTON, DEFAULT_OMEGA};
use crate::error::{core, CliError};
use crate::grid::Grid;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "dirac-jmatrix", version, about = "Dirac-Coulomb problem in a tridiagonal Laguerre basis")]
pub struct Cli {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub io: IoArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct PhysicsArgs {
    /// Nuclear charge (negative is attractive).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub z: Option<f64>,
    /// Spin-orbit quantum number, a nonzero integer.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kappa: Option<i32>,
    /// Compton wavelength in length units [default: 7.2973525693e-3].
    #[arg(long, global = true)]
    pub compton: Option<f64>,
    /// Basis scale parameter [default: 1].
    #[arg(long, global = true)]
    pub omega: Option<f64>,
    /// `key = value` file with z, kappa, compton, omega; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct IoArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the table here (plus a `.meta.json` sidecar) instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Recursion,
    ClosedForm,
    Minimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Corrected,
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixArg {
    /// Coefficients of the basis recurrence: `a_n = n+γ+1`.
    Recursion,
    /// Orthonormal Pollaczek matrix with `(λ, b)` taken at `--eps`.
    Pollaczek,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Bound-state energies with their Sommerfeld residuals.
    Spectrum {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Negative-energy levels (needs Z > 0).
        #[arg(long)]
        negative: bool,
    },
    /// Phase shift and amplitude at |eps| > 1.
    PhaseShift {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "grid", required_unless_present = "grid")]
        eps: Option<f64>,
        /// Energy grid START,STOP,COUNT.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<Grid>,
        /// Allow energy grids that cross |eps| = 1 (threshold points are dropped).
        #[arg(long)]
        split: bool,
        /// Continue the phase psi along the grid instead of reporting principal values.
        #[arg(long)]
        unwrap: bool,
    },
    /// Expansion coefficients f_0..f_n at one energy.
    Coefficients {
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SourceArg::Recursion)]
        source: SourceArg,
        /// Which closed-form display to evaluate.
        #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
        variant: VariantArg,
    },
    /// Green function G(z) by continued fraction.
    Green {
        #[arg(long, value_enum, default_value_t = MatrixArg::Recursion)]
        matrix: MatrixArg,
        /// Energy fixing (lambda, b) for the Pollaczek matrix.
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<f64>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "re_grid", required_unless_present = "re_grid")]
        re: Option<f64>,
        /// Grid START,STOP,COUNT for Re z.
        #[arg(long, allow_hyphen_values = true)]
        re_grid: Option<Grid>,
        #[arg(long, allow_hyphen_values = true)]
        im: f64,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
        #[arg(long, default_value_t = 1_000_000)]
        max_depth: usize,
    },
    /// Spectral density -Im G(x + i eta) / pi.
    Density {
        #[arg(long, value_enum, default_value_t = MatrixArg::Pollaczek)]
        matrix: MatrixArg,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<f64>,
        /// Grid START,STOP,COUNT in the matrix variable x.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "energy_grid")]
        x_grid: Option<Grid>,
        /// Grid START,STOP,COUNT in energy; reports the density in x and in eps.
        #[arg(long, allow_hyphen_values = true)]
        energy_grid: Option<Grid>,
        #[arg(long, default_value_t = 1e-3)]
        eta: f64,
        #[arg(long)]
        split: bool,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 1_000_000)]
        max_depth: usize,
    },
    /// Radial spinor components on a grid of r.
    Wavefunction {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "level", required_unless_present = "level")]
        eps: Option<f64>,
        /// Bound level index n; eps is taken from the spectrum.
        #[arg(long)]
        level: Option<usize>,
        /// Truncation N.
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// Coefficient source [default: minimal for bound energies, recursion otherwise].
        #[arg(long, value_enum)]
        source: Option<SourceArg>,
        /// Grid START,STOP,COUNT in r.
        #[arg(long, default_value = "0.05,30,600")]
        r_grid: Grid,
    },
    /// Checks that the wave operator is tridiagonal in the basis.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
}

/// A validated run: physical parameters, the command with its knobs, and
/// the output format.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: PhysicalParams,
    pub command: Command,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let file = match &cli.physics.config {
            Some(path) => ParamFile::read(path)?,
            None => ParamFile::default(),
        };
        let flags = ParamFile {
            z: cli.physics.z,
            kappa: cli.physics.kappa,
            compton: cli.physics.compton,
            omega: cli.physics.omega,
        };
        let merged = file.overlay(flags);
        let z = merged.z.ok_or_else(|| CliError::config("--z is required"))?;
        let kappa = merged.kappa.ok_or_else(|| CliError::config("--kappa is required"))?;
        let params = PhysicalParams::new(
            z,
            kappa,
            merged.compton.unwrap_or(DEFAULT_COMPTON),
            merged.omega.unwrap_or(DEFAULT_OMEGA),
        )
        .map_err(core)?;
        let config = RunConfig { params, command: cli.command.clone(), format: cli.io.format };
        config.validate()?;
        Ok(config)
    }

    /// Checks every numeric knob against the preconditions of the routine
    /// it feeds.
    pub fn validate(&self) -> Result<(), CliError> {
        let finite = |v: f64, name: &str| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(CliError::config(format!("--{name} must be finite")))
            }
        };
        let positive = |v: f64, name: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(CliError::config(format!("--{name} must be positive")))
            }
        };
        match &self.command {
            Command::Spectrum { .. } => Ok(()),
            Command::PhaseShift { eps, grid, .. } => {
                if let Some(e) = eps {
                    finite(*e, "eps")?;
                }
                grid.map_or(Ok(()), |g| g.validate())
            }
            Command::Coefficients { eps, n, .. } => {
                finite(*eps, "eps")?;
                if *n == 0 {
                    return Err(CliError::config("--n must be positive"));
                }
                Ok(())
            }
            Command::Green { matrix, eps, re, re_grid, im, tol, max_depth } => {
                if *matrix == MatrixArg::Pollaczek && eps.is_none() {
                    return Err(CliError::config("--matrix pollaczek needs --eps"));
                }
                if let Some(r) = re {
                    finite(*r, "re")?;
                }
                if let Some(g) = re_grid {
                    g.validate()?;
                }
                finite(*im, "im")?;
                positive(*tol, "tol")?;
                if *max_depth == 0 {
                    return Err(CliError::config("--max-depth must be positive"));
                }
                Ok(())
            }
            Command::Density { matrix, eps, x_grid, energy_grid, eta, tol, max_depth, .. } => {
                positive(*eta, "eta")?;
                positive(*tol, "tol")?;
                if *max_depth == 0 {
                    return Err(CliError::config("--max-depth must be positive"));
                }
                match (x_grid, energy_grid) {
                    (None, None) => Err(CliError::config("density needs --x-grid or --energy-grid")),
                    (Some(g), None) => {
                        if *matrix == MatrixArg::Pollaczek && eps.is_none() {
                            return Err(CliError::config("--matrix pollaczek needs --eps"));
                        }
                        g.validate()
                    }
                    (_, Some(g)) => g.validate(),
                }
            }
            Command::Wavefunction { eps, n, r_grid, .. } => {
                if let Some(e) = eps {
                    finite(*e, "eps")?;
                }
                if *n == 0 {
                    return Err(CliError::config("--n must be positive"));
                }
                r_grid.validate()?;
                if r_grid.start <= 0.0 || r_grid.stop <= 0.0 {
                    return Err(CliError::config("--r-grid must be strictly positive"));
                }
                Ok(())
            }
            Command::Verify { eps, n } => {
                finite(*eps, "eps")?;
                if *n == 0 {
                    return Err(CliError::config("--n must be positive"));
                }
                Ok(())
            }
        }
    }
}
