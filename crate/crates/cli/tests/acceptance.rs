//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};

use dirac_jmatrix::jacobi::{casoratian, JacobiMatrix};
use dirac_jmatrix::model::{map_to_pollaczek, negative_energy_map, EnergyPoint, PhysicalParams};
use dirac_jmatrix::pollaczek::{eval_orthonormal, eval_p, eval_pstar, to_symmetric_q, DarbouxScattering, PollaczekParams};
use dirac_jmatrix::resolvent::continued_fraction_g;
use dirac_jmatrix::scattering::{fit_asymptotics, phase_shift, FitOptions};
use dirac_jmatrix::specfun::{gauss_laguerre, gauss_rule_from_jacobi, ln_gamma_real, log_gamma};
use dirac_jmatrix::spectrum::{
    binding_energy, bound_energy, minimal_solution_detect, negative_energy_levels, quantization_condition,
};
use dirac_jmatrix::wavefunction::{
    coefficients_closed_form, coefficients_minimal, coefficients_recursion, reconstruct_upper, recursion_residual,
    schrodinger_residual, verify_tridiagonal, ClosedFormVariant, LaguerreBasis,
};
use dirac_jmatrix::ComplexVal as Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FINE_STRUCTURE: f64 = 1.0 / 137.035999;

type Verdict = (bool, String);

fn params(z: f64, kappa: i32, compton: f64, omega: f64) -> PhysicalParams {
    PhysicalParams::new(z, kappa, compton, omega).expect("valid parameters")
}

fn wrapped(a: f64) -> f64 {
    let w = a.rem_euclid(2.0 * PI);
    w.min(2.0 * PI - w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Band {
    Bound,
    Above,
    Below,
}

const BANDS: [Band; 3] = [Band::Bound, Band::Above, Band::Below];

/// Random attractive parameters and an energy in `band` for which the
/// energy map is defined.
fn admissible(rng: &mut ChaCha8Rng, band: Band) -> (PhysicalParams, f64) {
    loop {
        let kappa = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
        let p = params(rng.gen_range(-3.0..-0.1), kappa, rng.gen_range(0.005..0.2), rng.gen_range(0.3..3.0));
        let eps = match band {
            Band::Bound => rng.gen_range(-0.98..0.98),
            Band::Above => rng.gen_range(1.02..4.0),
            Band::Below => rng.gen_range(-4.0..-1.02),
        };
        let d = p.derive().unwrap();
        if map_to_pollaczek(&d, &EnergyPoint::new(eps)).is_ok() {
            return (p, eps);
        }
    }
}

fn sommerfeld_oracle(z: f64, kappa: i32, compton: f64, n_r: usize) -> f64 {
    let za = z * compton;
    let gamma_s = (f64::from(kappa).powi(2) - za * za).sqrt();
    let ratio = za / (n_r as f64 + gamma_s);
    1.0 / (1.0 + ratio * ratio).sqrt()
}

fn spectrum_oracle() -> Verdict {
    let mut worst: f64 = 0.0;
    for kappa in 1..=3 {
        let p = params(-1.0, kappa, FINE_STRUCTURE, 1.0);
        for n in 0..=10 {
            let oracle = sommerfeld_oracle(-1.0, kappa, FINE_STRUCTURE, n + 1);
            let eps = bound_energy(&p, n).unwrap();
            worst = worst.max(((eps - oracle) / oracle).abs());
        }
    }
    (worst <= 1e-12, format!("max relative error {worst:.3e} (tol 1e-12)"))
}

fn quantization_roots() -> Verdict {
    let (mut worst_q, mut worst_level, mut least_mid) = (0.0f64, 0.0f64, f64::INFINITY);
    let mut worst_at = (0, 0);
    for kappa in 1..=3 {
        let p = params(-1.0, kappa, FINE_STRUCTURE, 1.0);
        let d = p.derive().unwrap();
        for n in 0..=10 {
            let en = bound_energy(&p, n).unwrap();
            let q_err = (quantization_condition(&d, en).unwrap() + n as f64).abs();
            if q_err > worst_q {
                worst_q = q_err;
                worst_at = (kappa, n);
            }
            worst_level = worst_level.max(minimal_solution_detect(&d, en, 400).unwrap().defect);
            let mid = 0.5 * (en + bound_energy(&p, n + 1).unwrap());
            least_mid = least_mid.min(minimal_solution_detect(&d, mid, 400).unwrap().defect);
        }
    }
    let pass = worst_q <= 1e-9 && worst_level < 1e-6 && least_mid > 1e-2;
    (
        pass,
        format!(
            "max |q + n| {worst_q:.3e} at kappa={} n={} (tol 1e-9); max level defect {worst_level:.3e} (< 1e-6); \
             min midpoint defect {least_mid:.3e} (> 1e-2)",
            worst_at.0, worst_at.1
        ),
    )
}

fn nonrelativistic_limit() -> Verdict {
    let gaps: Vec<f64> = [1e-3, 5e-4, 2.5e-4]
        .iter()
        .map(|&c| {
            let p = params(-1.0, 1, c, 1.0);
            (binding_energy(&p, 0).unwrap() / (c * c) + 1.0 / 8.0).abs()
        })
        .collect();
    let ratios = [gaps[0] / gaps[1], gaps[1] / gaps[2]];
    let pass = ratios.iter().all(|r| (3.0..=5.0).contains(r));
    (pass, format!("deviations {:.4e} {:.4e} {:.4e}; ratios {:.4} {:.4} (in [3, 5])", gaps[0], gaps[1], gaps[2], ratios[0], ratios[1]))
}

fn recursion_identification() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for band in BANDS {
        for _ in 0..20 {
            let (p, eps) = admissible(&mut rng, band);
            let d = p.derive().unwrap();
            let map = map_to_pollaczek(&d, &EnergyPoint::new(eps)).unwrap();
            let q = to_symmetric_q(&eval_p(&map.params, map.x, 100)).unwrap();
            let f: Vec<f64> = q.values.iter().map(|v| v / q.values[0]).collect();
            let res = recursion_residual(&d, eps, &f).unwrap_or(f64::INFINITY);
            worst = worst.max(if res.is_nan() { f64::INFINITY } else { res });
        }
    }
    (worst <= 1e-10, format!("max relative residual {worst:.3e} over 60 points, n <= 100 (tol 1e-10)"))
}

fn darboux_window_error(d: &DarbouxScattering, exact: &[f64], n0: usize) -> f64 {
    let w = 64;
    let sq: f64 = (n0..n0 + w).map(|n| (exact[n] - d.value(n)).powi(2)).sum();
    (sq / w as f64).sqrt() / d.amplitude
}

fn darboux_asymptotics() -> Verdict {
    let p = PollaczekParams::new(1.5, 0.0, -0.4).unwrap();
    let theta: f64 = 1.1;
    let exact = eval_orthonormal(&p, theta.cos(), 2100).values;
    let d = DarbouxScattering::new(&p, theta).unwrap();
    let (e200, e2000) = (darboux_window_error(&d, &exact, 200), darboux_window_error(&d, &exact, 2000));
    (e2000 <= 0.25 * e200, format!("error(200) {e200:.3e}, error(2000) {e2000:.3e} (ratio {:.3}, need <= 0.25)", e2000 / e200))
}

fn phase_shift_extraction() -> Verdict {
    let p = params(-1.0, 1, FINE_STRUCTURE, 1.0);
    let d = p.derive().unwrap();
    let (mut t_err, mut a_err, mut psi_err) = (0.0f64, 0.0f64, 0.0f64);
    for eps in [1.05, 1.3, 1.7, 2.5, 4.0] {
        let ps = phase_shift(&p, eps).unwrap();
        let map = map_to_pollaczek(&d, &EnergyPoint::new(eps)).unwrap();
        let seq = eval_orthonormal(&map.params, map.x, 3001);
        let fit = fit_asymptotics(&seq, 1000..3000, FitOptions::default()).unwrap();
        t_err = t_err.max((fit.theta - map.x.acos()).abs());
        a_err = a_err.max((fit.amplitude / ps.amplitude - 1.0).abs());
        psi_err = psi_err.max(wrapped(fit.psi - ps.psi) / ps.psi.abs().max(1.0));
    }
    let pass = t_err <= 1e-4 && a_err <= 1e-3 && psi_err <= 1e-3;
    (pass, format!("theta {t_err:.3e} (1e-4), amplitude {a_err:.3e} (1e-3), psi {psi_err:.3e} (1e-3), window 1000..3000"))
}

/// Leading `size × size` block of a Jacobi matrix, with the coupling to the
/// rest removed.
struct Truncated<'a> {
    inner: &'a dyn JacobiMatrix,
    size: usize,
}

impl JacobiMatrix for Truncated<'_> {
    fn diag(&self, n: usize) -> f64 {
        self.inner.diag(n)
    }
    fn offdiag(&self, n: usize) -> f64 {
        if n + 1 < self.size {
            self.inner.offdiag(n)
        } else {
            0.0
        }
    }
}

fn green_function() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = params(-1.0, 1, FINE_STRUCTURE, 1.0);
    let d = p.derive().unwrap();
    let pollaczek = map_to_pollaczek(&d, &EnergyPoint::new(1.5)).unwrap().params.orthonormal_jacobi();
    let recursion = d.recursion_coefficients();
    let matrices: [(&dyn JacobiMatrix, (f64, f64)); 2] = [(&pollaczek, (-2.0, 2.0)), (&recursion, (-5.0, 60.0))];

    let mut quad_err: f64 = 0.0;
    for (jac, (lo, hi)) in matrices {
        let (diag, off) = jac.truncate(60);
        let rule = gauss_rule_from_jacobi(&diag, &off, 1.0).unwrap();
        let block = Truncated { inner: jac, size: 60 };
        for _ in 0..10 {
            let z = Complex64::new(rng.gen_range(lo..hi), rng.gen_range(0.5..3.0));
            let quad: Complex64 = rule.nodes.iter().zip(&rule.weights).map(|(&x, &w)| w / (z - x)).sum();
            let cf = continued_fraction_g(&block, z, 1e-15, 1000).unwrap().value;
            quad_err = quad_err.max((cf - quad).norm() / quad.norm());
        }
    }

    let mut herglotz_bad = 0;
    for k in 0..100 {
        let (jac, (lo, hi)) = matrices[k % 2];
        let im = rng.gen_range(0.05..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let z = Complex64::new(rng.gen_range(lo..hi), im);
        let g = continued_fraction_g(jac, z, 1e-14, 1_000_000).unwrap().value;
        if !(g.im * z.im < 0.0) {
            herglotz_bad += 1;
        }
    }

    let drift = |params: &PollaczekParams, x: f64| {
        let jac = params.orthonormal_jacobi();
        let pn = eval_orthonormal(params, x, 201).values;
        let ps = eval_pstar(params, x, 201).unwrap().values;
        let c = casoratian(&jac, &pn, &ps);
        c.iter().map(|v| (v - c[0]).abs() / c[0].abs()).fold(0.0, f64::max)
    };
    let mut wronskian: f64 = 0.0;
    for (lam, b) in [(0.75, -0.4), (1.5, 0.3), (2.5, -0.2), (1.0, 0.0)] {
        let params = PollaczekParams::new(lam, 0.0, b).unwrap();
        for x in [-0.9, -0.5, 0.0, 0.4, 0.9] {
            wronskian = wronskian.max(drift(&params, x));
        }
    }
    let mut edge: f64 = 0.0;
    for eps in [1.1, 1.5, 3.0, -1.3, -2.5] {
        let map = map_to_pollaczek(&d, &EnergyPoint::new(eps)).unwrap();
        edge = edge.max(drift(&map.params, map.x));
    }

    let pass = quad_err <= 1e-10 && herglotz_bad == 0 && wronskian <= 1e-9;
    (
        pass,
        format!(
            "CF vs 60-node Gauss {quad_err:.3e} (1e-10); Herglotz violations {herglotz_bad}/100; \
             Casoratian drift {wronskian:.3e} (1e-9); at hydrogen band-edge points {edge:.3e} (not gated)"
        ),
    )
}

fn closed_form_worst(variant: ClosedFormVariant, points: &[(PhysicalParams, f64)]) -> f64 {
    let mut worst: f64 = 0.0;
    for (p, eps) in points {
        let d = p.derive().unwrap();
        let rec = coefficients_recursion(&d, *eps, 30).unwrap();
        let err = match coefficients_closed_form(&d, *eps, 30, variant) {
            Ok(cf) => (0..=30).map(|n| (cf.values[n] / rec.values[n] - 1.0).norm()).fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        };
        worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
    }
    worst
}

fn closed_form_coefficients() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let points: Vec<_> = BANDS.iter().flat_map(|&b| (0..10).map(|_| admissible(&mut rng, b)).collect::<Vec<_>>()).collect();
    let corrected = closed_form_worst(ClosedFormVariant::Corrected, &points);
    let printed = closed_form_worst(ClosedFormVariant::AsPrinted, &points);
    let pass = corrected <= 1e-8 || printed <= 1e-8;
    (
        pass,
        format!("max |closed/recursion - 1|: corrected {corrected:.3e}, as printed {printed:.3e} (tol 1e-8, n <= 30, 30 points)"),
    )
}

fn tridiagonality() -> Verdict {
    let settings = [
        (params(-1.0, 1, FINE_STRUCTURE, 1.0), 0.9999933),
        (params(-2.0, -2, 0.03, 0.8), 1.3),
        (params(-1.0, 3, 0.1, 0.7), -1.5),
    ];
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (p, eps) in settings {
        let diag = verify_tridiagonal(&p.derive().unwrap(), eps, 20).unwrap();
        parts.push(format!("gamma={:.6} Z={} eps={eps}: {:.3e}", diag.gamma, p.z, diag.off_band_ratio));
        worst = worst.max(diag.off_band_ratio);
    }
    (worst <= 1e-10, format!("off-band ratio at N=20 [{}] (tol 1e-10)", parts.join("; ")))
}

fn wavefunction() -> Verdict {
    let p = params(-1.0, -1, FINE_STRUCTURE, 1.0);
    let d = p.derive().unwrap();
    let basis = LaguerreBasis::for_params(&d).unwrap();
    let mut gram_err: f64 = 0.0;
    for n in 1..=20 {
        let g = basis.gram_matrix(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                let id = if i == j { 1.0 } else { 0.0 };
                gram_err = gram_err.max((g[i * n + j] - id).abs());
            }
        }
    }

    let eps = bound_energy(&p, 0).unwrap();
    let f = coefficients_minimal(&d, eps, 64).unwrap();
    let h = 0.01 / d.omega;
    let grid: Vec<f64> = (1..=4000).map(|i| h * i as f64).collect();
    let phi = reconstruct_upper(&f, &d, &grid, 64).unwrap();
    let residual = schrodinger_residual(&phi.values, &grid, &d, eps).unwrap();

    let pass = gram_err <= 1e-9 && residual <= 1e-4;
    (
        pass,
        format!("Gram - I max {gram_err:.3e} for N <= 20 (tol 1e-9); ground-state residual {residual:.3e} (tol 1e-4)"),
    )
}

fn special_functions() -> Verdict {
    let mut gamma_err: f64 = 0.0;
    for k in 0..=40 {
        let y = -5.0 + 0.25 * k as f64;
        let z = Complex64::new(0.5, y);
        let product = (log_gamma(z).unwrap() + log_gamma(Complex64::new(1.0, 0.0) - z).unwrap()).exp();
        let expect = PI / (PI * z).sin();
        gamma_err = gamma_err.max((product / expect - 1.0).norm());
        if y != 0.0 {
            let modulus = (2.0 * log_gamma(Complex64::new(1.0, y)).unwrap().re).exp();
            gamma_err = gamma_err.max((modulus * (PI * y).sinh() / (PI * y) - 1.0).abs());
        }
    }
    for &z in &[Complex64::new(0.3, 1.7), Complex64::new(2.6, -0.8), Complex64::new(-1.4, 0.6)] {
        let product = (log_gamma(z).unwrap() + log_gamma(1.0 - z).unwrap()).exp();
        gamma_err = gamma_err.max((product * (PI * z).sin() / PI - 1.0).norm());
    }

    let mut moment_err: f64 = 0.0;
    for (order, nu) in [(5usize, 0.0), (10, 1.5), (20, 2.3), (12, -0.4)] {
        let rule = gauss_laguerre(order, nu).unwrap();
        for k in 0..2 * order {
            let exact = ln_gamma_real(nu + k as f64 + 1.0);
            let quad = rule.integrate(|x| x.powi(k as i32));
            moment_err = moment_err.max((quad.ln() - exact).abs());
        }
    }
    let pass = gamma_err <= 1e-11 && moment_err <= 1e-9;
    (pass, format!("Gamma identities {gamma_err:.3e} (1e-11); Gauss-Laguerre moments {moment_err:.3e} (1e-9)"))
}

fn symmetry_maps() -> Verdict {
    let mut involution = true;
    for &(z, kappa, eps) in &[(-1.0, 1, 0.7), (2.0, -3, -1.4), (0.5, 2, 3.0)] {
        let p = params(z, kappa, 0.05, 1.2);
        let e = EnergyPoint::new(eps);
        let (p1, e1, swap1) = negative_energy_map(&p, &e);
        let (p2, e2, swap2) = negative_energy_map(&p1, &e1);
        involution &= p2 == p && e2 == e && swap1 && swap2;
    }
    let mut worst: f64 = 0.0;
    for kappa in [-2, -1, 1, 2] {
        let p = params(1.0, kappa, FINE_STRUCTURE, 1.0);
        let negative = negative_energy_levels(&p, 6).unwrap();
        let (mapped, _, _) = negative_energy_map(&p, &EnergyPoint::new(-0.5));
        for (n, e) in negative.iter().enumerate() {
            let original = bound_energy(&mapped, n).unwrap();
            let oracle = sommerfeld_oracle(mapped.z, mapped.kappa, mapped.compton, if mapped.kappa > 0 { n + 1 } else { n });
            worst = worst.max(((e + original) / original).abs()).max(((e + oracle) / oracle).abs());
        }
    }
    (involution && worst <= 1e-12, format!("involution {involution}; max |mapped + original| relative {worst:.3e} (1e-12)"))
}

fn cli_golden() -> Verdict {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases = std::fs::read_to_string(dir.join("cases.txt")).unwrap();
    let mut failures = Vec::new();
    let mut count = 0;
    for line in cases.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let (name, args) = line.split_once(':').unwrap();
        let name = name.trim();
        let args: Vec<&str> = args.split_whitespace().collect();
        let ext = if args.contains(&"json") { "json" } else { "csv" };
        let expected = std::fs::read(dir.join(format!("{name}.{ext}"))).unwrap();
        let run = || Command::new(env!("CARGO_BIN_EXE_dirac-jmatrix")).args(&args).output().unwrap();
        let (a, b) = (run(), run());
        count += 1;
        if !(a.status.success() && a.stdout == b.stdout && a.stdout == expected) {
            failures.push(name.to_owned());
        }
    }
    (failures.is_empty(), format!("{count} cases byte-identical; mismatches: {failures:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 13] = [
        ("spectrum matches Sommerfeld oracle", spectrum_oracle),
        ("quantization condition roots and minimal solution", quantization_roots),
        ("nonrelativistic limit", nonrelativistic_limit),
        ("mapped Pollaczek values solve the basis recursion", recursion_identification),
        ("Darboux scattering asymptotics", darboux_asymptotics),
        ("phase-shift extraction", phase_shift_extraction),
        ("Green function", green_function),
        ("closed-form coefficients", closed_form_coefficients),
        ("tridiagonality", tridiagonality),
        ("wavefunction", wavefunction),
        ("special functions", special_functions),
        ("symmetry maps", symmetry_maps),
        ("CLI determinism", cli_golden),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (pass, detail) = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        });
        if !pass {
            failed += 1;
        }
        println!("{} {:>2} {name}: {detail}", if pass { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
