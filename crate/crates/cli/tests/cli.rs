use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dirac-jmatrix"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn golden_cases() -> Vec<(String, Vec<String>)> {
    std::fs::read_to_string(golden_dir().join("cases.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once(':').unwrap();
            (name.trim().to_owned(), args.split_whitespace().map(str::to_owned).collect())
        })
        .collect()
}

#[test]
fn golden_outputs_are_reproduced() {
    for (name, args) in golden_cases() {
        let ext = if args.iter().any(|a| a == "json") { "json" } else { "csv" };
        let expected = std::fs::read(golden_dir().join(format!("{name}.{ext}"))).unwrap();
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&argv);
        let second = run(&argv);
        assert!(first.status.success(), "{name}");
        assert_eq!(first.stdout, second.stdout, "{name} differs between runs");
        assert_eq!(first.stdout, expected, "{name} differs from golden file");
    }
}

#[test]
fn spectrum_example() {
    let text = stdout(&["spectrum", "--z", "-1", "--kappa", "1", "--compton", "7.2973525693e-3", "--n-max", "5"]);
    assert!(text.starts_with("n,kappa,eps,binding,oracle_residual\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert!(row[4].parse::<f64>().unwrap() < 1e-12);
    }
}

#[test]
fn compton_defaults_to_fine_structure_constant() {
    let explicit = stdout(&["spectrum", "--z", "-1", "--kappa", "1", "--compton", "7.2973525693e-3"]);
    let default = stdout(&["spectrum", "--z", "-1", "--kappa", "1"]);
    assert_eq!(explicit, default);
}

#[test]
fn free_particle_has_zero_phi() {
    let rows = csv_rows(&stdout(&["phase-shift", "--z", "0", "--kappa", "1", "--eps", "1.5"]));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][2].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn verify_example() {
    let rows = csv_rows(&stdout(&["verify", "--z", "-1", "--kappa", "1", "--eps", "0.9999933", "--n", "20"]));
    assert!(rows[0][3].parse::<f64>().unwrap() < 1e-10);
}

#[test]
fn grid_matches_single_runs() {
    let grid = stdout(&["phase-shift", "--z", "-1", "--kappa", "2", "--grid", "1.2,1.8,3"]);
    let mut joined = String::new();
    for eps in ["1.2", "1.5", "1.8"] {
        let single = stdout(&["phase-shift", "--z", "-1", "--kappa", "2", "--eps", eps]);
        if joined.is_empty() {
            joined.push_str(&single);
        } else {
            joined.push_str(single.split_once('\n').unwrap().1);
        }
    }
    assert_eq!(grid, joined);
}

#[test]
fn density_integrates_to_one() {
    let text = stdout(&[
        "density", "--z", "-1", "--kappa", "1", "--eps", "1.5", "--x-grid=-0.999,0.999,1999", "--eta", "1e-2",
    ]);
    let pts: Vec<(f64, f64)> = csv_rows(&text)
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[2].parse().unwrap()))
        .collect();
    let mass: f64 = pts.windows(2).map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1)).sum();
    assert!((mass - 1.0).abs() < 0.02, "{mass}");
}

#[test]
fn threshold_crossing_needs_split() {
    let out = run(&["phase-shift", "--z", "-1", "--kappa", "1", "--grid", "1.5,0.5,5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ThresholdError"));
    let out = run(&["density", "--z", "-1", "--kappa", "1", "--energy-grid=0.5,1.5,3", "--split"]);
    assert!(out.status.success());
    assert_eq!(csv_rows(&String::from_utf8(out.stdout).unwrap()).len(), 2);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["spectrum", "--kappa", "1"]), Some(1));
    assert_eq!(code(&["spectrum", "--z", "-1", "--kappa", "0"]), Some(1));
    assert_eq!(code(&["verify", "--z", "-1", "--kappa", "1", "--eps", "0.9", "--n", "0"]), Some(1));
    assert_eq!(code(&["spectrum", "--z", "-200", "--kappa", "1"]), Some(2));
    assert_eq!(code(&["spectrum", "--z", "1", "--kappa", "1"]), Some(2));
    assert_eq!(code(&["phase-shift", "--z", "-1", "--kappa", "1", "--eps", "1"]), Some(2));
    assert_eq!(code(&["phase-shift", "--z", "-1", "--kappa", "1", "--eps", "0.5"]), Some(2));
    assert_eq!(
        code(&["green", "--z", "-1", "--kappa", "1", "--re", "2", "--im", "0.01", "--max-depth", "5"]),
        Some(3)
    );
}

#[test]
fn error_text_names_module() {
    let out = run(&["spectrum", "--z", "-200", "--kappa", "1"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("model") && err.contains("SupercriticalError"), "{err}");
    let out = run(&["green", "--z", "-1", "--kappa", "1", "--re", "2", "--im", "0.01", "--max-depth", "5"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("resolvent: NoConvergence"));
}

#[test]
fn json_matches_csv() {
    let args = ["phase-shift", "--z", "-1", "--kappa", "-2", "--grid", "1.1,3,4"];
    let csv = csv_rows(&stdout(&args));
    let json: serde_json::Value = serde_json::from_str(&stdout(&[&args[..], &["--format", "json"]].concat())).unwrap();
    assert_eq!(json["table"], "phase_shift");
    assert_eq!(json["columns"][3], "psi");
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), csv.len());
    for (j, c) in rows.iter().zip(&csv) {
        for (k, cell) in c.iter().enumerate() {
            assert_eq!(j[k].as_f64().unwrap(), cell.parse::<f64>().unwrap());
        }
    }
}

#[test]
fn output_file_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("levels.csv");
    let out = run(&["spectrum", "--z", "-1", "--kappa", "1", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let data = std::fs::read_to_string(&path).unwrap();
    assert_eq!(data, stdout(&["spectrum", "--z", "-1", "--kappa", "1"]));
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("levels.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["table"], "spectrum");
    assert_eq!(meta["rows"], 11);
    assert_eq!(meta["params"]["kappa"], 1);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("h.conf");
    std::fs::write(&cfg, "# hydrogen\nz = -1\nkappa = 2\ncompton = 0.05\n").unwrap();
    let from_file = stdout(&["spectrum", "--config", cfg.to_str().unwrap(), "--n-max", "2"]);
    let from_flags = stdout(&["spectrum", "--z", "-1", "--kappa", "2", "--compton", "0.05", "--n-max", "2"]);
    assert_eq!(from_file, from_flags);
    let overridden = stdout(&["spectrum", "--config", cfg.to_str().unwrap(), "--kappa", "-1", "--n-max", "2"]);
    let direct = stdout(&["spectrum", "--z", "-1", "--kappa", "-1", "--compton", "0.05", "--n-max", "2"]);
    assert_eq!(overridden, direct);
    std::fs::write(&cfg, "z = -1\nmass = 3\n").unwrap();
    assert_eq!(run(&["spectrum", "--config", cfg.to_str().unwrap(), "--kappa", "1"]).status.code(), Some(1));
}

#[test]
fn negative_energy_levels_mirror_positive_ones() {
    let pos = csv_rows(&stdout(&["spectrum", "--z", "-1", "--kappa", "2", "--n-max", "4"]));
    let neg = csv_rows(&stdout(&["spectrum", "--z", "1", "--kappa", "-2", "--n-max", "4", "--negative"]));
    for (p, n) in pos.iter().zip(&neg) {
        assert_eq!(p[2].parse::<f64>().unwrap(), -n[2].parse::<f64>().unwrap());
    }
}

#[test]
fn wavefunction_from_level_decays() {
    let rows = csv_rows(&stdout(&["wavefunction", "--z", "-1", "--kappa", "1", "--level", "0", "--r-grid", "20,400,3"]));
    let upper: Vec<f64> = rows.iter().map(|r| r[1].parse::<f64>().unwrap().abs()).collect();
    assert!(upper[0] > upper[1] && upper[1] > upper[2]);
}
