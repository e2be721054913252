use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ringdec_core::spectrum::{fd_bloch_oracle, ModeEigenProblem};
use serde_json::Value;

const FIG4_121NK: &str = r#"{"N": 80, "mass_mp": 40, "kappa_N_per_m": 1e-13, "R_m": 5e-7, "T_K": 1.21e-7, "times": {"points": 200}"#;

fn ringdec(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringdec"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("ringdec runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn config(extra: &str) -> String {
    format!("{FIG4_121NK}{extra}}}")
}

fn csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_owned)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect();
    (header, rows)
}

fn error_json(out: &Output) -> Value {
    serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim())
        .expect("stderr carries one JSON object")
}

#[test]
fn decohere_writes_traces_and_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "c.json", &config(""));
    let out = ringdec(
        &["decohere", "--config", "c.json", "--out", "run"],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for m in ["exact", "bessel", "erfi"] {
        let (header, rows) = csv(&dir.path().join(format!("run/trace_{m}.csv")));
        assert_eq!(header, ["t_s", "F"]);
        assert_eq!(rows.len(), 200);
        let (t0, f0): (f64, f64) = (rows[0][0].parse().unwrap(), rows[0][1].parse().unwrap());
        assert_eq!(t0, 0.0);
        assert!((f0 - 1.0).abs() < 1e-12);
    }
    let diag: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("run/diagnostics.json")).unwrap())
            .unwrap();
    for key in [
        "n_fwhm",
        "r",
        "eta",
        "gamma_cutoff",
        "tau_s",
        "tau_spon_s",
        "g",
        "delta_e_prime_joule",
        "delta_g",
        "first_decay_time_s",
    ] {
        assert!(diag.get(key).is_some(), "missing {key}");
    }
    assert!((diag["r"].as_f64().unwrap() - 1.0).abs() < 0.01);
}

#[test]
fn method_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "c.json", &config(r#", "methods": ["erfi"]"#));
    let out = ringdec(
        &[
            "decohere",
            "--config",
            "c.json",
            "--method",
            "exact,bessel",
            "--out",
            "o",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(dir.path().join("o/trace_exact.csv").exists());
    assert!(dir.path().join("o/trace_bessel.csv").exists());
    assert!(!dir.path().join("o/trace_erfi.csv").exists());
}

#[test]
fn erfi_without_slope_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        "c.json",
        r#"{"N": 4, "mass_mp": 40, "kappa_N_per_m": 1e-13, "R_m": 5e-7, "T_K": 1.21e-7, "methods": ["erfi"]}"#,
    );
    let out = ringdec(
        &["decohere", "--config", "c.json", "--out", "o"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    let err = error_json(&out);
    assert_eq!(err["error"], "solver");
    assert_eq!(err["exit_code"], 3);
    assert!(!dir.path().join("o").exists());
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            r#"{"N": 80, "mass_mp": 40, "kappa_N_per_m": -1e-13, "R_m": 5e-7, "T_K": 1e-7}"#,
            "kappa_N_per_m",
        ),
        (
            r#"{"N": 80, "mass_mp": 40, "mass_kg": 1e-26, "kappa_N_per_m": 1e-13, "R_m": 5e-7, "T_K": 1e-7}"#,
            "mass_kg",
        ),
        (
            r#"{"N": 80, "mass_mp": 40, "kappa_N_per_m": 1e-13, "R_m": 5e-7, "T_K": 1e-7, "foo": 1}"#,
            "foo",
        ),
        (
            r#"{"N": 80, "mass_mp": 40, "kappa_N_per_m": 1e-13, "R_m": 5e-7}"#,
            "T_K",
        ),
        (
            r#"{"N": 80, "mass_mp": 40, "kappa_N_per_m": 1e-13, "R_m": 5e-7, "T_K": 1e-7, "output": {"format": "xml"}}"#,
            "output.format",
        ),
    ];
    for (i, (body, field)) in cases.iter().enumerate() {
        let name = format!("bad{i}.json");
        write_config(dir.path(), &name, body);
        let out = ringdec(&["decohere", "--config", &name], dir.path());
        assert_eq!(out.status.code(), Some(2), "case {i}");
        assert_eq!(error_json(&out)["field"], *field, "case {i}");
    }
    let out = ringdec(&["decohere", "--config", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_with_four() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "c.json", &config(""));
    fs::write(dir.path().join("taken"), "").unwrap();
    let out = ringdec(
        &["decohere", "--config", "c.json", "--out", "taken"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_json(&out)["error"], "io");
}

#[test]
fn spectrum_table_is_symmetric_after_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        "c.json",
        &config(r#", "n_max": 100, "alpha_max": 2"#),
    );
    let out = ringdec(
        &["spectrum", "--config", "c.json", "--out", "s"],
        dir.path(),
    );
    assert!(out.status.success());
    let (header, rows) = csv(&dir.path().join("s/thin_spectrum.csv"));
    assert_eq!(&header[..4], ["n", "alpha", "eps_joule", "E_joule"]);
    assert_eq!(rows.len(), 201 * 3);
    let get = |n: i64, a: usize| -> f64 {
        let row = rows
            .iter()
            .find(|r| r[0] == n.to_string() && r[1] == a.to_string())
            .unwrap();
        row[2].parse().unwrap()
    };
    assert_eq!(rows.first().unwrap()[0], "-100");
    assert_eq!(rows.last().unwrap()[0], "100");
    for n in 0..=100 {
        for a in 0..=2 {
            assert_eq!(get(n, a), get(-n, a));
        }
    }
    let (mheader, mrows) = csv(&dir.path().join("s/modes.csv"));
    assert_eq!(
        mheader,
        ["k", "omega_rad_s", "q_per_m", "l_m", "degenerate_flag"]
    );
    assert_eq!(mrows.len(), 79);
}

#[test]
fn json_format_emits_tables_as_json() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        "c.json",
        &config(r#", "output": {"dir": "j", "format": "json"}"#),
    );
    assert!(ringdec(&["spectrum", "--config", "c.json"], dir.path())
        .status
        .success());
    let v: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("j/thin_spectrum.json")).unwrap())
            .unwrap();
    assert_eq!(v["columns"][0], "n");
    assert_eq!(v["rows"].as_array().unwrap().len(), 161 * 2);
}

#[test]
fn single_value_sweep_matches_decohere() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "c.json", &config(""));
    write_config(
        dir.path(),
        "s.json",
        &config(r#", "sweep": {"axis": "T", "values": [1.21e-7]}"#),
    );
    assert!(ringdec(
        &["decohere", "--config", "c.json", "--out", "d"],
        dir.path()
    )
    .status
    .success());
    assert!(
        ringdec(&["sweep", "--config", "s.json", "--out", "w"], dir.path())
            .status
            .success()
    );
    for m in ["exact", "bessel", "erfi"] {
        let a = fs::read(dir.path().join(format!("d/trace_{m}.csv"))).unwrap();
        let b = fs::read(dir.path().join(format!("w/point_000/trace_{m}.csv"))).unwrap();
        assert_eq!(a, b, "{m}");
    }
}

#[test]
fn temperature_sweep_scales_r_as_root_t() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        "s.json",
        &config(
            r#", "methods": ["exact"], "sweep": {"axis": "T", "values": [2.5e-8, 1e-7, 4e-7]}"#,
        ),
    );
    assert!(ringdec(
        &["sweep", "--config", "s.json", "--out", "w", "--jobs", "2"],
        dir.path()
    )
    .status
    .success());
    let (header, rows) = csv(&dir.path().join("w/sweep_summary.csv"));
    assert_eq!(
        header,
        ["axis_value", "first_decay_time_s", "r", "tau_s", "status"]
    );
    let r: Vec<f64> = rows.iter().map(|row| row[2].parse().unwrap()).collect();
    assert!((r[1] / r[0] - 2.0).abs() < 1e-12);
    assert!((r[2] / r[1] - 2.0).abs() < 1e-12);
}

#[test]
fn failing_sweep_point_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        "s.json",
        &config(r#", "methods": ["erfi"], "sweep": {"axis": "N", "values": [4, 80]}"#),
    );
    let out = ringdec(&["sweep", "--config", "s.json", "--out", "w"], dir.path());
    assert!(out.status.success());
    let (_, rows) = csv(&dir.path().join("w/sweep_summary.csv"));
    assert!(rows[0][4].trim_start_matches('"').starts_with("error"));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][4], "ok");
    assert!(!dir.path().join("w/point_000").exists());
    assert!(dir.path().join("w/point_001/trace_erfi.csv").exists());
}

#[test]
fn fixed_density_sweep_delays_decay() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        "s.json",
        r#"{"N": 80, "mass_mp": 4, "kappa_N_per_m": 1e-13, "R_m": 1e-6, "T_K": 1e-5, "methods": ["exact"],
            "sweep": {"axis": "fixed-density-N", "values": [80, 160, 320]}}"#,
    );
    assert!(
        ringdec(&["sweep", "--config", "s.json", "--out", "w"], dir.path())
            .status
            .success()
    );
    let (_, rows) = csv(&dir.path().join("w/sweep_summary.csv"));
    let t: Vec<f64> = rows.iter().map(|row| row[1].parse().unwrap()).collect();
    assert!(t[0] < t[1] && t[1] < t[2], "{t:?}");
    let diag: Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("w/point_002/diagnostics.json")).unwrap(),
    )
    .unwrap();
    assert!((diag["params"]["R_m"].as_f64().unwrap() - 4e-6).abs() < 1e-18);
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/a1")
}

fn numeric(path: &Path) -> Vec<Vec<f64>> {
    csv(path)
        .1
        .iter()
        .map(|r| r.iter().map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn a1_preset_matches_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = ringdec(&["figure", "--a1", "--out", "f"], dir.path());
    assert!(out.status.success());
    for name in ["levels_vs_theta.csv", "levels_vs_lambda.csv"] {
        let fresh = dir.path().join("f/a1").join(name);
        if std::env::var_os("RINGDEC_BLESS").is_some() {
            fs::create_dir_all(golden_dir()).unwrap();
            fs::copy(&fresh, golden_dir().join(name)).unwrap();
        }
        let (got, want) = (numeric(&fresh), numeric(&golden_dir().join(name)));
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            for (a, b) in g.iter().zip(w) {
                assert!((a - b).abs() < 1e-9, "{name}: {a} vs {b}");
            }
        }
    }
    // The recorded curves agree with the finite-difference levels.
    let theta = numeric(&golden_dir().join("levels_vs_theta.csv"));
    for row in theta.iter().step_by(25) {
        let fd = fd_bloch_oracle(&ModeEigenProblem::new(5.0, row[0], 1.0), 3, 4096).unwrap();
        for a in 0..=3 {
            assert!((row[a + 1] - fd[a]).abs() < 1e-4);
        }
    }
    let lambda = numeric(&golden_dir().join("levels_vs_lambda.csv"));
    for row in lambda.iter().step_by(40) {
        let fd = fd_bloch_oracle(&ModeEigenProblem::new(row[0], PI / 2.0, 1.0), 3, 4096).unwrap();
        for a in 0..=3 {
            assert!((row[a + 1] - fd[a]).abs() < 1e-4, "λ = {}", row[0]);
        }
    }
}

#[test]
fn figure_requires_a_preset() {
    let dir = tempfile::tempdir().unwrap();
    let out = ringdec(&["figure"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_documents_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let out = ringdec(&["--help"], dir.path());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("default 2000"));
    assert!(text.contains("Exit codes"));
}
