//! Black-box tests of the command-line interface: exit codes, file
//! outputs and determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use quarkonium::model::QuarkoniumParams;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quarkonium"))
}

fn write_params(dir: &Path, name: &str, s: u32) -> std::path::PathBuf {
    let params = QuarkoniumParams {
        alpha_s: 0.5,
        b: 0.15,
        sigma: 1.0,
        m_q: 1.5,
        m_qbar: 1.5,
        s,
        hbar: 1.0,
    };
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(&params).unwrap()).unwrap();
    path
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn no_arguments_is_a_usage_error() {
    let status = bin().status().unwrap();
    assert_eq!(status.code(), Some(64));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let status = bin().arg("frobnicate").status().unwrap();
    assert_eq!(status.code(), Some(64));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(bin().arg("--help").status().unwrap().code(), Some(0));
    assert_eq!(bin().arg("--version").status().unwrap().code(), Some(0));
}

#[test]
fn validate_passes_by_default() {
    let output = bin().arg("validate").output().unwrap();
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("PASS"));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn validate_fails_on_injected_fault() {
    let output = bin().args(["validate", "--inject-fault"]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stdout).contains("FAIL"));
}

#[test]
fn validate_fails_at_impossible_tolerance() {
    let status = bin()
        .args(["validate", "--tolerance", "1e-20"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn spectrum_writes_csv_with_expected_header() {
    let dir = tempfile::tempdir().unwrap();
    let params = write_params(dir.path(), "params.json", 0);
    let out = dir.path().join("spectrum.csv");
    let output = bin()
        .args([
            "spectrum",
            "--backend",
            "cornell-numerov",
            "--n-max",
            "1",
            "--l-max",
            "1",
        ])
        .arg("--params")
        .arg(&params)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "n_r,l,s,E,nodes,converged");
    assert_eq!(lines.count(), 4, "two n_r times two l channels");
}

#[test]
fn spectrum_truncated_triplet_exits_two_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let params = write_params(dir.path(), "triplet.json", 1);
    let out = dir.path().join("spectrum.csv");
    let output = bin()
        .args(["spectrum", "--backend", "truncated-numerov"])
        .arg("--params")
        .arg(&params)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("no bound states"), "stderr: {stderr}");
}

#[test]
fn spectrum_rejects_unknown_backend() {
    let dir = tempfile::tempdir().unwrap();
    let params = write_params(dir.path(), "params.json", 0);
    let out = dir.path().join("out.csv");
    let status = bin()
        .args(["spectrum", "--backend", "exact-diagonalization"])
        .arg("--params")
        .arg(&params)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(64));
}

#[test]
fn spectrum_rejects_malformed_params() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("bad.json");
    fs::write(&params, r#"{"alpha_s": 0.5, "unexpected": 1}"#).unwrap();
    let out = dir.path().join("out.csv");
    let status = bin()
        .args(["spectrum", "--backend", "cornell-numerov"])
        .arg("--params")
        .arg(&params)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(64));
}

#[test]
fn compare_passes_on_singlet_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let params = write_params(dir.path(), "params.json", 0);
    let out = dir.path().join("cmp.csv");
    let output = bin()
        .args(["compare", "--n-max", "6", "--l-max", "0"])
        .arg("--params")
        .arg(&params)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("n_r,l,s,E_cornell,E_truncated,E_oea,flags\n"));
    assert_eq!(csv.lines().count(), 8);
}

#[test]
fn compare_json_format_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let params = write_params(dir.path(), "params.json", 0);
    let out = dir.path().join("cmp.json");
    let status = bin()
        .args([
            "compare", "--n-max", "4", "--l-max", "0", "--format", "json",
        ])
        .arg("--params")
        .arg(&params)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let report: quarkonium::audit::SpectrumComparison = serde_json::from_str(&text).unwrap();
    assert_eq!(report.rows.len(), 5);
}

#[test]
fn expansion_error_defaults_and_double_point_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let status = bin()
        .arg("expansion-error")
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,exact_inv,approx_inv,rel_err_inv,exact_invsq,approx_invsq,rel_err_invsq"
    );
    assert_eq!(lines.count(), 200);

    // a table pinned to q = 2 delta shows the factor-of-two error exactly
    let out2 = dir.path().join("pinned.csv");
    let status = bin()
        .args([
            "expansion-error",
            "--q-min",
            "1.4",
            "--q-max",
            "2.8",
            "--points",
            "2",
        ])
        .arg("--out")
        .arg(&out2)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = fs::read_to_string(&out2).unwrap();
    let row = csv.lines().nth(1).unwrap();
    let rel_err_inv: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
    assert!(
        (rel_err_inv - 1.0).abs() < 1e-11,
        "rel err at q = 2 delta: {rel_err_inv}"
    );
}

#[test]
fn expansion_error_rejects_bad_delta() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let status = bin()
        .args(["expansion-error", "--delta", "0"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(64));
}

#[test]
fn expansion_error_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let status = bin()
            .arg("expansion-error")
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    assert_eq!(
        fs::read(&a).unwrap(),
        fs::read(&b).unwrap(),
        "byte-identical outputs"
    );
}

#[test]
fn fit_round_trips_through_the_cli() {
    use quarkonium::fit::{mass_model, Backend, FitConfig, MesonObservation};

    let dir = tempfile::tempdir().unwrap();
    let truth = QuarkoniumParams {
        alpha_s: 0.5,
        b: 0.15,
        sigma: 1.0,
        m_q: 1.5,
        m_qbar: 1.5,
        s: 0,
        hbar: 1.0,
    };
    let config = FitConfig::default();
    let observations: Vec<MesonObservation> = [(0u32, 0u32), (1, 0), (2, 0), (0, 1)]
        .iter()
        .map(|&(n_r, l)| MesonObservation {
            label: format!("state-{n_r}-{l}"),
            n_r,
            l,
            s: 0,
            mass: mass_model(&truth, Backend::OeaClosedForm, n_r, l, 0, &config).unwrap(),
            weight: 1.0,
        })
        .collect();
    let obs_path = dir.path().join("obs.json");
    fs::write(&obs_path, serde_json::to_string(&observations).unwrap()).unwrap();

    let mut guess = truth.clone();
    guess.alpha_s *= 1.1;
    let guess_path = dir.path().join("guess.json");
    fs::write(&guess_path, serde_json::to_string(&guess).unwrap()).unwrap();

    let run = |out: &Path| {
        let output = bin()
            .args(["fit", "--free", "alpha_s,b"])
            .arg("--observations")
            .arg(&obs_path)
            .arg("--params")
            .arg(&guess_path)
            .arg("--out")
            .arg(out)
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    };
    let out_a = dir.path().join("fit_a.json");
    let out_b = dir.path().join("fit_b.json");
    run(&out_a);
    run(&out_b);

    let report: quarkonium::fit::FitResult =
        serde_json::from_str(&fs::read_to_string(&out_a).unwrap()).unwrap();
    assert!(report.converged);
    assert!(report.objective < 1e-8);
    assert!((report.params.alpha_s - truth.alpha_s).abs() / truth.alpha_s < 0.01);
    assert!((report.params.b - truth.b).abs() / truth.b < 0.01);
    assert_eq!(
        fs::read(&out_a).unwrap(),
        fs::read(&out_b).unwrap(),
        "deterministic fit output"
    );
}

#[test]
fn fit_rejects_empty_observations() {
    let dir = tempfile::tempdir().unwrap();
    let obs_path = dir.path().join("obs.json");
    fs::write(&obs_path, "[]").unwrap();
    let guess = write_params(dir.path(), "guess.json", 0);
    let out = dir.path().join("fit.json");
    let status = bin()
        .args(["fit", "--free", "alpha_s"])
        .arg("--observations")
        .arg(&obs_path)
        .arg("--params")
        .arg(&guess)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(64));
}

#[test]
fn fit_rejects_unknown_free_parameter() {
    let dir = tempfile::tempdir().unwrap();
    let obs_path = dir.path().join("obs.json");
    fs::write(
        &obs_path,
        r#"[{"label":"x","n_r":0,"l":0,"s":0,"mass":3.0,"weight":1.0}]"#,
    )
    .unwrap();
    let guess = write_params(dir.path(), "guess.json", 0);
    let out = dir.path().join("fit.json");
    let status = bin()
        .args(["fit", "--free", "tension"])
        .arg("--observations")
        .arg(&obs_path)
        .arg("--params")
        .arg(&guess)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(64));
}
