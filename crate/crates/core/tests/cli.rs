use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdot-feedback"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn ok(out: &Path, args: &[&str]) -> Output {
    let o = run(out, args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    o
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn column(csv: &str, index: usize) -> Vec<f64> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(index).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let args = ["greens", "--T", "2", "--dt", "0.002", "--r", "1.5", "--theta", "-0.3"];
    let names = ["greens_analytic.csv", "greens_quadrature.csv", "greens_ode.csv", "greens_report.json"];
    ok(dir.path(), &args);
    let first: Vec<Vec<u8>> = names.iter().map(|n| fs::read(dir.path().join(n)).unwrap()).collect();
    ok(dir.path(), &args);
    for (n, bytes) in names.iter().zip(&first) {
        assert_eq!(&fs::read(dir.path().join(n)).unwrap(), bytes, "{n}");
    }
    // No temporary files are left behind.
    for entry in fs::read_dir(dir.path()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        assert!(!name.ends_with(".tmp"), "{name}");
    }
    let csv = read(dir.path(), "greens_analytic.csv");
    assert!(csv.starts_with("t,re_g,im_g,abs_g\n0.0000000000000000e0,"));
    assert!((column(&csv, 1)[0] - 1.0).abs() < 1e-14);
}

#[test]
fn zero_feedback_kernels_are_identical() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["kernel", "--r", "0", "--theta", "1.2", "--T", "5"]);
    assert_eq!(read(dir.path(), "kernel_open_time.csv"), read(dir.path(), "kernel_closed_time.csv"));
    assert_eq!(read(dir.path(), "kernel_open_laplace.csv"), read(dir.path(), "kernel_closed_laplace.csv"));
    let terms: serde_json::Value = serde_json::from_str(&read(dir.path(), "kernel_terms.json")).unwrap();
    let open = terms["open_loop"]["terms"].as_array().unwrap();
    assert_eq!(open.len(), 2);
    assert!((open[0]["amplitude"][0].as_f64().unwrap() - 0.06).abs() < 1e-15);
    assert!((open[1]["rate"][1].as_f64().unwrap() + 9.9).abs() < 1e-14);
}

#[test]
fn zero_noise_kernel_vanishes_and_amplitude_stays_one() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["kernel", "--eta", "0", "--r", "2", "--T", "5"]);
    for name in ["kernel_open_time.csv", "kernel_closed_time.csv"] {
        let csv = read(dir.path(), name);
        assert!(column(&csv, 1).iter().chain(&column(&csv, 2)).all(|&x| x == 0.0));
    }
    ok(dir.path(), &["greens", "--eta", "0", "--T", "5", "--dt", "0.001"]);
    for name in ["greens_analytic.csv", "greens_quadrature.csv", "greens_ode.csv"] {
        let abs = column(&read(dir.path(), name), 3);
        assert!(abs.iter().all(|a| (a - 1.0).abs() < 1e-9), "{name}");
    }
}

#[test]
fn greens_report_shows_solver_agreement() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["greens", "--T", "10"]);
    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "greens_report.json")).unwrap();
    let reports = report["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for r in reports {
        assert!(r["max_deviation"].as_f64().unwrap() < 1e-6);
    }
}

#[test]
fn markovian_flag_gives_exponential_decay() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["greens", "--markovian-gamma", "0.4", "--T", "10", "--dt", "0.01"]);
    let csv = read(dir.path(), "greens_analytic.csv");
    for (t, a) in column(&csv, 0).into_iter().zip(column(&csv, 3)) {
        assert!((a - (-0.2 * t).exp()).abs() < 1e-12);
    }
    assert!(!dir.path().join("greens_quadrature.csv").exists());
}

#[test]
fn poles_and_locus_outputs() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["poles", "--r", "2"]);
    assert_eq!(read(dir.path(), "poles.csv").lines().count(), 4);
    ok(dir.path(), &["poles", "--format", "json"]);
    let poles: serde_json::Value = serde_json::from_str(&read(dir.path(), "poles.json")).unwrap();
    assert_eq!(poles["greens"]["modes"].as_array().unwrap().len(), 3);

    ok(dir.path(), &["locus", "--sweep", "eta", "--steps", "41"]);
    let csv = read(dir.path(), "locus.csv");
    assert!(csv.starts_with("param,re_p1,im_p1,re_p2,im_p2,re_p3,im_p3,m\n"));
    let params = column(&csv, 0);
    assert_eq!(params.len(), 41);
    assert_eq!(params[40], 1.6);

    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "eta = 0.8\n[sweep]\nparameter = \"theta\"\nstart = -1.0\nstop = 1.0\nsteps = 11\n").unwrap();
    ok(dir.path(), &["locus", "--config", cfg.to_str().unwrap(), "--steps", "5"]);
    let params = column(&read(dir.path(), "locus.csv"), 0);
    assert_eq!(params, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
}

#[test]
fn reproduce_writes_manifested_datasets() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["reproduce", "fig5", "--T", "20", "--dt", "0.01"]);
    let m: serde_json::Value = serde_json::from_str(&read(&dir.path().join("fig5"), "manifest.json")).unwrap();
    assert_eq!(m["eta_values"], serde_json::json!([0.4, 0.8, 1.2, 1.6]));
    assert_eq!(m["theta"], 0.0);
    assert_eq!(m["dt"], 0.01);
    assert_eq!(m["T"], 20.0);
    assert_eq!(m["physical"]["omega_s"], 10.0);

    ok(dir.path(), &["reproduce", "fig4", "--T", "20", "--dt", "0.01"]);
    let fig4 = dir.path().join("fig4");
    let m: serde_json::Value = serde_json::from_str(&read(&fig4, "manifest.json")).unwrap();
    let series: Vec<&str> = m["files"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap())
        .filter(|n| n.starts_with("greens_"))
        .collect();
    assert_eq!(series.len(), 4);
    for (i, name) in series.iter().enumerate() {
        let csv = read(&fig4, name);
        assert_eq!(csv.lines().count(), 2002, "{name}");
        let r = m["files"][i]["parameter"][1].as_f64().unwrap();
        assert_eq!(r, m["r_values"][i].as_f64().unwrap());
    }
    assert_eq!(m["checks"][0]["passed"], true);

    for fig in ["fig2", "fig3"] {
        ok(dir.path(), &["reproduce", fig]);
        let d = dir.path().join(fig);
        assert_eq!(read(&d, "locus.csv").lines().count(), 302);
        assert_eq!(read(&d, "markers.csv").lines().count(), 5);
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let code = |args: &[&str]| run(dir.path(), args).status.code().unwrap();
    assert_eq!(code(&["reproduce", ""]), 2);
    assert_eq!(code(&["reproduce", "fig9"]), 2);
    assert_eq!(code(&["poles", "--h", "-1"]), 2);
    assert_eq!(code(&["greens", "--dt", "0.5"]), 2);
    assert_eq!(code(&["kernel", "--format", "xml"]), 2);
    assert_eq!(code(&["locus", "--sweep", "delta"]), 2);
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "omega = 3\n").unwrap();
    assert_eq!(code(&["poles", "--config", bad.to_str().unwrap()]), 2);
    // δ = r = η = 0 makes the two lead poles coincide.
    assert_eq!(code(&["poles", "--delta", "0", "--eta", "0", "--r", "0"]), 3);
    let o = run(dir.path(), &["poles", "--delta", "0", "--eta", "0", "--r", "0"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(code(&["poles"]), 0);
}
