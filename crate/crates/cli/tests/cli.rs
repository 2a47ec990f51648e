use std::path::Path;
use std::process::{Command, Output};

fn cylbuckle(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cylbuckle"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn read(p: impl AsRef<Path>) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn critical_load_reports_classical_value() {
    let dir = tempfile::tempdir().unwrap();
    let o = cylbuckle(&["critical-load", "--nu", "0.3", "--h", "0.01"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ls = v["lambda_star"].as_f64().unwrap();
    assert!((ls - 6.0523e-3).abs() < 5e-8, "{ls}");
    assert!(v["m"].as_u64().unwrap() >= 1);
    let ratio = v["ratio"].as_f64().unwrap();
    assert!((ratio - 1.0).abs() <= 0.05);
    assert_eq!(read(dir.path().join("critical_load.json")), String::from_utf8(o.stdout).unwrap());
}

#[test]
fn sweep_csv_is_byte_identical_across_runs_and_thread_counts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["sweep", "--h", "0.1,0.01,0.003"];
    assert!(cylbuckle(&[&args[..], &["--jobs", "1"]].concat(), a.path()).status.success());
    assert!(cylbuckle(&[&args[..], &["--jobs", "4"]].concat(), b.path()).status.success());
    let (x, y) = (read(a.path().join("sweep.csv")), read(b.path().join("sweep.csv")));
    assert_eq!(x, y);
    let mut lines = x.lines();
    assert_eq!(
        lines.next(),
        Some("h,m,n,m_hat,lambda3_tilde,lambda3_full,lambda_star,ratio,a_theta,a_z")
    );
    assert_eq!(lines.count(), 3);
}

#[test]
fn korn_outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (d, jobs) in [(&a, "1"), (&b, "3")] {
        let o = cylbuckle(&["korn", "--h", "0.1,0.05", "--jobs", jobs], d.path());
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["korn.csv", "korn.json"] {
        assert_eq!(read(a.path().join(f)), read(b.path().join(f)), "{f}");
    }
    let csv = read(a.path().join("korn.csv"));
    assert!(csv.starts_with("h,kind,value,fitted_slope\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 4);
}

#[test]
fn mode_writes_grid_and_quotient() {
    let dir = tempfile::tempdir().unwrap();
    let o = cylbuckle(&["mode", "--alpha", "0.5", "--h", "0.01", "--nu", "0.333"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("quotient ratio"));
    let vtk = read(dir.path().join("mode_h0.01_alpha0.5.vtk"));
    assert!(vtk.starts_with("# vtk DataFile Version 3.0\n"));
    assert!(vtk.contains("DATASET STRUCTURED_GRID"));
    let reports: serde_json::Value = serde_json::from_str(&read(dir.path().join("mode.json"))).unwrap();
    assert!(reports[0]["ratio"].as_f64().unwrap() > 0.0);

    let o = cylbuckle(&["mode", "--h", "0.01", "--format", "csv"], dir.path());
    assert!(o.status.success());
    assert!(read(dir.path().join("mode_h0.01_alpha0.5.csv")).starts_with("r,theta,z,phi_r,phi_theta,phi_z\n"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"nu": 0.0, "h": [0.03, 0.01]}"#).unwrap();
    let o = cylbuckle(&["critical-load", "--config", cfg.to_str().unwrap(), "--nu", "0.3"], dir.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[1]["lambda_star"].as_f64().unwrap(), 0.01 / (3.0f64 * 0.91).sqrt());
}

#[test]
fn validation_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["sweep", "--h", "0.01,0.1"][..],
        &["sweep", "--h", "0.01,0.01"],
        &["sweep", "--nu", "0.5"],
        &["mode", "--alpha", "0"],
        &["korn", "--degree", "2"],
        &["sweep", "--jobs", "0"],
        &["no-such-command"],
    ] {
        let o = cylbuckle(args, dir.path());
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn numerical_failure_exits_with_two_and_names_the_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = cylbuckle(&["mode", "--alpha", "1", "--margin", "1", "--h", "0.001"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("ModesError::WindowTooSmall"), "{err}");
}
