use std::path::Path;
use std::process::{Command, Output};

fn gzk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gzk"))
        .args(args)
        .env("GZK_THREADS", "2")
        .output()
        .expect("spawn gzk")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn groundstate_reports_cubic_mass() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gs");
    let o = gzk(&["groundstate", "--k", "2", "--N", "256", "--out", path(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("groundstate.json")).unwrap()).unwrap();
    let mass = report["mass_sq"].as_f64().unwrap();
    assert!((mass - 11.7009).abs() < 1e-4, "{mass}");
    assert_eq!(report["N"], 256);
    assert_eq!(report["L"], 20.0);
    let printed: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(printed, report);
}

#[test]
fn line_soliton_simulation_conserves_mass() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sim");
    let o = gzk(&[
        "simulate", "--preset", "line-soliton", "--k", "1", "--c", "1", "--t-end", "1", "--nx", "256", "--ny", "8",
        "--out", path(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(out.join("diagnostics.csv")).unwrap();
    let masses: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(masses.len(), 101);
    let drift = masses.iter().map(|m| (m - masses[0]).abs()).fold(0.0, f64::max) / masses[0];
    assert!(drift < 1e-8, "{drift:e}");
    assert!(out.join("snapshots").read_dir().unwrap().count() > 0);
}

#[test]
fn malformed_config_exits_2_without_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let cfg = dir.path().join("bad.toml");
    std::fs::write(
        &cfg,
        format!("version = \"1\"\n[simulate]\nout = {:?}\ndtt = 0.01\n", path(&out)),
    )
    .unwrap();
    let o = gzk(&["run", path(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.starts_with("E:config:"), "{err}");
    assert!(err.contains("dtt"), "{err}");
    assert_eq!(err.lines().count(), 1);
    assert!(!out.exists());

    std::fs::write(&cfg, format!("version = \"1\"\n[simulate]\nout = {:?}\ndt = -0.01\n", path(&out))).unwrap();
    let o = gzk(&["run", path(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`dt`"));
    assert!(!out.exists());

    let o = gzk(&["simulate", "--nx", "255", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`nx`"));
    assert!(!out.exists());

    let o = gzk(&["simulate", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("E:config:"));
}

#[test]
fn numeric_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = gzk(&[
        "groundstate", "--k", "2", "--N", "64", "--max-iter", "2", "--out", path(&dir.path().join("gs")),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("E:numeric:"), "{}", stderr(&o));
}

#[test]
fn config_file_and_flags_produce_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let cfg = dir.path().join("gn.toml");
    std::fs::write(
        &cfg,
        format!(
            "version = \"1\"\n[gn-verify]\nk = 3\ntrials = 5\nseed = 11\ngs-points = 128\nconcentration-lambdas = [4.0]\nflat-lambdas = [1.0, 0.5]\nout = {:?}\n",
            path(&a)
        ),
    )
    .unwrap();
    let o = gzk(&["run", path(&cfg)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = gzk(&[
        "gn-verify", "--k", "3", "--trials", "5", "--seed", "11", "--gs-points", "128", "--concentration-lambdas", "4",
        "--flat-lambdas", "1,0.5", "--out", path(&b),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    for name in ["sgn_suite.csv", "lambda_scan.json"] {
        let (x, y) = (std::fs::read(a.join(name)).unwrap(), std::fs::read(b.join(name)).unwrap());
        assert_eq!(x, y, "{name}");
    }
    let csv = std::fs::read_to_string(a.join("sgn_suite.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("trial,hash,left,right,ratio"));
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn probe_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        let o = gzk(&["probe-strichartz", "--scales", "1,2,4", "--trials", "3", "--seed", "7", "--out", path(d)]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(a.join("probe.json")).unwrap(), std::fs::read(b.join("probe.json")).unwrap());
    let probe: serde_json::Value = serde_json::from_slice(&std::fs::read(a.join("probe.json")).unwrap()).unwrap();
    assert_eq!(probe["per_scale"].as_array().unwrap().len(), 3);
    assert_eq!(probe["exponents"]["b"], 0.375);
}

#[test]
fn plotdata_projects_threshold_run() {
    let dir = tempfile::tempdir().unwrap();
    let run = dir.path().join("th");
    let o = gzk(&[
        "thresholds", "--k", "3", "--gs-points", "128", "--simulate", "--t-end", "0.05", "--nx", "64", "--ny", "16",
        "--lx", "16", "--out", path(&run),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = gzk(&["plotdata", path(&run)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let xt = std::fs::read_to_string(run.join("plot_xt.csv")).unwrap();
    assert_eq!(xt.lines().next(), Some("t,X_t,x0"));
    assert_eq!(xt.lines().count(), 7);
    let mass = std::fs::read_to_string(run.join("plot_mass.csv")).unwrap();
    assert_eq!(mass.lines().next(), Some("t,mass"));
}

#[test]
fn plotdata_projects_lambda_scan() {
    let dir = tempfile::tempdir().unwrap();
    let run = dir.path().join("gn");
    let o = gzk(&[
        "gn-verify", "--k", "2", "--trials", "2", "--gs-points", "128", "--concentration-lambdas", "4,8", "--out",
        path(&run),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let plots = dir.path().join("plots");
    let o = gzk(&["plotdata", path(&run), "--out", path(&plots)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let gn = std::fs::read_to_string(plots.join("plot_gn.csv")).unwrap();
    assert_eq!(gn.lines().next(), Some("lambda,ratio"));
    assert_eq!(gn.lines().count(), 3);
    assert!(plots.join("plot_gn_flat.csv").exists());
}

#[test]
fn plotdata_on_empty_dir_is_missing_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let o = gzk(&["plotdata", path(dir.path())]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).starts_with("E:missing-artifact:"), "{}", stderr(&o));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn invalid_thread_cap_is_config_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_gzk"))
        .args(["groundstate", "--N", "64"])
        .env("GZK_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("GZK_THREADS"));
}
