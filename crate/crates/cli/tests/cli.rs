use std::path::Path;
use std::process::{Command, Output};

fn lrk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrk"))
        .args(args)
        .env_remove("LRK_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows keyed by header, skipping the comment lines.
fn rows(csv: &str) -> Vec<Vec<(String, String)>> {
    let body: String = csv.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    reader
        .records()
        .map(|r| header.iter().cloned().zip(r.unwrap().iter().map(String::from)).collect())
        .collect()
}

fn field<'a>(row: &'a [(String, String)], name: &str) -> &'a str {
    &row.iter().find(|(k, _)| k == name).unwrap().1
}

fn num(row: &[(String, String)], name: &str) -> f64 {
    field(row, name).parse().unwrap()
}

#[test]
fn ground_reports_ising_charge() {
    let out = lrk(&["ground", "--n", "256", "--alpha", "30", "--mu", "1", "--l-range", "8,12,16,24,32"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# version: lrk "));
    let config = lines.next().unwrap().strip_prefix("# config: ").unwrap();
    let config: serde_json::Value = serde_json::from_str(config).unwrap();
    assert_eq!(config["subcommand"], "ground");
    assert_eq!(config["n"], 256);
    let rows = rows(&text);
    assert_eq!(rows.len(), 6);
    let fit = rows.last().unwrap();
    assert_eq!(field(fit, "record"), "fit");
    assert!((num(fit, "c_eff") - 0.5).abs() < 0.05);
}

#[test]
fn gapped_ground_state_has_zero_charge() {
    let out = lrk(&["ground", "--n", "128", "--mu", "2", "--delta", "0", "--l-range", "4,8,16,32"]);
    assert!(out.status.success());
    let rows = rows(&stdout(&out));
    assert!(num(rows.last().unwrap(), "c_eff").abs() < 1e-6);
}

#[test]
fn invalid_config_is_reported_together() {
    let out = lrk(&["phase-plot", "--n", "7", "--measure", "tmi", "--mu-grid", "1:0:3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("even"), "{err}");
    assert!(err.contains("tmi"), "{err}");
    assert!(err.contains("--mu-grid"), "{err}");
}

#[test]
fn bad_worker_env_is_a_config_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_lrk"))
        .args(["ground", "--n", "64", "--l-range", "4,6,8,12"])
        .env("LRK_WORKERS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quench_sweep_rows_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: &str| {
        let path = dir.path().join(name);
        let out = lrk(&[
            "quench-sweep", "--n", "300", "--alpha", "2", "--mu-i", "1", "--delta-i", "1",
            "--mu-f", "0.9,1.0,1.1", "--delta-f", "1", "--l", "20", "--workers", workers,
            "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read_to_string(path).unwrap()
    };
    let a = run("a.csv", "1");
    let b = run("b.csv", "1");
    let c = run("c.csv", "2");
    assert_eq!(a, b);
    // the worker count is echoed in the header, the data must agree
    let strip = |s: &str| s.lines().skip(2).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&c));

    let rows = rows(&a);
    assert_eq!(rows.len(), 3);
    let null = &rows[1];
    assert_eq!(num(null, "mu_f"), 1.0);
    assert!(num(null, "n_soft").abs() < 1e-12);
    for row in &rows {
        let gap = num(row, "logneg_upper") - num(row, "logneg_norm");
        assert!((gap - 0.5 * 2f64.ln()).abs() < 1e-12);
        assert!(num(row, "mutual_info") > 0.0);
        assert!(!field(row, "tmi").is_empty());
    }
}

#[test]
fn phase_plot_schema() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("phase.csv");
    let json_path = dir.path().join("phase.json");
    let out = lrk(&[
        "phase-plot", "--n", "200", "--alpha", "1", "--mu-grid", "0.5:1.5:3", "--delta-grid", "-1:1:3",
        "--l-range", "4,6,8,12", "--measure", "negativity",
        "--out", csv_path.to_str().unwrap(), "--json", json_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "alpha,mu_i,delta_i,mu_f,delta_f,measure,c_eff,r_squared,flag");
    let rows = rows(&text);
    assert_eq!(rows.len(), 9);
    assert_eq!(num(&rows[0], "mu_f"), 0.5);
    assert_eq!(num(&rows[0], "delta_f"), -1.0);
    assert_eq!(num(&rows[1], "delta_f"), 0.0);
    for row in &rows {
        assert_eq!(field(row, "measure"), "negativity");
        assert!(["ok", "low_confidence"].contains(&field(row, "flag")));
        let r2 = num(row, "r_squared");
        assert!((0.0..=1.0).contains(&r2));
    }
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json_path).unwrap()).unwrap();
    assert_eq!(summary["cells"], 9);
}

#[test]
fn oracle_check_passes() {
    let out = lrk(&["oracle-check", "--n", "6", "--samples", "50"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = rows(&stdout(&out));
    assert!(rows.iter().all(|r| field(r, "status") == "PASS"));
    let bound = rows.iter().find(|r| field(r, "check") == "negativity_bound").unwrap();
    assert_eq!(num(bound, "samples"), 50.0);
}

#[test]
fn corrupted_layout_fails_oracle() {
    let out = lrk(&["oracle-check", "--n", "4", "--samples", "10", "--corrupt-sign"]);
    assert_eq!(out.status.code(), Some(4));
    let rows = rows(&stdout(&out));
    let herm = rows.iter().find(|r| field(r, "check") == "hermiticity").unwrap();
    assert_eq!(field(herm, "status"), "FAIL");
}

#[test]
fn unwritable_output_is_reported() {
    let out = lrk(&["ground", "--n", "64", "--l-range", "4,6,8,12", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!Path::new("/nonexistent/dir/x.csv").exists());
}
