//! Acceptance suite: one line per criterion, then a single assertion
//! listing every failed criterion.

use std::process::Command;

use hyproj::verify;

#[test]
fn acceptance_criteria() {
    let results = verify::run_all(verify::seed_from_env());
    assert_eq!(results.len(), 13);
    let mut failed = Vec::new();
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{status}] {} - {}", r.index, r.name, r.detail);
        if !r.pass {
            failed.push(format!("criterion {} ({}): {}", r.index, r.name, r.detail));
        }
    }
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyproj"))
}

#[test]
fn cli_list_names_every_scenario() {
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for id in ["main-theorem", "closeness", "slopes", "logcos", "ex33", "ex34"] {
        assert!(text.contains(id), "missing {id} in list output");
    }
}

#[test]
fn cli_unknown_scenario_is_a_config_error() {
    let out = bin().args(["run", "no-such-scenario"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cli_rejects_unknown_config_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(
        &path,
        r#"{"map":{"kind":"affine","a":2.0,"b":[0.0,0.0]},"z":[1.0,0.0],"n_range":[0,5],"frobnicate":true}"#,
    )
    .unwrap();
    let out = bin()
        .args(["run", "total-speed", "--config"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("frobnicate"), "{err}");
}

#[test]
fn cli_run_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&a, &b] {
        let out = bin()
            .args(["run", "main-theorem", "--n-max", "12", "--csv"])
            .arg(path)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (ba, bb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!ba.is_empty());
    assert_eq!(ba, bb, "repeated runs must write byte-identical CSV");
    let text = String::from_utf8(ba).unwrap();
    assert!(text.starts_with("n,re_z,im_z,t_star,re_pi,im_pi,dist_w_pi,delta\n"));
    assert!(!text.contains('\r'));
}

#[test]
fn cli_plot_is_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plot.svg");
    let out = bin()
        .args(["run", "total-speed", "--n-max", "10", "--plot"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn cli_tangential_scenario_exits_zero() {
    let out = bin().args(["run", "ex34"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
