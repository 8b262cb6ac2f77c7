use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn subdqi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subdqi")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn masks() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../masks/loop-equivalent.json")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn regular_weights_print_exact_fractions() {
    let o = subdqi(&["weights", "--scheme", "cc", "--valence", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for frac in ["(100/9)", "(-40/9)", "(5/9)", "(16/9)", "(-2/9)", "(1/36)"] {
        assert!(text.contains(frac), "{frac} missing from\n{text}");
    }
    let o = subdqi(&["weights", "--scheme", "loop", "--valence", "6"]);
    let text = stdout(&o);
    for frac in ["(31/6)", "(-8/9)", "(-1/36)", "(2/9)"] {
        assert!(text.contains(frac), "{frac} missing from\n{text}");
    }
}

#[test]
fn weights_as_json() {
    let o = subdqi(&["weights", "--scheme", "mloop", "--masks", path(&masks()), "--valence", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let w = v["weights"].as_array().unwrap();
    assert_eq!(w.len(), 4);
    assert!((w[2].as_f64().unwrap() + 0.0439239926747637).abs() < 1e-12);
}

#[test]
fn invalid_input_exits_with_one() {
    for args in [
        &["weights", "--scheme", "bogus", "--valence", "4"][..],
        &["weights", "--scheme", "mloop", "--valence", "5"],
        &["weights", "--scheme", "cc", "--valence", "13"],
        &["convergence", "--scheme", "cc", "--levels", "3,2"],
        &["convergence", "--scheme", "cc", "--depth", "0"],
        &["project", "--scheme", "cc", "--gen", "tri:5"],
        &["project", "--scheme", "cc", "--function", "nope"],
    ] {
        assert_eq!(subdqi(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn non_finite_function_values_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let mut obj = String::new();
    for y in 0..6 {
        for x in 0..6 {
            obj += &format!("v {x}e200 {y}e200 0\n");
        }
    }
    for y in 0..5 {
        for x in 0..5 {
            let a = y * 6 + x + 1;
            obj += &format!("f {a} {} {} {}\n", a + 1, a + 7, a + 6);
        }
    }
    let mesh = dir.path().join("huge.obj");
    std::fs::write(&mesh, obj).unwrap();
    let o = subdqi(&["project", "--scheme", "cc", "--mesh", path(&mesh), "--function", "xy", "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passes() {
    let o = subdqi(&["verify", "--min-valence", "3", "--max-valence", "9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("checks passed"));
    let o = subdqi(&["verify", "--scheme", "mloop", "--masks", path(&masks()), "--max-valence", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn project_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = subdqi(&["project", "--scheme", "loop", "--valence", "5", "--function", "one", "--functionals", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("coefficients.json")).unwrap()).unwrap();
    for c in doc["coefficients"].as_array().unwrap() {
        if let Some(c) = c.as_f64() {
            assert!((c - 1.0).abs() < 1e-12);
        }
    }
    let functionals: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("functionals.json")).unwrap()).unwrap();
    assert_eq!(functionals["functionals"][0]["provenance"]["kind"], "ClosedFormEp");
    let obj = std::fs::read_to_string(out.join("fitted.obj")).unwrap();
    assert!(obj.lines().any(|l| l.starts_with("f ")));
}

#[test]
fn convergence_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = subdqi(&["convergence", "--scheme", "cc", "--valence", "5", "--levels", "1..2", "--depth", "1", "--out", path(&out)]);
        assert_eq!(o.status.code(), Some(0));
        (std::fs::read(out.join("convergence.csv")).unwrap(), std::fs::read(out.join("convergence.json")).unwrap())
    };
    let (csv, json) = run("a");
    assert_eq!(run("b"), (csv.clone(), json));
    let csv = String::from_utf8(csv).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "level,h,E2,Einf,order2,orderInf");
    assert_eq!(lines.len(), 3);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"scheme": "cc", "valence": 4, "levels": [1, 2], "depth": 1}"#).unwrap();
    let o = subdqi(&["convergence", "--config", path(&cfg)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("level,h,E2,Einf,order2,orderInf\n1,"));

    std::fs::write(&cfg, r#"{"scheme": "cc", "colour": "red"}"#).unwrap();
    assert_eq!(subdqi(&["weights", "--config", path(&cfg)]).status.code(), Some(1));
}
