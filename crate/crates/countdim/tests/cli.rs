use std::path::PathBuf;
use std::process::{Command, Output};

fn countdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_countdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> serde_json::Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str(err.trim()).unwrap_or_else(|e| panic!("{e}: {err}"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("countdim-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn xsdim_prints_the_dimension_series() {
    let o = countdim(&["xsdim", "curve=x1 - x0^2", "s_max=5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "s,dim\n1,1\n2,1\n3,2\n4,2\n5,3\n");
}

#[test]
fn params_are_written_to_the_output_directory() {
    let dir = scratch("params");
    let o = countdim(&["params", "d_max=4", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.join("params.csv")).unwrap();
    assert!(csv.lines().any(|l| l == "2,8,15,8,15"), "{csv}");
}

#[test]
fn malformed_polynomial_exits_with_usage_error() {
    let o = countdim(&["xsdim", "curve=x1 - * x0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr_json(&o);
    assert_eq!(err["error"], "parse");
    assert_eq!(err["param"], "curve");
    assert_eq!(err["pos"], 5);
}

#[test]
fn usage_errors() {
    assert_eq!(countdim(&[]).status.code(), Some(2));
    assert_eq!(countdim(&["frobnicate"]).status.code(), Some(2));
    let o = countdim(&["xsdim", "s_max"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "usage");
}

#[test]
fn seeded_runs_are_byte_identical() {
    let run = |seed: &str, name: &str| {
        let dir = scratch(name);
        let o = countdim(&[
            "detmethod",
            "trials=3",
            "--seed",
            seed,
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(dir.join("detmethod.json")).unwrap()
    };
    assert_eq!(run("17", "det-a"), run("17", "det-b"));
    assert_ne!(run("17", "det-c"), run("18", "det-d"));
}

#[test]
fn config_files_and_overrides() {
    let dir = scratch("config");
    let cfg = dir.join("xs.json");
    std::fs::write(
        &cfg,
        r#"{"subcommand": "xsdim", "params": {"curve": "x1 - x0^3", "s_max": 4}, "seed": 1}"#,
    )
    .unwrap();
    let o = countdim(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(stdout(&o), "s,dim\n1,1\n2,1\n3,1\n4,2\n");
    let o = countdim(&["--config", cfg.to_str().unwrap(), "xsdim", "s_max=2"]);
    assert_eq!(stdout(&o), "s,dim\n1,1\n2,1\n");
    let o = countdim(&["--config", cfg.to_str().unwrap(), "params"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&cfg, "{\"subcommand\": \"xsdim\",\n \"parms\": {}}").unwrap();
    let o = countdim(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr_json(&o)["message"]
        .as_str()
        .unwrap()
        .contains("line 2"));
}

#[test]
fn curve_files() {
    let dir = scratch("curve");
    let curve = dir.join("adv.json");
    std::fs::write(
        &curve,
        r#"{"kind": "algebraic", "f": "vars x, y; y - x^2"}"#,
    )
    .unwrap();
    let o = countdim(&[
        "cdim",
        &format!("curve={}", curve.display()),
        "s_max=3",
        "e_div=2",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let dir2 = scratch("curve-out");
    let o = countdim(&[
        "cdim",
        &format!("curve={}", curve.display()),
        "s_max=3",
        "--out",
        dir2.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(dir2.join("cdim.csv"))
        .unwrap()
        .starts_with("s,e,xs_dim,fiber\n"));
}

#[test]
fn budget_overrun_exits_with_three() {
    let o = countdim(&[
        "hilbert",
        r#"ideal=["x0^2 - x1*x2", "x1^2 - x0*x2", "x2^2 - x0*x1"]"#,
        "budget=0",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr_json(&o)["error"], "budget_exceeded");
}

#[test]
fn verify_reports_a_corrupted_golden_file() {
    let dir = scratch("golden");
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden");
    for f in ["params.csv", "xsdim.csv"] {
        std::fs::copy(src.join(f), dir.join(f)).unwrap();
    }
    let golden = format!("golden_dir={}", dir.display());
    let o = countdim(&["verify", "only=golden", &golden]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    std::fs::write(
        dir.join("params.csv"),
        "d,V,e,ratio_num,ratio_den\n1,2,3,2,3\n2,8,16,1,2\n",
    )
    .unwrap();
    let o = countdim(&["verify", "only=golden", &golden]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains(r#"line 3: expected "2,8,16,1,2", got "2,8,15,8,15""#),
        "{}",
        stdout(&o)
    );
}

#[test]
fn verify_runs_selected_criteria() {
    let o = countdim(&["verify", "only=[1, 9]", "--strict"]);
    assert_eq!(o.status.code(), Some(0));
    let table = stdout(&o);
    assert!(
        table.contains("criterion-1") && table.contains("criterion-9"),
        "{table}"
    );
    assert!(table.ends_with("2 checks, 0 failed, 0 skipped\n"));
}
