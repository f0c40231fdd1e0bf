use std::path::PathBuf;
use std::process::{Command, Output};

fn sulva(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sulva"))
        .args(args)
        .env_remove("SULVA_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/examples")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn catalog_lists_rules_with_citations() {
    let o = sulva(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("10.3.2.13 / 11.13"));
    assert!(text.lines().any(|l| l.starts_with("gupta ")));

    let o = sulva(&["catalog", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(rows
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["id"] == "manava_dani"));
}

#[test]
fn analyze_all_covers_the_catalog() {
    let o = sulva(&["analyze", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = stdout(&o).lines().skip(2).count();
    assert!(rows >= 13, "{rows} rows");
}

#[test]
fn analyze_single_rule() {
    let o = sulva(&["analyze", "manava_16_5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("16/5"));
}

#[test]
fn analyze_json_schema() {
    let o = sulva(&["analyze", "gupta", "hypotenuse", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for key in [
        "rule_id",
        "kind",
        "citation",
        "implied_pi",
        "relative_error_percent",
        "basis",
        "reconstruction_flag",
    ] {
        assert!(rows.iter().all(|r| r.get(key).is_some()), "missing {key}");
    }
    let gupta = &rows[0];
    assert_eq!(gupta["rule_id"], "gupta");
    assert_eq!(gupta["implied_pi"]["exact"], "25/8");
    assert_eq!(gupta["basis"], "area");
    assert!(rows[1]["implied_pi"].is_null());
}

#[test]
fn rank_orders_by_error() {
    let o = sulva(&[
        "analyze",
        "manava_vangelder",
        "gupta",
        "manava_dani",
        "--rank",
    ]);
    let ids: Vec<String> = stdout(&o)
        .lines()
        .skip(2)
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect();
    assert_eq!(ids, ["gupta", "manava_dani", "manava_vangelder"]);
}

#[test]
fn unknown_rule_is_a_usage_error() {
    let o = sulva(&["analyze", "no_such_rule"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no_such_rule"));
}

#[test]
fn run_example_script() {
    let o = sulva(&["run", &example("dani_circle.sulva")]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn failing_assertion_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.sulva");
    std::fs::write(&path, "let a = sqrt(2);\nassert mul(a, a) == 3;\n").unwrap();
    let o = sulva(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:1: error: assertion failed"));
}

#[test]
fn parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.sulva");
    std::fs::write(&path, "let a = nosuch(1);\n").unwrap();
    let o = sulva(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:9: error: unknown name"));
}

#[test]
fn missing_script_exits_two() {
    let o = sulva(&["run", "/definitely/not/here.sulva"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn run_svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    for p in [&a, &b] {
        let o = sulva(&[
            "run",
            &example("dani_circle.sulva"),
            "--svg",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn render_dani_has_eight_markers() {
    let o = sulva(&["render", "manava_dani"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("class=\"marker\"").count(), 8);
}

#[test]
fn render_baudhayana_draws_square_and_circle() {
    let svg = stdout(&sulva(&["render", "baudhayana", "--size", "3/2"]));
    assert!(svg.contains("class=\"square\""));
    assert!(svg.contains("class=\"circle\""));
}

#[test]
fn render_is_byte_identical() {
    let a = sulva(&["render", "manava_dani", "--grid"]).stdout;
    let b = sulva(&["render", "manava_dani", "--grid"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn render_rejects_bad_size() {
    assert_eq!(
        sulva(&["render", "gupta", "--size", "x"]).status.code(),
        Some(2)
    );
}

#[test]
fn precision_flag_overrides_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_sulva"));
        cmd.env_remove("SULVA_PRECISION_BITS");
        if let Some(v) = env {
            cmd.env("SULVA_PRECISION_BITS", v);
        }
        if let Some(v) = flag {
            cmd.args(["--precision-bits", v]);
        }
        cmd.args(["analyze", "gupta", "--digits", "20"]);
        stdout(&cmd.output().unwrap())
    };
    let coarse = run(None, Some("16"));
    let fine = run(None, Some("128"));
    assert_ne!(coarse, fine);
    assert_eq!(run(Some("16"), None), coarse);
    assert_eq!(run(Some("16"), Some("128")), fine);
    assert_eq!(run(None, None), fine);
}

#[test]
fn out_of_range_precision_is_rejected() {
    assert_eq!(
        sulva(&["--precision-bits", "4", "catalog"]).status.code(),
        Some(2)
    );
}
