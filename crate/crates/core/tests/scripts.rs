use std::fs;
use std::path::PathBuf;

use sulva_core::script::{evaluate, format, parse, run, Value};
use sulva_core::svg::{to_svg, RenderOptions};

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "sulva"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&p).unwrap())
        })
        .collect()
}

#[test]
fn corpus_has_at_least_six_scripts() {
    let names: Vec<_> = corpus().into_iter().map(|(n, _)| n).collect();
    assert!(names.len() >= 6, "{names:?}");
    assert!(names.contains(&"dani_circle.sulva".to_string()));
}

#[test]
fn every_script_passes() {
    for (name, src) in corpus() {
        let ev = run(&src).unwrap_or_else(|d| panic!("{name}: {d:?}"));
        assert!(ev.success(), "{name}: {:?}", ev.diagnostics);
        assert!(!ev.assertions.is_empty(), "{name} asserts nothing");
        assert!(ev.assertions.iter().all(|a| a.passed));
    }
}

#[test]
fn format_round_trips() {
    for (name, src) in corpus() {
        let ast = parse(&src).unwrap();
        let printed = format(&ast);
        let again = parse(&printed).unwrap();
        assert!(again.structurally_eq(&ast), "{name}");
        assert_eq!(
            format(&again),
            printed,
            "{name}: formatting is not a fixed point"
        );
    }
}

#[test]
fn evaluation_is_deterministic() {
    for (name, src) in corpus() {
        let ast = parse(&src).unwrap();
        let (a, b) = (evaluate(&ast), evaluate(&ast));
        assert_eq!(a.report(), b.report(), "{name}");
        let (fa, la) = a.render_input();
        let (fb, lb) = b.render_input();
        if !fa.is_empty() {
            let opts = RenderOptions::default();
            assert_eq!(
                to_svg(&fa, &la, &opts).unwrap(),
                to_svg(&fb, &lb, &opts).unwrap()
            );
        }
    }
}

#[test]
fn dani_script_matches_catalog_marks() {
    let src = corpus()
        .into_iter()
        .find(|(n, _)| n == "dani_circle.sulva")
        .unwrap()
        .1;
    let ev = run(&src).unwrap();
    let marks: Vec<_> = (1..=8)
        .map(|i| match ev.value(&format!("m{i}")) {
            Some(Value::Point(p)) => p.clone(),
            other => panic!("m{i}: {other:?}"),
        })
        .collect();
    let rule = sulva_core::catalog::find("manava_dani").unwrap();
    let witnesses = rule.construct_unit().unwrap().witness_points;
    for w in &witnesses {
        assert!(marks.contains(w), "catalog mark {w:?} missing from script");
    }
    let (figures, _) = ev.render_input();
    let svg = to_svg(&figures, &[], &RenderOptions::default()).unwrap();
    assert_eq!(svg.matches("class=\"marker\"").count(), 8);
}

#[test]
fn k_unknown_names_give_k_diagnostics() {
    for k in 1..=6 {
        let mut src = String::from("let base = 1;\n");
        for i in 0..k {
            src.push_str(&format!("let v{i} = nosuch{i}(base);\n"));
        }
        src.push_str("let ok = add(base, 1);\n");
        let diags = parse(&src).unwrap_err();
        assert_eq!(diags.len(), k);
        assert!(diags.iter().all(|d| d.message.starts_with("unknown name")));
        for (i, d) in diags.iter().enumerate() {
            assert_eq!((d.line, d.column), (i as u32 + 2, 10));
        }
    }
}
