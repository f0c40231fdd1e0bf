//! Acceptance run: one PASS/FAIL line per criterion at pinned tolerances.
//!
//! A stated decimal with `n` fractional digits is "contained" in an enclosure
//! when the enclosure meets `[v - 10^-n, v + 10^-n]`. Criteria listed in
//! `EXPECTED_FAILURES` are still evaluated and printed as FAIL; the run only
//! errors on failures outside that list, or if a listed one starts passing.

mod common;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use common::{encloses, expr, oracle, to_dyadic, within_cap};
use sulva_core::analysis::{
    self, compare_rules, implied_pi_at, implied_pi_by_id, relative_error_by_id,
};
use sulva_core::catalog::{self, pi_rules};
use sulva_core::exactreal::ExactError;
use sulva_core::geom::{distance_squared, Figure};
use sulva_core::script::{evaluate, format, parse};
use sulva_core::svg::{to_svg, RenderOptions};
use sulva_core::{ConstructibleReal as R, Interval, Quantity};

const BITS: u32 = 128;

/// The stated Baudhayana area 1.017307 is not the area of that construction
/// (1.0172524...); the one-decimal error check of the same criterion passes.
const EXPECTED_FAILURES: &[u32] = &[2];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn decimal(s: &str) -> (BigRational, BigRational) {
    let neg = s.starts_with('-');
    let body = s.trim_start_matches(['-', '+']);
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    let v = BigRational::new(format!("{int}{frac}").parse().unwrap(), scale.clone());
    (
        if neg { -v } else { v },
        BigRational::new(BigInt::one(), scale),
    )
}

/// Whether `iv` meets the unit-in-the-last-place band around `stated`.
fn contains_stated(iv: &Interval, stated: &str) -> bool {
    let (v, ulp) = decimal(stated);
    iv.lo().to_rational() <= &v + &ulp && &v - &ulp <= iv.hi().to_rational()
}

/// Both endpoints of `|iv|` round (half up) to `stated` at its decimals.
fn magnitude_rounds_to(iv: &Interval, stated: &str) -> bool {
    let (v, ulp) = decimal(stated);
    let round =
        |x: BigRational| ((x.abs() / &ulp) + BigRational::new(1.into(), 2.into())).floor() * &ulp;
    round(iv.lo().to_rational()) == v && round(iv.hi().to_rational()) == v
}

fn q(n: i64, d: i64) -> R {
    R::from_rational(n, d).unwrap()
}

fn abs_interval(iv: &Interval) -> Interval {
    if iv.lo().signum() >= 0 {
        iv.clone()
    } else if iv.hi().signum() <= 0 {
        iv.neg()
    } else {
        panic!("interval straddles zero: {iv}")
    }
}

fn criterion_1() -> Outcome {
    let pi = implied_pi_by_id("manava_16_5").unwrap();
    let err = relative_error_by_id("manava_16_5", BITS).unwrap();
    let width_ok = err.width().to_rational() < BigRational::new(1.into(), 10_000.into());
    let pass = pi == q(16, 5) && contains_stated(&err, "1.8592") && width_ok;
    outcome(pass, format!("implied pi {pi}, error {err:.10} %"))
}

fn criterion_2() -> Outcome {
    let rep = analysis::report(catalog::find("baudhayana").unwrap(), BITS).unwrap();
    let area_ok = contains_stated(&rep.actual_enclosure, "1.017307");
    let err_ok = magnitude_rounds_to(&rep.relative_error_percent, "1.7");
    outcome(
        area_ok && err_ok,
        format!(
            "area {:.10} contains 1.017307: {area_ok}; error {:.6} % rounds to 1.7: {err_ok}",
            rep.actual_enclosure, rep.relative_error_percent
        ),
    )
}

fn criterion_3() -> Outcome {
    let rep = analysis::report(catalog::find("manava_dani").unwrap(), BITS).unwrap();
    let area_ok = contains_stated(&rep.actual_enclosure, "0.99467");
    let err_ok = magnitude_rounds_to(&rep.relative_error_percent, "0.5");
    let out = catalog::find("manava_dani")
        .unwrap()
        .construct_unit()
        .unwrap();
    let center = sulva_core::geom::Point::origin();
    let d: Vec<R> = out
        .witness_points
        .iter()
        .map(|w| distance_squared(w, &center).unwrap())
        .collect();
    let equidistant = d.len() == 8 && d.iter().all(|x| x.try_sub(&d[0]).unwrap().sign() == 0);
    outcome(
        area_ok && err_ok && equidistant,
        format!(
            "area {:.8}, error {:.6} %, {} marks equidistant: {equidistant}",
            rep.actual_enclosure,
            rep.relative_error_percent,
            d.len()
        ),
    )
}

fn criterion_4() -> Outcome {
    let out = catalog::find("gupta").unwrap().construct_unit().unwrap();
    let area_ok = out.actual == Quantity::pi_multiple(q(8, 25)) && out.actual.c0().is_zero();
    let pi = implied_pi_by_id("gupta").unwrap();
    outcome(
        area_ok && pi == q(25, 8),
        format!("area {}, implied pi {pi}", out.actual),
    )
}

fn criterion_5() -> Outcome {
    let rep = analysis::report(catalog::find("manava_vangelder").unwrap(), BITS).unwrap();
    let above = rep.actual_enclosure.lo().to_rational() > BigRational::new(13.into(), 10.into());
    let near = contains_stated(&rep.actual_enclosure, "1.3262");
    outcome(
        above && near && rep.reconstruction,
        format!(
            "area {:.8} (> 1.30: {above}), reconstruction flag {}",
            rep.actual_enclosure, rep.reconstruction
        ),
    )
}

fn criterion_6() -> Outcome {
    let e12 = abs_interval(&relative_error_by_id("standard_12_17", BITS).unwrap());
    let e7 = abs_interval(&relative_error_by_id("manava_7_10", BITS).unwrap());
    let pass = e12.hi() < e7.lo();
    outcome(
        pass,
        format!("|err 12/17| {e12:.8} % < |err 7/10| {e7:.8} %"),
    )
}

fn criterion_7() -> Outcome {
    let a = implied_pi_by_id("rule_13_15").unwrap();
    let b = implied_pi_by_id("hayashi").unwrap();
    let four = BigRational::from_integer(4.into());
    let inaccurate = |id: &str| {
        abs_interval(&relative_error_by_id(id, BITS).unwrap())
            .lo()
            .to_rational()
            > four
    };
    let pass =
        a == q(676, 225) && b == q(3, 1) && inaccurate("rule_13_15") && inaccurate("hayashi");
    outcome(pass, format!("implied pi {a} and {b}, both |error| > 4 %"))
}

fn criterion_8() -> Outcome {
    let mut runner = TestRunner::new_with_rng(
        Config::with_cases(200),
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let mut draw = || loop {
        let e = expr().new_tree(&mut runner).unwrap().current();
        if let Some(x) = within_cap(&e) {
            return (e, x);
        }
    };
    let mut failures = Vec::new();
    let (mut identity, mut sound) = (0, 0);
    while identity < 200 {
        let (e, x) = draw();
        match x.square().sqrt() {
            Ok(r) if r == x.abs() => identity += 1,
            Err(ExactError::Capacity(_)) => continue,
            other => {
                failures.push(format!("sqrt(x^2) for {e:?}: {other:?}"));
                identity += 1;
            }
        }
        let o = to_dyadic(&oracle(&e));
        let mut prev: Option<Interval> = None;
        for p in [8u32, 16, 64, 256] {
            let iv = x.enclose(p);
            let nested = prev.as_ref().is_none_or(|pr| iv.is_subset_of(pr));
            if !encloses(&iv, &o) || !nested || !iv.meets_precision(p) {
                failures.push(format!("enclosure at {p} bits for {e:?}"));
            }
            prev = Some(iv);
        }
        sound += 1;
    }
    let mut axioms = 0;
    while axioms < 50 {
        let ((_, x), (_, y), (_, z)) = (draw(), draw(), draw());
        let check = || -> Result<bool, ExactError> {
            let mut ok = x.try_add(&y)? == y.try_add(&x)?
                && x.try_mul(&y.try_add(&z)?)? == x.try_mul(&y)?.try_add(&x.try_mul(&z)?)?
                && x.try_mul(&y)?.try_mul(&z)? == x.try_mul(&y.try_mul(&z)?)?;
            if !x.is_zero() {
                ok &= x.try_mul(&x.recip()?)? == R::one();
            }
            Ok(ok)
        };
        match check() {
            Ok(true) => axioms += 1,
            Ok(false) => {
                failures.push("field axiom".into());
                axioms += 1;
            }
            Err(_) => {}
        }
    }
    let mut scale = 0;
    for (n, d) in [(1, 1), (2, 1), (3, 1), (7, 2)] {
        for rule in pi_rules() {
            let unit = implied_pi_at(rule, &R::one()).unwrap();
            if implied_pi_at(rule, &q(n, d)).unwrap() != unit {
                failures.push(format!("scale {n}/{d} for {}", rule.id));
            }
            scale += 1;
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{identity} sqrt-square, {sound} oracle enclosure chains, {axioms} axiom triples, {scale} scale checks; failures: {failures:?}"
        ),
    )
}

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut paths: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "sulva"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| (p.display().to_string(), fs::read_to_string(&p).unwrap()))
        .collect()
}

fn criterion_9() -> Outcome {
    let scripts = corpus();
    let round_trip = scripts.iter().all(|(_, src)| {
        let ast = parse(src).unwrap();
        parse(&format(&ast)).unwrap().structurally_eq(&ast)
    });
    let k = 4;
    let bad = "let a = 1;\nlet b = f1(a);\nlet c = f2(b);\nlet d = f3(1, 2);\nlet e = f4();\n";
    let diag_count = parse(bad).err().map_or(0, |d| d.len());
    let deterministic = scripts.iter().all(|(_, src)| {
        let ast = parse(src).unwrap();
        evaluate(&ast).report() == evaluate(&ast).report()
    });
    outcome(
        scripts.len() >= 6 && round_trip && diag_count == k && deterministic,
        format!(
            "{} scripts round-trip: {round_trip}; {diag_count} diagnostics for {k} unknown names; deterministic: {deterministic}",
            scripts.len()
        ),
    )
}

fn attr(tag: &str, name: &str) -> f64 {
    let key = format!(" {name}=\"");
    let start = tag.find(&key).unwrap() + key.len();
    let end = start + tag[start..].find('"').unwrap();
    tag[start..end].parse().unwrap()
}

fn criterion_10() -> Outcome {
    let out = catalog::find("manava_dani")
        .unwrap()
        .construct_unit()
        .unwrap();
    let mut figures = out.figures.clone();
    figures.extend(out.witness_points.iter().cloned().map(Figure::Point));
    let opts = RenderOptions::default();
    let a = to_svg(&figures, &[], &opts).unwrap();
    let b = to_svg(&figures, &[], &opts).unwrap();
    let circle = a.lines().rfind(|l| l.starts_with("<circle")).unwrap();
    let (cx, cy, r) = (attr(circle, "cx"), attr(circle, "cy"), attr(circle, "r"));
    let markers: Vec<&str> = a
        .lines()
        .filter(|l| l.contains("class=\"marker\""))
        .collect();
    let worst = markers
        .iter()
        .map(|m| {
            let start = m.find("points=\"").unwrap() + 8;
            let pts: Vec<(f64, f64)> = m[start..m[start..].find('"').unwrap() + start]
                .split(' ')
                .map(|p| {
                    let (x, y) = p.split_once(',').unwrap();
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect();
            let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
            let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
            ((mx - cx).hypot(my - cy) - r).abs()
        })
        .fold(0.0, f64::max);
    let pass = a == b && markers.len() == 8 && worst <= 0.5;
    outcome(
        pass,
        format!(
            "identical bytes: {}, {} markers, worst offset {worst:.4} px",
            a == b,
            markers.len()
        ),
    )
}

fn criterion_11() -> Outcome {
    let ids: Vec<&str> = pi_rules().map(|r| r.id).collect();
    let order = |p: u32| -> Vec<&'static str> {
        compare_rules(&ids, p)
            .unwrap()
            .iter()
            .map(|r| r.rule_id)
            .collect()
    };
    let (o64, o128, o256) = (order(64), order(128), order(256));
    let pos = |id: &str| o128.iter().position(|x| *x == id).unwrap();
    let pass = o64 == o128 && o128 == o256 && pos("manava_dani") < pos("baudhayana");
    outcome(pass, format!("order {}", o128.join(" < ")))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let started = Instant::now();
    let criteria: [Criterion; 11] = [
        (1, "circumference 16/5", criterion_1),
        (2, "bisector circling, unit square", criterion_2),
        (3, "trisector marks (Dani)", criterion_3),
        (4, "four fifths radius (Gupta)", criterion_4),
        (5, "half chord reading (van Gelder)", criterion_5),
        (6, "inscribed square 12/17 vs 7/10", criterion_6),
        (7, "square from circle", criterion_7),
        (8, "exact arithmetic properties", criterion_8),
        (9, "script language", criterion_9),
        (10, "rendering", criterion_10),
        (11, "ranking stability", criterion_11),
    ];
    let mut unexpected = Vec::new();
    for (n, name, run) in criteria {
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {status}  {name}: {}", o.detail);
        let expected_fail = EXPECTED_FAILURES.contains(&n);
        if o.pass == expected_fail {
            unexpected.push(n);
        }
    }
    println!(
        "acceptance finished in {:.2} s",
        started.elapsed().as_secs_f64()
    );
    if unexpected.is_empty() {
        println!("all criteria behave as recorded (expected failures: {EXPECTED_FAILURES:?})");
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
