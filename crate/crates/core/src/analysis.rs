//! Implied pi, certified relative errors and rankings across catalog rules.
//!
//! Errors are signed, `(approximation - truth) / truth` in percent, so a
//! positive interval means the rule leaves a surplus. Circle-from-square rules
//! are scored on area: the constructed circle's area against the square's.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, CatalogError, Rule, RuleKind, RuleOutput};
use crate::exactreal::{
    pi_enclosure, ConstructibleReal, Dyadic, ExactError, Interval, Quantity, PI_CAPACITY_BITS,
};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("rule `{rule}` ({kind}) has no pi interpretation")]
    NotApplicable { rule: String, kind: RuleKind },
    #[error("error interval for `{rule}` is {width} percent wide, above the reporting bound")]
    WidthUnattained { rule: String, width: String },
    #[error("no applicable rules to compare")]
    Empty,
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// What a rule's error is measured on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Area,
    Circumference,
    Length,
}

impl Basis {
    pub fn of(kind: RuleKind) -> Basis {
        match kind {
            RuleKind::CircleFromSquare | RuleKind::SquareFromCircle | RuleKind::Doubling => {
                Basis::Area
            }
            RuleKind::Circumference => Basis::Circumference,
            RuleKind::InscribedSquare | RuleKind::Constant | RuleKind::Hypotenuse => Basis::Length,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Basis::Area => "area",
            Basis::Circumference => "circumference",
            Basis::Length => "length",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RuleReport {
    pub rule_id: &'static str,
    pub kind: RuleKind,
    pub citation: &'static str,
    pub basis: Basis,
    pub reconstruction: bool,
    pub implied_pi: Option<ConstructibleReal>,
    pub implied_pi_enclosure: Option<Interval>,
    pub relative_error_percent: Interval,
    pub claimed_enclosure: Interval,
    pub actual_enclosure: Interval,
}

/// The real part of one quantity over the pi coefficient of the other.
fn pi_ratio(rule: &Rule, out: &RuleOutput) -> Result<ConstructibleReal, AnalysisError> {
    let pair = |real: &Quantity, pi: &Quantity| -> Option<(ConstructibleReal, ConstructibleReal)> {
        let r = real.as_real()?.clone();
        (pi.c0().is_zero() && !pi.c1().is_zero()).then(|| (r, pi.c1().clone()))
    };
    let (num, den) = pair(&out.claimed, &out.actual)
        .or_else(|| pair(&out.actual, &out.claimed))
        .ok_or_else(|| not_applicable(rule))?;
    Ok(num.try_div(&den)?)
}

fn not_applicable(rule: &Rule) -> AnalysisError {
    AnalysisError::NotApplicable {
        rule: rule.id.to_string(),
        kind: rule.kind,
    }
}

/// Exact implied value of pi for the rule at unit input.
///
/// Circumference rules give `claimed / d`; circle-from-square rules `1 / r^2`
/// for the unit square; square-from-circle rules `4 side^2 / d^2`.
pub fn implied_pi(rule: &Rule) -> Result<ConstructibleReal, AnalysisError> {
    implied_pi_at(rule, &ConstructibleReal::one())
}

/// Implied pi from the construction at input `size`; equal for every size.
pub fn implied_pi_at(
    rule: &Rule,
    size: &ConstructibleReal,
) -> Result<ConstructibleReal, AnalysisError> {
    if !rule.kind.has_pi() {
        return Err(not_applicable(rule));
    }
    let out = rule.construct(size)?;
    pi_ratio(rule, &out)
}

pub fn implied_pi_by_id(id: &str) -> Result<ConstructibleReal, AnalysisError> {
    implied_pi(catalog::find(id)?)
}

fn guard_bits(p: u32) -> u32 {
    (p + 16).min(PI_CAPACITY_BITS)
}

fn percent(x: &Interval) -> Interval {
    x.mul(&Interval::point(Dyadic::from_int(100), x.precision_bits()))
}

/// Error of an approximation against an exact constructible truth, in percent.
fn exact_error(
    approx: &ConstructibleReal,
    truth: &ConstructibleReal,
) -> Result<ConstructibleReal, ExactError> {
    approx
        .try_sub(truth)?
        .try_div(truth)
        .map(|e| e.scale(&num_rational::BigRational::from_integer(100.into())))
}

fn error_interval(rule: &Rule, out: &RuleOutput, p: u32) -> Result<Interval, AnalysisError> {
    let g = guard_bits(p);
    let interval = match rule.kind {
        RuleKind::Circumference | RuleKind::SquareFromCircle | RuleKind::CircleFromSquare => {
            let implied = pi_ratio(rule, out)?.enclose(g);
            let pi = pi_enclosure(g)?;
            let ratio = if rule.kind == RuleKind::CircleFromSquare {
                // actual area / square area = pi / implied
                pi.div(&implied, g as u64)
            } else {
                implied.div(&pi, g as u64)
            }
            .expect("pi and implied pi are positive");
            let one = Interval::point(Dyadic::from_int(1), g);
            percent(&ratio.sub(&one)).round_outward(g as u64)
        }
        RuleKind::InscribedSquare | RuleKind::Constant | RuleKind::Hypotenuse => {
            let (a, t) = (real_of(rule, &out.claimed)?, real_of(rule, &out.actual)?);
            exact_error(a, t)?.enclose(p)
        }
        RuleKind::Doubling => {
            let (a, t) = (real_of(rule, &out.actual)?, real_of(rule, &out.claimed)?);
            exact_error(a, t)?.enclose(p)
        }
    };
    Ok(interval.with_precision(p))
}

fn real_of<'a>(rule: &Rule, q: &'a Quantity) -> Result<&'a ConstructibleReal, AnalysisError> {
    q.as_real().ok_or_else(|| not_applicable(rule))
}

/// Certified enclosure of the signed relative error in percent.
pub fn relative_error(rule: &Rule, precision_bits: u32) -> Result<Interval, AnalysisError> {
    let out = rule.construct_unit()?;
    error_interval(rule, &out, precision_bits)
}

pub fn relative_error_by_id(id: &str, precision_bits: u32) -> Result<Interval, AnalysisError> {
    relative_error(catalog::find(id)?, precision_bits)
}

/// Widest error interval (in percent) a report accepts at `p` bits:
/// `100 * 2^(8-p)`, i.e. far below `10^-6` percent from 128 bits on.
pub fn reporting_width(p: u32) -> Dyadic {
    Dyadic::from_int(100).shl(8 - p as i64)
}

pub fn report(rule: &Rule, precision_bits: u32) -> Result<RuleReport, AnalysisError> {
    let p = precision_bits;
    let out = rule.construct_unit()?;
    let relative_error_percent = error_interval(rule, &out, p)?;
    let width = relative_error_percent.width();
    if width > reporting_width(p) {
        return Err(AnalysisError::WidthUnattained {
            rule: rule.id.to_string(),
            width: width.to_string(),
        });
    }
    let implied = if rule.kind.has_pi() {
        Some(pi_ratio(rule, &out)?)
    } else {
        None
    };
    Ok(RuleReport {
        rule_id: rule.id,
        kind: rule.kind,
        citation: rule.citation,
        basis: Basis::of(rule.kind),
        reconstruction: rule.reconstruction,
        implied_pi_enclosure: implied.as_ref().map(|v| v.enclose(p)),
        implied_pi: implied,
        relative_error_percent,
        claimed_enclosure: out.claimed.enclose(p.min(PI_CAPACITY_BITS))?,
        actual_enclosure: out.actual.enclose(p.min(PI_CAPACITY_BITS))?,
    })
}

/// Reports for the given rules, ordered by `|error|` midpoint (ties by id).
pub fn compare_rules(ids: &[&str], precision_bits: u32) -> Result<Vec<RuleReport>, AnalysisError> {
    if ids.is_empty() {
        return Err(AnalysisError::Empty);
    }
    let mut reports = ids
        .iter()
        .map(|id| report(catalog::find(id)?, precision_bits))
        .collect::<Result<Vec<_>, _>>()?;
    sort_by_error(&mut reports);
    Ok(reports)
}

pub fn sort_by_error(reports: &mut [RuleReport]) {
    reports.sort_by(|a, b| {
        let ma = a.relative_error_percent.midpoint().abs();
        let mb = b.relative_error_percent.midpoint().abs();
        ma.cmp(&mb).then_with(|| a.rule_id.cmp(b.rule_id))
    });
}

/// One report per catalog rule, in catalog order.
pub fn paper_table(precision_bits: u32) -> Result<Vec<RuleReport>, AnalysisError> {
    catalog::catalog()
        .iter()
        .map(|r| report(r, precision_bits))
        .collect()
}

#[derive(Serialize)]
pub struct ImpliedPiRow {
    pub exact: Option<String>,
    pub lo: String,
    pub hi: String,
}

#[derive(Serialize)]
pub struct BoundsRow {
    pub lo: String,
    pub hi: String,
}

/// JSON shape of a report; all numbers are decimal strings rounded outward.
#[derive(Serialize)]
pub struct ReportRow {
    pub rule_id: String,
    pub kind: String,
    pub citation: String,
    pub implied_pi: Option<ImpliedPiRow>,
    pub relative_error_percent: BoundsRow,
    pub basis: String,
    pub reconstruction_flag: bool,
    pub claimed: BoundsRow,
    pub actual: BoundsRow,
}

fn bounds(iv: &Interval, digits: u32) -> BoundsRow {
    let (lo, hi) = iv.to_decimal_bounds(digits);
    BoundsRow { lo, hi }
}

impl RuleReport {
    pub fn to_row(&self, digits: u32) -> ReportRow {
        ReportRow {
            rule_id: self.rule_id.to_string(),
            kind: self.kind.as_str().to_string(),
            citation: self.citation.to_string(),
            implied_pi: self
                .implied_pi
                .as_ref()
                .zip(self.implied_pi_enclosure.as_ref())
                .map(|(v, iv)| {
                    let (lo, hi) = iv.to_decimal_bounds(digits);
                    ImpliedPiRow {
                        exact: Some(v.to_string()),
                        lo,
                        hi,
                    }
                }),
            relative_error_percent: bounds(&self.relative_error_percent, digits),
            basis: self.basis.as_str().to_string(),
            reconstruction_flag: self.reconstruction,
            claimed: bounds(&self.claimed_enclosure, digits),
            actual: bounds(&self.actual_enclosure, digits),
        }
    }
}

/// Fixed-width ASCII table, one row per report. Inexact decimals end in `...`.
pub fn format_table(reports: &[RuleReport], digits: u32) -> String {
    let header = [
        "rule_id",
        "kind",
        "implied_pi",
        "error_percent",
        "actual",
        "flags",
    ];
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            let pi = match (&r.implied_pi, &r.implied_pi_enclosure) {
                (Some(v), _) if v.as_rational().is_some() => v.to_string(),
                (Some(v), _) => v.to_decimal(digits),
                _ => "-".to_string(),
            };
            let (lo, hi) = r.relative_error_percent.to_decimal_bounds(digits);
            let err = format!("[{lo}, {hi}]");
            let actual = midpoint_decimal(&r.actual_enclosure, digits);
            let flags = if r.reconstruction {
                "reconstruction"
            } else {
                ""
            };
            [
                r.rule_id.to_string(),
                r.kind.as_str().to_string(),
                pi,
                err,
                actual,
                flags.to_string(),
            ]
            .map(|cell| cell.replace('…', "..."))
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            s.push_str(&" ".repeat(w - cell.chars().count()));
        }
        s.trim_end().to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    let rules: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&line(rules.iter().map(String::as_str).collect()));
    out.push('\n');
    for row in &rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

fn midpoint_decimal(iv: &Interval, digits: u32) -> String {
    let (lo, hi) = iv.to_decimal_bounds(digits);
    if lo == hi {
        lo
    } else {
        format!(
            "{}…",
            iv.midpoint()
                .to_decimal(digits, crate::exactreal::Rounding::Down)
        )
    }
}
