//! Straight-line evaluation over exact values.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::ast::{Expr, ExprKind, Pos, Relation, Script, StmtKind};
use super::format::format_expr;
use super::Diagnostic;
use crate::catalog::{self, InputKind, RuleOutput};
use crate::exactreal::{ConstructibleReal, ExactError, Interval, Quantity};
use crate::geom::{
    axis_line_circle_intersection, circle_area, circle_circumference_true, circumscribed_circle,
    distance_squared, divide_segment, square_area, trisector_lines, Axis, Circle, Figure, Point,
    Segment, Square,
};
use crate::svg::Label;

type R = ConstructibleReal;

/// Bits used for the enclosures shown when an assertion fails.
pub const ASSERTION_REPORT_BITS: u32 = 64;

#[derive(Clone, Debug)]
pub struct Construction {
    pub rule: &'static str,
    pub output: RuleOutput,
}

#[derive(Clone, Debug)]
pub enum Value {
    Number(R),
    Quantity(Quantity),
    Point(Point),
    Segment(Segment),
    Square(Square),
    Circle(Circle),
    List(Vec<Value>),
    Construction(Box<Construction>),
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Number(_) => "number",
            Value::Quantity(_) => "quantity",
            Value::Point(_) => "point",
            Value::Segment(_) => "segment",
            Value::Square(_) => "square",
            Value::Circle(_) => "circle",
            Value::List(_) => "list",
            Value::Construction(_) => "construction",
        }
    }

    fn from_quantity(q: Quantity) -> Value {
        match q.as_real() {
            Some(r) => Value::Number(r.clone()),
            None => Value::Quantity(q),
        }
    }

    fn from_figure(f: &Figure) -> Value {
        match f {
            Figure::Point(p) => Value::Point(p.clone()),
            Figure::Segment(s) => Value::Segment(s.clone()),
            Figure::Square(s) => Value::Square(s.clone()),
            Figure::Circle(c) => Value::Circle(c.clone()),
        }
    }

    /// Drawable figures, witness marks included as points.
    pub fn figures(&self) -> Vec<Figure> {
        match self {
            Value::Number(_) | Value::Quantity(_) => Vec::new(),
            Value::Point(p) => vec![Figure::Point(p.clone())],
            Value::Segment(s) => vec![Figure::Segment(s.clone())],
            Value::Square(s) => vec![Figure::Square(s.clone())],
            Value::Circle(c) => vec![Figure::Circle(c.clone())],
            Value::List(items) => items.iter().flat_map(Value::figures).collect(),
            Value::Construction(c) => {
                let mut f = c.output.figures.clone();
                f.extend(c.output.witness_points.iter().cloned().map(Figure::Point));
                f
            }
        }
    }

    /// Enclosure of a numeric value, for reports.
    pub fn enclosure(&self, bits: u32) -> Option<Interval> {
        match self {
            Value::Number(r) => Some(r.enclose(bits)),
            Value::Quantity(q) => q.enclose(bits).ok(),
            _ => None,
        }
    }
}

fn fmt_real(r: &R) -> String {
    if r.as_rational().is_some() {
        r.to_string()
    } else {
        format!("{r} ~ {}", r.to_decimal(12))
    }
}

fn fmt_point(p: &Point) -> String {
    format!("point({}, {})", p.x, p.y)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(r) => f.write_str(&fmt_real(r)),
            Value::Quantity(q) => match q.enclose(64) {
                Ok(iv) => write!(f, "{q} ~ {iv:.12}"),
                Err(_) => write!(f, "{q}"),
            },
            Value::Point(p) => f.write_str(&fmt_point(p)),
            Value::Segment(s) => write!(f, "segment({}, {})", fmt_point(s.a()), fmt_point(s.b())),
            Value::Square(s) => write!(f, "square({}, {})", fmt_point(s.center()), s.half_side()),
            Value::Circle(c) => write!(f, "circle({}, {})", fmt_point(c.center()), c.radius()),
            Value::List(items) => {
                f.write_str("[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            Value::Construction(c) => write!(
                f,
                "{}: {} figures, {} witness points, claimed {}, actual {}",
                c.rule,
                c.output.figures.len(),
                c.output.witness_points.len(),
                Value::from_quantity(c.output.claimed.clone()),
                Value::from_quantity(c.output.actual.clone()),
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AssertionResult {
    pub pos: Pos,
    pub text: String,
    pub passed: bool,
    pub lhs: Option<Interval>,
    pub rhs: Option<Interval>,
}

/// Everything an evaluation produced, in statement order.
#[derive(Clone, Debug, Default)]
pub struct Evaluation {
    pub bindings: Vec<(String, Value)>,
    pub emitted: Vec<(String, Value)>,
    pub assertions: Vec<AssertionResult>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Evaluation {
    /// True when there are no error diagnostics (failed assertions are errors).
    pub fn success(&self) -> bool {
        self.diagnostics.iter().all(|d| !d.is_error())
    }

    pub fn value(&self, name: &str) -> Option<&Value> {
        self.bindings
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }

    /// Plain-text report: bindings, assertion outcomes and emitted values.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for (name, v) in &self.bindings {
            out.push_str(&format!("{name} = {v}\n"));
        }
        for a in &self.assertions {
            let status = if a.passed { "ok" } else { "FAILED" };
            out.push_str(&format!("assert {} at {}: {status}\n", a.text, a.pos));
        }
        for (name, v) in &self.emitted {
            out.push_str(&format!("emit {name}: {}\n", v.type_name()));
        }
        out
    }

    /// Figures of all emitted values plus a label per emitted name.
    pub fn render_input(&self) -> (Vec<Figure>, Vec<Label>) {
        let mut figures = Vec::new();
        let mut labels = Vec::new();
        for (name, v) in &self.emitted {
            let figs = v.figures();
            if let Some(anchor) = figs.first().map(anchor_of) {
                labels.push(Label {
                    at: anchor,
                    text: name.clone(),
                });
            }
            figures.extend(figs);
        }
        (figures, labels)
    }
}

fn anchor_of(f: &Figure) -> Point {
    match f {
        Figure::Point(p) => p.clone(),
        Figure::Segment(s) => s.b().clone(),
        Figure::Square(s) => s
            .vertices()
            .map(|v| v[2].clone())
            .unwrap_or_else(|_| s.center().clone()),
        Figure::Circle(c) => c.center().clone(),
    }
}

#[derive(Debug)]
struct EvalError {
    pos: Pos,
    message: String,
}

fn err<T>(pos: Pos, message: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError {
        pos,
        message: message.into(),
    })
}

fn exact<T>(pos: Pos, r: Result<T, ExactError>) -> Result<T, EvalError> {
    r.map_err(|e| EvalError {
        pos,
        message: e.to_string(),
    })
}

struct Arg<'a> {
    value: &'a Value,
    pos: Pos,
}

impl Arg<'_> {
    fn mismatch<T>(&self, want: &str) -> Result<T, EvalError> {
        err(
            self.pos,
            format!("expected {want}, found {}", self.value.type_name()),
        )
    }

    fn num(&self) -> Result<&R, EvalError> {
        match self.value {
            Value::Number(r) => Ok(r),
            _ => self.mismatch("a number"),
        }
    }

    fn quantity(&self) -> Result<Quantity, EvalError> {
        match self.value {
            Value::Number(r) => Ok(Quantity::real(r.clone())),
            Value::Quantity(q) => Ok(q.clone()),
            _ => self.mismatch("a number or quantity"),
        }
    }

    fn point(&self) -> Result<&Point, EvalError> {
        match self.value {
            Value::Point(p) => Ok(p),
            _ => self.mismatch("a point"),
        }
    }

    fn segment(&self) -> Result<&Segment, EvalError> {
        match self.value {
            Value::Segment(s) => Ok(s),
            _ => self.mismatch("a segment"),
        }
    }

    fn square(&self) -> Result<&Square, EvalError> {
        match self.value {
            Value::Square(s) => Ok(s),
            _ => self.mismatch("a square"),
        }
    }

    fn circle(&self) -> Result<&Circle, EvalError> {
        match self.value {
            Value::Circle(c) => Ok(c),
            _ => self.mismatch("a circle"),
        }
    }

    fn construction(&self) -> Result<&Construction, EvalError> {
        match self.value {
            Value::Construction(c) => Ok(c),
            _ => self.mismatch("a construction"),
        }
    }

    fn list(&self) -> Result<&[Value], EvalError> {
        match self.value {
            Value::List(v) => Ok(v),
            _ => self.mismatch("a list"),
        }
    }

    fn index(&self) -> Result<usize, EvalError> {
        let n = self.num()?;
        n.as_rational()
            .filter(|q| q.denom().is_one())
            .and_then(|q| q.numer().to_usize())
            .map_or_else(|| err(self.pos, "expected a nonnegative integer"), Ok)
    }
}

fn pick<T>(items: &[T], i: usize, pos: Pos) -> Result<&T, EvalError> {
    items.get(i).map_or_else(
        || {
            err(
                pos,
                format!("index {i} out of range (length {})", items.len()),
            )
        },
        Ok,
    )
}

fn arith(name: &str, a: &Arg, b: &Arg, pos: Pos) -> Result<Value, EvalError> {
    if let (Value::Number(x), Value::Number(y)) = (a.value, b.value) {
        let r = match name {
            "add" => x.try_add(y),
            "sub" => x.try_sub(y),
            "mul" => x.try_mul(y),
            _ => x.try_div(y),
        };
        return exact(pos, r).map(Value::Number);
    }
    let (p, q) = (a.quantity()?, b.quantity()?);
    let r = match name {
        "add" => p.add(&q),
        "sub" => p.sub(&q),
        "mul" => p.mul(&q),
        _ => match q.as_real() {
            Some(k) => p.scale(&exact(pos, k.recip())?),
            None => return err(b.pos, "division by a multiple of pi is not supported"),
        },
    };
    exact(pos, r).map(Value::from_quantity)
}

fn lines_of(sq: &Square, axis: Axis, pos: Pos) -> Result<Value, EvalError> {
    let lines = exact(pos, trisector_lines(sq, axis))?;
    Ok(Value::List(lines.into_iter().map(Value::Segment).collect()))
}

fn intersect(seg: &Segment, c: &Circle, pos: Pos) -> Result<Value, EvalError> {
    let (axis, coord) = match seg.axis() {
        Some(Axis::Vertical) => (Axis::Vertical, &seg.a().x),
        Some(Axis::Horizontal) => (Axis::Horizontal, &seg.a().y),
        None => return err(pos, "only axis-parallel segments can be intersected"),
    };
    let pts = exact(pos, axis_line_circle_intersection(axis, coord, c))?;
    Ok(Value::List(pts.into_iter().map(Value::Point).collect()))
}

/// Runs a catalog rule on a square, circle or bare length, moving the result
/// to the given figure's center.
fn apply_rule(rule: &'static catalog::Rule, arg: &Arg, pos: Pos) -> Result<Value, EvalError> {
    let (size, center) = match (rule.input, arg.value) {
        (_, Value::Number(n)) => (n.clone(), None),
        (InputKind::Side, Value::Square(s)) => (s.side(), Some(s.center().clone())),
        (InputKind::Diameter, Value::Circle(c)) => (
            c.radius()
                .scale(&BigRational::from_integer(BigInt::from(2))),
            Some(c.center().clone()),
        ),
        (InputKind::Side, _) => return arg.mismatch("a square or a side length"),
        (InputKind::Diameter, _) => return arg.mismatch("a circle or a diameter"),
    };
    let mut output = exact(pos, rule.construct(&size))?;
    if let Some(c) = center.filter(|c| !c.x.is_zero() || !c.y.is_zero()) {
        let moved = |f: &Figure| f.translate(&c.x, &c.y);
        output.figures = exact(pos, output.figures.iter().map(moved).collect())?;
        output.witness_points = exact(
            pos,
            output
                .witness_points
                .iter()
                .map(|p| p.translate(&c.x, &c.y))
                .collect(),
        )?;
    }
    Ok(Value::Construction(Box::new(Construction {
        rule: rule.id,
        output,
    })))
}

fn call(name: &str, args: &[Arg], pos: Pos) -> Result<Value, EvalError> {
    let a = |i: usize| &args[i];
    if let Ok(rule) = catalog::find(name) {
        if args.len() == 1 {
            return apply_rule(rule, a(0), pos);
        }
    }
    let v = match name {
        "point" => Value::Point(Point::new(a(0).num()?.clone(), a(1).num()?.clone())),
        "segment" => Value::Segment(exact(
            pos,
            Segment::new(a(0).point()?.clone(), a(1).point()?.clone()),
        )?),
        "square" => Value::Square(exact(
            pos,
            Square::new(a(0).point()?.clone(), a(1).num()?.clone()),
        )?),
        "circle" => Value::Circle(exact(
            pos,
            Circle::new(a(0).point()?.clone(), a(1).num()?.clone()),
        )?),
        "sqrt" => Value::Number(exact(pos, a(0).num()?.sqrt())?),
        "add" | "sub" | "mul" | "div" => arith(name, a(0), a(1), pos)?,
        "neg" => match a(0).value {
            Value::Number(r) => Value::Number(r.neg()),
            _ => Value::from_quantity(a(0).quantity()?.neg()),
        },
        "divide" => {
            let n = a(1).index()?;
            let n = u32::try_from(n).map_or_else(|_| err(a(1).pos, "too many parts"), Ok)?;
            let pts = exact(pos, divide_segment(a(0).segment()?, n))?;
            Value::List(pts.into_iter().map(Value::Point).collect())
        }
        "at" => pick(a(0).list()?, a(1).index()?, a(1).pos)?.clone(),
        "circumcircle" => Value::Circle(exact(pos, circumscribed_circle(a(0).square()?))?),
        "trisectors_v" => lines_of(a(0).square()?, Axis::Vertical, pos)?,
        "trisectors_h" => lines_of(a(0).square()?, Axis::Horizontal, pos)?,
        "intersect" => match (a(0).value, a(1).value) {
            (Value::Circle(c), _) => intersect(a(1).segment()?, c, pos)?,
            _ => intersect(a(0).segment()?, a(1).circle()?, pos)?,
        },
        "distance2" => Value::Number(exact(pos, distance_squared(a(0).point()?, a(1).point()?))?),
        "area" => match a(0).value {
            Value::Square(s) => Value::from_quantity(square_area(s)),
            _ => Value::Quantity(circle_area(a(0).circle()?)),
        },
        "circumference" => Value::Quantity(circle_circumference_true(a(0).circle()?)),
        "hypotenuse" => Value::Number(exact(pos, catalog::hypotenuse(a(0).num()?, a(1).num()?))?),
        "x" => Value::Number(a(0).point()?.x.clone()),
        "y" => Value::Number(a(0).point()?.y.clone()),
        "radius" => Value::Number(a(0).circle()?.radius().clone()),
        "center" => match a(0).value {
            Value::Square(s) => Value::Point(s.center().clone()),
            _ => Value::Point(a(0).circle()?.center().clone()),
        },
        "half_side" => Value::Number(a(0).square()?.half_side().clone()),
        "side" => Value::Number(a(0).square()?.side()),
        "lerp" => Value::Point(exact(pos, a(0).point()?.lerp(a(1).point()?, a(2).num()?))?),
        "claimed" => Value::from_quantity(a(0).construction()?.output.claimed.clone()),
        "actual" => Value::from_quantity(a(0).construction()?.output.actual.clone()),
        "witness" => {
            let c = a(0).construction()?;
            Value::Point(pick(&c.output.witness_points, a(1).index()?, a(1).pos)?.clone())
        }
        "produced" => {
            let c = a(0).construction()?;
            let last = c.output.figures.last();
            last.map_or_else(
                || err(pos, format!("`{}` produces no figure", c.rule)),
                |f| Ok(Value::from_figure(f)),
            )?
        }
        other => return err(pos, format!("unknown name `{other}`")),
    };
    Ok(v)
}

fn compare(lhs: &Arg, rhs: &Arg, rel: Relation, pos: Pos) -> Result<bool, EvalError> {
    let ord = match (lhs.value, rhs.value) {
        (Value::Number(a), Value::Number(b)) => a.exact_cmp(b),
        (Value::Point(p), Value::Point(q)) if rel == Relation::Eq => {
            return Ok(p.x == q.x && p.y == q.y);
        }
        _ => {
            let d = lhs.quantity()?.sub(&rhs.quantity()?);
            exact(pos, d.and_then(|d| d.sign()))?.cmp(&0)
        }
    };
    Ok(match rel {
        Relation::Eq => ord == Ordering::Equal,
        Relation::Lt => ord == Ordering::Less,
        Relation::Gt => ord == Ordering::Greater,
    })
}

struct Evaluator {
    env: BTreeMap<String, Value>,
    poisoned: BTreeSet<String>,
    out: Evaluation,
}

impl Evaluator {
    fn expr(&self, e: &Expr) -> Result<Value, EvalError> {
        match &e.kind {
            ExprKind::Literal(q) => Ok(Value::Number(R::from_ratio(q.clone()))),
            ExprKind::Ident(name) => self
                .env
                .get(name)
                .cloned()
                .map_or_else(|| err(e.pos, format!("unresolved reference `{name}`")), Ok),
            ExprKind::Call { name, args } => {
                let values = args
                    .iter()
                    .map(|a| self.expr(a))
                    .collect::<Result<Vec<_>, _>>()?;
                let args: Vec<Arg> = values
                    .iter()
                    .zip(args)
                    .map(|(value, a)| Arg { value, pos: a.pos })
                    .collect();
                call(name, &args, e.pos)
            }
        }
    }

    fn poisoned_dependency<'a>(&self, refs: &[(&'a str, Pos)]) -> Option<&'a str> {
        refs.iter()
            .map(|(n, _)| *n)
            .find(|n| self.poisoned.contains(*n))
    }

    fn skip(&mut self, pos: Pos, what: String, dep: &str) {
        self.out.diagnostics.push(Diagnostic::warning(
            pos,
            format!("{what} skipped: depends on `{dep}`, which failed"),
        ));
    }

    fn fail(&mut self, e: EvalError) {
        self.out
            .diagnostics
            .push(Diagnostic::error(e.pos, e.message));
    }
}

/// Evaluates a resolved script. Bindings whose evaluation fails are poisoned;
/// statements depending on them are skipped with a warning.
pub fn evaluate(script: &Script) -> Evaluation {
    let mut ev = Evaluator {
        env: BTreeMap::new(),
        poisoned: BTreeSet::new(),
        out: Evaluation::default(),
    };
    for stmt in &script.stmts {
        let refs = stmt.references();
        match &stmt.kind {
            StmtKind::Let { name, value, .. } => {
                if let Some(dep) = ev.poisoned_dependency(&refs) {
                    ev.skip(stmt.pos, format!("binding `{name}`"), dep);
                    ev.poisoned.insert(name.clone());
                    continue;
                }
                match ev.expr(value) {
                    Ok(v) => {
                        ev.out.bindings.push((name.clone(), v.clone()));
                        ev.env.insert(name.clone(), v);
                    }
                    Err(e) => {
                        ev.fail(e);
                        ev.poisoned.insert(name.clone());
                    }
                }
            }
            StmtKind::Assert { lhs, rel, rhs } => {
                let text = format!("{} {} {}", format_expr(lhs), rel.as_str(), format_expr(rhs));
                if let Some(dep) = ev.poisoned_dependency(&refs) {
                    ev.skip(stmt.pos, format!("assertion `{text}`"), dep);
                    continue;
                }
                let sides = ev.expr(lhs).and_then(|l| ev.expr(rhs).map(|r| (l, r)));
                let (l, r) = match sides {
                    Ok(s) => s,
                    Err(e) => {
                        ev.fail(e);
                        continue;
                    }
                };
                let la = Arg {
                    value: &l,
                    pos: lhs.pos,
                };
                let ra = Arg {
                    value: &r,
                    pos: rhs.pos,
                };
                match compare(&la, &ra, *rel, stmt.pos) {
                    Ok(passed) => {
                        let (li, ri) = (
                            l.enclosure(ASSERTION_REPORT_BITS),
                            r.enclosure(ASSERTION_REPORT_BITS),
                        );
                        if !passed {
                            let show = |i: &Option<Interval>, v: &Value| match i {
                                Some(i) => format!("{i:.18}"),
                                None => v.to_string(),
                            };
                            ev.out.diagnostics.push(Diagnostic::error(
                                stmt.pos,
                                format!(
                                    "assertion failed: {text}; left {}, right {} ({} bits)",
                                    show(&li, &l),
                                    show(&ri, &r),
                                    ASSERTION_REPORT_BITS
                                ),
                            ));
                        }
                        ev.out.assertions.push(AssertionResult {
                            pos: stmt.pos,
                            text,
                            passed,
                            lhs: li,
                            rhs: ri,
                        });
                    }
                    Err(e) => ev.fail(e),
                }
            }
            StmtKind::Emit { names } => {
                for (name, pos) in names {
                    if ev.poisoned.contains(name) {
                        ev.skip(*pos, format!("emit of `{name}`"), name);
                    } else if let Some(v) = ev.env.get(name) {
                        ev.out.emitted.push((name.clone(), v.clone()));
                    }
                }
            }
        }
    }
    ev.out
}
