//! Deterministic SVG 1.1 output for figures.
//!
//! Coordinates are taken from 64-bit enclosure midpoints and mapped to the
//! screen with exact rational arithmetic, then printed with three fractional
//! digits, so identical inputs give identical bytes on every platform.

use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};
use thiserror::Error;

use crate::exactreal::dyadic::format_scaled;
use crate::exactreal::ConstructibleReal;
use crate::geom::{Figure, Point};

/// Bits of the enclosures coordinates are read from.
const COORD_BITS: u32 = 64;
/// Half the width of a point marker, in pixels.
const MARKER_HALF: i64 = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SvgError {
    #[error("nothing to render: the figure list is empty")]
    Empty,
    #[error("invalid render options: {0}")]
    InvalidOptions(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layers {
    pub grid: bool,
    pub labels: bool,
    pub witness_points: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    /// Fraction of the shorter canvas side left empty on each edge.
    pub margin: f64,
    /// Decimal digits for numeric labels.
    pub digits: u32,
    pub layers: Layers,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 800,
            height: 800,
            margin: 0.1,
            digits: 6,
            layers: Layers {
                grid: false,
                labels: true,
                witness_points: true,
            },
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), SvgError> {
        if self.width < 100 || self.height < 100 {
            return Err(SvgError::InvalidOptions(
                "canvas must be at least 100 px".into(),
            ));
        }
        if !(0.0..0.4).contains(&self.margin) {
            return Err(SvgError::InvalidOptions(
                "margin must lie in [0, 0.4)".into(),
            ));
        }
        Ok(())
    }

    /// Label text for a value, rounded to `digits` decimals.
    pub fn value_label(&self, name: &str, v: &ConstructibleReal) -> String {
        format!("{name} = {}", v.to_decimal(self.digits))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub at: Point,
    pub text: String,
}

type Q = BigRational;

fn coord(r: &ConstructibleReal) -> Q {
    r.enclose(COORD_BITS).midpoint().to_rational()
}

fn int(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// World-to-screen map: `sx = ox + s (x - x0)`, `sy = H - (oy + s (y - y0))`.
struct Transform {
    x0: Q,
    y0: Q,
    s: Q,
    ox: Q,
    oy: Q,
    height: Q,
}

impl Transform {
    fn fit(boxes: &[(Q, Q, Q, Q)], opts: &RenderOptions) -> Transform {
        let x0 = boxes
            .iter()
            .map(|b| &b.0)
            .min()
            .cloned()
            .unwrap_or_default();
        let y0 = boxes
            .iter()
            .map(|b| &b.1)
            .min()
            .cloned()
            .unwrap_or_default();
        let x1 = boxes
            .iter()
            .map(|b| &b.2)
            .max()
            .cloned()
            .unwrap_or_default();
        let y1 = boxes
            .iter()
            .map(|b| &b.3)
            .max()
            .cloned()
            .unwrap_or_default();
        let (w, h) = (int(opts.width as i64), int(opts.height as i64));
        let short = w.clone().min(h.clone());
        let margin = Q::from_f64(opts.margin).expect("validated margin is finite");
        let usable = &short * (int(1) - int(2) * margin);
        let (dx, dy) = (&x1 - &x0, &y1 - &y0);
        let extent = dx.clone().max(dy.clone());
        let s = if extent.is_zero() {
            int(1)
        } else {
            &usable / extent
        };
        let half = Q::new(1.into(), 2.into());
        let ox = (&w - &s * dx) * &half;
        let oy = (&h - &s * dy) * &half;
        Transform {
            x0,
            y0,
            s,
            ox,
            oy,
            height: h,
        }
    }

    fn x(&self, x: &Q) -> Q {
        &self.ox + &self.s * (x - &self.x0)
    }

    fn y(&self, y: &Q) -> Q {
        &self.height - (&self.oy + &self.s * (y - &self.y0))
    }

    fn len(&self, l: &Q) -> Q {
        &self.s * l
    }

    fn point(&self, p: &Point) -> (Q, Q) {
        (self.x(&coord(&p.x)), self.y(&coord(&p.y)))
    }
}

/// Fixed three-decimal rendering, rounded half away from zero.
fn fmt3(q: &Q) -> String {
    let scaled = q * int(1000);
    let (n, d) = (scaled.numer().abs(), scaled.denom().clone());
    let (mut i, r) = n.div_rem(&d);
    if r * BigInt::from(2) >= d {
        i += 1;
    }
    if scaled.is_negative() {
        i = -i;
    }
    format_scaled(&i, 3)
}

fn bbox(f: &Figure) -> (Q, Q, Q, Q) {
    match f {
        Figure::Point(p) => {
            let (x, y) = (coord(&p.x), coord(&p.y));
            (x.clone(), y.clone(), x, y)
        }
        Figure::Segment(s) => {
            let (ax, ay, bx, by) = (
                coord(&s.a().x),
                coord(&s.a().y),
                coord(&s.b().x),
                coord(&s.b().y),
            );
            (
                ax.clone().min(bx.clone()),
                ay.clone().min(by.clone()),
                ax.max(bx),
                ay.max(by),
            )
        }
        Figure::Square(sq) => {
            let (cx, cy, h) = (
                coord(&sq.center().x),
                coord(&sq.center().y),
                coord(sq.half_side()),
            );
            (&cx - &h, &cy - &h, &cx + &h, &cy + &h)
        }
        Figure::Circle(c) => {
            let (cx, cy, r) = (
                coord(&c.center().x),
                coord(&c.center().y),
                coord(c.radius()),
            );
            (&cx - &r, &cy - &r, &cx + &r, &cy + &r)
        }
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn clamp(v: Q, hi: i64) -> Q {
    v.max(int(0)).min(int(hi))
}

/// Renders `figures` (and `labels`, if that layer is on) as an SVG document.
pub fn to_svg(
    figures: &[Figure],
    labels: &[Label],
    opts: &RenderOptions,
) -> Result<String, SvgError> {
    opts.validate()?;
    if figures.is_empty() {
        return Err(SvgError::Empty);
    }
    let boxes: Vec<_> = figures.iter().map(bbox).collect();
    let t = Transform::fit(&boxes, opts);
    let (w, h) = (opts.width, opts.height);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    if opts.layers.grid {
        out.push_str("<g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"0.5\">\n");
        for k in 0..=10u32 {
            let x = fmt3(&Q::new((w * k).into(), 10.into()));
            let y = fmt3(&Q::new((h * k).into(), 10.into()));
            let _ = writeln!(
                out,
                "<line x1=\"{x}\" y1=\"0.000\" x2=\"{x}\" y2=\"{h}.000\"/>"
            );
            let _ = writeln!(
                out,
                "<line x1=\"0.000\" y1=\"{y}\" x2=\"{w}.000\" y2=\"{y}\"/>"
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("<g fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n");
    let mut markers = Vec::new();
    for f in figures {
        match f {
            Figure::Square(sq) => {
                let c = sq.center();
                let (cx, cy, hs) = (coord(&c.x), coord(&c.y), coord(sq.half_side()));
                let corners = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
                    .map(|(sx, sy)| (t.x(&(&cx + &hs * int(sx))), t.y(&(&cy + &hs * int(sy)))));
                let mut d = String::new();
                for (i, (x, y)) in corners.iter().enumerate() {
                    let _ = write!(
                        d,
                        "{}{} {} ",
                        if i == 0 { "M" } else { "L" },
                        fmt3(x),
                        fmt3(y)
                    );
                }
                d.push('Z');
                let _ = writeln!(out, "<path class=\"square\" d=\"{d}\"/>");
            }
            Figure::Circle(c) => {
                let (cx, cy) = t.point(c.center());
                let r = t.len(&coord(c.radius()));
                let _ = writeln!(
                    out,
                    "<circle class=\"circle\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                    fmt3(&cx),
                    fmt3(&cy),
                    fmt3(&r)
                );
            }
            Figure::Segment(s) => {
                let (x1, y1) = t.point(s.a());
                let (x2, y2) = t.point(s.b());
                let _ = writeln!(
                    out,
                    "<line class=\"segment\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                    fmt3(&x1),
                    fmt3(&y1),
                    fmt3(&x2),
                    fmt3(&y2)
                );
            }
            Figure::Point(p) => markers.push(t.point(p)),
        }
    }
    out.push_str("</g>\n");
    if opts.layers.witness_points && !markers.is_empty() {
        out.push_str("<g fill=\"#c0392b\" stroke=\"none\">\n");
        for (x, y) in &markers {
            // diamond centered on the point
            let m = int(MARKER_HALF);
            let pts = [
                (x.clone(), y - &m),
                (x + &m, y.clone()),
                (x.clone(), y + &m),
                (x - &m, y.clone()),
            ];
            let list: Vec<String> = pts
                .iter()
                .map(|(px, py)| {
                    format!(
                        "{},{}",
                        fmt3(&clamp(px.clone(), w as i64)),
                        fmt3(&clamp(py.clone(), h as i64))
                    )
                })
                .collect();
            let _ = writeln!(
                out,
                "<polygon class=\"marker\" points=\"{}\"/>",
                list.join(" ")
            );
        }
        out.push_str("</g>\n");
    }
    if opts.layers.labels && !labels.is_empty() {
        out.push_str("<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n");
        for l in labels {
            let (x, y) = t.point(&l.at);
            let x = clamp(x + int(4), w as i64 - 1);
            let y = clamp(y - int(4), h as i64 - 1);
            let _ = writeln!(
                out,
                "<text class=\"label\" x=\"{}\" y=\"{}\">{}</text>",
                fmt3(&x),
                fmt3(&y),
                escape(&l.text)
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
