//! The circle, square and circumference rules as named, cited procedures.
//!
//! Every rule takes one exact length (a square's side or a circle's diameter)
//! and returns the figures it constructs together with two quantities: what the
//! rule *claims* and what the constructed object *actually* measures. Both are
//! always computed so that analysis can treat all rules uniformly.
//!
//! The three readings of the circling verse 10.3.2.15 are separate entries:
//!
//! - `manava_dani`: on each trisector, mark the point one fifth of the way along
//!   the part jutting out beyond the square, measured from the square's side;
//!   the circle passes through the eight marks. The radius is taken from the
//!   constructed mark, not from a closed form. For the unit square this gives
//!   `r^2 = 1/36 + (1/2 (1 + 1/5 (sqrt(17)/3 - 1)))^2`. (The closed form is
//!   sometimes printed with the square outside the half and `1/18` in place of
//!   `1/36`; that variant does not reproduce the area 0.994..., the geometric
//!   one does.)
//! - `manava_vangelder`: the radius is half the trisector chord minus one fifth
//!   of the jutting part. The magnitude reported for this reading is our own
//!   reconstruction, so its rows carry a reconstruction flag.
//! - `gupta`: the radius is four fifths of the circumscribed radius.

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::exactreal::{ConstructibleReal, ExactError, Quantity};
use crate::geom::{
    axis_line_circle_intersection, circle_area, circle_circumference_true, circumscribed_circle,
    distance_squared, square_area, trisector_lines, Axis, Circle, Figure, Point, Segment, Square,
};

type R = ConstructibleReal;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown rule id `{0}`")]
    UnknownRule(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleKind {
    CircleFromSquare,
    SquareFromCircle,
    Circumference,
    InscribedSquare,
    Constant,
    Doubling,
    Hypotenuse,
}

impl RuleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleKind::CircleFromSquare => "circle-from-square",
            RuleKind::SquareFromCircle => "square-from-circle",
            RuleKind::Circumference => "circumference",
            RuleKind::InscribedSquare => "inscribed-square",
            RuleKind::Constant => "constant",
            RuleKind::Doubling => "doubling",
            RuleKind::Hypotenuse => "hypotenuse",
        }
    }

    /// Whether the rule carries an implied value of pi.
    pub fn has_pi(self) -> bool {
        matches!(
            self,
            RuleKind::CircleFromSquare | RuleKind::SquareFromCircle | RuleKind::Circumference
        )
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What the single length input of a rule means.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Side,
    Diameter,
}

#[derive(Clone, Debug)]
pub struct RuleOutput {
    pub figures: Vec<Figure>,
    pub claimed: Quantity,
    pub actual: Quantity,
    pub witness_points: Vec<Point>,
}

pub struct Rule {
    pub id: &'static str,
    pub kind: RuleKind,
    pub citation: &'static str,
    pub description: &'static str,
    pub input: InputKind,
    /// The reported magnitude is an implementer reconstruction, not a printed value.
    pub reconstruction: bool,
    construct: fn(&R) -> Result<RuleOutput, ExactError>,
}

impl Rule {
    pub fn construct(&self, size: &R) -> Result<RuleOutput, ExactError> {
        (self.construct)(size)
    }

    pub fn construct_unit(&self) -> Result<RuleOutput, ExactError> {
        self.construct(&R::one())
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rule")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("citation", &self.citation)
            .finish()
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn require_positive(x: &R, what: &str) -> Result<(), ExactError> {
    if x.sign() != 1 {
        return Err(ExactError::Domain(format!("{what} must be positive")));
    }
    Ok(())
}

fn require_nonnegative(x: &R, what: &str) -> Result<(), ExactError> {
    if x.sign() < 0 {
        return Err(ExactError::Domain(format!("{what} must be nonnegative")));
    }
    Ok(())
}

fn circle_with_diameter(d: &R) -> Result<Circle, ExactError> {
    Circle::new(Point::origin(), d.scale(&q(1, 2)))
}

fn diameter_segment(c: &Circle) -> Result<Segment, ExactError> {
    let r = c.radius();
    Segment::new(
        Point::new(r.neg(), R::zero()),
        Point::new(r.clone(), R::zero()),
    )
}

/// `sqrt(length^2 + width^2)`.
pub fn hypotenuse(length: &R, width: &R) -> Result<R, ExactError> {
    require_nonnegative(length, "length")?;
    require_nonnegative(width, "width")?;
    length.square().try_add(&width.square())?.sqrt()
}

/// The Sulvasutra value for sqrt(2).
pub fn sqrt2_sulba_constant() -> R {
    R::from_ratio(q(17, 12))
}

/// Bisector extended to the circumscribed circle; one third of the jutting
/// part is added to the half side.
pub fn circle_from_square_baudhayana(side: &R) -> Result<RuleOutput, ExactError> {
    require_positive(side, "side")?;
    let sq = Square::with_side(side)?;
    let outer = circumscribed_circle(&sq)?;
    let h = sq.half_side();
    let mut figures = vec![Figure::Square(sq.clone()), Figure::Circle(outer.clone())];
    let mut witness = Vec::new();
    let mut radius = None;
    for axis in [Axis::Vertical, Axis::Horizontal] {
        let coord = match axis {
            Axis::Vertical => &sq.center().x,
            Axis::Horizontal => &sq.center().y,
        };
        let ends = axis_line_circle_intersection(axis, coord, &outer)?;
        figures.push(Figure::Segment(Segment::new(
            ends[0].clone(),
            ends[1].clone(),
        )?));
        for end in &ends {
            let free = match axis {
                Axis::Vertical => &end.y,
                Axis::Horizontal => &end.x,
            };
            // distance from center along the bisector: h + (|free| - h) / 3
            let reach = free.abs();
            let jut = reach.try_sub(h)?;
            let r = h.try_add(&jut.scale(&q(1, 3)))?;
            let t = r.try_div(&reach)?;
            witness.push(sq.center().lerp(end, &t)?);
            radius.get_or_insert(r);
        }
    }
    let radius = radius.expect("bisector meets the circle");
    let circle = Circle::new(sq.center().clone(), radius)?;
    figures.push(Figure::Circle(circle.clone()));
    Ok(RuleOutput {
        figures,
        claimed: square_area(&sq),
        actual: circle_area(&circle),
        witness_points: witness,
    })
}

/// The eight marks at one fifth of the jutting trisector parts, measured from
/// the square's sides, with the chords they sit on.
fn trisector_marks(sq: &Square, outer: &Circle) -> Result<(Vec<Segment>, Vec<Point>), ExactError> {
    let h = sq.half_side();
    let c = sq.center();
    let mut chords = Vec::new();
    let mut marks = Vec::new();
    for axis in [Axis::Vertical, Axis::Horizontal] {
        for line in trisector_lines(sq, axis)? {
            let coord = match axis {
                Axis::Vertical => line.a().x.clone(),
                Axis::Horizontal => line.a().y.clone(),
            };
            let ends = axis_line_circle_intersection(axis, &coord, outer)?;
            chords.push(Segment::new(ends[0].clone(), ends[1].clone())?);
            for (end, toward) in ends.iter().zip([h.neg(), h.clone()]) {
                let on_side = match axis {
                    Axis::Vertical => Point::new(coord.clone(), c.y.try_add(&toward)?),
                    Axis::Horizontal => Point::new(c.x.try_add(&toward)?, coord.clone()),
                };
                marks.push(on_side.lerp(end, &R::from_ratio(q(1, 5)))?);
            }
        }
    }
    Ok((chords, marks))
}

/// Circle through the marks at one fifth of the jutting trisector parts.
pub fn circle_from_square_manava_dani(side: &R) -> Result<RuleOutput, ExactError> {
    require_positive(side, "side")?;
    let sq = Square::with_side(side)?;
    let outer = circumscribed_circle(&sq)?;
    let (chords, marks) = trisector_marks(&sq, &outer)?;
    let radius = distance_squared(&marks[0], sq.center())?.sqrt()?;
    let circle = Circle::new(sq.center().clone(), radius)?;
    let mut figures = vec![Figure::Square(sq.clone()), Figure::Circle(outer)];
    figures.extend(chords.into_iter().map(Figure::Segment));
    figures.push(Figure::Circle(circle.clone()));
    Ok(RuleOutput {
        figures,
        claimed: square_area(&sq),
        actual: circle_area(&circle),
        witness_points: marks,
    })
}

/// Radius = half trisector chord minus one fifth of the jutting part.
pub fn circle_from_square_manava_vangelder(side: &R) -> Result<RuleOutput, ExactError> {
    require_positive(side, "side")?;
    let sq = Square::with_side(side)?;
    let outer = circumscribed_circle(&sq)?;
    let h = sq.half_side();
    let c = sq.center();
    let mut figures = vec![Figure::Square(sq.clone()), Figure::Circle(outer.clone())];
    let mut witness = Vec::new();
    let mut radius = None;
    for axis in [Axis::Vertical, Axis::Horizontal] {
        for line in trisector_lines(&sq, axis)? {
            let (coord, mid) = match axis {
                Axis::Vertical => (
                    line.a().x.clone(),
                    Point::new(line.a().x.clone(), c.y.clone()),
                ),
                Axis::Horizontal => (
                    line.a().y.clone(),
                    Point::new(c.x.clone(), line.a().y.clone()),
                ),
            };
            let ends = axis_line_circle_intersection(axis, &coord, &outer)?;
            figures.push(Figure::Segment(Segment::new(
                ends[0].clone(),
                ends[1].clone(),
            )?));
            for end in &ends {
                let half_chord = distance_squared(&mid, end)?.sqrt()?;
                let jut = half_chord.try_sub(h)?;
                let r = half_chord.try_sub(&jut.scale(&q(1, 5)))?;
                witness.push(mid.lerp(end, &r.try_div(&half_chord)?)?);
                radius.get_or_insert(r);
            }
        }
    }
    let radius = radius.expect("trisector meets the circle");
    let circle = Circle::new(c.clone(), radius)?;
    figures.push(Figure::Circle(circle.clone()));
    Ok(RuleOutput {
        figures,
        claimed: square_area(&sq),
        actual: circle_area(&circle),
        witness_points: witness,
    })
}

/// Radius = 4/5 of the circumscribed radius.
pub fn circle_from_square_gupta(side: &R) -> Result<RuleOutput, ExactError> {
    require_positive(side, "side")?;
    let sq = Square::with_side(side)?;
    let outer = circumscribed_circle(&sq)?;
    let circle = Circle::new(sq.center().clone(), outer.radius().scale(&q(4, 5)))?;
    Ok(RuleOutput {
        figures: vec![
            Figure::Square(sq.clone()),
            Figure::Circle(outer),
            Figure::Circle(circle.clone()),
        ],
        claimed: square_area(&sq),
        actual: circle_area(&circle),
        witness_points: Vec::new(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircumferenceVariant {
    Manava16Over5,
    Classical3,
    JainaSqrt10,
}

pub fn circumference_rule(
    variant: CircumferenceVariant,
    diameter: &R,
) -> Result<RuleOutput, ExactError> {
    require_positive(diameter, "diameter")?;
    let claimed = match variant {
        // thrice the diameter and a fifth of it
        CircumferenceVariant::Manava16Over5 => diameter
            .scale(&q(3, 1))
            .try_add(&diameter.scale(&q(1, 5)))?,
        CircumferenceVariant::Classical3 => diameter.scale(&q(3, 1)),
        CircumferenceVariant::JainaSqrt10 => R::from_int(10).sqrt()?.try_mul(diameter)?,
    };
    let circle = circle_with_diameter(diameter)?;
    Ok(RuleOutput {
        figures: vec![
            Figure::Circle(circle.clone()),
            Figure::Segment(diameter_segment(&circle)?),
        ],
        claimed: Quantity::real(claimed),
        actual: circle_circumference_true(&circle),
        witness_points: Vec::new(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InscribedVariant {
    Manava7Over10,
    Standard12Over17,
    Exact,
}

pub fn inscribed_square(variant: InscribedVariant, diameter: &R) -> Result<RuleOutput, ExactError> {
    require_positive(diameter, "diameter")?;
    let exact = diameter.square().scale(&q(1, 2)).sqrt()?;
    let side = match variant {
        // divide the diameter into 10 parts and take away 3
        InscribedVariant::Manava7Over10 => diameter.scale(&q(7, 10)),
        InscribedVariant::Standard12Over17 => diameter.scale(&q(12, 17)),
        InscribedVariant::Exact => exact.clone(),
    };
    let circle = circle_with_diameter(diameter)?;
    let sq = Square::with_side(&side)?;
    let witness = match variant {
        InscribedVariant::Exact => sq.vertices()?.to_vec(),
        _ => Vec::new(),
    };
    Ok(RuleOutput {
        figures: vec![Figure::Circle(circle), Figure::Square(sq)],
        claimed: Quantity::real(side),
        actual: Quantity::real(exact),
        witness_points: witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareFromCircleVariant {
    Rule13Over15,
    Hayashi,
}

pub fn square_from_circle(
    variant: SquareFromCircleVariant,
    diameter: &R,
) -> Result<RuleOutput, ExactError> {
    require_positive(diameter, "diameter")?;
    let circle = circle_with_diameter(diameter)?;
    let mut figures = vec![Figure::Circle(circle.clone())];
    let mut witness = Vec::new();
    let side = match variant {
        SquareFromCircleVariant::Rule13Over15 => diameter.scale(&q(13, 15)),
        SquareFromCircleVariant::Hayashi => {
            // equilateral triangle on the diameter; its altitude is the side
            let r = circle.radius();
            let base_l = Point::new(r.neg(), R::zero());
            let base_r = Point::new(r.clone(), R::zero());
            let altitude = diameter.square().try_sub(&r.square())?.sqrt()?;
            let apex = Point::new(R::zero(), altitude.clone());
            figures.push(Figure::Segment(Segment::new(
                base_l.clone(),
                base_r.clone(),
            )?));
            figures.push(Figure::Segment(Segment::new(base_l, apex.clone())?));
            figures.push(Figure::Segment(Segment::new(base_r, apex.clone())?));
            figures.push(Figure::Segment(Segment::new(
                Point::origin(),
                apex.clone(),
            )?));
            witness.push(apex);
            altitude
        }
    };
    let sq = Square::with_side(&side)?;
    figures.push(Figure::Square(sq.clone()));
    Ok(RuleOutput {
        figures,
        claimed: circle_area(&circle),
        actual: square_area(&sq),
        witness_points: witness,
    })
}

pub fn double_square_by_diagonal(side: &R) -> Result<RuleOutput, ExactError> {
    require_positive(side, "side")?;
    let sq = Square::with_side(side)?;
    let [v0, _, v2, _] = sq.vertices()?;
    let diagonal = distance_squared(&v0, &v2)?.sqrt()?;
    let doubled = Square::with_side(&diagonal)?;
    Ok(RuleOutput {
        figures: vec![
            Figure::Square(doubled.clone()),
            Figure::Square(sq.clone()),
            Figure::Segment(Segment::new(v0, v2)?),
        ],
        claimed: square_area(&sq).scale(&R::from_int(2))?,
        actual: square_area(&doubled),
        witness_points: Vec::new(),
    })
}

/// Rectangle `length x 3/4 length`; the rule's hypotenuse against the corner distance.
fn hypotenuse_rule(length: &R) -> Result<RuleOutput, ExactError> {
    require_positive(length, "length")?;
    let width = length.scale(&q(3, 4));
    let claimed = hypotenuse(length, &width)?;
    let (l2, w2) = (length.scale(&q(1, 2)), width.scale(&q(1, 2)));
    let lo = Point::new(l2.neg(), w2.neg());
    let hi = Point::new(l2.clone(), w2.clone());
    let corners = [
        lo.clone(),
        Point::new(l2.clone(), w2.neg()),
        hi.clone(),
        Point::new(l2.neg(), w2),
    ];
    let mut figures: Vec<Figure> = (0..4)
        .map(|i| {
            Segment::new(corners[i].clone(), corners[(i + 1) % 4].clone()).map(Figure::Segment)
        })
        .collect::<Result<_, _>>()?;
    let actual = distance_squared(&lo, &hi)?.sqrt()?;
    figures.push(Figure::Segment(Segment::new(lo, hi)?));
    Ok(RuleOutput {
        figures,
        claimed: Quantity::real(claimed),
        actual: Quantity::real(actual),
        witness_points: Vec::new(),
    })
}

/// Diagonal of a square of the given side: 17/12 side against sqrt(2) side.
fn sqrt2_rule(side: &R) -> Result<RuleOutput, ExactError> {
    require_positive(side, "side")?;
    let sq = Square::with_side(side)?;
    let [v0, _, v2, _] = sq.vertices()?;
    let actual = distance_squared(&v0, &v2)?.sqrt()?;
    Ok(RuleOutput {
        figures: vec![Figure::Square(sq), Figure::Segment(Segment::new(v0, v2)?)],
        claimed: Quantity::real(sqrt2_sulba_constant().try_mul(side)?),
        actual: Quantity::real(actual),
        witness_points: Vec::new(),
    })
}

fn build() -> Vec<Rule> {
    use InputKind::{Diameter, Side};
    use RuleKind::*;
    vec![
        Rule {
            id: "baudhayana",
            kind: CircleFromSquare,
            citation: "Manava Sulvasutra 10.3.2 (verse preceding 10.3.2.13); Baudhayana Sulvasutra",
            description: "bisector to the circumscribed circle, add a third of the jutting part to the half side",
            input: Side,
            reconstruction: false,
            construct: circle_from_square_baudhayana,
        },
        Rule {
            id: "manava_dani",
            kind: CircleFromSquare,
            citation: "Manava Sulvasutra 10.3.2.15 / 11.15 (reading: S.G. Dani)",
            description: "circle through the 8 trisector marks at one fifth of the jutting parts from the square",
            input: Side,
            reconstruction: false,
            construct: circle_from_square_manava_dani,
        },
        Rule {
            id: "manava_vangelder",
            kind: CircleFromSquare,
            citation: "Manava Sulvasutra 10.3.2.15 / 11.15 (reading: J. van Gelder; R.P. Kulkarni)",
            description: "radius = half trisector chord less one fifth of the jutting part",
            input: Side,
            reconstruction: true,
            construct: circle_from_square_manava_vangelder,
        },
        Rule {
            id: "gupta",
            kind: CircleFromSquare,
            citation: "Manava Sulvasutra 10.3.2.15 / 11.15 (reading: R.C. Gupta)",
            description: "radius = 4/5 of the circumscribed radius",
            input: Side,
            reconstruction: false,
            construct: circle_from_square_gupta,
        },
        Rule {
            id: "manava_16_5",
            kind: Circumference,
            citation: "Manava Sulvasutra 10.3.2.13 / 11.13",
            description: "circumference = thrice the diameter and a fifth of it",
            input: Diameter,
            reconstruction: false,
            construct: |d| circumference_rule(CircumferenceVariant::Manava16Over5, d),
        },
        Rule {
            id: "classical_3",
            kind: Circumference,
            citation: "Baudhayana Sulvasutra (pit of diameter 1 pada, circumference 3 padas)",
            description: "circumference = 3 diameters",
            input: Diameter,
            reconstruction: false,
            construct: |d| circumference_rule(CircumferenceVariant::Classical3, d),
        },
        Rule {
            id: "jaina_sqrt10",
            kind: Circumference,
            citation: "Suryaprajnapti (Jaina tradition)",
            description: "circumference = sqrt(10) diameters",
            input: Diameter,
            reconstruction: false,
            construct: |d| circumference_rule(CircumferenceVariant::JainaSqrt10, d),
        },
        Rule {
            id: "manava_7_10",
            kind: InscribedSquare,
            citation: "Manava Sulvasutra, verse following 10.3.2.13 / 11.13",
            description: "inscribed square side = diameter less 3 of its 10 parts",
            input: Diameter,
            reconstruction: false,
            construct: |d| inscribed_square(InscribedVariant::Manava7Over10, d),
        },
        Rule {
            id: "standard_12_17",
            kind: InscribedSquare,
            citation: "Sulvasutra value sqrt(2) ~ 17/12, giving 12 of 17 parts",
            description: "inscribed square side = 12/17 of the diameter",
            input: Diameter,
            reconstruction: false,
            construct: |d| inscribed_square(InscribedVariant::Standard12Over17, d),
        },
        Rule {
            id: "inscribed_exact",
            kind: InscribedSquare,
            citation: "exact construction (vertices on the circle)",
            description: "inscribed square side = diameter / sqrt(2)",
            input: Diameter,
            reconstruction: false,
            construct: |d| inscribed_square(InscribedVariant::Exact, d),
        },
        Rule {
            id: "rule_13_15",
            kind: SquareFromCircle,
            citation: "Baudhayana Sulvasutra 1.60; Apastamba and Katyayana Sulvasutras",
            description: "side of the equal-area square = 13/15 of the diameter",
            input: Diameter,
            reconstruction: false,
            construct: |d| square_from_circle(SquareFromCircleVariant::Rule13Over15, d),
        },
        Rule {
            id: "hayashi",
            kind: SquareFromCircle,
            citation: "Manava Sulvasutra 10.3.2.10 (emended reading: T. Hayashi)",
            description: "side = altitude of the equilateral triangle on the diameter",
            input: Diameter,
            reconstruction: false,
            construct: |d| square_from_circle(SquareFromCircleVariant::Hayashi, d),
        },
        Rule {
            id: "diagonal_doubling",
            kind: Doubling,
            citation: "Manava Sulvasutra 10.3.2 (two verses preceding 10.3.2.13)",
            description: "square on the diagonal has double the area",
            input: Side,
            reconstruction: false,
            construct: double_square_by_diagonal,
        },
        Rule {
            id: "hypotenuse",
            kind: Hypotenuse,
            citation: "Manava Sulvasutra 10.3.2 (after the samitra vedi)",
            description: "hypotenuse = square root of length*length + width*width",
            input: Side,
            reconstruction: false,
            construct: hypotenuse_rule,
        },
        Rule {
            id: "sqrt2_17_12",
            kind: Constant,
            citation: "Sulvasutra standard approximation sqrt(2) ~ 17/12",
            description: "diagonal of a square = 17/12 of its side",
            input: Side,
            reconstruction: false,
            construct: sqrt2_rule,
        },
    ]
}

/// The immutable registry, built once.
pub fn catalog() -> &'static [Rule] {
    static CATALOG: OnceLock<Vec<Rule>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn find(id: &str) -> Result<&'static Rule, CatalogError> {
    catalog()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| CatalogError::UnknownRule(id.to_string()))
}

/// Rules whose output includes a circle-to-square or circumference ratio.
pub fn pi_rules() -> impl Iterator<Item = &'static Rule> {
    catalog().iter().filter(|r| r.kind.has_pi())
}
