//! Exact planar geometry over constructible coordinates.
//!
//! Only what the constructions need: axis-aligned squares given by center and
//! half side, circles, segments and intersections of axis-parallel lines with
//! circles. Distances are exposed squared; callers take roots explicitly.

use num_rational::BigRational;

use crate::exactreal::{ConstructibleReal, ExactError, Quantity};

type R = ConstructibleReal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub x: R,
    pub y: R,
}

impl Point {
    pub fn new(x: R, y: R) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(R::zero(), R::zero())
    }

    pub fn translate(&self, dx: &R, dy: &R) -> Result<Point, ExactError> {
        Ok(Point::new(self.x.try_add(dx)?, self.y.try_add(dy)?))
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point, t: &R) -> Result<Point, ExactError> {
        let dx = other.x.try_sub(&self.x)?.try_mul(t)?;
        let dy = other.y.try_sub(&self.y)?.try_mul(t)?;
        self.translate(&dx, &dy)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    a: Point,
    b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, ExactError> {
        if a == b {
            return Err(ExactError::Domain("degenerate segment".into()));
        }
        Ok(Segment { a, b })
    }

    pub fn a(&self) -> &Point {
        &self.a
    }

    pub fn b(&self) -> &Point {
        &self.b
    }

    pub fn translate(&self, dx: &R, dy: &R) -> Result<Segment, ExactError> {
        Segment::new(self.a.translate(dx, dy)?, self.b.translate(dx, dy)?)
    }

    /// The axis this segment is parallel to, if any.
    pub fn axis(&self) -> Option<Axis> {
        if self.a.x == self.b.x {
            Some(Axis::Vertical)
        } else if self.a.y == self.b.y {
            Some(Axis::Horizontal)
        } else {
            None
        }
    }
}

/// Orientation of an axis-parallel line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// Axis-aligned square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    center: Point,
    half_side: R,
}

impl Square {
    pub fn new(center: Point, half_side: R) -> Result<Self, ExactError> {
        if half_side.sign() != 1 {
            return Err(ExactError::Domain(
                "square half side must be positive".into(),
            ));
        }
        Ok(Square { center, half_side })
    }

    /// Square of the given side centered at the origin.
    pub fn with_side(side: &R) -> Result<Self, ExactError> {
        Square::new(Point::origin(), side.scale(&half()))
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn half_side(&self) -> &R {
        &self.half_side
    }

    pub fn side(&self) -> R {
        self.half_side.scale(&two())
    }

    pub fn translate(&self, dx: &R, dy: &R) -> Result<Square, ExactError> {
        Square::new(self.center.translate(dx, dy)?, self.half_side.clone())
    }

    /// Vertices counter-clockwise from the lower left.
    pub fn vertices(&self) -> Result<[Point; 4], ExactError> {
        let h = &self.half_side;
        let m = h.neg();
        Ok([
            self.center.translate(&m, &m)?,
            self.center.translate(h, &m)?,
            self.center.translate(h, h)?,
            self.center.translate(&m, h)?,
        ])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    center: Point,
    radius: R,
}

impl Circle {
    pub fn new(center: Point, radius: R) -> Result<Self, ExactError> {
        if radius.sign() != 1 {
            return Err(ExactError::Domain("circle radius must be positive".into()));
        }
        Ok(Circle { center, radius })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> &R {
        &self.radius
    }

    pub fn translate(&self, dx: &R, dy: &R) -> Result<Circle, ExactError> {
        Circle::new(self.center.translate(dx, dy)?, self.radius.clone())
    }

    /// `distance^2(p, center) - r^2`; zero exactly on the circle.
    pub fn residual(&self, p: &Point) -> Result<R, ExactError> {
        distance_squared(p, &self.center)?.try_sub(&self.radius.square())
    }
}

/// Any figure a construction can produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Figure {
    Point(Point),
    Segment(Segment),
    Square(Square),
    Circle(Circle),
}

impl Figure {
    pub fn kind(&self) -> &'static str {
        match self {
            Figure::Point(_) => "point",
            Figure::Segment(_) => "segment",
            Figure::Square(_) => "square",
            Figure::Circle(_) => "circle",
        }
    }

    pub fn translate(&self, dx: &R, dy: &R) -> Result<Figure, ExactError> {
        Ok(match self {
            Figure::Point(p) => Figure::Point(p.translate(dx, dy)?),
            Figure::Segment(s) => Figure::Segment(s.translate(dx, dy)?),
            Figure::Square(s) => Figure::Square(s.translate(dx, dy)?),
            Figure::Circle(c) => Figure::Circle(c.translate(dx, dy)?),
        })
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn two() -> BigRational {
    BigRational::from_integer(2.into())
}

/// The `n + 1` points dividing `s` into `n` equal parts, from `a` to `b`.
pub fn divide_segment(s: &Segment, n: u32) -> Result<Vec<Point>, ExactError> {
    if n == 0 {
        return Err(ExactError::Domain(
            "cannot divide a segment into 0 parts".into(),
        ));
    }
    (0..=n)
        .map(|k| {
            let t = R::from_rational(k as i64, n as i64)?;
            s.a.lerp(&s.b, &t)
        })
        .collect()
}

/// The circle through the four vertices: same center, `r^2 = 2 h^2`.
pub fn circumscribed_circle(sq: &Square) -> Result<Circle, ExactError> {
    let r = sq.half_side.square().scale(&two()).sqrt()?;
    Circle::new(sq.center.clone(), r)
}

/// The two lines trisecting `sq` parallel to `axis`, each spanning the square.
///
/// For [`Axis::Vertical`] these lie on `x = cx -+ h/3`.
pub fn trisector_lines(sq: &Square, axis: Axis) -> Result<[Segment; 2], ExactError> {
    let h = &sq.half_side;
    let third = h.scale(&BigRational::new(1.into(), 3.into()));
    let c = &sq.center;
    let line = |offset: &R| -> Result<Segment, ExactError> {
        match axis {
            Axis::Vertical => {
                let x = c.x.try_add(offset)?;
                Segment::new(
                    Point::new(x.clone(), c.y.try_sub(h)?),
                    Point::new(x, c.y.try_add(h)?),
                )
            }
            Axis::Horizontal => {
                let y = c.y.try_add(offset)?;
                Segment::new(
                    Point::new(c.x.try_sub(h)?, y.clone()),
                    Point::new(c.x.try_add(h)?, y),
                )
            }
        }
    };
    Ok([line(&third.neg())?, line(&third)?])
}

/// Intersections of the axis-parallel line at `coord` with `c`, in ascending
/// order of the free coordinate. Tangency yields one point.
pub fn axis_line_circle_intersection(
    axis: Axis,
    coord: &R,
    c: &Circle,
) -> Result<Vec<Point>, ExactError> {
    let (fixed_center, free_center) = match axis {
        Axis::Vertical => (&c.center.x, &c.center.y),
        Axis::Horizontal => (&c.center.y, &c.center.x),
    };
    let d = coord.try_sub(fixed_center)?;
    let rem = c.radius.square().try_sub(&d.square())?;
    let offsets = match rem.sign() {
        -1 => return Ok(Vec::new()),
        0 => vec![R::zero()],
        _ => {
            let s = rem.sqrt()?;
            vec![s.neg(), s]
        }
    };
    offsets
        .into_iter()
        .map(|o| {
            let free = free_center.try_add(&o)?;
            Ok(match axis {
                Axis::Vertical => Point::new(coord.clone(), free),
                Axis::Horizontal => Point::new(free, coord.clone()),
            })
        })
        .collect()
}

pub fn vertical_line_circle_intersection(x0: &R, c: &Circle) -> Result<Vec<Point>, ExactError> {
    axis_line_circle_intersection(Axis::Vertical, x0, c)
}

/// `(px - qx)^2 + (py - qy)^2`.
pub fn distance_squared(p: &Point, q: &Point) -> Result<R, ExactError> {
    let dx = p.x.try_sub(&q.x)?;
    let dy = p.y.try_sub(&q.y)?;
    dx.square().try_add(&dy.square())
}

pub fn square_area(sq: &Square) -> Quantity {
    Quantity::real(sq.side().square())
}

pub fn circle_area(c: &Circle) -> Quantity {
    Quantity::pi_multiple(c.radius.square())
}

pub fn circle_circumference_true(c: &Circle) -> Quantity {
    Quantity::pi_multiple(c.radius.scale(&two()))
}
