//! Names callable from scripts and the argument counts they accept.

use crate::catalog;

/// `(name, accepted arities, signature)` for every primitive.
pub const PRIMITIVES: &[(&str, &[usize], &str)] = &[
    ("point", &[2], "point(x, y)"),
    ("segment", &[2], "segment(p, q)"),
    ("square", &[2], "square(center, half_side)"),
    ("circle", &[2], "circle(center, radius)"),
    ("sqrt", &[1], "sqrt(x)"),
    ("add", &[2], "add(a, b)"),
    ("sub", &[2], "sub(a, b)"),
    ("mul", &[2], "mul(a, b)"),
    ("div", &[2], "div(a, b)"),
    ("neg", &[1], "neg(a)"),
    ("divide", &[2], "divide(segment, n) -> n+1 points"),
    ("at", &[2], "at(list, index)"),
    ("circumcircle", &[1], "circumcircle(square)"),
    ("trisectors_v", &[1], "trisectors_v(square) -> 2 segments"),
    ("trisectors_h", &[1], "trisectors_h(square) -> 2 segments"),
    (
        "intersect",
        &[2],
        "intersect(axis-parallel segment, circle) -> points of the line on the circle",
    ),
    ("distance2", &[2], "distance2(p, q)"),
    ("area", &[1], "area(square | circle)"),
    ("circumference", &[1], "circumference(circle)"),
    ("hypotenuse", &[2], "hypotenuse(length, width)"),
    ("x", &[1], "x(point)"),
    ("y", &[1], "y(point)"),
    ("radius", &[1], "radius(circle)"),
    ("center", &[1], "center(square | circle)"),
    ("half_side", &[1], "half_side(square)"),
    ("side", &[1], "side(square)"),
    ("lerp", &[3], "lerp(p, q, t)"),
    ("claimed", &[1], "claimed(construction)"),
    ("actual", &[1], "actual(construction)"),
    ("witness", &[2], "witness(construction, index)"),
    ("produced", &[1], "produced(construction) -> last figure"),
];

/// Accepted argument counts for `name`, or `None` if it is not callable.
/// Catalog rule ids take one argument: a square, a circle or a length.
pub fn arities(name: &str) -> Option<Vec<usize>> {
    let mut out: Vec<usize> = PRIMITIVES
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, a, _)| a.to_vec())
        .unwrap_or_default();
    if catalog::find(name).is_ok() {
        out.insert(0, 1);
    }
    (!out.is_empty()).then_some(out)
}
