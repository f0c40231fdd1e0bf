//! Constructible reals as elements of a quadratic field tower over Q.
//!
//! A [`Tower`] is a list of radicands `d0, d1, ...` where `d(i)` lives in
//! `F(i) = Q(sqrt d0, ..., sqrt d(i-1))`, is positive, and is not a square in
//! `F(i)`. An element at level `i` is stored as `a + b*sqrt(d(i))` with `a, b` at
//! lower levels and `b != 0`. Because every radicand is a verified non-square,
//! that representation is unique within a tower and zero is exactly `Rat(0)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::{sign_refinement_bits, tower_cap, ExactError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Rat(BigRational),
    Ext {
        level: usize,
        a: Arc<Node>,
        b: Arc<Node>,
    },
}

/// The radicands adjoined so far, bottom to top.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tower {
    radicands: Vec<Node>,
}

impl Tower {
    pub fn height(&self) -> usize {
        self.radicands.len()
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl Node {
    fn zero() -> Node {
        Node::Rat(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        matches!(self, Node::Rat(q) if q.is_zero())
    }

    fn level(&self) -> Option<usize> {
        match self {
            Node::Rat(_) => None,
            Node::Ext { level, .. } => Some(*level),
        }
    }

    fn split(&self, level: usize) -> (Node, Node) {
        match self {
            Node::Ext { level: l, a, b } if *l == level => ((**a).clone(), (**b).clone()),
            _ => (self.clone(), Node::zero()),
        }
    }

    fn mk(level: usize, a: Node, b: Node) -> Node {
        if b.is_zero() {
            a
        } else {
            Node::Ext {
                level,
                a: Arc::new(a),
                b: Arc::new(b),
            }
        }
    }
}

fn add(x: &Node, y: &Node) -> Node {
    match (x, y) {
        (Node::Rat(p), Node::Rat(q)) => Node::Rat(p + q),
        _ => {
            let l = x.level().max(y.level()).expect("one side is an extension");
            let (a1, b1) = x.split(l);
            let (a2, b2) = y.split(l);
            Node::mk(l, add(&a1, &a2), add(&b1, &b2))
        }
    }
}

fn neg(x: &Node) -> Node {
    match x {
        Node::Rat(q) => Node::Rat(-q),
        Node::Ext { level, a, b } => Node::Ext {
            level: *level,
            a: Arc::new(neg(a)),
            b: Arc::new(neg(b)),
        },
    }
}

fn sub(x: &Node, y: &Node) -> Node {
    add(x, &neg(y))
}

fn mul(x: &Node, y: &Node, rad: &[Node]) -> Node {
    match (x, y) {
        (Node::Rat(p), Node::Rat(q)) => Node::Rat(p * q),
        _ if x.is_zero() || y.is_zero() => Node::zero(),
        _ => {
            let (lx, ly) = (x.level(), y.level());
            let l = lx.max(ly).expect("one side is an extension");
            if lx != ly {
                let (hi, lo) = if lx == Some(l) { (x, y) } else { (y, x) };
                let (a, b) = hi.split(l);
                return Node::mk(l, mul(&a, lo, rad), mul(&b, lo, rad));
            }
            let (a1, b1) = x.split(l);
            let (a2, b2) = y.split(l);
            let d = &rad[l];
            let a = add(&mul(&a1, &a2, rad), &mul(&mul(&b1, &b2, rad), d, rad));
            let b = add(&mul(&a1, &b2, rad), &mul(&a2, &b1, rad));
            Node::mk(l, a, b)
        }
    }
}

/// Multiplicative inverse of a nonzero node.
fn inv(x: &Node, rad: &[Node]) -> Node {
    match x {
        Node::Rat(q) => Node::Rat(q.recip()),
        Node::Ext { level, a, b } => {
            let d = &rad[*level];
            // (a + b r)^-1 = (a - b r) / (a^2 - b^2 d)
            let norm = sub(&mul(a, a, rad), &mul(&mul(b, b, rad), d, rad));
            let ninv = inv(&norm, rad);
            Node::mk(*level, mul(a, &ninv, rad), neg(&mul(b, &ninv, rad)))
        }
    }
}

/// Exact sign by the conjugate-norm recursion.
fn exact_sign(x: &Node, rad: &[Node]) -> i32 {
    match x {
        Node::Rat(q) => {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        }
        Node::Ext { level, a, b } => {
            let sa = exact_sign(a, rad);
            let sb = exact_sign(b, rad);
            if sa == 0 {
                return sb;
            }
            if sb == 0 || sa == sb {
                return sa;
            }
            // Opposite signs: compare a^2 with b^2 d.
            let norm = sub(&mul(a, a, rad), &mul(&mul(b, b, rad), &rad[*level], rad));
            sa * exact_sign(&norm, rad)
        }
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// A square root of `x` inside `F(n)` (the field generated by the first `n`
/// radicands), if one exists. The sign of the returned root is unspecified.
fn sqrt_in(x: &Node, n: usize, rad: &[Node]) -> Option<Node> {
    if x.is_zero() {
        return Some(Node::zero());
    }
    if n == 0 {
        return match x {
            Node::Rat(q) => rational_sqrt(q).map(Node::Rat),
            Node::Ext { .. } => None,
        };
    }
    let l = n - 1;
    let d = &rad[l];
    if x.level() != Some(l) {
        // Root p + q r with p q = 0.
        if let Some(p) = sqrt_in(x, l, rad) {
            return Some(p);
        }
        let over_d = mul(x, &inv(d, rad), rad);
        return sqrt_in(&over_d, l, rad).map(|q| Node::mk(l, Node::zero(), q));
    }
    let (a, b) = x.split(l);
    // (p + q r)^2 = a + b r  =>  p^2 = (a +- sqrt(a^2 - b^2 d)) / 2, q = b / 2p.
    let disc = sub(&mul(&a, &a, rad), &mul(&mul(&b, &b, rad), d, rad));
    let m = sqrt_in(&disc, l, rad)?;
    let half = Node::Rat(rat(1, 2));
    for cand in [add(&a, &m), sub(&a, &m)] {
        let p2 = mul(&cand, &half, rad);
        if p2.is_zero() {
            continue;
        }
        if let Some(p) = sqrt_in(&p2, l, rad) {
            let q = mul(&b, &inv(&add(&p, &p), rad), rad);
            let y = Node::mk(l, p, q);
            if mul(&y, &y, rad) == *x {
                return Some(y);
            }
        }
    }
    None
}

/// Splits a positive rational `q` as `s^2 * k` with `k` a (mostly) square-free integer.
fn square_free_part(q: &BigRational) -> (BigRational, BigInt) {
    let mut k = q.numer() * q.denom();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2u32);
    let bound = BigInt::from(1000u32);
    while p <= bound && &p * &p <= k {
        let p2 = &p * &p;
        while (&k % &p2).is_zero() {
            k /= &p2;
            s *= &p;
        }
        p += 1u32;
    }
    (BigRational::new(s, q.denom().clone()), k)
}

/// Adjoins `sqrt(x)` to `tower`, returning the grown tower and the image of the root.
fn adjoin(tower: &Tower, x: &Node, cap: usize) -> Result<(Tower, Node), ExactError> {
    if tower.height() >= cap {
        return Err(ExactError::Capacity(format!(
            "adjoining a square root would exceed the tower height cap of {cap}"
        )));
    }
    let level = tower.height();
    let (radicand, coeff) = match x {
        Node::Rat(q) => {
            let (s, k) = square_free_part(q);
            (Node::Rat(BigRational::from_integer(k)), Node::Rat(s))
        }
        _ => (x.clone(), Node::Rat(BigRational::one())),
    };
    let mut radicands = tower.radicands.clone();
    radicands.push(radicand);
    Ok((Tower { radicands }, Node::mk(level, Node::zero(), coeff)))
}

/// Re-expresses `x`, written over `from`, using `images[i]` for `sqrt(from.d(i))`.
fn translate(x: &Node, images: &[Node], rad: &[Node]) -> Node {
    match x {
        Node::Rat(_) => x.clone(),
        Node::Ext { level, a, b } => {
            let a = translate(a, images, rad);
            let b = translate(b, images, rad);
            add(&a, &mul(&b, &images[*level], rad))
        }
    }
}

/// Builds a tower containing both inputs. Returns it with the re-expressed nodes.
fn unify(
    t1: &Arc<Tower>,
    x: &Node,
    t2: &Arc<Tower>,
    y: &Node,
    cap: usize,
) -> Result<(Arc<Tower>, Node, Node), ExactError> {
    if Arc::ptr_eq(t1, t2) || t1.radicands.starts_with(&t2.radicands) {
        return Ok((t1.clone(), x.clone(), y.clone()));
    }
    if t2.radicands.starts_with(&t1.radicands) {
        return Ok((t2.clone(), x.clone(), y.clone()));
    }
    let mut merged = (**t1).clone();
    let mut images: Vec<Node> = Vec::with_capacity(t2.height());
    for r in &t2.radicands {
        let r = translate(r, &images, &merged.radicands);
        match sqrt_in(&r, merged.height(), &merged.radicands) {
            Some(root) => images.push(root),
            None => {
                let (grown, image) = adjoin(&merged, &r, cap)?;
                merged = grown;
                images.push(image);
            }
        }
    }
    let y = translate(y, &images, &merged.radicands);
    Ok((Arc::new(merged), x.clone(), y))
}

/// Outward-rounded interval evaluation at `bits` working bits.
fn eval(x: &Node, roots: &[Interval], bits: u64) -> Interval {
    match x {
        Node::Rat(q) => Interval::from_rational(q, bits, bits as u32),
        Node::Ext { level, a, b } => {
            let a = eval(a, roots, bits);
            let b = eval(b, roots, bits);
            a.add(&b.mul(&roots[*level]).round_outward(bits))
                .round_outward(bits)
        }
    }
}

fn radicand_roots(rad: &[Node], bits: u64) -> Vec<Interval> {
    let mut roots: Vec<Interval> = Vec::with_capacity(rad.len());
    for r in rad {
        let v = eval(r, &roots, bits + 8);
        roots.push(v.sqrt(bits + 8));
    }
    roots
}

/// An exact constructible real number.
///
/// Values carry their own tower; binary operations on values from different
/// towers first build a common tower (reusing existing roots where a radicand is
/// already a square). Equality (`==`) is numeric.
#[derive(Clone, Debug)]
pub struct ConstructibleReal {
    tower: Arc<Tower>,
    node: Node,
}

impl ConstructibleReal {
    pub fn from_rational(numerator: i64, denominator: i64) -> Result<Self, ExactError> {
        if denominator == 0 {
            return Err(ExactError::Domain("zero denominator".into()));
        }
        Ok(Self::from_ratio(rat(numerator, denominator)))
    }

    pub fn from_ratio(q: BigRational) -> Self {
        ConstructibleReal {
            tower: Arc::new(Tower::default()),
            node: Node::Rat(q),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_ratio(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Builds `a + b*sqrt(d)` over the one-step tower `[d]` without normalizing.
    /// `d` must be a positive non-square rational.
    #[doc(hidden)]
    pub fn unnormalized_pair(a: BigRational, b: BigRational, d: BigRational) -> Self {
        ConstructibleReal {
            tower: Arc::new(Tower {
                radicands: vec![Node::Rat(d)],
            }),
            node: Node::Ext {
                level: 0,
                a: Arc::new(Node::Rat(a)),
                b: Arc::new(Node::Rat(b)),
            },
        }
    }

    /// Returns the canonical form (zero top coefficients collapsed).
    pub fn normalize(&self) -> Self {
        fn go(x: &Node) -> Node {
            match x {
                Node::Rat(_) => x.clone(),
                Node::Ext { level, a, b } => Node::mk(*level, go(a), go(b)),
            }
        }
        ConstructibleReal {
            tower: self.tower.clone(),
            node: go(&self.node),
        }
    }

    /// Structural identity: same tower and same coefficient tree.
    pub fn structurally_eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.node == other.node
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Number of adjoined roots this value actually depends on, i.e. its level + 1.
    pub fn degree_level(&self) -> usize {
        self.node.level().map_or(0, |l| l + 1)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.node {
            Node::Rat(q) => Some(q),
            Node::Ext { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.node.is_zero()
    }

    fn make(tower: Arc<Tower>, node: Node) -> Self {
        ConstructibleReal { tower, node }
    }

    fn binary(
        &self,
        other: &Self,
        cap: usize,
        f: impl FnOnce(&Node, &Node, &[Node]) -> Node,
    ) -> Result<Self, ExactError> {
        let (t, x, y) = unify(&self.tower, &self.node, &other.tower, &other.node, cap)?;
        let node = f(&x, &y, &t.radicands);
        Ok(Self::make(t, node))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.binary(other, tower_cap(), |x, y, _| add(x, y))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.binary(other, tower_cap(), |x, y, _| sub(x, y))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.binary(other, tower_cap(), mul)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        if other.is_zero() {
            return Err(ExactError::Domain("division by exact zero".into()));
        }
        self.binary(other, tower_cap(), |x, y, rad| mul(x, &inv(y, rad), rad))
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::Domain("division by exact zero".into()));
        }
        Ok(Self::make(
            self.tower.clone(),
            inv(&self.node, &self.tower.radicands),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::make(self.tower.clone(), neg(&self.node))
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Self {
        let node = mul(&self.node, &self.node, &self.tower.radicands);
        Self::make(self.tower.clone(), node)
    }

    /// Multiplies by a rational without touching the tower.
    pub fn scale(&self, k: &BigRational) -> Self {
        let node = mul(&self.node, &Node::Rat(k.clone()), &self.tower.radicands);
        Self::make(self.tower.clone(), node)
    }

    /// Nonnegative square root, using the global tower cap.
    pub fn sqrt(&self) -> Result<Self, ExactError> {
        self.sqrt_with_cap(tower_cap())
    }

    pub fn sqrt_with_cap(&self, cap: usize) -> Result<Self, ExactError> {
        match self.sign() {
            -1 => return Err(ExactError::Domain("square root of a negative value".into())),
            0 => return Ok(Self::make(self.tower.clone(), Node::zero())),
            _ => {}
        }
        let rad = &self.tower.radicands;
        if let Some(root) = sqrt_in(&self.node, rad.len(), rad) {
            let r = Self::make(self.tower.clone(), root);
            return Ok(if r.sign() < 0 { r.neg() } else { r });
        }
        let (tower, image) = adjoin(&self.tower, &self.node, cap)?;
        Ok(Self::make(Arc::new(tower), image))
    }

    /// Exact sign in {-1, 0, 1}.
    ///
    /// Tries interval refinement up to the configured bit bound first and falls
    /// back to the conjugate-norm recursion when the enclosure still straddles 0.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Node::Rat(q) = &self.node {
            return if q.is_positive() { 1 } else { -1 };
        }
        let bound = sign_refinement_bits() as u64;
        let mut bits = 32u64;
        while bits <= bound {
            if let Some(s) = self.tight_enclosure(bits).sign() {
                return s;
            }
            bits *= 2;
        }
        exact_sign(&self.node, &self.tower.radicands)
    }

    /// Sign together with an enclosure that certifies it (excludes zero when nonzero).
    pub fn sign_witness(&self) -> (i32, Interval) {
        let s = self.sign();
        let mut p = 16;
        loop {
            let iv = self.enclose(p);
            if s == 0 || iv.excludes_zero() {
                return (s, iv);
            }
            p *= 2;
        }
    }

    pub fn exact_cmp(&self, other: &Self) -> Ordering {
        let d = self
            .binary(other, usize::MAX, |x, y, _| sub(x, y))
            .expect("uncapped unification cannot fail");
        d.sign().cmp(&0)
    }

    /// Interval evaluation at a fixed working precision, without the nesting chain.
    pub fn tight_enclosure(&self, bits: u64) -> Interval {
        if let Node::Rat(q) = &self.node {
            return Interval::from_rational(q, bits, bits as u32);
        }
        let roots = radicand_roots(&self.tower.radicands, bits);
        eval(&self.node, &roots, bits)
    }

    /// Certified enclosure with `width <= 2^(1-p) * max(1, |hi|)`.
    ///
    /// Results come from a fixed chain of working precisions (64, 128, 256, ...)
    /// intersected cumulatively, so a higher `precision_bits` never produces an
    /// interval that is not contained in a lower one.
    pub fn enclose(&self, precision_bits: u32) -> Interval {
        let p = precision_bits.max(4);
        let mut bits = 64u64;
        let mut acc: Option<Interval> = None;
        loop {
            let cur = self.tight_enclosure(bits);
            let next = match acc {
                None => cur,
                Some(prev) => prev.intersect(&cur).expect("sound enclosures overlap"),
            };
            if next.meets_precision(p) || bits >= 1 << 20 {
                return next.with_precision(p);
            }
            acc = Some(next);
            bits *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(64).to_f64()
    }

    /// Decimal rendering with `digits` fractional digits, rounded to nearest.
    /// A trailing `…` marks a truncated expansion.
    pub fn to_decimal(&self, digits: u32) -> String {
        super::decimal::to_decimal(self, digits)
    }
}

impl PartialEq for ConstructibleReal {
    fn eq(&self, other: &Self) -> bool {
        self.exact_cmp(other) == Ordering::Equal
    }
}

impl Eq for ConstructibleReal {}

impl PartialOrd for ConstructibleReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ConstructibleReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exact_cmp(other)
    }
}

impl From<i64> for ConstructibleReal {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for ConstructibleReal {
    fn from(q: BigRational) -> Self {
        Self::from_ratio(q)
    }
}

// Operator forms panic when the tower cap is exceeded or on division by zero;
// use the `try_*` methods where inputs are not under the caller's control.
macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&ConstructibleReal> for &ConstructibleReal {
            type Output = ConstructibleReal;
            fn $m(self, rhs: &ConstructibleReal) -> ConstructibleReal {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<ConstructibleReal> for ConstructibleReal {
            type Output = ConstructibleReal;
            fn $m(self, rhs: ConstructibleReal) -> ConstructibleReal {
                (&self).$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<&ConstructibleReal> for ConstructibleReal {
            type Output = ConstructibleReal;
            fn $m(self, rhs: &ConstructibleReal) -> ConstructibleReal {
                (&self).$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<ConstructibleReal> for &ConstructibleReal {
            type Output = ConstructibleReal;
            fn $m(self, rhs: ConstructibleReal) -> ConstructibleReal {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);
forward_op!(Div, div, try_div);

impl Neg for &ConstructibleReal {
    type Output = ConstructibleReal;
    fn neg(self) -> ConstructibleReal {
        ConstructibleReal::neg(self)
    }
}

impl Neg for ConstructibleReal {
    type Output = ConstructibleReal;
    fn neg(self) -> ConstructibleReal {
        ConstructibleReal::neg(&self)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fmt_node(x: &Node, rad: &[Node]) -> String {
    match x {
        Node::Rat(q) => fmt_rational(q),
        Node::Ext { level, a, b } => {
            let root = format!("sqrt({})", fmt_node(&rad[*level], rad));
            let (neg_b, b_str) = match &**b {
                Node::Rat(q) if q.is_one() => (false, root),
                Node::Rat(q) if (-q).is_one() => (true, root),
                Node::Rat(q) => (
                    q.is_negative(),
                    format!("{}*{root}", fmt_rational(&q.abs())),
                ),
                other => (false, format!("({})*{root}", fmt_node(other, rad))),
            };
            if a.is_zero() {
                if neg_b {
                    format!("-{b_str}")
                } else {
                    b_str
                }
            } else {
                let op = if neg_b { "-" } else { "+" };
                format!("{} {op} {b_str}", fmt_node(a, rad))
            }
        }
    }
}

impl fmt::Display for ConstructibleReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_node(&self.node, &self.tower.radicands))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ConstructibleReal {
        ConstructibleReal::from_rational(n, d).unwrap()
    }

    #[test]
    fn zero_denominator_is_domain_error() {
        assert!(matches!(
            ConstructibleReal::from_rational(1, 0),
            Err(ExactError::Domain(_))
        ));
        assert_eq!(r(0, 5).sign(), 0);
        assert_eq!(r(-17, 12).sign(), -1);
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(&r(3, 2) + &r(1, 2), r(2, 1));
        assert_eq!(r(17, 12).as_rational(), Some(&rat(17, 12)));
    }

    #[test]
    fn sqrt_two_squared_is_exactly_two() {
        let s = r(2, 1).sqrt().unwrap();
        assert_eq!(s.tower().height(), 1);
        assert_eq!((&s * &s - r(2, 1)).sign(), 0);
        assert!((&s * &s).as_rational().is_some());
    }

    #[test]
    fn perfect_square_does_not_grow_tower() {
        let s = r(25, 4).sqrt().unwrap();
        assert_eq!(s.as_rational(), Some(&rat(5, 2)));
        assert_eq!(s.tower().height(), 0);
    }

    #[test]
    fn sqrt_eight_reduces_to_two_sqrt_two() {
        let s8 = r(8, 1).sqrt().unwrap();
        assert_eq!(s8.to_string(), "2*sqrt(2)");
        let s2 = r(2, 1).sqrt().unwrap();
        let prod = &s8 * &s2;
        assert_eq!(prod.as_rational(), Some(&rat(4, 1)));
    }

    #[test]
    fn sqrt_in_existing_tower_is_reused() {
        // 3 + 2 sqrt 2 = (1 + sqrt 2)^2
        let s2 = r(2, 1).sqrt().unwrap();
        let x = &r(3, 1) + &(&r(2, 1) * &s2);
        let root = x.sqrt().unwrap();
        assert_eq!(root.tower().height(), 1);
        assert_eq!(root, &r(1, 1) + &s2);
        // 3 - 2 sqrt 2 = (sqrt 2 - 1)^2, root must be positive
        let y = &r(3, 1) - &(&r(2, 1) * &s2);
        assert_eq!(y.sqrt().unwrap(), &s2 - &r(1, 1));
    }

    #[test]
    fn unrelated_towers_merge() {
        let s2 = r(2, 1).sqrt().unwrap();
        let s17 = r(17, 1).sqrt().unwrap();
        let sum = &s2 + &s17;
        assert_eq!(sum.tower().height(), 2);
        let s34 = r(34, 1).sqrt().unwrap();
        let prod = &s2 * &s17;
        assert_eq!(prod, s34);
        // merging sqrt 34 into Q(sqrt 2, sqrt 17) must not grow the tower
        assert_eq!((&prod + &s34).tower().height(), 2);
    }

    #[test]
    fn sign_examples() {
        let s2 = r(2, 1).sqrt().unwrap();
        assert_eq!((&s2 * &s2 - r(2, 1)).sign(), 0);
        assert_eq!((r(17, 12) - s2.clone()).sign(), 1);
        assert_eq!((r(12, 17) - r(7, 10)).sign(), 1);
        assert_eq!((r(7, 5) - s2).sign(), -1);
    }

    #[test]
    fn exact_sign_matches_refinement_on_tiny_differences() {
        // 577/408 - sqrt 2 ~ 2.1e-6 and its conjugate partner
        let s2 = r(2, 1).sqrt().unwrap();
        let x = r(577, 408) - s2;
        assert_eq!(exact_sign(&x.node, &x.tower.radicands), 1);
        assert_eq!(x.sign(), 1);
    }

    #[test]
    fn negative_sqrt_is_domain_error() {
        assert!(matches!(r(-1, 1).sqrt(), Err(ExactError::Domain(_))));
    }

    #[test]
    fn tower_cap_is_enforced() {
        let s2 = r(2, 1).sqrt_with_cap(1).unwrap();
        assert!(matches!(
            r(3, 1).sqrt_with_cap(0),
            Err(ExactError::Capacity(_))
        ));
        let s3 = r(3, 1).sqrt_with_cap(1).unwrap();
        let both = s2.binary(&s3, 1, |x, y, _| add(x, y));
        assert!(matches!(both, Err(ExactError::Capacity(_))));
    }

    #[test]
    fn division_by_exact_zero() {
        let s2 = r(2, 1).sqrt().unwrap();
        let z = &s2 - &s2;
        assert!(matches!(r(1, 1).try_div(&z), Err(ExactError::Domain(_))));
    }

    #[test]
    fn baudhayana_coefficient() {
        let s2 = r(2, 1).sqrt().unwrap();
        let c = (&r(2, 1) + &s2) / r(6, 1);
        let e = c.enclose(60);
        let (lo, hi) = e.to_decimal_bounds(6);
        assert_eq!((lo.as_str(), hi.as_str()), ("0.569035", "0.569036"));
        assert_eq!(c.to_string(), "1/3 + 1/6*sqrt(2)");
    }

    #[test]
    fn display_nested() {
        let s2 = r(2, 1).sqrt().unwrap();
        let inner = &r(1, 1) + &s2;
        let root = inner.sqrt().unwrap();
        assert_eq!(root.to_string(), "sqrt(1 + sqrt(2))");
        let x = &r(54, 1) - &(&r(36, 1) * &s2);
        assert_eq!(x.to_string(), "54 - 36*sqrt(2)");
    }
}
