//! Certified enclosures with dyadic endpoints.

use std::fmt;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use super::dyadic::{Dyadic, Rounding};

/// A closed interval `[lo, hi]` guaranteed to contain the value it encloses.
///
/// `precision_bits` records the precision the enclosure was requested at. Sums and
/// products of intervals are exact on dyadic endpoints; only division, square
/// roots and explicit [`Interval::round_outward`] round, and always outward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    precision_bits: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, precision_bits: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval {
            lo,
            hi,
            precision_bits,
        }
    }

    pub fn point(v: Dyadic, precision_bits: u32) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
            precision_bits,
        }
    }

    /// Outward-rounded enclosure of a rational at `bits` significant bits.
    pub fn from_rational(q: &BigRational, bits: u64, precision_bits: u32) -> Self {
        let lo = Dyadic::from_rational(q, bits, Rounding::Down);
        let hi = Dyadic::from_rational(q, bits, Rounding::Up);
        Interval::new(lo, hi, precision_bits)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn with_precision(mut self, precision_bits: u32) -> Self {
        self.precision_bits = precision_bits;
        self
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add(&self.hi).shl(-1)
    }

    /// Largest absolute value of an endpoint.
    pub fn mag(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn excludes_zero(&self) -> bool {
        self.lo.signum() > 0 || self.hi.signum() < 0
    }

    /// Sign of every value in the interval, if uniform.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// True when `width <= 2^(1-p) * max(1, |hi|)`.
    pub fn meets_precision(&self, p: u32) -> bool {
        let w = self.width();
        if w.is_zero() {
            return true;
        }
        let bound_mag = self.hi.abs().max(Dyadic::from_int(1)).shl(1 - p as i64);
        w <= bound_mag
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| Interval::new(lo, hi, self.precision_bits.max(other.precision_bits)))
    }

    pub fn neg(&self) -> Interval {
        Interval::new(self.hi.neg(), self.lo.neg(), self.precision_bits)
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(
            self.lo.add(&other.lo),
            self.hi.add(&other.hi),
            self.precision_bits.min(other.precision_bits),
        )
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let c = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = c.iter().min().cloned().unwrap_or_else(Dyadic::zero);
        let hi = c.iter().max().cloned().unwrap_or_else(Dyadic::zero);
        Interval::new(lo, hi, self.precision_bits.min(other.precision_bits))
    }

    pub fn scale_pow2(&self, k: i64) -> Interval {
        Interval::new(self.lo.shl(k), self.hi.shl(k), self.precision_bits)
    }

    /// Rounds both endpoints outward to `bits` significant bits.
    pub fn round_outward(&self, bits: u64) -> Interval {
        Interval::new(
            self.lo.round(bits, Rounding::Down),
            self.hi.round(bits, Rounding::Up),
            self.precision_bits,
        )
    }

    /// Outward-rounded quotient. Returns `None` when `other` contains zero.
    pub fn div(&self, other: &Interval, bits: u64) -> Option<Interval> {
        if !other.excludes_zero() {
            return None;
        }
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let d = a.div(b, bits, Rounding::Down);
                let u = a.div(b, bits, Rounding::Up);
                lo = Some(match lo {
                    Some(l) if l <= d => l,
                    _ => d,
                });
                hi = Some(match hi {
                    Some(h) if h >= u => h,
                    _ => u,
                });
            }
        }
        Some(Interval::new(
            lo?,
            hi?,
            self.precision_bits.min(other.precision_bits),
        ))
    }

    /// Outward-rounded square root; negative parts of the interval are clamped to zero.
    pub fn sqrt(&self, bits: u64) -> Interval {
        let lo = if self.lo.signum() <= 0 {
            Dyadic::zero()
        } else {
            self.lo.sqrt(bits, Rounding::Down)
        };
        let hi = if self.hi.signum() <= 0 {
            Dyadic::zero()
        } else {
            self.hi.sqrt(bits, Rounding::Up)
        };
        Interval::new(lo, hi, self.precision_bits)
    }

    /// Lower endpoint rounded down and upper endpoint rounded up to `digits` decimals.
    pub fn to_decimal_bounds(&self, digits: u32) -> (String, String) {
        (
            self.lo.to_decimal(digits, Rounding::Down),
            self.hi.to_decimal(digits, Rounding::Up),
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12) as u32;
        let (lo, hi) = self.to_decimal_bounds(digits);
        write!(f, "[{lo}, {hi}]")
    }
}

#[derive(Serialize)]
struct IntervalRepr {
    lo: String,
    hi: String,
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (lo, hi) = self.to_decimal_bounds(30);
        IntervalRepr { lo, hi }.serialize(s)
    }
}
