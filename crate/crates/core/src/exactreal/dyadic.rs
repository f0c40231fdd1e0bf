//! Arbitrary-precision dyadic rationals `mant * 2^exp` with directed rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for inexact dyadic operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

/// An exact dyadic rational. Normalized so that the mantissa is odd (or zero with
/// exponent zero); structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

fn div_round(n: &BigInt, d: &BigInt, dir: Rounding) -> BigInt {
    match dir {
        Rounding::Down => n.div_floor(d),
        Rounding::Up => -((-n).div_floor(d)),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        let mant = if tz > 0 { mant >> tz } else { mant };
        Dyadic {
            mant,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Binary order of magnitude: `2^(magnitude-1) <= |x| < 2^magnitude` for nonzero x.
    pub fn magnitude(&self) -> i64 {
        self.mant.bits() as i64 + self.exp
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Multiplies by `2^k`.
    pub fn shl(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Rounds to at most `bits` significant bits in the given direction.
    pub fn round(&self, bits: u64, dir: Rounding) -> Dyadic {
        let b = self.mant.bits();
        if b <= bits {
            return self.clone();
        }
        let shift = b - bits;
        let m = div_round(&self.mant, &pow2(shift), dir);
        Dyadic::new(m, self.exp + shift as i64)
    }

    /// Rounds to a multiple of `2^-frac_bits`.
    pub fn round_to_grid(&self, frac_bits: i64, dir: Rounding) -> Dyadic {
        if self.exp >= -frac_bits {
            return self.clone();
        }
        let shift = (-frac_bits - self.exp) as u64;
        let m = div_round(&self.mant, &pow2(shift), dir);
        Dyadic::new(m, -frac_bits)
    }

    /// `n / d` rounded to at least `bits` significant bits.
    pub fn from_ratio(n: &BigInt, d: &BigInt, bits: u64, dir: Rounding) -> Dyadic {
        assert!(!d.is_zero(), "dyadic division by zero");
        if n.is_zero() {
            return Dyadic::zero();
        }
        let s = bits as i64 + d.bits() as i64 - n.bits() as i64 + 1;
        let m = if s >= 0 {
            div_round(&(n << s as u64), d, dir)
        } else {
            div_round(n, &(d << (-s) as u64), dir)
        };
        Dyadic::new(m, -s)
    }

    pub fn from_rational(q: &BigRational, bits: u64, dir: Rounding) -> Dyadic {
        Self::from_ratio(q.numer(), q.denom(), bits, dir)
    }

    /// `self / other` rounded to `bits` significant bits.
    pub fn div(&self, other: &Dyadic, bits: u64, dir: Rounding) -> Dyadic {
        let q = Self::from_ratio(&self.mant, &other.mant, bits, dir);
        q.shl(self.exp - other.exp)
    }

    /// Square root of a nonnegative dyadic rounded to at least `bits` bits.
    pub fn sqrt(&self, bits: u64, dir: Rounding) -> Dyadic {
        assert!(self.signum() >= 0, "dyadic sqrt of negative value");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let target = 2 * bits + 2;
        let mut k = target.saturating_sub(self.mant.bits()) as i64;
        if (self.exp - k) % 2 != 0 {
            k += 1;
        }
        let scaled = &self.mant << k as u64;
        let mut r = scaled.sqrt();
        if dir == Rounding::Up && &r * &r != scaled {
            r += 1;
        }
        Dyadic::new(r, (self.exp - k) / 2)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.round(60, Rounding::Down);
        let m = r.mant.to_f64().unwrap_or(0.0);
        m * 2f64.powi(r.exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// `floor` or `ceil` of `self * 10^digits` as an integer.
    pub fn scaled_decimal(&self, digits: u32, dir: Rounding) -> BigInt {
        let scale = BigInt::from(10u32).pow(digits);
        let n = &self.mant * scale;
        if self.exp >= 0 {
            n << self.exp as u64
        } else {
            div_round(&n, &pow2((-self.exp) as u64), dir)
        }
    }

    /// Decimal string with `digits` fractional digits, rounded in the given direction.
    pub fn to_decimal(&self, digits: u32, dir: Rounding) -> String {
        format_scaled(&self.scaled_decimal(digits, dir), digits)
    }
}

/// Formats the integer `n` as a decimal with `digits` implied fractional digits.
pub(crate) fn format_scaled(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let digits = digits as usize;
    let body = if digits == 0 {
        s
    } else if s.len() <= digits {
        format!("0.{}{}", "0".repeat(digits - s.len()), s)
    } else {
        let (i, f) = s.split_at(s.len() - digits);
        format!("{i}.{f}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).signum().cmp(&0)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20, Rounding::Down))
    }
}
