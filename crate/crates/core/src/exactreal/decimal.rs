use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::{format_scaled, Dyadic, Rounding};
use super::ConstructibleReal;

fn round_half_up(d: &Dyadic, digits: u32) -> BigInt {
    let scale = Dyadic::new(BigInt::from(10u32).pow(digits), 0);
    d.mul(&scale)
        .add(&Dyadic::new(BigInt::one(), -1))
        .scaled_decimal(0, Rounding::Down)
}

/// Number of decimals in the terminating expansion of `q`, if it terminates.
fn terminating_digits(q: &BigRational) -> Option<u32> {
    let mut d = q.denom().clone();
    let (two, five) = (BigInt::from(2u32), BigInt::from(5u32));
    let (mut a, mut b) = (0u32, 0u32);
    while d.is_even() {
        d /= &two;
        a += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        b += 1;
    }
    d.is_one().then_some(a.max(b))
}

fn rational_decimal(q: &BigRational, digits: u32) -> String {
    if let Some(k) = terminating_digits(q) {
        if k <= digits {
            let n = q.numer() * BigInt::from(10u32).pow(k) / q.denom();
            return format_scaled(&n, k);
        }
    }
    // round half away from zero
    let scaled = q * BigRational::from_integer(BigInt::from(10u32).pow(digits));
    let half = BigRational::new(1.into(), 2.into());
    let n = if scaled.is_negative() {
        -((-scaled) + half).floor().to_integer()
    } else {
        (scaled + half).floor().to_integer()
    };
    format!("{}…", format_scaled(&n, digits))
}

pub(super) fn to_decimal(x: &ConstructibleReal, digits: u32) -> String {
    if let Some(q) = x.as_rational() {
        return rational_decimal(q, digits);
    }
    let mut p = 64u32;
    loop {
        let iv = x.enclose(p);
        let lo = round_half_up(iv.lo(), digits);
        if lo == round_half_up(iv.hi(), digits) {
            return format!("{}…", format_scaled(&lo, digits));
        }
        p *= 2;
    }
}
