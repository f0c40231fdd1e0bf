//! Shipped high-precision constant for pi.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Num, One};

use super::dyadic::{Dyadic, Rounding};
use super::interval::Interval;
use super::ExactError;

/// Hexadecimal digits of `floor(pi * 2^1088)`, i.e. the binary expansion of pi
/// truncated after 1088 fractional bits (`3.243F6A8885A308D3...` in base 16).
const PI_HEX: [&str; 5] = [
    "3243f6a8885a308d313198a2e03707344a4093822299f31d0082efa98ec4e6c8",
    "9452821e638d01377be5466cf34e90c6cc0ac29b7c97c50dd3f84d5b5b547091",
    "79216d5d98979fb1bd1310ba698dfb5ac2ffd72dbd01adfb7b8e1afed6a267e9",
    "6ba7c9045f12c7f9924a19947b3916cf70801f2e2858efc16636920d871574e6",
    "9a458fea3f4933d7e",
];

const PI_FRACTION_BITS: i64 = 1088;

/// Largest precision `pi_enclosure` accepts.
pub const PI_CAPACITY_BITS: u32 = 1024;

fn pi_truncated() -> &'static BigInt {
    static CELL: OnceLock<BigInt> = OnceLock::new();
    CELL.get_or_init(|| {
        let hex: String = PI_HEX.concat();
        BigInt::from_str_radix(&hex, 16).expect("valid pi constant")
    })
}

/// Certified enclosure of pi with width at most `2^-(precision_bits+1)`.
pub fn pi_enclosure(precision_bits: u32) -> Result<Interval, ExactError> {
    if precision_bits > PI_CAPACITY_BITS {
        return Err(ExactError::Capacity(format!(
            "pi requested at {precision_bits} bits; shipped constant supports {PI_CAPACITY_BITS}"
        )));
    }
    let p = pi_truncated();
    let lo = Dyadic::new(p.clone(), -PI_FRACTION_BITS);
    let hi = Dyadic::new(p + BigInt::one(), -PI_FRACTION_BITS);
    let grid = precision_bits as i64 + 2;
    Ok(Interval::new(
        lo.round_to_grid(grid, Rounding::Down),
        hi.round_to_grid(grid, Rounding::Up),
        precision_bits,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn pi_at_20_bits() {
        let pi = pi_enclosure(20).unwrap();
        assert!(
            pi.lo()
                > &Dyadic::from_rational(&BigRational::new(31.into(), 10.into()), 40, Rounding::Up)
        );
        assert!(
            pi.hi()
                < &Dyadic::from_rational(
                    &BigRational::new(32.into(), 10.into()),
                    40,
                    Rounding::Down
                )
        );
        assert!(pi.meets_precision(20));
        let (lo, hi) = pi.to_decimal_bounds(5);
        assert!(lo.as_str() <= "3.14159" && hi.as_str() >= "3.14160");
    }

    #[test]
    fn mana_value_exceeds_pi() {
        let sixteen_fifths = BigRational::new(16.into(), 5.into());
        assert!(pi_enclosure(20).unwrap().hi().to_rational() < sixteen_fifths);
    }

    #[test]
    fn nested_under_refinement() {
        let mut prev = pi_enclosure(4).unwrap();
        for p in [8, 16, 64, 256, 1024] {
            let cur = pi_enclosure(p).unwrap();
            assert!(cur.is_subset_of(&prev));
            prev = cur;
        }
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(matches!(pi_enclosure(1025), Err(ExactError::Capacity(_))));
    }
}
