use std::fmt;

use super::interval::Interval;
use super::pi::{pi_enclosure, PI_CAPACITY_BITS};
use super::{ConstructibleReal, ExactError};

/// `c0 + c1 * pi` with constructible coefficients.
///
/// Circle areas and circumferences live here; everything else has `c1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantity {
    c0: ConstructibleReal,
    c1: ConstructibleReal,
}

impl Quantity {
    pub fn new(c0: ConstructibleReal, c1: ConstructibleReal) -> Self {
        Quantity { c0, c1 }
    }

    pub fn real(c0: ConstructibleReal) -> Self {
        Quantity::new(c0, ConstructibleReal::zero())
    }

    pub fn pi_multiple(c1: ConstructibleReal) -> Self {
        Quantity::new(ConstructibleReal::zero(), c1)
    }

    pub fn zero() -> Self {
        Quantity::real(ConstructibleReal::zero())
    }

    pub fn c0(&self) -> &ConstructibleReal {
        &self.c0
    }

    pub fn c1(&self) -> &ConstructibleReal {
        &self.c1
    }

    /// The constructible value when the pi part is zero.
    pub fn as_real(&self) -> Option<&ConstructibleReal> {
        self.c1.is_zero().then_some(&self.c0)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn add(&self, other: &Quantity) -> Result<Quantity, ExactError> {
        Ok(Quantity::new(
            self.c0.try_add(&other.c0)?,
            self.c1.try_add(&other.c1)?,
        ))
    }

    pub fn sub(&self, other: &Quantity) -> Result<Quantity, ExactError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Quantity {
        Quantity::new(self.c0.neg(), self.c1.neg())
    }

    pub fn scale(&self, k: &ConstructibleReal) -> Result<Quantity, ExactError> {
        Ok(Quantity::new(self.c0.try_mul(k)?, self.c1.try_mul(k)?))
    }

    /// Product of two quantities; at least one must have zero pi part.
    pub fn mul(&self, other: &Quantity) -> Result<Quantity, ExactError> {
        match (self.as_real(), other.as_real()) {
            (Some(k), _) => other.scale(k),
            (_, Some(k)) => self.scale(k),
            _ => Err(ExactError::UnsupportedQuantity(
                "product of two pi-carrying quantities (pi^2) is not representable".into(),
            )),
        }
    }

    /// `enclose(c0) + enclose(c1) * pi` at `precision_bits`.
    pub fn enclose(&self, precision_bits: u32) -> Result<Interval, ExactError> {
        if precision_bits > PI_CAPACITY_BITS {
            return Err(ExactError::Capacity(format!(
                "quantity enclosure at {precision_bits} bits exceeds pi capacity"
            )));
        }
        let p = precision_bits.max(4);
        let guard = (p + 4).min(PI_CAPACITY_BITS);
        if self.c1.is_zero() {
            return Ok(self.c0.enclose(p));
        }
        let pi = pi_enclosure(guard)?;
        let v = self.c0.enclose(guard).add(&self.c1.enclose(guard).mul(&pi));
        Ok(v.with_precision(p))
    }

    /// Exact sign. Nonzero pi part with nonzero value is decided by refinement,
    /// which terminates since pi is not constructible.
    pub fn sign(&self) -> Result<i32, ExactError> {
        if self.c1.is_zero() {
            return Ok(self.c0.sign());
        }
        if self.c0.is_zero() {
            return Ok(self.c1.sign());
        }
        let mut p = 32;
        while p <= PI_CAPACITY_BITS {
            if let Some(s) = self.enclose(p)?.sign() {
                return Ok(s);
            }
            p *= 2;
        }
        Err(ExactError::Capacity(
            "sign of pi-linear quantity not resolved within pi capacity".into(),
        ))
    }
}

impl From<ConstructibleReal> for Quantity {
    fn from(c0: ConstructibleReal) -> Self {
        Quantity::real(c0)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0.is_zero(), self.c1.is_zero()) {
            (_, true) => write!(f, "{}", self.c0),
            (true, false) => write!(f, "({})*pi", self.c1),
            (false, false) => write!(f, "{} + ({})*pi", self.c0, self.c1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ConstructibleReal {
        ConstructibleReal::from_rational(n, d).unwrap()
    }

    #[test]
    fn pi_squared_is_unsupported() {
        let pi = Quantity::pi_multiple(r(1, 1));
        assert!(matches!(
            pi.mul(&pi),
            Err(ExactError::UnsupportedQuantity(_))
        ));
        assert!(pi.mul(&Quantity::real(r(2, 1))).is_ok());
    }

    #[test]
    fn gupta_area_enclosure() {
        let q = Quantity::pi_multiple(r(8, 25));
        let e = q.enclose(60).unwrap();
        let (lo, hi) = e.to_decimal_bounds(7);
        assert!(lo.as_str() <= "1.0053096" && "1.0053096" <= hi.as_str());
        assert!(e.meets_precision(60));
    }

    #[test]
    fn manava_circumference_sum() {
        let d = r(1, 1);
        let three_d = Quantity::real(&r(3, 1) * &d);
        let fifth = Quantity::real(&d / &r(5, 1));
        let c = three_d.add(&fifth).unwrap();
        assert_eq!(c.as_real(), Some(&r(16, 5)));
    }

    #[test]
    fn sign_of_mixed_quantity() {
        // 16/5 - pi > 0, 3 - pi < 0
        let q = Quantity::new(r(16, 5), r(-1, 1));
        assert_eq!(q.sign().unwrap(), 1);
        let q = Quantity::new(r(3, 1), r(-1, 1));
        assert_eq!(q.sign().unwrap(), -1);
        assert_eq!(Quantity::zero().sign().unwrap(), 0);
    }
}
