//! Random exact expressions and an independent binary floating-point oracle.
#![allow(dead_code)]

use astro_float::{BigFloat, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use sulva_core::exactreal::{Dyadic, ExactError};
use sulva_core::{ConstructibleReal as R, Interval};

pub const ORACLE_BITS: usize = 1100;
const RM: RoundingMode = RoundingMode::ToEven;

/// Small expression trees; square roots only of provably positive operands.
#[derive(Clone, Debug)]
pub enum E {
    Q(i64, i64),
    Root(i64),
    Add(Box<E>, Box<E>),
    Sub(Box<E>, Box<E>),
    Mul(Box<E>, Box<E>),
    /// `sqrt(e^2 + q)` with `q > 0`.
    Hyp(Box<E>, i64, i64),
}

pub fn leaf() -> impl Strategy<Value = E> {
    prop_oneof![
        (-40i64..40, 1i64..13).prop_map(|(n, d)| E::Q(n, d)),
        prop::sample::select(vec![2i64, 3, 5, 6, 8, 12, 18]).prop_map(E::Root),
    ]
}

pub fn expr() -> impl Strategy<Value = E> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| E::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| E::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| E::Mul(Box::new(a), Box::new(b))),
            (inner, 1i64..6, 1i64..4).prop_map(|(a, n, d)| E::Hyp(Box::new(a), n, d)),
        ]
    })
}

pub fn exact(e: &E) -> Result<R, ExactError> {
    Ok(match e {
        E::Q(n, d) => R::from_rational(*n, *d)?,
        E::Root(k) => R::from_int(*k).sqrt()?,
        E::Add(a, b) => exact(a)?.try_add(&exact(b)?)?,
        E::Sub(a, b) => exact(a)?.try_sub(&exact(b)?)?,
        E::Mul(a, b) => exact(a)?.try_mul(&exact(b)?)?,
        E::Hyp(a, n, d) => exact(a)?
            .square()
            .try_add(&R::from_rational(*n, *d)?)?
            .sqrt()?,
    })
}

pub fn oracle(e: &E) -> BigFloat {
    let p = ORACLE_BITS;
    let int = |n: i64| BigFloat::from_i64(n, p);
    match e {
        E::Q(n, d) => int(*n).div(&int(*d), p, RM),
        E::Root(k) => int(*k).sqrt(p, RM),
        E::Add(a, b) => oracle(a).add(&oracle(b), p, RM),
        E::Sub(a, b) => oracle(a).sub(&oracle(b), p, RM),
        E::Mul(a, b) => oracle(a).mul(&oracle(b), p, RM),
        E::Hyp(a, n, d) => {
            let x = oracle(a);
            x.mul(&x, p, RM)
                .add(&int(*n).div(&int(*d), p, RM), p, RM)
                .sqrt(p, RM)
        }
    }
}

/// The exact dyadic value of a finite binary float.
pub fn to_dyadic(x: &BigFloat) -> Dyadic {
    if x.is_zero() {
        return Dyadic::zero();
    }
    let (words, _, sign, exp, _) = x.as_raw_parts().expect("finite oracle value");
    let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
    let mag = BigInt::from(BigUint::from_bytes_le(&bytes));
    let mant = if sign == Sign::Neg { -mag } else { mag };
    // value = 0.m * 2^exp with the mantissa spanning all words
    let width = (words.len() * std::mem::size_of_val(&words[0]) * 8) as i64;
    Dyadic::new(mant, exp as i64 - width)
}

/// True when `iv` contains the oracle value up to its own rounding error.
pub fn encloses(iv: &Interval, o: &Dyadic) -> bool {
    let slack = o.abs().max(Dyadic::from_int(1)).shl(-1000);
    iv.lo() <= &o.add(&slack) && &o.sub(&slack) <= iv.hi()
}

pub fn within_cap(e: &E) -> Option<R> {
    match exact(e) {
        Ok(x) => Some(x),
        Err(ExactError::Capacity(_)) => None,
        Err(other) => panic!("unexpected error for {e:?}: {other}"),
    }
}
