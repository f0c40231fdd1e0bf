//! Exact arithmetic over constructible reals, pi-linear quantities and
//! certified interval enclosures.

use std::sync::atomic::{AtomicU32, AtomicUsize, Ordering};

use thiserror::Error;

mod decimal;
pub mod dyadic;
pub mod interval;
mod pi;
mod quantity;
mod real;

pub use dyadic::{Dyadic, Rounding};
pub use interval::Interval;
pub use pi::{pi_enclosure, PI_CAPACITY_BITS};
pub use quantity::Quantity;
pub use real::{ConstructibleReal, Tower};

pub const DEFAULT_TOWER_CAP: usize = 6;
pub const DEFAULT_SIGN_REFINEMENT_BITS: u32 = 256;

static TOWER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_TOWER_CAP);
static SIGN_REFINEMENT_BITS: AtomicU32 = AtomicU32::new(DEFAULT_SIGN_REFINEMENT_BITS);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity error: {0}")]
    Capacity(String),
    #[error("unsupported quantity: {0}")]
    UnsupportedQuantity(String),
}

/// Maximum number of adjoined square roots in any tower built by the
/// `try_*`/`sqrt` operations. Process-wide.
pub fn tower_cap() -> usize {
    TOWER_CAP.load(Ordering::Relaxed)
}

pub fn set_tower_cap(cap: usize) {
    TOWER_CAP.store(cap, Ordering::Relaxed);
}

/// Working precision up to which `sign` tries interval refinement before
/// switching to the exact conjugate-norm test.
pub fn sign_refinement_bits() -> u32 {
    SIGN_REFINEMENT_BITS.load(Ordering::Relaxed)
}

pub fn set_sign_refinement_bits(bits: u32) {
    SIGN_REFINEMENT_BITS.store(bits, Ordering::Relaxed);
}
