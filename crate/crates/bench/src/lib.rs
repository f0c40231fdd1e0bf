//! Shared inputs for the criterion benches.

use sulva_core::exactreal::ExactError;
use sulva_core::ConstructibleReal as R;

/// The Dani construction script, embedded so benches do not touch the filesystem.
pub const DANI_SCRIPT: &str = include_str!("../../core/examples/dani_circle.sulva");

/// `sqrt(a + b*sqrt(c))` for a radicand that denests, e.g. `sqrt(3 + 2*sqrt(2)) = 1 + sqrt(2)`.
pub fn nested_radicand(a: i64, b: i64, c: i64) -> Result<R, ExactError> {
    R::from_int(c)
        .sqrt()?
        .try_mul(&R::from_int(b))?
        .try_add(&R::from_int(a))
}
