//! Exact-arithmetic laboratory for the circle and square constructions of the
//! Manava Sulvasutra and their rival readings.
//!
//! - [`exactreal`]: constructible reals over quadratic towers, pi-linear
//!   quantities, certified enclosures.
//! - [`geom`]: axis-aligned squares, circles and the primitives the
//!   constructions compose.
//! - [`catalog`]: the rules and constructions as named, cited procedures.
//! - [`analysis`]: implied pi, certified relative errors, rankings.
//! - [`script`]: the `.sulva` construction-script language.
//! - [`svg`]: deterministic SVG rendering of figures.

pub mod analysis;
pub mod catalog;
pub mod exactreal;
pub mod geom;
pub mod script;
pub mod svg;

pub use exactreal::{ConstructibleReal, ExactError, Interval, Quantity};
