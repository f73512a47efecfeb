//! Exact arithmetic: big rationals, integer roots, and certified enclosures.
//!
//! Everything here is either exact or a two-sided bound with a stated bit
//! budget; no floating point participates in any verdict.

pub mod enclosure;
pub mod ln;
pub mod rat;
pub mod roots;
pub mod threshold;

pub use enclosure::{root_enclosure, Enclosure};
pub use ln::{ln2_enclosure, ln_enclosure};
pub use rat::Rat;
pub use roots::{
    ceil_root_big, floor_root, floor_root_big, next_power_base, pow_exceeds, pow_saturating,
};
pub use threshold::{
    min_integer_exceeding, threshold_enclosure, threshold_enclosure_capped, threshold_start,
    ThresholdKind, DEFAULT_PRECISION_CAP,
};
