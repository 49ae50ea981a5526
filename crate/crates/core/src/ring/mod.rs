//! Coefficient rings and twist data.

pub mod carrier;
pub(crate) mod poly;
pub mod twist;

pub use carrier::{Carrier, RingElement};
pub use twist::{DeltaSpec, LawCheck, TwistedRing, ValidationReport};
