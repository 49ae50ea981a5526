//! Skew Ore polynomial rings over computable carriers, inverse polynomial
//! modules, and exhaustive checks on finite modules.

pub mod catalog;
pub mod config;
pub mod error;
pub mod expr;
pub mod finite;
pub mod inverse;
pub mod primes;
pub mod report;
pub mod ring;
pub mod skew;

pub use error::{Error, Result};
pub use inverse::{check_product_relation, DiscrepancyReport, InvModule, InvPoly, RightModule, RingQuotient};
pub use ring::{Carrier, DeltaSpec, RingElement, TwistedRing};
pub use skew::{Degree, OreAlgebra, SkewPoly};
pub use finite::{FiniteModule, FiniteRing, Lattice, Scope, Submodule};
pub use catalog::{preset, AlgebraSpec, PRESETS};
pub use config::{load_fixture, parse_fixture, Fixture, ModuleSpec};
pub use expr::{parse_poly, parse_ring};
pub use primes::{AttReport, Check, Status};
pub use report::ReportEnvelope;
