//! Finite coefficient rings and finite modules over them.

pub mod compat;
pub mod module;
pub mod ring;

pub use compat::{
    annihilator, annihilator_of_quotient, annihilator_of_submodule, check_completely, check_derived_closure,
    check_quotient, is_bass, is_compatible, is_completely_compatible, is_coprime_module, is_delta_compatible,
    is_prime_module, is_sigma_compatible, maximal_over, ClosureReport, CompatReport, Direction, Law, ModuleProperty,
    Violation,
};
pub use module::{FiniteModule, Lattice, Scope, Submodule, LATTICE_CAP, MODULE_CAP};
pub use ring::FiniteRing;
