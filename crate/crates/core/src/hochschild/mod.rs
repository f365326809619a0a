//! Hochschild cochains, their cosimplicial structure and operad compositions.

mod cochain;
mod complex;
mod module;
mod operad;
mod suite;

pub use cochain::{checked_pow, decode, decode_into, encode, Cochain};
pub use complex::{CochainComplex, DEFAULT_BUDGET};
pub use module::CoefficientModule;
pub use operad::{group_by_id, Groups, Insertion, Operad, OperadKind};
pub use suite::{associativity_checks, operad_axiom_report, unit_checks};
