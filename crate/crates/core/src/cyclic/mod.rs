//! Contraactions, the cocyclic operator `τ`, and Connes' boundary `B`.

mod contraaction;
mod report;
mod structure;

pub use contraaction::{frobenius_contraaction, symmetric_contraaction_crosscheck, ContraBase, Contraaction};
pub use report::{cyclic_operad_report, homotopy_report};
pub use structure::{conjugate, general_tau_matrix, post_compose, CyclicStructure, TauSource, Translation};
