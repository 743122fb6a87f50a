//! Finite posets, join-specifications, the closure operators they generate,
//! and the lattice-theoretic checks built on top of them: frame detection,
//! the `Φ = Υ` recursion, meet-distributivity and powerset representations.
//!
//! Subsets of a poset are 64-bit masks, so carriers hold at most
//! [`MAX_ELEMENTS`] points. Exhaustive routines take a `limit` that bounds how
//! many sets they will enumerate; [`DEFAULT_SIZE_GUARD`] is a sensible value.

pub mod cardinal;
pub mod checks;
pub mod closure;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod frame;
pub mod generate;
pub mod joinspec;
pub mod lattice;
pub mod poset;
pub mod representation;
pub mod subset;

pub use cardinal::Cardinal;
pub use closure::{ClosureFamily, GaloisCheck, GammaClosure, GenerationRadius};
pub use error::{Error, Result};
pub use frame::{check_hm, FrameAnalysis, MainTheoremVerdict};
pub use joinspec::JoinSpec;
pub use lattice::{CompletionLattice, FiniteLattice, FrameCheck, FrameVerdict, PosetLattice};
pub use poset::{Poset, DEFAULT_SIZE_GUARD};
pub use representation::{
    build_representation, classify_triples, decide_representable, is_lmd, verify_representation,
    Decision, Representation,
};
pub use subset::{Subset, MAX_ELEMENTS};
