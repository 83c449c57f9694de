//! Operads, species maps and Hopf structures on finite posets.
//!
//! The crate is organised bottom-up: [`poset`] holds labeled posets, [`canon`]
//! turns them into isomorphism classes, [`operad`] implements the four
//! partial compositions, [`species`] the refinement map and its inverse,
//! [`hopf`] the class-level products and coproducts, [`structure`] the
//! N-free and nabla-compatible suboperads, and [`enumeration`] exhaustive
//! generation.

// Index loops over bitset rows read better than zipped iterators here.
#![allow(clippy::needless_range_loop)]

pub mod bits;
pub mod canon;
pub mod enumeration;
pub mod error;
pub mod hopf;
pub mod operad;
pub mod poset;
pub mod report;
pub mod species;
pub mod structure;
pub mod worked;

pub use canon::{are_isomorphic, canonicalize, contains_induced, CanonKey, IsoClass};
pub use error::{Error, Result};
pub use operad::{Family, InsertionSite};
pub use poset::{poset, Label, Poset, PosetDoc};
pub use report::VerificationReport;
pub use species::FormalSum;
