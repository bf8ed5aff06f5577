//! Exact combinatorics of cyclic quotient singularities and their GT-varieties.

pub mod canonical;
pub mod cohomology;
pub mod error;
pub mod hilbert;
pub mod invariants;
pub mod lattice;
pub mod linalg;
pub mod serde_bigint;
pub mod toric;
pub mod wlp;

pub use error::{Error, Result};
pub use lattice::{binom, lex_compare, normalize_spec, ExponentVector, GroupSpec};
