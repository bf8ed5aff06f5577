//! The chapters of `book/src`, one module each. `cargo test -p gtvar-guide`
//! runs every Rust snippet in the book.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/group-specs.md")]
pub mod group_specs {}

#[doc = include_str!("../../../book/src/gt-systems.md")]
pub mod gt_systems {}

#[doc = include_str!("../../../book/src/zero-sum.md")]
pub mod zero_sum {}

#[doc = include_str!("../../../book/src/toric-ideal.md")]
pub mod toric_ideal {}

#[doc = include_str!("../../../book/src/canonical-module.md")]
pub mod canonical_module {}

#[doc = include_str!("../../../book/src/hilbert-series.md")]
pub mod hilbert_series {}

#[doc = include_str!("../../../book/src/cohomology.md")]
pub mod cohomology {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
