//! Compiles the guide's code listings as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/groupoids.md")]
pub mod groupoids {}
#[doc = include_str!("../../../book/src/double-groupoids.md")]
pub mod double_groupoids {}
#[doc = include_str!("../../../book/src/core.md")]
pub mod core {}
#[doc = include_str!("../../../book/src/diagonal.md")]
pub mod diagonal {}
#[doc = include_str!("../../../book/src/factorizations.md")]
pub mod factorizations {}
#[doc = include_str!("../../../book/src/files-and-cli.md")]
pub mod files_and_cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
