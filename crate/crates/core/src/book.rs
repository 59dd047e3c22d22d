//! Compiles and runs every code snippet in the guide (`book/`) as a
//! doc-test, so the book cannot drift from the library. One module per
//! chapter keeps a failure pointed at its source file.

#[doc = include_str!("../../../README.md")]
pub mod readme {}

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/prime-decompositions.md")]
pub mod prime_decompositions {}

#[doc = include_str!("../../../book/src/exact-linear-algebra.md")]
pub mod exact_linear_algebra {}

#[doc = include_str!("../../../book/src/chain-complexes.md")]
pub mod chain_complexes {}

#[doc = include_str!("../../../book/src/classifying-spaces.md")]
pub mod classifying_spaces {}

#[doc = include_str!("../../../book/src/group-cohomology.md")]
pub mod group_cohomology {}

#[doc = include_str!("../../../book/src/covers-and-certificates.md")]
pub mod covers_and_certificates {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
