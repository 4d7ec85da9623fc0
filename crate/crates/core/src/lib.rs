//! Exact computational homological algebra for finite-dimensional elementary
//! algebras presented as quivers with relations.
//!
//! The crate builds the algebra `A = kQ/I` from a small text DSL, computes
//! right modules, projective covers, syzygies and minimal resolutions, and
//! evaluates the Hattori-Stallings trace of endomorphisms of projectives in
//! `A/[A,A]`, together with its extension to bounded complexes of
//! projectives. Everything is exact: scalars are rationals or prime-field
//! residues, and every identity is checked with tolerance zero.

pub mod algebra;
pub mod complexes;
pub mod error;
pub mod exactlin;
pub mod modrep;
pub mod presentation;
pub mod trace;
pub mod verify;

pub use error::Error;
pub use exactlin::{FieldSpec, Scalar, ScalarMatrix, Subspace};
