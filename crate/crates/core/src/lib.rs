//! Galois supercharacter theories of the finite general linear groups.
//!
//! The crate enumerates the class and character parameters of `GL_n(F_q)`,
//! computes their orbits under `Gal(Q(ζ_|G|)/Q(ζ_d))`, realizes the
//! characteristic map into multi-alphabet symmetric functions, checks the
//! positive self-dual Hopf algebra structure of the resulting Galois class
//! functions, and cross-checks all of it against brute-force matrix groups.
//!
//! Layout:
//!
//! - [`numbers`]: exact rationals, cyclotomic numbers, group orders, Galois residues.
//! - [`ffield`]: finite-field towers and q-cyclotomic cosets (the index sets Φ and Θ).
//! - [`combin`]: partitions and partition-valued functions.
//! - [`galois`]: the Galois action on parameters, Galois classes and irreducibles.
//! - [`symf`]: multi-alphabet symmetric functions.
//! - [`charmap`]: the characteristic map and character values.
//! - [`hopfpsh`]: structure constants, self-duality, cuspidals, tensor decomposition.
//! - [`oracle`]: explicit matrix groups and Burnside–Dixon character tables.
//! - [`json`]: table documents read and written by the command-line tool.

#![allow(clippy::needless_range_loop)]

pub mod charmap;
pub mod combin;
mod error;
pub mod ffield;
pub mod galois;
pub mod hopfpsh;
pub mod json;
pub mod numbers;
pub mod oracle;
pub mod symf;

pub use error::{Error, Result};
