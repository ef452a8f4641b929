//! Hyperbolic monopoles from ADHM-type data `(L, M)`.
//!
//! The crate builds data with prescribed rotational symmetry, checks the
//! constraints that make it a monopole, and evaluates the fields and spectral
//! data it determines.
//!
//! - [`quat`]: quaternions and quaternionic matrices
//! - [`suirrep`]: irreducible representations of `sp(1)`, real forms, decomposition
//! - [`bweb`]: the equivariant intertwining triple between adjacent odd irreps
//! - [`adhm`]: the data type, gauge and rotation actions, validity checks
//! - [`symmetry`]: symmetric ansatzes, named families, structure-group tests
//! - [`fields`]: Higgs field, energy density, boundary behaviour, Bogomolny check
//! - [`observables`]: spectral curve and rational map
//! - [`cli`]: the `monopole` command
//!
//! ```
//! use monopole_adhm::fields::Fields;
//! use monopole_adhm::symmetry::family_mzero;
//!
//! let f = Fields::new(&family_mzero(1).unwrap().data).unwrap();
//! let r: f64 = 0.5;
//! let phi = f.higgs_norm_sq([0.0, 0.0, r]).unwrap().sqrt();
//! assert!((phi - r / (1.0 + r * r)).abs() < 1e-12);
//! ```

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod linalg;
pub mod quat;
pub mod tol;
pub mod suirrep;
pub mod bweb;
pub mod adhm;
pub mod symmetry;
pub mod fields;
pub mod observables;
pub mod cli;
