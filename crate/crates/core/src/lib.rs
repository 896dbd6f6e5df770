//! Casimir friction between two parallel half-spaces in slow relative motion.
//!
//! The crate is `no_std` (with `alloc`) and purely numerical: unit handling,
//! Matsubara response kernels, Drude materials and their spectral densities,
//! electrostatic dipole coupling, and assembly of the friction force per unit
//! area. File formats, the command line and the verification oracles live in
//! the `casimir-friction` companion crate.

#![no_std]
// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Tensor code reads best in index notation.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod coupling_geometry;
pub mod error;
pub mod friction_engine;
pub mod materials;
pub mod quadrature;
pub mod quantities;
pub mod response_kernel;
pub mod special;

pub use error::{Error, Result};
pub use friction_engine::{FrictionReport, Medium, Route, Scenario};
pub use materials::{DrudeMaterial, SpectralDistribution};
pub use response_kernel::{MatsubaraSeries, OscillatorModel};
