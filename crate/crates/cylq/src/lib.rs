//! Covariant integral quantization on the discrete cylinder Z x S^1.
//!
//! The crate implements coherent-state (Gabor) analysis and synthesis on the
//! circle, weight-function quantization of classical observables into
//! operators on L^2(S^1), Wigner distributions on the cylinder, and
//! semi-classical portraits, together with a verification suite for the
//! algebraic identities these constructions satisfy.

pub mod cli;
pub mod core;
pub mod fiducials;
pub mod fourier;
pub mod gabor;
pub mod portrait;
pub mod quantize;
pub mod verify;
pub mod wigner;
