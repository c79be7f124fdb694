//! Semiclassical spectral numerics for random Landau operators.
//!
//! Phase-plane symbols are quantized either in the scaled Hermite basis or on a
//! Nyström kernel grid. On top of that sit closed-form radial spectra, the
//! corrected single-site symbols with their gap verifier, the Grushin effective
//! Hamiltonian, and the random lattice operator with its Monte Carlo statistics.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

mod error;
pub(crate) mod math;

pub mod ensemble;
pub mod grushin;
pub mod jet;
pub mod linalg;
pub mod mehler;
pub mod oscillator;
pub mod singlesite;
pub mod stats;
pub mod symbol;
pub mod weyl;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use symbol::{PhaseSymbol, RadialProfile};
