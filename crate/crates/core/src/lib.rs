//! Pulse design for ensembles of driven harmonic oscillators ("springs").
//!
//! Every member of the ensemble obeys `ż = iωz + u(t)` with its own natural
//! frequency `ω` and a single shared real control `u`. The crate provides
//! three families of controls that steer a band of frequencies to prescribed
//! end states (frequency sweeps, shortcuts to adiabaticity and linear-quadratic
//! optimal control), exact propagation of the springs under each of them, and
//! two applications built on the spring picture: broadband spin inversion on
//! the Bloch sphere and ion cyclotron excitation.
//!
//! The crate is `no_std` and only needs an allocator.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod adiabatic;
pub mod erfi;
pub mod error;
pub mod flat;
pub mod grid;
pub mod icr;
mod linalg;
pub mod metrics;
pub mod oct;
pub mod poly;
pub mod pulse;
pub mod quad;
pub mod spectral;
pub mod spin;
pub mod sta;

pub use error::{Error, Result, Warning};
pub use grid::{EnsembleProblem, FrequencyGrid, GridConvention, SpringState};
pub use num_complex::Complex64;
pub use poly::Polynomial;
pub use pulse::Pulse;
