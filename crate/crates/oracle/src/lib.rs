//! Slow, simple reference computations for cross-checking `springs-core`.
//!
//! Nothing here shares code with the core crate: integrals use adaptive
//! Gauss–Kronrod, dynamics use classical RK4 on the raw equations, and the
//! algebraic checks run in exact rational arithmetic.

pub mod exact;
pub mod fit;
pub mod ode;
pub mod quad;
