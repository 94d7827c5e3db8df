use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite spring state at omega = {omega}")]
    PropagationFailure { omega: f64 },
    #[error("sweep rate must be positive (got {rate})")]
    InvalidSweep { rate: f64 },
    #[error("erfi argument {re} + {im}i outside the supported domain")]
    ErfiDomain { re: f64, im: f64 },
    #[error("flat output violates boundary condition {order} at {end} end by {violation:e}")]
    InvalidG {
        order: usize,
        end: &'static str,
        violation: f64,
    },
    #[error("system is not controllable (Kalman rank {rank} < {n}) and the target is unreachable")]
    NotControllable { rank: usize, n: usize },
    #[error("target not in the reachable subspace (rank {rank}, residual {residual:e})")]
    UnreachableTarget { rank: usize, residual: f64 },
    #[error("ill-conditioned interpolation system (condition {condition:e})")]
    Conditioning { condition: f64 },
    #[error("endpoint system is numerically singular (condition {condition:e})")]
    NearSingular { condition: f64 },
    #[error("penalty lambda must be positive (got {lambda})")]
    InvalidPenalty { lambda: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    #[error("time step {dt:e} s does not resolve the carrier (need <= {max_dt:e} s)")]
    Resolution { dt: f64, max_dt: f64 },
}

/// Soft diagnostics returned next to a successful result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Warning {
    /// Frequency lies outside the swept band, where the asymptotic formula does not apply.
    OutsideSweep { omega: f64 },
    /// Linear system was solved in the minimum-norm sense.
    IllConditioned { condition: f64 },
    /// Detuning too large for the rotating-wave approximation.
    LargeDetuning { ratio: f64 },
    /// Orbit radius is zero so the phase is undefined.
    UndefinedPhase,
}
