//! Two-level systems driven by spring-designed pulses.
//!
//! Near the north pole the Bloch vector `(x, y)` obeys the same linear
//! equations as a spring, so a pulse sending springs to `(π/2, 0)` tilts
//! spins onto the equator. Playing it forward and then time-reversed inverts
//! them.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use nalgebra::DVector;
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::flat::{general_sta, LinearSystem};
use crate::pulse::Pulse;
use crate::spectral::propagate_exact;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochState {
    pub const NORTH: BlochState = BlochState { x: 0.0, y: 0.0, z: 1.0 };

    pub fn norm(&self) -> f64 {
        Float::sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
    }

    /// Polar angle from the north pole.
    pub fn theta(&self) -> f64 {
        Float::atan2(Float::hypot(self.x, self.y), self.z)
    }

    pub fn phi(&self) -> f64 {
        Float::atan2(self.y, self.x)
    }

    pub fn distance(&self, other: &BlochState) -> f64 {
        Float::sqrt((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + (self.z - other.z).powi(2))
    }

    fn rotate(&self, w: [f64; 3]) -> BlochState {
        let angle = Float::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
        if angle == 0.0 {
            return *self;
        }
        let k = [w[0] / angle, w[1] / angle, w[2] / angle];
        let v = [self.x, self.y, self.z];
        let (s, c) = (Float::sin(angle), Float::cos(angle));
        let kv = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
        let cross = [k[1] * v[2] - k[2] * v[1], k[2] * v[0] - k[0] * v[2], k[0] * v[1] - k[1] * v[0]];
        let r: [f64; 3] = core::array::from_fn(|i| v[i] * c + cross[i] * s + k[i] * kv * (1.0 - c));
        BlochState { x: r[0], y: r[1], z: r[2] }
    }
}

/// Inversion fidelity `J = -z`.
pub fn fidelity(state: &BlochState) -> f64 {
    -state.z
}

const GAUSS_OFFSET: f64 = 0.288_675_134_594_812_9; // √3/6

/// One fourth-order Magnus step of `v̇ = (0, u, ω) × v` over `[t, t + h]`.
pub fn bloch_step(state: &BlochState, pulse: &Pulse, omega: f64, t: f64, h: f64) -> BlochState {
    let u1 = pulse.eval(t + (0.5 - GAUSS_OFFSET) * h);
    let u2 = pulse.eval(t + (0.5 + GAUSS_OFFSET) * h);
    // (h/2)(w1 + w2) + (√3 h²/12) w2 × w1, with w = (0, u, ω)
    let c = Float::sqrt(3.0) * h * h / 12.0;
    let w = [c * omega * (u2 - u1), 0.5 * h * (u1 + u2), h * omega];
    state.rotate(w)
}

/// Evolves `initial` through `pulse` in `n_steps` equal steps.
pub fn bloch_evolve(initial: BlochState, pulse: &Pulse, omega: f64, n_steps: usize) -> BlochState {
    let n = n_steps.max(1);
    let h = pulse.t_f() / n as f64;
    let mut s = initial;
    for i in 0..n {
        s = bloch_step(&s, pulse, omega, i as f64 * h, h);
    }
    s
}

/// Final state from the north pole.
pub fn bloch_propagate(pulse: &Pulse, omega: f64, n_steps: usize) -> BlochState {
    bloch_evolve(BlochState::NORTH, pulse, omega, n_steps)
}

/// States at every step, `n_steps + 1` entries.
pub fn bloch_trajectory(initial: BlochState, pulse: &Pulse, omega: f64, n_steps: usize) -> Vec<BlochState> {
    let n = n_steps.max(1);
    let h = pulse.t_f() / n as f64;
    let mut out = Vec::with_capacity(n + 1);
    let mut s = initial;
    out.push(s);
    for i in 0..n {
        s = bloch_step(&s, pulse, omega, i as f64 * h, h);
        out.push(s);
    }
    out
}

/// Plays `pulses` back to back and returns the state at the end of each.
fn evolve_sequence(pulses: &[Pulse], omega: f64, n_steps: usize) -> BlochState {
    pulses
        .iter()
        .fold(BlochState::NORTH, |s, p| bloch_evolve(s, p, omega, n_steps))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Converged {
    pub state: BlochState,
    pub n_steps: usize,
    /// Change of the end state at the last doubling.
    pub change: f64,
}

/// Doubles the per-pulse step count from 4096 until the end state moves by less than `tol`.
fn converge(pulses: &[Pulse], omega: f64, tol: f64) -> Converged {
    let mut n = 4096;
    let mut prev = evolve_sequence(pulses, omega, n);
    loop {
        let next = evolve_sequence(pulses, omega, 2 * n);
        let change = next.distance(&prev);
        n *= 2;
        if change < tol || n >= 1 << 20 {
            return Converged { state: next, n_steps: n, change };
        }
        prev = next;
    }
}

pub fn bloch_propagate_converged(pulse: &Pulse, omega: f64, tol: f64) -> Converged {
    converge(core::slice::from_ref(pulse), omega, tol)
}

/// Spring pulse for target `(1, 0)` rescaled to tilt spins onto the equator.
pub fn excitation_from_spring(spring_pulse: &Pulse) -> Pulse {
    spring_pulse.scaled(FRAC_PI_2)
}

/// A pulse followed by its time reverse.
#[derive(Debug, Clone, PartialEq)]
pub struct InversionSequence {
    pub first: Pulse,
    pub second: Pulse,
}

pub fn inversion_sequence(excitation: &Pulse) -> InversionSequence {
    InversionSequence {
        first: excitation.clone(),
        second: excitation.time_reversed(),
    }
}

impl InversionSequence {
    pub fn duration(&self) -> f64 {
        self.first.t_f() + self.second.t_f()
    }

    pub fn simulate(&self, omega: f64, n_steps: usize) -> BlochState {
        evolve_sequence(&[self.first.clone(), self.second.clone()], omega, n_steps)
    }

    pub fn simulate_converged(&self, omega: f64, tol: f64) -> Converged {
        converge(&[self.first.clone(), self.second.clone()], omega, tol)
    }

    /// Bloch states over the whole protocol, `2 n_steps + 1` entries.
    pub fn trajectory(&self, omega: f64, n_steps: usize) -> Vec<BlochState> {
        let mut a = bloch_trajectory(BlochState::NORTH, &self.first, omega, n_steps);
        let end = *a.last().expect("non-empty");
        a.extend(bloch_trajectory(end, &self.second, omega, n_steps).into_iter().skip(1));
        a
    }

    /// Linear-spring image of the protocol, sampled at `2 n + 1` times.
    pub fn spring_trajectory(&self, omega: f64, n: usize) -> Result<Vec<(f64, Complex64)>> {
        let n = n.max(1);
        let t1 = self.first.t_f();
        let t2 = self.second.t_f();
        let mut out = Vec::with_capacity(2 * n + 1);
        for k in 0..=n {
            let t = t1 * k as f64 / n as f64;
            out.push((t, propagate_exact(&self.first, omega, t)?));
        }
        let z1 = out.last().expect("non-empty").1;
        for k in 1..=n {
            let t = t2 * k as f64 / n as f64;
            let z = z1 * Complex64::from_polar(1.0, omega * t) + propagate_exact(&self.second, omega, t)?;
            out.push((t1 + t, z));
        }
        Ok(out)
    }
}

/// Pulse that tilts spin `omega_a` onto the equator while the spring at
/// `omega_b` returns to rest. Played with [`inversion_sequence`] it inverts
/// `omega_a` and leaves `omega_b` near the north pole.
pub fn selective_inversion_pulse(omega_a: f64, omega_b: f64, t_f: f64) -> Result<Pulse> {
    let sys = LinearSystem::springs(&[omega_a, omega_b])?;
    let x_f = DVector::from_column_slice(&[FRAC_PI_2, 0.0, 0.0, 0.0]);
    let design = general_sta(&sys, &x_f, t_f)?;
    Ok(design.pulse(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinMode {
    /// Single application; the figure of merit is `x(t_f)`.
    Excitation,
    /// Pulse then its time reverse; figure of merit `J = -z`.
    Inversion,
    /// Same protocol as inversion for a selective pulse.
    Selective,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinExperiment {
    pub pulse: Pulse,
    pub offsets: Vec<f64>,
    pub mode: SpinMode,
    /// Factor applied to `pulse` before simulation.
    pub scale: f64,
    /// Steps per pulse application.
    pub n_steps: usize,
}

impl SpinExperiment {
    pub fn new(pulse: Pulse, offsets: Vec<f64>, mode: SpinMode, scale: f64, n_steps: usize) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidInput("scale must be positive"));
        }
        if n_steps == 0 {
            return Err(Error::InvalidInput("need at least one step"));
        }
        Ok(SpinExperiment { pulse, offsets, mode, scale, n_steps })
    }

    pub fn final_state(&self, omega: f64) -> BlochState {
        let p = self.pulse.scaled(self.scale);
        match self.mode {
            SpinMode::Excitation => bloch_propagate(&p, omega, self.n_steps),
            SpinMode::Inversion | SpinMode::Selective => inversion_sequence(&p).simulate(omega, self.n_steps),
        }
    }

    pub fn figure_of_merit(&self, state: &BlochState) -> f64 {
        match self.mode {
            SpinMode::Excitation => state.x,
            SpinMode::Inversion | SpinMode::Selective => fidelity(state),
        }
    }

    pub fn run(&self) -> FidelityProfile {
        fidelity_sweep(self, &self.offsets)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FidelityProfile {
    pub omegas: Vec<f64>,
    pub values: Vec<f64>,
}

impl FidelityProfile {
    /// Contiguous interval around the grid point nearest `center` where the
    /// value stays at or above `threshold`.
    pub fn band_around(&self, center: f64, threshold: f64) -> Option<(f64, f64)> {
        let i0 = self
            .omegas
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - center).abs().total_cmp(&(b.1 - center).abs()))?
            .0;
        if self.values[i0] < threshold {
            return None;
        }
        let mut lo = i0;
        while lo > 0 && self.values[lo - 1] >= threshold {
            lo -= 1;
        }
        let mut hi = i0;
        while hi + 1 < self.values.len() && self.values[hi + 1] >= threshold {
            hi += 1;
        }
        Some((self.omegas[lo], self.omegas[hi]))
    }
}

/// Figure of merit of `experiment` on `omegas`.
pub fn fidelity_sweep(experiment: &SpinExperiment, omegas: &[f64]) -> FidelityProfile {
    let values = omegas
        .iter()
        .map(|&w| experiment.figure_of_merit(&experiment.final_state(w)))
        .collect();
    FidelityProfile { omegas: omegas.to_vec(), values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulse::Sampled;
    use alloc::vec;
    use core::f64::consts::PI;

    #[test]
    fn fidelity_values() {
        assert_eq!(fidelity(&BlochState { x: 0.0, y: 0.0, z: -1.0 }), 1.0);
        assert_eq!(fidelity(&BlochState::NORTH), -1.0);
        assert_eq!(fidelity(&BlochState { x: 1.0, y: 0.0, z: 0.0 }), 0.0);
    }

    #[test]
    fn free_precession_keeps_north() {
        let s = bloch_propagate(&Pulse::zero(5.0), 1.3, 100);
        assert_eq!(s, BlochState::NORTH);
    }

    #[test]
    fn rabi_flip() {
        let p = Pulse::Sampled(Sampled::new(vec![PI / 2.0; 3], 2.0).unwrap());
        let s = bloch_propagate(&p, 0.0, 10);
        assert!((s.z + 1.0).abs() < 1e-14);
    }

    #[test]
    fn fourth_order_convergence() {
        let p = Pulse::Chirp(crate::pulse::Chirp { u0: 0.8, omega_i: 0.3, sweep_rate: 0.2, phase: 0.0, t_f: 6.0 });
        let exact = bloch_propagate(&p, 0.7, 1 << 14);
        let e1 = bloch_propagate(&p, 0.7, 64).distance(&exact);
        let e2 = bloch_propagate(&p, 0.7, 128).distance(&exact);
        assert!(e1 / e2 > 14.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn band_detection() {
        let prof = FidelityProfile {
            omegas: vec![-2.0, -1.0, 0.0, 1.0, 2.0],
            values: vec![0.5, 0.995, 0.999, 0.991, 0.2],
        };
        assert_eq!(prof.band_around(0.1, 0.99), Some((-1.0, 1.0)));
        assert_eq!(prof.band_around(2.0, 0.99), None);
    }
}
