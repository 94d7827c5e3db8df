//! Pulse figures of merit.

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::pulse::Pulse;
use crate::quad::GaussLegendre;

pub fn distance_to_target(z: Complex64, target: Complex64) -> f64 {
    (z - target).norm()
}

/// `E = ∫_0^{t_f} u² dt`, refined until the relative change is below 1e-6.
pub fn pulse_energy(pulse: &Pulse) -> Result<f64> {
    let t_f = pulse.t_f();
    if let Pulse::Sampled(s) = pulse {
        // exact for the piecewise-linear interpolant
        let dt = s.dt();
        let e = s
            .values()
            .windows(2)
            .map(|w| (w[0] * w[0] + w[0] * w[1] + w[1] * w[1]) * dt / 3.0)
            .sum();
        return Ok(e);
    }
    let gl = GaussLegendre::new(16);
    let mut panels = 4usize;
    let mut prev: f64 = gl.composite(0.0, t_f, panels, |t| pulse.eval(t).powi(2));
    for _ in 0..24 {
        panels *= 2;
        let next: f64 = gl.composite(0.0, t_f, panels, |t| pulse.eval(t).powi(2));
        if (next - prev).abs() <= 1e-6 * next.abs() || next == 0.0 {
            return Ok(next);
        }
        prev = next;
    }
    if prev.is_finite() {
        Ok(prev)
    } else {
        Err(Error::InvalidInput("pulse energy did not converge"))
    }
}

/// `max |u(t)|` on `[0, t_f]`: dense scan then golden-section refinement.
pub fn pulse_max_amplitude(pulse: &Pulse) -> f64 {
    if let Pulse::Sampled(s) = pulse {
        return s.values().iter().fold(0.0, |m, v| Float::max(m, v.abs()));
    }
    let t_f = pulse.t_f();
    let n = 20_000usize;
    let h = t_f / n as f64;
    let mut best = 0usize;
    let mut best_v = -1.0;
    for i in 0..=n {
        let v = pulse.eval(i as f64 * h).abs();
        if v > best_v {
            best_v = v;
            best = i;
        }
    }
    let mut a = (best as f64 - 1.0).max(0.0) * h;
    let mut b = ((best + 1) as f64 * h).min(t_f);
    let f = |t: f64| pulse.eval(t).abs();
    let r = 0.5 * (Float::sqrt(5.0) - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    best_v.max(fc).max(fd)
}
