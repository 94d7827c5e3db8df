//! Linear frequency sweeps and their exact action on the springs.

use core::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use num_traits::Float;

use crate::erfi::erfi;
use crate::error::{Error, Result, Warning};
use crate::pulse::{Chirp, Pulse};
use crate::spectral::exp_integral;

/// Sweep from `omega_i` to `omega_f` in time `t_f` at amplitude `u0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpParams {
    pub u0: f64,
    pub omega_i: f64,
    pub omega_f: f64,
    pub t_f: f64,
}

impl ChirpParams {
    pub fn new(u0: f64, omega_i: f64, omega_f: f64, t_f: f64) -> Result<Self> {
        if !(t_f > 0.0 && t_f.is_finite()) {
            return Err(Error::InvalidInput("sweep duration must be positive"));
        }
        if ![u0, omega_i, omega_f].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("non-finite sweep parameter"));
        }
        Ok(ChirpParams { u0, omega_i, omega_f, t_f })
    }

    pub fn sweep_rate(&self) -> f64 {
        (self.omega_f - self.omega_i) / self.t_f
    }

    pub fn chirp(&self) -> Chirp {
        Chirp {
            u0: self.u0,
            omega_i: self.omega_i,
            sweep_rate: self.sweep_rate(),
            phase: 0.0,
            t_f: self.t_f,
        }
    }
}

pub fn chirp_pulse(params: &ChirpParams) -> Pulse {
    Pulse::Chirp(params.chirp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPhase {
    pub z: Complex64,
    pub warning: Option<Warning>,
}

/// Asymptotic end state for a slow sweep: constant radius `u0 √(π/2s)` and a
/// phase quadratic in the offset from `omega_i`.
pub fn stationary_phase_prediction(params: &ChirpParams, omega: f64) -> Result<StationaryPhase> {
    let s = params.sweep_rate();
    if !(s > 0.0) {
        return Err(Error::InvalidSweep { rate: s });
    }
    let modulus = params.u0.abs() * Float::sqrt(PI / (2.0 * s));
    let d = omega - params.omega_i;
    let phase = omega * params.t_f + FRAC_PI_4 - d * d / (2.0 * s);
    let t1 = d / s;
    let warning = if t1 > 0.0 && t1 < params.t_f {
        None
    } else {
        Some(Warning::OutsideSweep { omega })
    };
    let mut z = Complex64::from_polar(modulus, phase);
    if params.u0 < 0.0 {
        z = -z;
    }
    Ok(StationaryPhase { z, warning })
}

/// `∫_0^t e^{i(ατ² + βτ)} dτ` in closed form.
pub fn chirp_integral(alpha: f64, beta: f64, t: f64) -> Result<Complex64> {
    if alpha == 0.0 {
        return Ok(exp_integral(beta, t));
    }
    let sqrt_alpha = if alpha > 0.0 {
        Complex64::new(Float::sqrt(alpha), 0.0)
    } else {
        Complex64::new(0.0, Float::sqrt(-alpha))
    };
    let rot = Complex64::from_polar(1.0, FRAC_PI_4);
    let c = beta / (2.0 * alpha);
    let a = rot * sqrt_alpha * c;
    let b = rot * sqrt_alpha * (t + c);
    let diff = erfi(b)? - erfi(a)?;
    let pref = Complex64::from_polar(1.0, -FRAC_PI_4 - beta * c / 2.0) / sqrt_alpha;
    Ok(pref * diff * (Float::sqrt(PI) / 2.0))
}

/// Spring state at time `t` driven by a chirp from rest.
pub fn chirp_state(chirp: &Chirp, omega: f64, t: f64) -> Result<Complex64> {
    let s = chirp.sweep_rate;
    let i1 = chirp_integral(s / 2.0, chirp.omega_i - omega, t)?;
    let i2 = chirp_integral(-s / 2.0, -chirp.omega_i - omega, t)?;
    let z = Complex64::from_polar(0.5 * chirp.u0, omega * t)
        * (Complex64::from_polar(1.0, chirp.phase) * i1 + Complex64::from_polar(1.0, -chirp.phase) * i2);
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::PropagationFailure { omega })
    }
}

/// Exact end state `z_ω(t_f)` after the sweep.
pub fn chirp_final_state_exact(params: &ChirpParams, omega: f64) -> Result<Complex64> {
    if params.sweep_rate() == 0.0 {
        return Err(Error::InvalidSweep { rate: 0.0 });
    }
    chirp_state(&params.chirp(), omega, params.t_f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slow_sweep() -> ChirpParams {
        ChirpParams::new(1.0, 0.0, 2.0, 400.0).unwrap()
    }

    #[test]
    fn pulse_formula() {
        let p = ChirpParams::new(1.0, 0.0, 0.1, 10.0).unwrap();
        assert!((p.sweep_rate() - 0.01).abs() < 1e-15);
        let u = chirp_pulse(&p);
        assert_eq!(u.eval(0.0), 1.0);
        assert!((u.eval(10.0) - 0.5f64.cos()).abs() < 1e-15);
        assert!((slow_sweep().sweep_rate() - 0.005).abs() < 1e-15);
    }

    #[test]
    fn prediction_shape() {
        let p = slow_sweep();
        let a = stationary_phase_prediction(&p, 0.5).unwrap();
        let b = stationary_phase_prediction(&p, 1.5).unwrap();
        assert!((a.z.norm() - 17.724_538_509_055_16).abs() < 1e-10);
        assert!((a.z.norm() - b.z.norm()).abs() < 1e-12);
        assert!(a.warning.is_none());
        assert!(stationary_phase_prediction(&p, 2.5).unwrap().warning.is_some());
        let q = ChirpParams::new(1.0, 0.3, 1.3, 7.0).unwrap();
        let at_i = stationary_phase_prediction(&q, 0.3).unwrap();
        let want = Complex64::from_polar(1.0, 0.3 * 7.0 + FRAC_PI_4);
        assert!((at_i.z / at_i.z.norm() - want).norm() < 1e-12);
        let down = ChirpParams::new(1.0, 1.0, 0.0, 5.0).unwrap();
        assert!(matches!(
            stationary_phase_prediction(&down, 0.5),
            Err(Error::InvalidSweep { .. })
        ));
    }

    #[test]
    fn exact_end_state_in_band() {
        let p = slow_sweep();
        let z = chirp_final_state_exact(&p, 1.0).unwrap();
        let sp = stationary_phase_prediction(&p, 1.0).unwrap().z;
        // abrupt switch-on and switch-off leave a ripple of order u0/(2|ω - ω_edge|)
        let ripple = 0.5 / 1.0 + 0.5 / 1.0 + 1.0;
        assert!((z.norm() - sp.norm()).abs() < ripple);
        let dphi = (z / sp).arg();
        assert!(dphi.abs() < 0.05);
        let m = chirp_final_state_exact(&p, -1.0).unwrap();
        assert!((m - z.conj()).norm() < 1e-9);
    }

    #[test]
    fn band_average_radius() {
        let p = slow_sweep();
        let n = 701;
        let mean = (0..n)
            .map(|k| 0.3 + 1.4 * k as f64 / (n - 1) as f64)
            .map(|w| chirp_final_state_exact(&p, w).unwrap().norm())
            .sum::<f64>()
            / n as f64;
        assert!((mean / 17.724_538_509_055_16 - 1.0).abs() < 0.01);
    }

    #[test]
    fn zero_amplitude() {
        let p = ChirpParams::new(0.0, 0.0, 2.0, 400.0).unwrap();
        assert_eq!(chirp_final_state_exact(&p, 0.7).unwrap(), Complex64::new(0.0, 0.0));
    }
}
