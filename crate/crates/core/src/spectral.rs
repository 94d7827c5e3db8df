//! Exact propagation of the springs under a given pulse.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::adiabatic::chirp_state;
use crate::error::{Error, Result};
use crate::pulse::Pulse;
use crate::quad::GaussLegendre;

/// `∫_0^t e^{iντ} dτ`, with the series near resonance.
pub fn exp_integral(nu: f64, t: f64) -> Complex64 {
    let x = nu * t;
    if x.abs() < 1e-6 {
        // t (1 + ix/2 - x²/6 - i x³/24)
        let ix = Complex64::new(0.0, x);
        return (Complex64::new(1.0, 0.0) + ix / 2.0 + ix * ix / 6.0 + ix * ix * ix / 24.0) * t;
    }
    (Complex64::from_polar(1.0, x) - 1.0) / Complex64::new(0.0, nu)
}

/// Below this `|κ|` order `m` is computed by the power series.
pub fn moment_switch(m: usize) -> f64 {
    m as f64 + 1.0
}

/// `J_m(κ) = ∫_0^1 s^m e^{-iκs} ds` by the power series in `κ`.
pub fn scaled_moment_series(m: usize, kappa: f64) -> Complex64 {
    // J_m = e^{-iκ} Σ_j (iκ)^j m!/(m+j+1)!
    let ik = Complex64::new(0.0, kappa);
    let mut term = Complex64::new(1.0 / (m as f64 + 1.0), 0.0);
    let mut sum = term;
    for j in 1..2000 {
        term = term * ik / (m + j + 1) as f64;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    Complex64::from_polar(1.0, -kappa) * sum
}

/// `J_0..J_{m_max}` by upward recurrence. Stable only while `m < |κ|`.
pub fn scaled_moments_recurrence(m_max: usize, kappa: f64) -> Vec<Complex64> {
    let e = Complex64::from_polar(1.0, -kappa);
    let ik = Complex64::new(0.0, kappa);
    let mut out = Vec::with_capacity(m_max + 1);
    let mut j = (Complex64::new(1.0, 0.0) - e) / ik;
    out.push(j);
    for m in 1..=m_max {
        j = (j * m as f64 - e) / ik;
        out.push(j);
    }
    out
}

/// `M_m = ∫_0^t τ^m e^{-iωτ} dτ` for `m = 0..=m_max`.
pub fn moment_integrals(m_max: usize, omega: f64, t: f64) -> Vec<Complex64> {
    let kappa = omega * t;
    let rec_upto = (0..=m_max).take_while(|&m| kappa.abs() > moment_switch(m)).count();
    let mut out = if rec_upto > 0 {
        scaled_moments_recurrence(rec_upto - 1, kappa)
    } else {
        Vec::new()
    };
    for m in rec_upto..=m_max {
        out.push(scaled_moment_series(m, kappa));
    }
    let mut scale = t;
    for v in out.iter_mut() {
        *v *= scale;
        scale *= t;
    }
    out
}

/// Spring state `z_ω(t)` from rest.
pub fn propagate_exact(pulse: &Pulse, omega: f64, t: f64) -> Result<Complex64> {
    let t_f = pulse.t_f();
    if !(t >= 0.0 && t <= t_f * (1.0 + 1e-12)) {
        return Err(Error::InvalidInput("propagation time outside [0, t_f]"));
    }
    let t = t.min(t_f);
    let z = match pulse {
        Pulse::Chirp(c) => chirp_state(c, omega, t)?,
        Pulse::ExpSum(e) => {
            let rot = Complex64::from_polar(1.0, omega * t);
            e.terms
                .iter()
                .map(|(c, wk)| {
                    (c * exp_integral(wk - omega, t) + c.conj() * exp_integral(-wk - omega, t)) * 0.5
                })
                .sum::<Complex64>()
                * rot
        }
        Pulse::PolyDerivSum(p) => {
            let poly = p.combined();
            let q = (poly.degree() / 2 + 20).clamp(20, 64);
            let panels = Float::ceil(omega.abs() * t / 4.0).max(1.0) as usize;
            let gl = GaussLegendre::new(q);
            gl.composite(0.0, t, panels, |tau| {
                Complex64::from_polar(poly.eval(tau), omega * (t - tau))
            })
        }
        Pulse::Sampled(s) => {
            // exact on each linear segment: e^{iω(t-lo)} (a M_0 + (b-a)/h M_1)
            let dt = s.dt();
            let mut acc = Complex64::new(0.0, 0.0);
            let mut lo = 0.0;
            let mut i = 0usize;
            while lo < t {
                let hi = (dt * (i + 1) as f64).min(t);
                let h = hi - lo;
                if h > 0.0 {
                    let (a, b) = (s.eval(lo), s.eval(hi));
                    let m = moment_integrals(1, omega, h);
                    acc += Complex64::from_polar(1.0, omega * (t - lo)) * (m[0] * a + m[1] * ((b - a) / h));
                }
                lo = hi;
                i += 1;
            }
            acc
        }
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::PropagationFailure { omega })
    }
}

/// `∫_0^{t_f} e^{-iωτ} u(τ) dτ`, i.e. `e^{-iωt_f} z_ω(t_f)`.
pub fn pulse_spectrum(pulse: &Pulse, omega: f64) -> Result<Complex64> {
    let t_f = pulse.t_f();
    Ok(propagate_exact(pulse, omega, t_f)? * Complex64::from_polar(1.0, -omega * t_f))
}

/// End states on a frequency list.
pub fn propagate_many(pulse: &Pulse, omegas: &[f64]) -> Result<Vec<Complex64>> {
    let t_f = pulse.t_f();
    omegas.iter().map(|&w| propagate_exact(pulse, w, t_f)).collect()
}

/// Spring trajectory sampled at `n + 1` equally spaced times.
pub fn spring_trajectory(pulse: &Pulse, omega: f64, n: usize) -> Result<Vec<(f64, Complex64)>> {
    let t_f = pulse.t_f();
    let n = n.max(1);
    let mut out = vec![(0.0, Complex64::new(0.0, 0.0))];
    for k in 1..=n {
        let t = t_f * k as f64 / n as f64;
        out.push((t, propagate_exact(pulse, omega, t)?));
    }
    Ok(out)
}
