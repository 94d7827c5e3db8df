//! Ion cyclotron excitation.
//!
//! An ion with cyclotron frequency `ω` in a field `B0` driven by `E_x = B0 e(t)`
//! has `V = v_x + i v_y` with `V̇ = -iωV + ω e`. Its conjugate is a spring at
//! `ω` driven by `ω e`. Near the carrier `ω0` the rotating-frame velocity
//! `Ṽ = V e^{iω0 t}` obeys `conj(Ṽ)' = iΔω conj(Ṽ) + (ω0/2) e0 u(t)` for
//! `e = e0 u(t) cos ω0 t`, which is the spring ensemble at the detuning
//! `Δω = ω - ω0`. Design times are in milliseconds, so design frequencies are
//! detunings in rad/ms.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::adiabatic::{chirp_integral, ChirpParams};
use crate::error::{Error, Result, Warning};
use crate::grid::FrequencyGrid;
use crate::oct::{pulse_approach2, self_consistency_check, solve_approach2, AdjointSolution, ConsistencyReport, OctProblem};
use crate::pulse::{Chirp, Pulse};
use crate::spectral::propagate_exact;

/// Seconds per design time unit.
pub const TIME_UNIT_S: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IcrConfig {
    pub e0_v_per_m: f64,
    pub b0_tesla: f64,
    pub f0_hz: f64,
    pub tf_ms: f64,
    /// Cutoff of the target profile, rad/ms.
    pub omega_s: f64,
    /// Sharpness of the cutoff, ms/rad.
    pub mu: f64,
    /// Phase slope of the target, in units of `t_f`.
    pub eta: f64,
    pub lambda: f64,
    pub n_design_freqs: usize,
    /// Design band in rad/ms.
    pub design_band: (f64, f64),
    /// RK4 steps per carrier period in the full simulation.
    pub steps_per_period: usize,
}

impl Default for IcrConfig {
    fn default() -> Self {
        IcrConfig {
            e0_v_per_m: 100.0,
            b0_tesla: 10.0,
            f0_hz: 500e3,
            tf_ms: 1.0,
            omega_s: 100.0,
            mu: 0.1,
            eta: 0.5,
            lambda: 1e-3,
            n_design_freqs: 60,
            design_band: (0.0, 200.0),
            steps_per_period: 200,
        }
    }
}

impl IcrConfig {
    pub fn validate(&self) -> Result<()> {
        let pos = [self.e0_v_per_m, self.b0_tesla, self.f0_hz, self.tf_ms, self.mu];
        if pos.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidInput("field, carrier, duration and mu must be positive"));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidPenalty { lambda: self.lambda });
        }
        if self.n_design_freqs == 0 || self.steps_per_period < 100 {
            return Err(Error::InvalidInput("need design frequencies and >= 100 steps per period"));
        }
        Ok(())
    }

    /// Carrier angular frequency, rad/s.
    pub fn omega0(&self) -> f64 {
        2.0 * PI * self.f0_hz
    }

    /// `E0/B0`, m/s.
    pub fn velocity_scale(&self) -> f64 {
        self.e0_v_per_m / self.b0_tesla
    }

    pub fn tf_s(&self) -> f64 {
        self.tf_ms * TIME_UNIT_S
    }

    /// `Ṽ = coupling · conj(z)` with `z` the spring end state.
    pub fn coupling(&self) -> f64 {
        0.5 * self.omega0() * self.velocity_scale() * TIME_UNIT_S
    }
}

/// `½(1 + tanh((ω_S - ω)μ)) e^{iωη t_f}`.
pub fn icr_target_profile(omega: f64, cfg: &IcrConfig) -> Complex64 {
    let m = 0.5 * (1.0 + Float::tanh((cfg.omega_s - omega) * cfg.mu));
    Complex64::from_polar(m, omega * cfg.eta * cfg.tf_ms)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IcrDesign {
    /// Dimensionless envelope on `[0, tf_ms]`.
    pub pulse: Pulse,
    pub problem: OctProblem,
    pub end_states: Vec<Complex64>,
    pub solution: AdjointSolution,
    pub report: ConsistencyReport,
}

/// Penalized optimal envelope for the tanh target on the design band.
pub fn design_icr_pulse(cfg: &IcrConfig) -> Result<IcrDesign> {
    cfg.validate()?;
    let (lo, hi) = cfg.design_band;
    let grid = FrequencyGrid::inclusive(lo, hi, cfg.n_design_freqs)?;
    let omegas = grid.omegas().to_vec();
    let targets = omegas.iter().map(|&w| icr_target_profile(w, cfg)).collect();
    let problem = OctProblem::new(omegas, targets, cfg.tf_ms, Some(cfg.lambda))?;
    let (end_states, solution) = solve_approach2(&problem)?;
    let pulse = pulse_approach2(&solution, &problem.omegas, cfg.tf_ms, cfg.lambda);
    let report = self_consistency_check(&problem, &pulse)?;
    Ok(IcrDesign { pulse, problem, end_states, solution, report })
}

/// Electric drive in velocity units, `E_x(t)/B0` in m/s, time in seconds.
pub trait DrivingField {
    fn value(&self, t: f64) -> f64;
    /// Highest instantaneous frequency, Hz.
    fn max_frequency_hz(&self) -> f64;
}

/// `e(t) = (E0/B0) u(t/1 ms) cos(ω0 t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeField {
    pub envelope: Pulse,
    pub scale: f64,
    pub omega0: f64,
}

pub fn envelope_to_physical(u: &Pulse, cfg: &IcrConfig) -> EnvelopeField {
    EnvelopeField { envelope: u.clone(), scale: cfg.velocity_scale(), omega0: cfg.omega0() }
}

impl DrivingField for EnvelopeField {
    fn value(&self, t: f64) -> f64 {
        self.scale * self.envelope.eval(t / TIME_UNIT_S) * Float::cos(self.omega0 * t)
    }
    fn max_frequency_hz(&self) -> f64 {
        self.omega0 / (2.0 * PI)
    }
}

/// A pulse already in physical units (seconds, m/s).
impl DrivingField for Pulse {
    fn value(&self, t: f64) -> f64 {
        self.eval(t)
    }
    fn max_frequency_hz(&self) -> f64 {
        match self {
            Pulse::Chirp(c) => Float::max(c.omega_i.abs(), (c.omega_i + c.sweep_rate * c.t_f).abs()) / (2.0 * PI),
            Pulse::ExpSum(e) => e.terms.iter().fold(0.0, |m, (_, w)| Float::max(m, w.abs())) / (2.0 * PI),
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IonState {
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
    pub omega_ion: f64,
    pub t: f64,
}

impl IonState {
    pub fn at_rest(omega_ion: f64) -> Self {
        IonState { x: 0.0, y: 0.0, vx: 0.0, vy: 0.0, omega_ion, t: 0.0 }
    }

    pub fn velocity(&self) -> Complex64 {
        Complex64::new(self.vx, self.vy)
    }

    /// Cyclotron orbit radius about the guiding centre, m.
    pub fn orbit_radius(&self) -> f64 {
        self.velocity().norm() / self.omega_ion
    }

    /// Guiding centre `X - iV/ω`.
    pub fn guiding_centre(&self) -> Complex64 {
        Complex64::new(self.x, self.y) - Complex64::i() * self.velocity() / self.omega_ion
    }
}

/// RK4 integration of the Lorentz equations from rest at the cell centre.
pub fn simulate_ion_full<F: DrivingField + ?Sized>(field: &F, omega_ion: f64, t_f: f64, dt: f64) -> Result<IonState> {
    if !(omega_ion > 0.0 && omega_ion.is_finite()) || !(t_f > 0.0) {
        return Err(Error::InvalidInput("cyclotron frequency and duration must be positive"));
    }
    let f_max = Float::max(field.max_frequency_hz(), omega_ion / (2.0 * PI));
    let max_dt = 1.0 / (100.0 * f_max);
    if !(dt > 0.0 && dt <= max_dt) {
        return Err(Error::Resolution { dt, max_dt });
    }
    let n = Float::ceil(t_f / dt) as usize;
    let h = t_f / n as f64;
    let w = omega_ion;
    let rhs = |s: [f64; 4], e: f64| -> [f64; 4] { [s[2], s[3], w * (e + s[3]), -w * s[2]] };
    let mut s = [0.0; 4];
    let mut e0 = field.value(0.0);
    for i in 0..n {
        let t = i as f64 * h;
        let em = field.value(t + 0.5 * h);
        let e1 = field.value(t + h);
        let k1 = rhs(s, e0);
        let k2 = rhs(core::array::from_fn(|j| s[j] + 0.5 * h * k1[j]), em);
        let k3 = rhs(core::array::from_fn(|j| s[j] + 0.5 * h * k2[j]), em);
        let k4 = rhs(core::array::from_fn(|j| s[j] + h * k3[j]), e1);
        for j in 0..4 {
            s[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        e0 = e1;
    }
    if s.iter().any(|v| !v.is_finite()) {
        return Err(Error::PropagationFailure { omega: omega_ion });
    }
    Ok(IonState { x: s[0], y: s[1], vx: s[2], vy: s[3], omega_ion, t: t_f })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwaResult {
    /// Rotating-frame velocity, m/s.
    pub v_tilde: Complex64,
    /// Rotating-frame position `iṼ/ω0`, m.
    pub x_tilde: Complex64,
    pub warning: Option<Warning>,
}

/// End state of an ion at detuning `delta_omega` (rad/s) in the rotating-wave approximation.
pub fn simulate_ion_rwa(u: &Pulse, delta_omega: f64, cfg: &IcrConfig) -> Result<RwaResult> {
    let z = propagate_exact(u, delta_omega * TIME_UNIT_S, u.t_f())?;
    let v_tilde = z.conj() * cfg.coupling();
    let ratio = delta_omega.abs() / cfg.omega0();
    Ok(RwaResult {
        v_tilde,
        x_tilde: Complex64::i() * v_tilde / cfg.omega0(),
        warning: (ratio > 0.1).then_some(Warning::LargeDetuning { ratio }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observables {
    pub r_mm: f64,
    /// Phase of the rotating-frame velocity.
    pub phi_rad: f64,
    pub phase_defined: bool,
}

fn observables(v_tilde: Complex64, radius_m: f64) -> Observables {
    let defined = v_tilde.norm() > 0.0;
    Observables {
        r_mm: radius_m * 1e3,
        phi_rad: if defined { v_tilde.arg() } else { 0.0 },
        phase_defined: defined,
    }
}

pub fn rwa_observables(res: &RwaResult, cfg: &IcrConfig) -> Observables {
    observables(res.v_tilde, res.v_tilde.norm() / cfg.omega0())
}

/// Orbit radius and phase of `V e^{iω0 t}` after a full simulation.
pub fn ion_observables(state: &IonState, cfg: &IcrConfig) -> Observables {
    let v_tilde = state.velocity() * Complex64::from_polar(1.0, cfg.omega0() * state.t);
    observables(v_tilde, state.orbit_radius())
}

/// Removes `2π` jumps in place.
pub fn unwrap_phases(phases: &mut [f64]) {
    for i in 1..phases.len() {
        let mut d = phases[i] - phases[i - 1];
        while d > PI {
            phases[i] -= 2.0 * PI;
            d -= 2.0 * PI;
        }
        while d < -PI {
            phases[i] += 2.0 * PI;
            d += 2.0 * PI;
        }
    }
}

/// Linear frequency sweep used as the reference excitation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticIcrConfig {
    pub f_i_hz: f64,
    pub f_f_hz: f64,
    pub tf_s: f64,
    pub e0_v_per_m: f64,
    pub b0_tesla: f64,
    pub f0_hz: f64,
}

impl Default for AdiabaticIcrConfig {
    fn default() -> Self {
        AdiabaticIcrConfig {
            f_i_hz: 480e3,
            f_f_hz: 520e3,
            tf_s: 1e-3,
            e0_v_per_m: 625.0,
            b0_tesla: 10.0,
            f0_hz: 500e3,
        }
    }
}

impl AdiabaticIcrConfig {
    pub fn params(&self) -> Result<ChirpParams> {
        ChirpParams::new(
            self.e0_v_per_m / self.b0_tesla,
            2.0 * PI * self.f_i_hz,
            2.0 * PI * self.f_f_hz,
            self.tf_s,
        )
    }

    /// Physical drive `e(t) = (E0/B0) cos(ω_i t + s t²/2)`.
    pub fn field(&self) -> Result<Pulse> {
        Ok(Pulse::Chirp(self.params()?.chirp()))
    }

    pub fn omega0(&self) -> f64 {
        2.0 * PI * self.f0_hz
    }
}

/// Rotating-wave end state of an ion at `f_ion_hz` under the reference sweep.
pub fn adiabatic_icr_rwa(cfg: &AdiabaticIcrConfig, f_ion_hz: f64) -> Result<Observables> {
    let p = cfg.params()?;
    let chirp: Chirp = p.chirp();
    let w_ion = 2.0 * PI * f_ion_hz;
    let w0 = cfg.omega0();
    let dw = w_ion - w0;
    // conj(Ṽ)(t_f) = (ω0 e0/2) e^{iΔω t_f} ∫ e^{i((ω_i - ω_ion)τ + sτ²/2)} dτ
    let integral = chirp_integral(chirp.sweep_rate / 2.0, chirp.omega_i - w_ion, p.t_f)?;
    let w = Complex64::from_polar(0.5 * w0 * chirp.u0, dw * p.t_f) * integral;
    let v_tilde = w.conj();
    Ok(observables(v_tilde, v_tilde.norm() / w0))
}

/// Full simulation of an ion under the reference sweep.
pub fn adiabatic_icr_full(cfg: &AdiabaticIcrConfig, f_ion_hz: f64, steps_per_period: usize) -> Result<Observables> {
    let field = cfg.field()?;
    let dt = 1.0 / (steps_per_period as f64 * Float::max(field.max_frequency_hz(), f_ion_hz));
    let s = simulate_ion_full(&field, 2.0 * PI * f_ion_hz, cfg.tf_s, dt)?;
    let v_tilde = s.velocity() * Complex64::from_polar(1.0, cfg.omega0() * s.t);
    Ok(observables(v_tilde, s.orbit_radius()))
}
