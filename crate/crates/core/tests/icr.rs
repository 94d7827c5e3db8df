use std::f64::consts::PI;

use num_complex::Complex64;
use springs_core::icr::*;
use springs_core::oct::{pulse_approach2, solve_approach2, OctProblem};
use springs_core::pulse::Sampled;
use springs_core::spectral::propagate_exact;
use springs_core::{Pulse, Warning};
use springs_oracle::fit;

fn constant(v: f64) -> Pulse {
    Pulse::Sampled(Sampled::new(vec![v, v], 1.0).unwrap())
}

fn dt(cfg: &IcrConfig, f_ion: f64) -> f64 {
    1.0 / (cfg.steps_per_period as f64 * cfg.f0_hz.max(f_ion))
}

fn full(design: &IcrDesign, cfg: &IcrConfig, dw_rad_ms: f64, dt_scale: f64) -> Observables {
    let w = cfg.omega0() + dw_rad_ms * 1e3;
    let field = envelope_to_physical(&design.pulse, cfg);
    let s = simulate_ion_full(&field, w, cfg.tf_s(), dt(cfg, w / (2.0 * PI)) * dt_scale).unwrap();
    ion_observables(&s, cfg)
}

fn rwa(design: &IcrDesign, cfg: &IcrConfig, dw_rad_ms: f64) -> Observables {
    rwa_observables(&simulate_ion_rwa(&design.pulse, dw_rad_ms * 1e3, cfg).unwrap(), cfg)
}

#[test]
fn target_examples() {
    let cfg = IcrConfig::default();
    assert_eq!(icr_target_profile(100.0, &cfg).norm(), 0.5);
    assert!((icr_target_profile(0.0, &cfg).norm() - 0.5 * (1.0 + 10f64.tanh())).abs() < 1e-15);
    assert!((icr_target_profile(0.0, &cfg).norm() - 1.0).abs() < 4e-9);
    assert!(icr_target_profile(200.0, &cfg).norm() < 4e-9);
    let z = icr_target_profile(40.0, &cfg);
    assert!((z.arg() - (40.0 * 0.5 - 6.0 * PI)).abs() < 1e-12);
}

#[test]
fn heavy_penalty_gives_near_zero_pulse() {
    let cfg = IcrConfig { lambda: 1e6, ..IcrConfig::default() };
    let d = design_icr_pulse(&cfg).unwrap();
    assert!(d.report.max_amplitude < 1e-4 && d.report.energy < 1e-9);
}

#[test]
fn default_design_follows_target() {
    let cfg = IcrConfig::default();
    let d = design_icr_pulse(&cfg).unwrap();
    for i in 0..=180 {
        let w = 10.0 + i as f64;
        if w > 90.0 && w < 110.0 {
            continue;
        }
        let z = propagate_exact(&d.pulse, w, cfg.tf_ms).unwrap();
        let t = icr_target_profile(w, &cfg).norm();
        assert!((z.norm() - t).abs() < 0.1, "ω={w}: {} vs {t}", z.norm());
    }
    // phase slope η t_f on the plateau
    let ws: Vec<f64> = (0..=80).map(|i| i as f64).collect();
    let mut ph: Vec<f64> = ws.iter().map(|&w| propagate_exact(&d.pulse, w, cfg.tf_ms).unwrap().arg()).collect();
    unwrap_phases(&mut ph);
    let slope = fit::polyfit(&ws, &ph, 1).coeffs[1];
    assert!((slope / (cfg.eta * cfg.tf_ms) - 1.0).abs() < 0.05, "slope {slope}");
}

#[test]
fn physical_field_examples() {
    let cfg = IcrConfig::default();
    let zero = envelope_to_physical(&Pulse::zero(1.0), &cfg);
    assert!((0..100).all(|i| zero.value(i as f64 * 1e-5) == 0.0));
    let e = envelope_to_physical(&constant(0.37), &cfg);
    assert_eq!(e.value(0.0), 10.0 * 0.37);
    let d = design_icr_pulse(&cfg).unwrap();
    let f = envelope_to_physical(&d.pulse, &cfg);
    let bound = cfg.velocity_scale() * d.report.max_amplitude;
    assert!((0..20_000).all(|i| f.value(i as f64 * 5e-8).abs() <= bound * (1.0 + 1e-12)));
}

#[test]
fn full_simulation_basics() {
    let cfg = IcrConfig::default();
    let s = simulate_ion_full(&envelope_to_physical(&Pulse::zero(1.0), &cfg), cfg.omega0(), 1e-3, 1e-8).unwrap();
    assert_eq!((s.x, s.y, s.vx, s.vy), (0.0, 0.0, 0.0, 0.0));
    assert!(matches!(
        simulate_ion_full(&envelope_to_physical(&Pulse::zero(1.0), &cfg), cfg.omega0(), 1e-3, 3e-8),
        Err(springs_core::Error::Resolution { .. })
    ));
    // resonant constant drive: |Ṽ| = ω0 (E0/B0) u0 t / 2, linear in t
    let u0 = 0.2;
    let field = envelope_to_physical(&constant(u0), &cfg);
    for t in [2.5e-4, 5e-4, 1e-3] {
        let s = simulate_ion_full(&field, cfg.omega0(), t, dt(&cfg, cfg.f0_hz)).unwrap();
        let want = cfg.omega0() * cfg.velocity_scale() * u0 * t / 2.0;
        assert!((s.velocity().norm() / want - 1.0).abs() < 0.02);
    }
}

#[test]
fn rwa_basics() {
    let cfg = IcrConfig::default();
    let r = simulate_ion_rwa(&Pulse::zero(1.0), 3e4, &cfg).unwrap();
    assert_eq!(r.v_tilde, Complex64::new(0.0, 0.0));
    let o = rwa_observables(&r, &cfg);
    assert!(!o.phase_defined && o.phi_rad == 0.0 && o.r_mm == 0.0);
    let r = simulate_ion_rwa(&constant(0.5), 0.0, &cfg).unwrap();
    let want = cfg.omega0() * cfg.velocity_scale() * 0.5 * cfg.tf_s() / 2.0;
    assert!((r.v_tilde.norm() - want).abs() < 1e-10 * want);
    assert!((r.x_tilde - Complex64::i() * r.v_tilde / cfg.omega0()).norm() == 0.0);
    assert!(r.warning.is_none());
    let far = simulate_ion_rwa(&constant(0.5), 0.2 * cfg.omega0(), &cfg).unwrap();
    assert!(matches!(far.warning, Some(Warning::LargeDetuning { .. })));
}

#[test]
fn rwa_profile_is_proportional_to_target() {
    let cfg = IcrConfig::default();
    let d = design_icr_pulse(&cfg).unwrap();
    let center = rwa(&d, &cfg, 0.0).r_mm;
    assert!((1.0..=50.0).contains(&center), "{center} mm");
    for dw in [-180.0, -120.0, -60.0, 30.0, 70.0, 130.0, 170.0] {
        let r = rwa(&d, &cfg, dw).r_mm;
        let want = center * icr_target_profile(dw.abs(), &cfg).norm();
        assert!((r - want).abs() < 0.1 * center, "Δω={dw}: {r} vs {want}");
    }
    // plateau flatness
    let rs: Vec<f64> = (-80..=80).map(|k| rwa(&d, &cfg, k as f64).r_mm).collect();
    let (lo, hi) = rs.iter().fold((f64::MAX, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    assert!((hi - lo) / hi < 0.1);
}

#[test]
fn half_maximum_sits_sixteen_khz_from_carrier() {
    let cfg = IcrConfig::default();
    let d = design_icr_pulse(&cfg).unwrap();
    let plateau = rwa(&d, &cfg, 0.0).r_mm;
    let (mut a, mut b) = (80.0, 130.0);
    for _ in 0..50 {
        let m = 0.5 * (a + b);
        if rwa(&d, &cfg, m).r_mm > 0.5 * plateau { a = m } else { b = m }
    }
    let khz = a * 1e3 / (2.0 * PI) / 1e3;
    assert!((khz - 100.0 / (2.0 * PI)).abs() < 0.3, "{khz} kHz");
    // the same on the low side of the carrier
    assert!((rwa(&d, &cfg, -a).r_mm - 0.5 * plateau).abs() < 1e-6 * plateau);
}

#[test]
fn full_dynamics_agree_with_rwa_at_band_centre() {
    let cfg = IcrConfig::default();
    let d = design_icr_pulse(&cfg).unwrap();
    let f = full(&d, &cfg, 0.0, 1.0);
    let r = rwa(&d, &cfg, 0.0);
    assert!((f.r_mm / r.r_mm - 1.0).abs() < 0.05);
    let half = full(&d, &cfg, 0.0, 0.5);
    assert!((half.r_mm / f.r_mm - 1.0).abs() < 0.005);
    // beyond the cutoff on both sides the ion stays nearly at rest
    for dw in [-160.0, 160.0] {
        assert!(full(&d, &cfg, dw, 1.0).r_mm < 0.1 * f.r_mm);
    }
}

#[test]
fn design_independent_of_physical_units() {
    let a = design_icr_pulse(&IcrConfig::default()).unwrap();
    let other = IcrConfig { e0_v_per_m: 37.0, b0_tesla: 3.5, f0_hz: 1.25e6, ..IcrConfig::default() };
    let b = design_icr_pulse(&other).unwrap();
    assert_eq!(a.pulse, b.pulse);
    // designing in seconds and rad/s gives the same envelope after rescaling
    let cfg = IcrConfig::default();
    let ws: Vec<f64> = a.problem.omegas.iter().map(|w| w * 1e3).collect();
    let pr = OctProblem::new(ws.clone(), a.problem.targets.clone(), cfg.tf_s(), Some(cfg.lambda * 1e-3)).unwrap();
    let (_, sol) = solve_approach2(&pr).unwrap();
    let u_s = pulse_approach2(&sol, &ws, cfg.tf_s(), cfg.lambda * 1e-3);
    for i in 0..=50 {
        let t = i as f64 / 50.0;
        let lhs = a.pulse.eval(t);
        let rhs = u_s.eval(t * 1e-3) * 1e-3;
        assert!((lhs - rhs).abs() < 1e-9 * a.report.max_amplitude);
    }
}

#[test]
fn adiabatic_reference() {
    let a = AdiabaticIcrConfig::default();
    let p = a.params().unwrap();
    assert!((p.sweep_rate() - 2.0 * PI * 40e3 / 1e-3).abs() < 1e-3);
    // stationary-phase radius (ω0 e0) √(π/2s) / ω_ion varies only through ω_ion
    let e0 = a.e0_v_per_m / a.b0_tesla;
    let sp = |f: f64| a.omega0() * e0 * (PI / (2.0 * p.sweep_rate())).sqrt() / (2.0 * PI * f) * 1e3;
    for f in [485e3, 500e3, 515e3] {
        assert!((sp(f) / sp(500e3) - 1.0).abs() < 0.05);
    }
    // exact radii average to the stationary-phase value across the band
    let fs: Vec<f64> = (0..=300).map(|i| 485e3 + 100.0 * i as f64).collect();
    let rs: Vec<f64> = fs.iter().map(|&f| adiabatic_icr_rwa(&a, f).unwrap().r_mm).collect();
    let mean = rs.iter().sum::<f64>() / rs.len() as f64;
    assert!((mean / sp(500e3) - 1.0).abs() < 0.05, "{mean} vs {}", sp(500e3));
    let out = adiabatic_icr_rwa(&a, 460e3).unwrap().r_mm;
    assert!(out < 0.2 * mean);
    let full = adiabatic_icr_full(&a, 460e3, 200).unwrap().r_mm;
    assert!(full < 0.2 * mean);
}

#[test]
fn optimal_phase_is_linear_and_adiabatic_phase_is_not() {
    let cfg = IcrConfig::default();
    let d = design_icr_pulse(&cfg).unwrap();
    let dws: Vec<f64> = (-80..=80).map(|k| k as f64).collect();
    let mut opt: Vec<f64> = dws.iter().map(|&w| rwa(&d, &cfg, w).phi_rad).collect();
    unwrap_phases(&mut opt);
    let lin_opt = fit::polyfit(&dws, &opt, 1);

    let a = AdiabaticIcrConfig::default();
    let fs: Vec<f64> = (0..=600).map(|i| 485e3 + 50.0 * i as f64).collect();
    let mut ad: Vec<f64> = fs.iter().map(|&f| adiabatic_icr_rwa(&a, f).unwrap().phi_rad).collect();
    unwrap_phases(&mut ad);
    let lin = fit::polyfit(&fs, &ad, 1).rms;
    let quad = fit::polyfit(&fs, &ad, 2).rms;
    assert!(lin / quad > 10.0, "{lin} / {quad}");
    assert!(lin_opt.rms < quad, "{} vs {quad}", lin_opt.rms);
}
