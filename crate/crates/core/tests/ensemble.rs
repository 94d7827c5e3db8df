use num_complex::Complex64;
use springs_core::metrics::{distance_to_target, pulse_energy, pulse_max_amplitude};
use springs_core::pulse::{Chirp, ExpSum, PolyDerivSum, Sampled};
use springs_core::spectral::{moment_integrals, moment_switch, propagate_exact, scaled_moment_series, scaled_moments_recurrence};
use springs_core::sta::{GFamily, StaDesign};
use springs_core::{FrequencyGrid, Polynomial, Pulse};
use springs_oracle::{ode, quad};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn constant(v: f64, t_f: f64) -> Pulse {
    Pulse::Sampled(Sampled::new(vec![v, v], t_f).unwrap())
}

#[test]
fn zero_pulse_leaves_springs_at_rest() {
    for w in [-3.0, 0.0, 0.4, 10.0] {
        assert_eq!(propagate_exact(&Pulse::zero(1.0), w, 1.0).unwrap(), c(0.0, 0.0));
    }
}

#[test]
fn constant_drive_of_static_spring() {
    let z = propagate_exact(&constant(1.0, 2.0), 0.0, 2.0).unwrap();
    assert!((z - c(2.0, 0.0)).norm() < 1e-15);
}

#[test]
fn resonant_exp_sum_matches_quadrature() {
    let p = Pulse::ExpSum(ExpSum { terms: vec![(c(2.0, 0.0), 1.0)], t_f: std::f64::consts::PI });
    let t = std::f64::consts::PI;
    let z = propagate_exact(&p, 1.0, t).unwrap();
    let want = quad::spring_endpoint(|s| p.eval(s), 1.0, t, 1e-13);
    assert!((z - want).norm() < 1e-9, "{z} vs {want}");
    // 2cos(τ) at resonance: e^{iπ}(π + (e^{-2iπ}-1)/(2i)) = -π
    assert!((z + c(t, 0.0)).norm() < 1e-12);
}

#[test]
fn moment_examples() {
    let m = moment_integrals(0, 0.0, 3.0);
    assert!((m[0] - c(3.0, 0.0)).norm() < 1e-15);
    let m = moment_integrals(1, 0.0, 2.0);
    assert!((m[1] - c(2.0, 0.0)).norm() < 1e-15);
    let m = moment_integrals(5, 0.7, 24.0);
    let want = quad::integrate(|s| Complex64::from_polar(s.powi(5), -0.7 * s), 0.0, 24.0, 1e-9);
    assert!((m[5] - want).norm() < 1e-10 * want.norm().max(1.0), "{} vs {want}", m[5]);
}

#[test]
fn moment_branches_agree_at_switch() {
    for m in 0..40 {
        let k = moment_switch(m);
        for kappa in [k, -k, k * (1.0 + 1e-9)] {
            let series = scaled_moment_series(m, kappa);
            let rec = scaled_moments_recurrence(m, kappa)[m];
            assert!((series - rec).norm() < 1e-12, "m={m} κ={kappa}: {series} vs {rec}");
        }
    }
}

#[test]
fn distance_examples() {
    assert_eq!(distance_to_target(c(1.0, 0.0), c(1.0, 0.0)), 0.0);
    assert_eq!(distance_to_target(c(0.0, 0.0), c(1.0, 0.0)), 1.0);
    assert!((distance_to_target(c(0.6, 0.8), c(0.0, 0.0)) - 1.0).abs() < 1e-15);
}

#[test]
fn energy_and_amplitude_examples() {
    assert_eq!(pulse_energy(&Pulse::zero(3.0)).unwrap(), 0.0);
    assert!((pulse_energy(&constant(1.0, 24.0)).unwrap() - 24.0).abs() < 1e-12);
    assert!((pulse_max_amplitude(&constant(1.0, 24.0)) - 1.0).abs() < 1e-15);
}

#[test]
fn energy_matches_adaptive_quadrature() {
    let ch = Pulse::Chirp(Chirp { u0: 1.3, omega_i: 0.1, sweep_rate: 0.05, phase: 0.0, t_f: 20.0 });
    let want = quad::integrate_real(|t| ch.eval(t).powi(2), 0.0, 20.0, 1e-12);
    let got = pulse_energy(&ch).unwrap();
    assert!((got - want).abs() < 1e-6 * want);
}

#[test]
fn sampling_examples() {
    let s = constant(1.0, 5.0).sample(3).unwrap();
    let Pulse::Sampled(s) = s else { panic!("expected samples") };
    assert_eq!(s.values(), &[1.0, 1.0, 1.0]);
    assert_eq!(s.times(), vec![0.0, 2.5, 5.0]);
    let ch = Pulse::Chirp(Chirp { u0: 1.0, omega_i: 0.0, sweep_rate: 0.005, phase: 0.0, t_f: 400.0 });
    let Pulse::Sampled(s) = ch.sample(11).unwrap() else { panic!() };
    assert_eq!(s.values()[0], 1.0);
    assert!(constant(1.0, 1.0).sample(1).is_err());
}

#[test]
fn sta_pulse_starts_at_leading_derivative_value() {
    // with g^{(k)}(0) = 0 for k < 2N the pulse at 0 is g^{(2N)}(0)
    for n in 1..=6 {
        let omegas: Vec<f64> = (0..n).map(|k| 0.1 + 0.2 * k as f64).collect();
        let d = StaDesign::new(&omegas, GFamily::Minimal, 10.0).unwrap();
        let Pulse::Sampled(s) = d.pulse.sample(5).unwrap() else { panic!() };
        let want = d.g.derivative_n(2 * n).eval(0.0);
        assert!((s.values()[0] - want).abs() < 1e-9 * want.abs().max(1.0), "N={n}");
        // the zero-ends family starts at rest
        let z = StaDesign::new(&omegas, GFamily::ZeroEnds, 10.0).unwrap();
        assert!(z.pulse.eval(0.0).abs() < 1e-9 * z.g.derivative_n(2 * n).abs_bound().max(1.0));
    }
}

#[test]
fn propagation_matches_ode_for_each_representation() {
    let g = Polynomial::from_monomial_s(&[0.0, 0.0, 0.5, -1.0, 0.7], 6.0).unwrap();
    let pulses = [
        Pulse::Chirp(Chirp { u0: 0.8, omega_i: -0.4, sweep_rate: 0.3, phase: 0.2, t_f: 6.0 }),
        Pulse::ExpSum(ExpSum { terms: vec![(c(0.3, -0.7), 0.9), (c(1.1, 0.2), 0.0)], t_f: 6.0 }),
        Pulse::PolyDerivSum(PolyDerivSum::new(g, vec![0.25, 0.0, 1.0])),
        Pulse::Sampled(Sampled::new(vec![0.0, 0.5, -1.0, 2.0, 0.3, 0.0], 6.0).unwrap()),
    ];
    for p in &pulses {
        for w in [-1.7, 0.0, 0.45, 2.2] {
            let z = propagate_exact(p, w, 6.0).unwrap();
            let want = quad::spring_endpoint(|t| p.eval(t), w, 6.0, 1e-13);
            assert!((z - want).norm() < 1e-9, "{p:?} ω={w}: {z} vs {want}");
            if !matches!(p, Pulse::Sampled(_)) {
                let rk = ode::spring_converged(|t| p.eval(t), w, 6.0, 512, 1e-11);
                assert!((z - rk).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn intermediate_times() {
    let p = Pulse::ExpSum(ExpSum { terms: vec![(c(0.3, -0.7), 0.9)], t_f: 6.0 });
    for t in [0.0, 1.0, 3.7] {
        let z = propagate_exact(&p, 0.4, t).unwrap();
        let want = quad::spring_endpoint(|s| p.eval(s), 0.4, t, 1e-13);
        assert!((z - want).norm() < 1e-10);
    }
}

#[test]
fn grid_conventions() {
    let g = FrequencyGrid::inclusive(0.0, 1.0, 5).unwrap();
    assert_eq!(g.omegas(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
    let g = FrequencyGrid::midpoint(0.0, 1.0, 4).unwrap();
    assert_eq!(g.omegas(), &[0.125, 0.375, 0.625, 0.875]);
    assert!(FrequencyGrid::from_vec(vec![0.0, 0.0]).is_err());
    assert!(FrequencyGrid::from_vec(vec![0.0, f64::NAN]).is_err());
}
