//! One function per experiment. Sweeps run on the caller's rayon pool and are
//! collected in input order.

use std::f64::consts::PI;

use rayon::prelude::*;
use springs_core::adiabatic::{chirp_final_state_exact, chirp_pulse, stationary_phase_prediction, ChirpParams};
use springs_core::icr::{
    adiabatic_icr_rwa, design_icr_pulse, envelope_to_physical, ion_observables, rwa_observables, simulate_ion_full,
    simulate_ion_rwa, unwrap_phases, AdiabaticIcrConfig, DrivingField, IcrConfig,
};
use springs_core::metrics::{pulse_energy, pulse_max_amplitude};
use springs_core::oct::{pulse_approach1, pulse_approach2, self_consistency_check, solve_approach1, solve_approach2, OctProblem};
use springs_core::spectral::propagate_exact;
use springs_core::spin::{
    excitation_from_spring, fidelity, inversion_sequence, selective_inversion_pulse, SpinExperiment, SpinMode,
};
use springs_core::sta::{sta_distance_profile, GFamily, StaDesign};
use springs_core::{Complex64, FrequencyGrid, GridConvention, Pulse, Warning};

use crate::error::{Context, Result};
use crate::manifest::Params;
use crate::output::{header, Output, Summary};

pub fn run(name: &str, p: &Params, out: &mut Output) -> Result<()> {
    let mut s = Summary::new(name);
    match name {
        "fig1" => fig1(p, out, &mut s)?,
        "fig2" => fig2(p, out, &mut s)?,
        "fig3" => fig3(p, out, &mut s)?,
        "table1" => table1(p, out, &mut s)?,
        "icr" => icr(p, out, &mut s)?,
        "fig6" => fig6(p, out, &mut s)?,
        "fig7" => fig7(p, out, &mut s)?,
        "custom" => custom(p, out, &mut s)?,
        _ => unreachable!("manifest names are checked before dispatch"),
    }
    out.summary(&s)
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// `(t, u(t))` at `n` uniform times including both ends.
fn samples(pulse: &Pulse, n: usize) -> Vec<(f64, f64)> {
    linspace(0.0, pulse.t_f(), n.max(2)).into_iter().map(|t| (t, pulse.eval(t))).collect()
}

fn family(p: &Params) -> Result<GFamily> {
    Ok(match p.choice("family", &["minimal", "zero_ends"])? {
        "minimal" => GFamily::Minimal,
        _ => GFamily::ZeroEnds,
    })
}

fn grid(p: &Params, n: usize) -> Result<FrequencyGrid> {
    let conv = match p.choice("grid", &["inclusive", "midpoint"])? {
        "inclusive" => GridConvention::Inclusive,
        _ => GridConvention::Midpoint,
    };
    FrequencyGrid::new(p.f64("band_min")?, p.f64("band_max")?, n, conv).context("frequency grid")
}

fn pulse_stats(s: &mut Summary, pulse: &Pulse, what: &str) -> Result<()> {
    s.value("u_max", pulse_max_amplitude(pulse));
    s.value("energy", pulse_energy(pulse).context(what)?);
    Ok(())
}

/// Largest `|z_ω(t_f) - target|` over the design grid.
fn endpoint_residual(pulse: &Pulse, omegas: &[f64], target: Complex64, what: &str) -> Result<f64> {
    let mut worst = 0.0f64;
    for &w in omegas {
        worst = worst.max((propagate_exact(pulse, w, pulse.t_f()).context(what)? - target).norm());
    }
    Ok(worst)
}

fn fig1(p: &Params, out: &mut Output, s: &mut Summary) -> Result<()> {
    let cp = ChirpParams::new(p.f64("u0")?, p.f64("omega_i")?, p.f64("omega_f")?, p.f64("t_f")?).context("fig1 chirp")?;
    let ws = linspace(p.f64("omega_min")?, p.f64("omega_max")?, p.usize("n_points")?);
    let pairs = ws
        .par_iter()
        .map(|&w| {
            let z = chirp_final_state_exact(&cp, w)?;
            let sp = stationary_phase_prediction(&cp, w)?;
            Ok((z, sp.z))
        })
        .collect::<springs_core::Result<Vec<_>>>()
        .context("fig1 propagation")?;
    let demod = |z: Complex64, w: f64| (z * Complex64::from_polar(1.0, -w * cp.t_f)).arg();
    let mut ph_exact: Vec<f64> = pairs.iter().zip(&ws).map(|(z, w)| demod(z.0, *w)).collect();
    let mut ph_sp: Vec<f64> = pairs.iter().zip(&ws).map(|(z, w)| demod(z.1, *w)).collect();
    unwrap_phases(&mut ph_exact);
    unwrap_phases(&mut ph_sp);
    let rows: Vec<Vec<f64>> = ws.iter().zip(&pairs).map(|(w, z)| vec![*w, z.0.norm(), z.1.norm()]).collect();
    out.csv("fig1_modulus.csv", &header(&["omega", "abs_exact", "abs_stationary"]), &rows)?;
    let rows: Vec<Vec<f64>> = (0..ws.len()).map(|i| vec![ws[i], ph_exact[i], ph_sp[i]]).collect();
    out.csv("fig1_phase.csv", &header(&["omega", "arg_exact", "arg_stationary"]), &rows)?;

    // inner 70% of the sweep, away from the switch-on and switch-off
    let span = cp.omega_f - cp.omega_i;
    let (lo, hi) = (cp.omega_i + 0.15 * span, cp.omega_f - 0.15 * span);
    let pred = cp.u0.abs() * (PI / (2.0 * cp.sweep_rate())).sqrt();
    let inband: Vec<f64> = ws.iter().zip(&pairs).filter(|(w, _)| (lo..=hi).contains(*w)).map(|(_, z)| z.0.norm()).collect();
    s.value("sweep_rate", cp.sweep_rate());
    s.value("stationary_modulus", pred);
    s.list("inner_band", &[lo, hi]);
    s.int("inner_points", inband.len());
    if !inband.is_empty() {
        let mean = inband.iter().sum::<f64>() / inband.len() as f64;
        s.value("inner_mean_modulus", mean);
        s.value("inner_max_rel_deviation", inband.iter().map(|m| (m / pred - 1.0).abs()).fold(0.0, f64::max));
    }
    Ok(())
}

fn fig2(p: &Params, out: &mut Output, s: &mut Summary) -> Result<()> {
    let t_f = p.f64("t_f")?;
    let ns = p.usize_list("n_values")?;
    let fam = family(p)?;
    let center = p.f64("center")?;
    let designs = ns
        .iter()
        .map(|&n| StaDesign::ultra_high(n, center, fam, t_f))
        .collect::<springs_core::Result<Vec<_>>>()
        .context("fig2 design")?;
    let cols = |first: &str| {
        let mut h = vec![first.to_string()];
        h.extend(ns.iter().map(|n| format!("{}_n{n}", if first == "t" { "u" } else { "d" })));
        h
    };
    let ts = linspace(0.0, t_f, p.usize("samples")?.max(2));
    let rows: Vec<Vec<f64>> = ts
        .iter()
        .map(|&t| std::iter::once(t).chain(designs.iter().map(|d| d.pulse.eval(t))).collect())
        .collect();
    out.csv("fig2_pulses.csv", &cols("t"), &rows)?;
    let ws = linspace(p.f64("omega_min")?, p.f64("omega_max")?, p.usize("n_points")?);
    let rows: Vec<Vec<f64>> = ws
        .par_iter()
        .map(|&w| std::iter::once(w).chain(designs.iter().map(|d| sta_distance_profile(d, w))).collect())
        .collect();
    out.csv("fig2_distance.csv", &cols("omega"), &rows)?;
    for (n, d) in ns.iter().zip(&designs) {
        s.section(&format!("n{n}"));
        pulse_stats(s, &d.pulse, "fig2 energy")?;
        s.value("d_at_center_plus_0_05", sta_distance_profile(d, center + 0.05));
    }
    Ok(())
}

struct Pair {
    sta: StaDesign,
    oct: Option<Pulse>,
    oct_condition: f64,
    oct_warnings: Vec<Warning>,
    oct_error: Option<String>,
}

/// STA and approach-I pulses to `(1, 0)` on the same grid. A singular OCT
/// system is reported rather than aborting the experiment.
fn sta_and_oct(omegas: &[f64], fam: GFamily, t_f: f64) -> Result<Pair> {
    let sta = StaDesign::new(omegas, fam, t_f).context("STA design")?;
    let problem = OctProblem::new(omegas.to_vec(), vec![Complex64::new(1.0, 0.0); omegas.len()], t_f, None)
        .context("OCT problem")?;
    Ok(match solve_approach1(&problem) {
        Ok(sol) => Pair {
            sta,
            oct: Some(pulse_approach1(&sol, omegas, t_f)),
            oct_condition: sol.condition_estimate,
            oct_warnings: sol.warnings,
            oct_error: None,
        },
        Err(e) => Pair { sta, oct: None, oct_condition: f64::NAN, oct_warnings: Vec::new(), oct_error: Some(e.to_string()) },
    })
}

fn pair_summary(s: &mut Summary, prefix: &str, pair: &Pair, omegas: &[f64]) -> Result<()> {
    let one = Complex64::new(1.0, 0.0);
    s.section(&format!("{prefix}sta"));
    pulse_stats(s, &pair.sta.pulse, "STA energy")?;
    s.value("max_endpoint_error", endpoint_residual(&pair.sta.pulse, omegas, one, "STA endpoints")?);
    s.section(&format!("{prefix}oct"));
    match (&pair.oct, &pair.oct_error) {
        (Some(u), _) => {
            pulse_stats(s, u, "OCT energy")?;
            s.value("max_endpoint_error", endpoint_residual(u, omegas, one, "OCT endpoints")?);
            s.value("condition", pair.oct_condition);
            s.warnings(&pair.oct_warnings);
        }
        (None, Some(e)) => s.text("error", e),
        (None, None) => {}
    }
    Ok(())
}

fn fig3(p: &Params, out: &mut Output, s: &mut Summary) -> Result<()> {
    let t_f = p.f64("t_f")?;
    let g = grid(p, p.usize("n")?)?;
    let pair = sta_and_oct(g.omegas(), family(p)?, t_f)?;
    let oct = pair.oct.clone().unwrap_or_else(|| Pulse::zero(t_f));
    let rows: Vec<Vec<f64>> = linspace(0.0, t_f, p.usize("samples")?.max(2))
        .into_iter()
        .map(|t| vec![t, pair.sta.pulse.eval(t), if pair.oct.is_some() { oct.eval(t) } else { f64::NAN }])
        .collect();
    out.csv("fig3_pulses.csv", &header(&["t", "u_sta", "u_oct"]), &rows)?;
    let ws = linspace(p.f64("omega_min")?, p.f64("omega_max")?, p.usize("n_points")?);
    let rows = ws
        .par_iter()
        .map(|&w| {
            let d_sta = (propagate_exact(&pair.sta.pulse, w, t_f)? - 1.0).norm();
            let d_oct = match &pair.oct {
                Some(u) => (propagate_exact(u, w, t_f)? - 1.0).norm(),
                None => f64::NAN,
            };
            Ok(vec![w, d_sta, d_oct])
        })
        .collect::<springs_core::Result<Vec<_>>>()
        .context("fig3 sweep")?;
    out.csv("fig3_endpoints.csv", &header(&["omega", "d_sta", "d_oct"]), &rows)?;
    s.list("omegas", g.omegas());
    pair_summary(s, "", &pair, g.omegas())
}

fn table1(p: &Params, out: &mut Output, s: &mut Summary) -> Result<()> {
    let t_f = p.f64("t_f")?;
    let fam = family(p)?;
    let mut rows = Vec::new();
    for n in p.usize_list("n_values")? {
        let g = grid(p, n)?;
        let pair = sta_and_oct(g.omegas(), fam, t_f)?;
        let one = Complex64::new(1.0, 0.0);
        let row = |method: &str, u: &Pulse, cond: f64| -> Result<Vec<String>> {
            Ok(vec![
                n.to_string(),
                method.to_string(),
                crate::output::num(pulse_max_amplitude(u)),
                crate::output::num(pulse_energy(u).context("table1 energy")?),
                crate::output::num(endpoint_residual(u, g.omegas(), one, "table1 endpoints")?),
                crate::output::num(cond),
            ])
        };
        rows.push(row("sta", &pair.sta.pulse, f64::NAN)?);
        if let Some(u) = &pair.oct {
            rows.push(row("oct", u, pair.oct_condition)?);
        }
        pair_summary(s, &format!("n{n}."), &pair, g.omegas())?;
    }
    out.csv_text(
        "table1.csv",
        &header(&["n", "method", "u_max", "energy", "max_endpoint_error", "condition"]),
        &rows,
    )
}

fn icr(p: &Params, out: &mut Output, s: &mut Summary) -> Result<()> {
    let cfg = IcrConfig {
        e0_v_per_m: p.f64("e0_v_per_m")?,
        b0_tesla: p.f64("b0_tesla")?,
        f0_hz: p.f64("f0_hz")?,
        tf_ms: p.f64("tf_ms")?,
        omega_s: p.f64("omega_s")?,
        mu: p.f64("mu")?,
        eta: p.f64("eta")?,
        lambda: p.f64("lambda")?,
        n_design_freqs: p.usize("n_design_freqs")?,
        design_band: (p.f64("design_band_min")?, p.f64("design_band_max")?),
        steps_per_period: p.usize("steps_per_period")?,
    };
    let d = design_icr_pulse(&cfg).context("icr design")?;
    let field = envelope_to_physical(&d.pulse, &cfg);
    let rows: Vec<Vec<f64>> = samples(&d.pulse, p.usize("samples")?)
        .into_iter()
        .map(|(t, u)| vec![t, u, u * field.scale * cfg.b0_tesla])
        .collect();
    out.csv("icr_pulse.csv", &header(&["t_ms", "u", "e_v_per_m"]), &rows)?;

    let span = p.f64("f_span_khz")? * 1e3;
    let fs = linspace(cfg.f0_hz - span, cfg.f0_hz + span, p.usize("n_ions")?);
    let full = p.bool("full")?;
    let rows = fs
        .par_iter()
        .map(|&f| {
            let w = 2.0 * PI * f;
            let r = rwa_observables(&simulate_ion_rwa(&d.pulse, w - cfg.omega0(), &cfg)?, &cfg);
            let (rf, pf) = if full {
                let dt = 1.0 / (cfg.steps_per_period as f64 * f.max(field.max_frequency_hz()));
                let o = ion_observables(&simulate_ion_full(&field, w, cfg.tf_s(), dt)?, &cfg);
                (o.r_mm, o.phi_rad)
            } else {
                (f64::NAN, f64::NAN)
            };
            Ok(vec![f / 1e3, r.r_mm, rf, r.phi_rad, pf])
        })
        .collect::<springs_core::Result<Vec<_>>>()
        .context("icr ion sweep")?;
    out.csv("icr.csv", &header(&["f_khz", "r_mm_rwa", "r_mm_full", "phi_rad_rwa", "phi_rad_full"]), &rows)?;

    let a = AdiabaticIcrConfig {
        f_i_hz: p.f64("adiabatic_f_i_khz")? * 1e3,
        f_f_hz: p.f64("adiabatic_f_f_khz")? * 1e3,
        tf_s: cfg.tf_s(),
        e0_v_per_m: p.f64("adiabatic_e0_v_per_m")?,
        b0_tesla: cfg.b0_tesla,
        f0_hz: cfg.f0_hz,
    };
    let obs = fs
        .par_iter()
        .map(|&f| adiabatic_icr_rwa(&a, f))
        .collect::<springs_core::Result<Vec<_>>>()
        .context("icr adiabatic reference")?;
    let mut ph: Vec<f64> = obs.iter().map(|o| o.phi_rad).collect();
    unwrap_phases(&mut ph);
    let arows: Vec<Vec<f64>> = (0..fs.len()).map(|i| vec![fs[i] / 1e3, obs[i].r_mm, ph[i]]).collect();
    out.csv("icr_adiabatic.csv", &header(&["f_khz", "r_mm_rwa", "phi_rad_rwa"]), &arows)?;

    s.section("design");
    s.value("max_endpoint_error", d.report.max_endpoint_error);
    s.value("energy", d.report.energy);
    s.value("u_max", d.report.max_amplitude);
    s.value("peak_field_v_per_m", d.report.max_amplitude * field.scale * cfg.b0_tesla);
    s.value("condition", d.solution.condition_estimate);
    s.warnings(&d.solution.warnings);
    s.section("ions");
    let plateau: Vec<&Vec<f64>> = rows
        .iter()
        .filter(|r| (2.0 * PI * r[0] * 1e3 - cfg.omega0()).abs() * 1e-3 <= 0.8 * cfg.omega_s)
        .collect();
    s.int("count", rows.len());
    s.flag("full_simulation", full);
    s.int("plateau_count", plateau.len());
    if !plateau.is_empty() {
        let (lo, hi) = plateau.iter().fold((f64::MAX, 0.0f64), |(a, b), r| (a.min(r[1]), b.max(r[1])));
        s.value("plateau_r_mm_min", lo);
        s.value("plateau_r_mm_max", hi);
        if full {
            let worst = plateau.iter().map(|r| (r[2] / r[1] - 1.0).abs()).fold(0.0, f64::max);
            s.value("plateau_max_rel_full_vs_rwa", worst);
        }
    }
    Ok(())
}

fn fig6(p: &Params, out: &mut Output, s: &mut Summary) -> Result<()> {
    let t_f = p.f64("t_f")?;
    let ns = p.usize_list("n_values")?;
    let fam = family(p)?;
    let center = p.f64("center")?;
    let mode = match p.choice("mode", &["inversion", "excitation"])? {
        "inversion" => SpinMode::Inversion,
        _ => SpinMode::Excitation,
    };
    let offsets = linspace(p.f64("offset_min")?, p.f64("offset_max")?, p.usize("n_points")?);
    let n_steps = p.usize("n_steps")?;
    let mut pulses = Vec::new();
    let mut profiles = Vec::new();
    for &n in &ns {
        let sta = StaDesign::ultra_high(n, center, fam, t_f).context("fig6 design")?;
        let exp = SpinExperiment::new(excitation_from_spring(&sta.pulse), offsets.clone(), mode, 1.0, n_steps)
            .context("fig6 experiment")?;
        let vals: Vec<f64> = offsets.par_iter().map(|&w| exp.figure_of_merit(&exp.final_state(w))).collect();
        pulses.push(exp.pulse);
        profiles.push(vals);
    }
    let mut h = vec!["omega".to_string()];
    h.extend(ns.iter().map(|n| format!("j_n{n}")));
    let rows: Vec<Vec<f64>> = (0..offsets.len())
        .map(|i| std::iter::once(offsets[i]).chain(profiles.iter().map(|v| v[i])).collect())
        .collect();
    out.csv("fig6_fidelity.csv", &h, &rows)?;
    let mut h = vec!["t".to_string()];
    h.extend(ns.iter().map(|n| format!("u_n{n}")));
    let rows: Vec<Vec<f64>> = linspace(0.0, t_f, p.usize("samples")?.max(2))
        .into_iter()
        .map(|t| std::iter::once(t).chain(pulses.iter().map(|u| u.eval(t))).collect())
        .collect();
    out.csv("fig6_pulses.csv", &h, &rows)?;
    for ((n, u), vals) in ns.iter().zip(&pulses).zip(&profiles) {
        s.section(&format!("n{n}"));
        pulse_stats(s, u, "fig6 energy")?;
        let prof = springs_core::spin::FidelityProfile { omegas: offsets.clone(), values: vals.clone() };
        match prof.band_around(center, 0.99) {
            Some((lo, hi)) => s.list("band_0_99", &[lo, hi]),
            None => s.text("band_0_99", "none"),
        }
    }
    Ok(())
}

fn fig7(p: &Params, out: &mut Output, s: &mut Summary) -> Result<()> {
    let (wa, wb, t_f) = (p.f64("omega_a")?, p.f64("omega_b")?, p.f64("t_f")?);
    let n_steps = p.usize("n_steps")?.max(1);
    let pulse = selective_inversion_pulse(wa, wb, t_f).context("fig7 design")?;
    let seq = inversion_sequence(&pulse);
    let ts = linspace(0.0, seq.duration(), 2 * n_steps + 1);
    let u_at = |t: f64| if t <= t_f { seq.first.eval(t) } else { seq.second.eval(t - t_f) };
    let rows: Vec<Vec<f64>> = ts.iter().map(|&t| vec![t, u_at(t)]).collect();
    out.csv("fig7_pulse.csv", &header(&["t", "u"]), &rows)?;
    let (ta, tb) = rayon::join(|| seq.trajectory(wa, n_steps), || seq.trajectory(wb, n_steps));
    let rows: Vec<Vec<f64>> = (0..ts.len())
        .map(|i| vec![ts[i], ta[i].x, ta[i].y, ta[i].z, tb[i].x, tb[i].y, tb[i].z])
        .collect();
    out.csv("fig7_bloch.csv", &header(&["t", "x_a", "y_a", "z_a", "x_b", "y_b", "z_b"]), &rows)?;
    let m = p.usize("spring_points")?;
    let sa = seq.spring_trajectory(wa, m).context("fig7 springs")?;
    let sb = seq.spring_trajectory(wb, m).context("fig7 springs")?;
    let rows: Vec<Vec<f64>> = sa.iter().zip(&sb).map(|(a, b)| vec![a.0, a.1.re, a.1.im, b.1.re, b.1.im]).collect();
    out.csv("fig7_springs.csv", &header(&["t", "x_a", "y_a", "x_b", "y_b"]), &rows)?;
    pulse_stats(s, &pulse, "fig7 energy")?;
    let (ca, cb) = rayon::join(|| seq.simulate_converged(wa, 1e-9), || seq.simulate_converged(wb, 1e-9));
    s.section("a");
    s.value("omega", wa);
    s.value("z_final", ca.state.z);
    s.value("fidelity", fidelity(&ca.state));
    s.section("b");
    s.value("omega", wb);
    s.value("z_final", cb.state.z);
    Ok(())
}

fn custom(p: &Params, out: &mut Output, s: &mut Summary) -> Result<()> {
    let method = p.choice("method", &["adiabatic", "sta", "oct1", "oct2"])?;
    let t_f = p.f64("t_f")?;
    let target = Complex64::new(p.f64("target_re")?, p.f64("target_im")?);
    s.text("method", method);
    let (pulse, omegas) = match method {
        "adiabatic" => {
            let cp = ChirpParams::new(p.f64("u0")?, p.f64("omega_i")?, p.f64("omega_f")?, t_f).context("adiabatic design")?;
            (chirp_pulse(&cp), Vec::new())
        }
        "sta" => {
            let g = grid(p, p.usize("n")?)?;
            let d = StaDesign::new(g.omegas(), family(p)?, t_f).context("STA design")?;
            (scale_to(&d.pulse, target)?, g.omegas().to_vec())
        }
        _ => {
            let g = grid(p, p.usize("n")?)?;
            let lambda = (method == "oct2").then(|| p.f64("lambda")).transpose()?;
            let prob = OctProblem::new(g.omegas().to_vec(), vec![target; g.len()], t_f, lambda).context("OCT problem")?;
            let (pulse, sol) = match lambda {
                None => {
                    let sol = solve_approach1(&prob).context("OCT approach I")?;
                    (pulse_approach1(&sol, &prob.omegas, t_f), sol)
                }
                Some(l) => {
                    let (_, sol) = solve_approach2(&prob).context("OCT approach II")?;
                    (pulse_approach2(&sol, &prob.omegas, t_f, l), sol)
                }
            };
            let rep = self_consistency_check(&prob, &pulse).context("OCT check")?;
            s.value("condition", sol.condition_estimate);
            s.value("relative_residual", sol.residual);
            if let Some(c) = rep.cost {
                s.value("cost", c);
            }
            s.warnings(&sol.warnings);
            (pulse, g.omegas().to_vec())
        }
    };
    pulse_stats(s, &pulse, "design energy")?;
    if !omegas.is_empty() {
        s.list("omegas", &omegas);
        s.value("max_endpoint_error", endpoint_residual(&pulse, &omegas, target, "design endpoints")?);
    }
    let rows: Vec<Vec<f64>> = samples(&pulse, p.usize("samples")?).into_iter().map(|(t, u)| vec![t, u]).collect();
    out.csv("pulse.csv", &header(&["t", "u"]), &rows)?;
    let ws = linspace(p.f64("omega_min")?, p.f64("omega_max")?, p.usize("n_points")?);
    let rows = ws
        .par_iter()
        .map(|&w| {
            let z = propagate_exact(&pulse, w, t_f)?;
            Ok(vec![w, z.norm(), z.arg(), (z - target).norm()])
        })
        .collect::<springs_core::Result<Vec<_>>>()
        .context("design sweep")?;
    out.csv("sweep.csv", &header(&["omega", "abs_z", "arg_z", "d"]), &rows)
}

/// The STA pulse reaches `(1, 0)`; by linearity `c u` reaches `c`, which a
/// real pulse can do for every frequency only when `c` is real.
fn scale_to(pulse: &Pulse, target: Complex64) -> Result<Pulse> {
    if target.im != 0.0 {
        return Err(crate::error::CliError::BadValue {
            key: "target_im".into(),
            value: target.im.to_string(),
            expected: "0 for the sta method (its pulse is real and reaches a real multiple of (1, 0))".into(),
        });
    }
    Ok(if target.re == 1.0 { pulse.clone() } else { pulse.scaled(target.re) })
}
