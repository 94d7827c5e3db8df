//! Shortcuts to adiabaticity for springs sent to `(1, 0)`.
//!
//! With `g` a flat output, the pulse `u = Σ_k g_k g^{(k)}` (where `g_k` are
//! the coefficients of `Π(λ² + ω_k²)`) brings every design frequency exactly
//! to `z = 1` provided `g` meets the boundary conditions checked by
//! [`check_boundary_conditions`].

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::pulse::{PolyDerivSum, Pulse};
use crate::quad::GaussLegendre;

/// Coefficients (ascending) of `Π_k (λ² + ω_k²)`.
pub fn char_poly_coeffs(omegas: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for &w in omegas {
        let mut next = vec![0.0; c.len() + 2];
        for (i, &a) in c.iter().enumerate() {
            next[i] += a * w * w;
            next[i + 2] += a;
        }
        c = next;
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GFamily {
    /// Lowest degree, `4N - 1`.
    Minimal,
    /// Degree `4N + 2`; the pulse also vanishes at both ends.
    ZeroEnds,
}

/// `(-t_f)^{2N-1}/(2N-1)! · s^a (1-s)^b`, built as `(1-x²)^b (1+x)^{a-b}` in
/// `x = 2s - 1` so the Chebyshev products do not cancel.
fn g_core(n: usize, a: usize, b: usize, t_f: f64) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one design frequency"));
    }
    let mut c = -1.0;
    for k in 1..2 * n {
        c *= t_f / k as f64;
    }
    c *= Float::powi(0.5, (a + b) as i32);
    let one_minus_x2 = Polynomial::from_chebyshev(vec![0.5, 0.0, -0.5], t_f)?;
    let one_plus_x = Polynomial::from_chebyshev(vec![1.0, 1.0], t_f)?;
    Ok(one_minus_x2.pow(b).mul(&one_plus_x.pow(a - b)).scale(c))
}

pub fn g_polynomial_min(n: usize, t_f: f64) -> Result<Polynomial> {
    g_core(n, 2 * n, (2 * n).saturating_sub(1), t_f)
}

pub fn g_polynomial_zero_ends(n: usize, t_f: f64) -> Result<Polynomial> {
    let core = g_core(n, 2 * n + 2, (2 * n).saturating_sub(1), t_f)?;
    let r = Polynomial::one_minus_s(t_f)?;
    let tail = Polynomial::constant(1.0, t_f)?.add(&r.scale((2 * n + 2) as f64));
    Ok(core.mul(&tail))
}

pub fn g_polynomial(family: GFamily, n: usize, t_f: f64) -> Result<Polynomial> {
    match family {
        GFamily::Minimal => g_polynomial_min(n, t_f),
        GFamily::ZeroEnds => g_polynomial_zero_ends(n, t_f),
    }
}

/// Largest deviation from `g^{(k)}(0) = 0` (k < 2N), `g^{(k)}(t_f) = 0`
/// (k < 2N-1) and `g^{(2N-1)}(t_f) = 1`, with its location.
pub fn check_boundary_conditions(g: &Polynomial, n: usize) -> (f64, usize, &'static str) {
    let t_f = g.t_f();
    let mut worst = (0.0, 0, "left");
    let mut d = g.clone();
    for k in 0..2 * n {
        let left = d.eval(0.0).abs();
        let want = if k == 2 * n - 1 { 1.0 } else { 0.0 };
        let right = (d.eval(t_f) - want).abs();
        if left > worst.0 {
            worst = (left, k, "left");
        }
        if right > worst.0 {
            worst = (right, k, "right");
        }
        d = d.derivative();
    }
    worst
}

/// `u = Σ_k g_k g^{(k)}` for the given design frequencies.
pub fn sta_pulse(omegas: &[f64], g: &Polynomial) -> Result<Pulse> {
    if omegas.is_empty() {
        return Err(Error::InvalidInput("need at least one design frequency"));
    }
    let (violation, order, end) = check_boundary_conditions(g, omegas.len());
    if !(violation <= 1e-6) {
        return Err(Error::InvalidG { order, end, violation });
    }
    Ok(Pulse::PolyDerivSum(PolyDerivSum::new(g.clone(), char_poly_coeffs(omegas))))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StaDesign {
    pub omegas: Vec<f64>,
    pub g: Polynomial,
    pub g_coeffs: Vec<f64>,
    pub t_f: f64,
    pub pulse: Pulse,
}

impl StaDesign {
    pub fn new(omegas: &[f64], family: GFamily, t_f: f64) -> Result<Self> {
        if omegas.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidInput("non-finite design frequency"));
        }
        let g = g_polynomial(family, omegas.len(), t_f)?;
        let pulse = sta_pulse(omegas, &g)?;
        Ok(StaDesign {
            omegas: omegas.to_vec(),
            g,
            g_coeffs: char_poly_coeffs(omegas),
            t_f,
            pulse,
        })
    }

    /// All `n` design frequencies placed at `center`.
    pub fn ultra_high(n: usize, center: f64, family: GFamily, t_f: f64) -> Result<Self> {
        Self::new(&vec![center; n], family, t_f)
    }

    /// `G(t_f) = ∫_0^{t_f} e^{-iωτ} g(τ) dτ`.
    ///
    /// Away from `ω = 0` the integral is summed exactly by parts from the
    /// endpoint derivatives of `g`; quadrature is used when that sum cancels.
    pub fn g_spectrum(&self, omega: f64) -> Complex64 {
        if omega != 0.0 {
            let (sum, abs) = self.g_spectrum_by_parts(omega);
            if abs <= 1e3 * sum.norm() {
                return sum;
            }
        }
        let q = (self.g.degree() / 2 + 20).clamp(20, 64);
        let panels = Float::ceil(omega.abs() * self.t_f / 4.0).max(1.0) as usize;
        GaussLegendre::new(q).composite(0.0, self.t_f, panels, |t| {
            Complex64::from_polar(self.g.eval(t), -omega * t)
        })
    }

    fn g_spectrum_by_parts(&self, omega: f64) -> (Complex64, f64) {
        // ∫ e^{-iωτ} g = Σ_j [-e^{-iωτ} g^{(j)}(τ) / (iω)^{j+1}]_0^{t_f}
        let iw = Complex64::new(0.0, omega);
        let end = Complex64::from_polar(1.0, -omega * self.t_f);
        let mut d = self.g.clone();
        let mut pow = iw;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        for _ in 0..=self.g.degree() {
            let term = (Complex64::new(d.eval(0.0), 0.0) - end * d.eval(self.t_f)) / pow;
            sum += term;
            abs += term.norm();
            d = d.derivative();
            pow *= iw;
        }
        (sum, abs)
    }
}

/// Distance `|Π(ω² - ω_k²) G(t_f)|` of spring `ω` from `(1, 0)`.
pub fn sta_distance_profile(design: &StaDesign, omega: f64) -> f64 {
    let prod: f64 = design.omegas.iter().map(|w| omega * omega - w * w).product();
    (design.g_spectrum(omega) * prod).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::propagate_exact;

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly_coeffs(&[0.0]), vec![0.0, 0.0, 1.0]);
        assert_eq!(char_poly_coeffs(&[1.0, 2.0, 3.0]), vec![36.0, 0.0, 49.0, 0.0, 14.0, 0.0, 1.0]);
        let (a, b) = (0.3f64, 0.7f64);
        let c = char_poly_coeffs(&[a, b]);
        assert_eq!(c, vec![a * a * b * b, 0.0, a * a + b * b, 0.0, 1.0]);
    }

    #[test]
    fn boundary_conditions_hold() {
        for n in 1..=8 {
            for fam in [GFamily::Minimal, GFamily::ZeroEnds] {
                let g = g_polynomial(fam, n, 24.0).unwrap();
                let (v, k, end) = check_boundary_conditions(&g, n);
                assert!(v < 1e-9, "n={n} {fam:?}: {v:e} at order {k} ({end})");
            }
        }
    }

    #[test]
    fn zero_ends_pulse_vanishes_at_ends() {
        for n in [1, 2, 4, 8] {
            let omegas: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
            let d = StaDesign::new(&omegas, GFamily::ZeroEnds, 24.0).unwrap();
            assert!(d.pulse.eval(0.0).abs() < 1e-9);
            assert!(d.pulse.eval(24.0).abs() < 1e-9);
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(g_polynomial_min(3, 1.0).unwrap().degree(), 11);
        assert_eq!(g_polynomial_zero_ends(3, 1.0).unwrap().degree(), 14);
    }

    #[test]
    fn design_frequencies_reach_target() {
        let d = StaDesign::new(&[0.3, 0.9], GFamily::Minimal, 10.0).unwrap();
        for &w in &d.omegas {
            let z = propagate_exact(&d.pulse, w, 10.0).unwrap();
            assert!((z - 1.0).norm() < 1e-8, "{w}: {z}");
            assert!(sta_distance_profile(&d, w) == 0.0);
        }
    }

    #[test]
    fn rejects_bad_g() {
        let g = g_polynomial_min(2, 5.0).unwrap();
        assert!(matches!(sta_pulse(&[0.1, 0.2, 0.3], &g), Err(Error::InvalidG { .. })));
    }
}
