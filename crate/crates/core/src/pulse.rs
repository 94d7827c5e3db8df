//! Real control fields `u(t)` on `[0, t_f]`.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// `u0 cos(phase + ω_i t + s t²/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chirp {
    pub u0: f64,
    pub omega_i: f64,
    pub sweep_rate: f64,
    pub phase: f64,
    pub t_f: f64,
}

impl Chirp {
    pub fn eval(&self, t: f64) -> f64 {
        self.u0 * Float::cos(self.phase + self.omega_i * t + 0.5 * self.sweep_rate * t * t)
    }
}

/// `Σ Re[c_k e^{iω_k t}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpSum {
    pub terms: Vec<(Complex64, f64)>,
    pub t_f: f64,
}

impl ExpSum {
    pub fn eval(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, w)| (c * Complex64::from_polar(1.0, w * t)).re)
            .sum()
    }
}

/// `Σ_k p_k g^{(k)}(t)` for a polynomial flat output `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyDerivSum {
    g: Polynomial,
    coeffs: Vec<f64>,
    combined: Polynomial,
}

impl PolyDerivSum {
    pub fn new(g: Polynomial, coeffs: Vec<f64>) -> Self {
        let mut combined = g.scale(0.0);
        let mut d = g.clone();
        for &p in &coeffs {
            if p != 0.0 {
                combined = combined.add(&d.scale(p));
            }
            d = d.derivative();
        }
        PolyDerivSum { g, coeffs, combined }
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// The pulse itself as one polynomial.
    pub fn combined(&self) -> &Polynomial {
        &self.combined
    }
}

/// Uniform samples on `[0, t_f]`, linearly interpolated.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled {
    values: Vec<f64>,
    t_f: f64,
}

impl Sampled {
    pub fn new(values: Vec<f64>, t_f: f64) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput("sampled pulse needs at least two samples"));
        }
        if !(t_f > 0.0 && t_f.is_finite()) {
            return Err(Error::InvalidInput("horizon must be positive"));
        }
        Ok(Sampled { values, t_f })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dt(&self) -> f64 {
        self.t_f / (self.values.len() - 1) as f64
    }

    pub fn times(&self) -> Vec<f64> {
        let dt = self.dt();
        (0..self.values.len()).map(|i| i as f64 * dt).collect()
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.values.len() - 1;
        let x = t / self.dt();
        let i = (Float::floor(x) as usize).min(n - 1);
        let f = x - i as f64;
        self.values[i] * (1.0 - f) + self.values[i + 1] * f
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Pulse {
    Chirp(Chirp),
    ExpSum(ExpSum),
    PolyDerivSum(PolyDerivSum),
    Sampled(Sampled),
}

impl Pulse {
    pub fn zero(t_f: f64) -> Self {
        Pulse::ExpSum(ExpSum { terms: Vec::new(), t_f })
    }

    pub fn t_f(&self) -> f64 {
        match self {
            Pulse::Chirp(c) => c.t_f,
            Pulse::ExpSum(e) => e.t_f,
            Pulse::PolyDerivSum(p) => p.g.t_f(),
            Pulse::Sampled(s) => s.t_f,
        }
    }

    /// `u(t)`, zero outside `[0, t_f]`.
    pub fn eval(&self, t: f64) -> f64 {
        if !(0.0..=self.t_f()).contains(&t) {
            return 0.0;
        }
        match self {
            Pulse::Chirp(c) => c.eval(t),
            Pulse::ExpSum(e) => e.eval(t),
            Pulse::PolyDerivSum(p) => p.combined.eval(t),
            Pulse::Sampled(s) => s.eval(t),
        }
    }

    pub fn scaled(&self, f: f64) -> Self {
        match self {
            Pulse::Chirp(c) => Pulse::Chirp(Chirp { u0: c.u0 * f, ..*c }),
            Pulse::ExpSum(e) => Pulse::ExpSum(ExpSum {
                terms: e.terms.iter().map(|(c, w)| (c * f, *w)).collect(),
                t_f: e.t_f,
            }),
            Pulse::PolyDerivSum(p) => Pulse::PolyDerivSum(PolyDerivSum {
                g: p.g.clone(),
                coeffs: p.coeffs.iter().map(|c| c * f).collect(),
                combined: p.combined.scale(f),
            }),
            Pulse::Sampled(s) => Pulse::Sampled(Sampled {
                values: s.values.iter().map(|v| v * f).collect(),
                t_f: s.t_f,
            }),
        }
    }

    /// `t ↦ u(t_f - t)`, kept in closed form.
    pub fn time_reversed(&self) -> Self {
        match self {
            Pulse::Chirp(c) => {
                let t = c.t_f;
                Pulse::Chirp(Chirp {
                    u0: c.u0,
                    omega_i: c.omega_i + c.sweep_rate * t,
                    sweep_rate: -c.sweep_rate,
                    phase: -(c.phase + c.omega_i * t + 0.5 * c.sweep_rate * t * t),
                    t_f: t,
                })
            }
            Pulse::ExpSum(e) => Pulse::ExpSum(ExpSum {
                terms: e
                    .terms
                    .iter()
                    .map(|(c, w)| ((c * Complex64::from_polar(1.0, w * e.t_f)).conj(), *w))
                    .collect(),
                t_f: e.t_f,
            }),
            Pulse::PolyDerivSum(p) => {
                let coeffs = p
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| if k % 2 == 1 { -c } else { *c })
                    .collect();
                Pulse::PolyDerivSum(PolyDerivSum {
                    g: p.g.reversed(),
                    coeffs,
                    combined: p.combined.reversed(),
                })
            }
            Pulse::Sampled(s) => Pulse::Sampled(Sampled {
                values: s.values.iter().rev().copied().collect(),
                t_f: s.t_f,
            }),
        }
    }

    /// `n` uniform samples including both ends.
    pub fn sample(&self, n: usize) -> Result<Pulse> {
        if n < 2 {
            return Err(Error::InvalidInput("need at least two samples"));
        }
        let t_f = self.t_f();
        let values = (0..n)
            .map(|i| self.eval(t_f * i as f64 / (n - 1) as f64))
            .collect();
        Ok(Pulse::Sampled(Sampled::new(values, t_f)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pulses() -> Vec<Pulse> {
        let g = Polynomial::from_monomial_s(&[0.0, 0.0, 1.0, -0.5, 0.25], 3.0).unwrap();
        alloc::vec![
            Pulse::Chirp(Chirp { u0: 0.7, omega_i: 0.2, sweep_rate: 0.9, phase: 0.3, t_f: 3.0 }),
            Pulse::ExpSum(ExpSum {
                terms: alloc::vec![(Complex64::new(0.4, -0.2), 1.3), (Complex64::new(-0.1, 0.5), 0.0)],
                t_f: 3.0,
            }),
            Pulse::PolyDerivSum(PolyDerivSum::new(g, alloc::vec![0.5, 0.0, 1.5, 0.0, 1.0])),
            Pulse::Sampled(Sampled::new(alloc::vec![0.0, 1.0, -2.0, 0.5], 3.0).unwrap()),
        ]
    }

    #[test]
    fn reversal_and_scaling() {
        for p in pulses() {
            let r = p.time_reversed();
            let s = p.scaled(-2.5);
            for k in 0..=30 {
                let t = 3.0 * k as f64 / 30.0;
                assert!((r.eval(t) - p.eval(3.0 - t)).abs() < 1e-12, "{p:?}");
                assert!((s.eval(t) + 2.5 * p.eval(t)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn deriv_sum_matches_terms() {
        let g = Polynomial::from_monomial_t(&[0.0, 0.0, 1.0, 1.0], 2.0).unwrap();
        let p = PolyDerivSum::new(g, alloc::vec![2.0, 0.0, 1.0]);
        // 2(t² + t³) + (2 + 6t)
        let t = 0.7;
        let want = 2.0 * (t * t + t * t * t) + 2.0 + 6.0 * t;
        assert!((Pulse::PolyDerivSum(p).eval(t) - want).abs() < 1e-12);
    }

    #[test]
    fn sampled_hits_nodes() {
        let s = Sampled::new(alloc::vec![1.0, 3.0, 2.0], 2.0).unwrap();
        assert_eq!(s.eval(0.0), 1.0);
        assert_eq!(s.eval(2.0), 2.0);
        assert!((s.eval(0.5) - 2.0).abs() < 1e-15);
    }
}
