//! Real polynomials on a finite horizon `[0, t_f]`.
//!
//! Coefficients are kept as a Chebyshev series in `x = 2t/t_f - 1`. The
//! flat outputs used for pulse design reach degree ~35 with huge, alternating
//! monomial coefficients, and the Chebyshev form keeps evaluation and
//! differentiation accurate at that size.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    cheb: Vec<f64>,
    t_f: f64,
}

impl Polynomial {
    pub fn from_chebyshev(cheb: Vec<f64>, t_f: f64) -> Result<Self> {
        if !(t_f > 0.0 && t_f.is_finite()) {
            return Err(Error::InvalidInput("polynomial horizon must be positive"));
        }
        if cheb.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite polynomial coefficient"));
        }
        let mut p = Polynomial { cheb, t_f };
        if p.cheb.is_empty() {
            p.cheb.push(0.0);
        }
        Ok(p)
    }

    /// Builds `Σ a_k s^k` with `s = t / t_f`.
    pub fn from_monomial_s(coeffs: &[f64], t_f: f64) -> Result<Self> {
        let mut p = Self::from_chebyshev(vec![0.0], t_f)?;
        let s = Self::s(t_f)?;
        for &a in coeffs.iter().rev() {
            p = p.mul(&s);
            p.cheb[0] += a;
        }
        Ok(p)
    }

    /// Builds `Σ a_k t^k`.
    pub fn from_monomial_t(coeffs: &[f64], t_f: f64) -> Result<Self> {
        let mut scaled = Vec::with_capacity(coeffs.len());
        let mut f = 1.0;
        for &a in coeffs {
            scaled.push(a * f);
            f *= t_f;
        }
        Self::from_monomial_s(&scaled, t_f)
    }

    pub fn constant(c: f64, t_f: f64) -> Result<Self> {
        Self::from_chebyshev(vec![c], t_f)
    }

    /// The normalized time `s = t / t_f`.
    pub fn s(t_f: f64) -> Result<Self> {
        Self::from_chebyshev(vec![0.5, 0.5], t_f)
    }

    /// `1 - s`.
    pub fn one_minus_s(t_f: f64) -> Result<Self> {
        Self::from_chebyshev(vec![0.5, -0.5], t_f)
    }

    pub fn chebyshev(&self) -> &[f64] {
        &self.cheb
    }

    pub fn t_f(&self) -> f64 {
        self.t_f
    }

    pub fn degree(&self) -> usize {
        self.cheb.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    /// Value at normalized time `s`.
    pub fn eval_s(&self, s: f64) -> f64 {
        clenshaw(&self.cheb, 2.0 * s - 1.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_s(t / self.t_f)
    }

    /// Time derivative.
    pub fn derivative(&self) -> Self {
        let c = &self.cheb;
        let n = c.len();
        if n <= 1 {
            return Polynomial { cheb: vec![0.0], t_f: self.t_f };
        }
        let mut d = vec![0.0; n + 1];
        for k in (1..n).rev() {
            d[k - 1] = d[k + 1] + 2.0 * k as f64 * c[k];
        }
        d[0] *= 0.5;
        d.truncate(n - 1);
        let scale = 2.0 / self.t_f;
        for v in d.iter_mut() {
            *v *= scale;
        }
        Polynomial { cheb: d, t_f: self.t_f }
    }

    pub fn derivative_n(&self, k: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    pub fn scale(&self, f: f64) -> Self {
        Polynomial {
            cheb: self.cheb.iter().map(|c| c * f).collect(),
            t_f: self.t_f,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.t_f, other.t_f);
        let n = self.cheb.len().max(other.cheb.len());
        let mut cheb = vec![0.0; n];
        for (i, c) in self.cheb.iter().enumerate() {
            cheb[i] += c;
        }
        for (i, c) in other.cheb.iter().enumerate() {
            cheb[i] += c;
        }
        Polynomial { cheb, t_f: self.t_f }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.t_f, other.t_f);
        let (a, b) = (&self.cheb, &other.cheb);
        let mut cheb = vec![0.0; a.len() + b.len() - 1];
        for (m, &x) in a.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (n, &y) in b.iter().enumerate() {
                let h = 0.5 * x * y;
                cheb[m + n] += h;
                cheb[m.abs_diff(n)] += h;
            }
        }
        Polynomial { cheb, t_f: self.t_f }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Polynomial { cheb: vec![1.0], t_f: self.t_f };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `t ↦ p(t_f - t)`.
    pub fn reversed(&self) -> Self {
        Polynomial {
            cheb: self
                .cheb
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                .collect(),
            t_f: self.t_f,
        }
    }

    /// Coefficients `a_k` of `Σ a_k s^k`. Loses accuracy for high degree.
    pub fn monomial_s(&self) -> Vec<f64> {
        // T_k(2s - 1) by the three-term recurrence, in monomial arithmetic.
        let n = self.cheb.len();
        let mut out = vec![0.0; n];
        let mut t_prev = vec![1.0];
        let mut t_cur = vec![-1.0, 2.0];
        out[0] += self.cheb[0];
        if n > 1 {
            out[0] += self.cheb[1] * t_cur[0];
            out[1] += self.cheb[1] * t_cur[1];
        }
        for k in 2..n {
            let mut next = vec![0.0; k + 1];
            for (i, &c) in t_cur.iter().enumerate() {
                next[i + 1] += 4.0 * c;
                next[i] -= 2.0 * c;
            }
            for (i, &c) in t_prev.iter().enumerate() {
                next[i] -= c;
            }
            for (i, &c) in next.iter().enumerate() {
                out[i] += self.cheb[k] * c;
            }
            t_prev = t_cur;
            t_cur = next;
        }
        out
    }

    /// Sum of absolute Chebyshev coefficients, a bound on `max |p|`.
    pub fn abs_bound(&self) -> f64 {
        self.cheb.iter().map(|c| c.abs()).sum()
    }
}

fn clenshaw(c: &[f64], x: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &ck in c.iter().skip(1).rev() {
        let b0 = ck + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    c[0] + x * b1 - b2
}

/// `d^j/dx^j T_k` at `x = 1`.
pub(crate) fn cheb_deriv_at_one(k: usize, j: usize) -> f64 {
    let k2 = (k * k) as f64;
    let mut v = 1.0;
    for i in 0..j {
        v *= (k2 - (i * i) as f64) / (2 * i + 1) as f64;
    }
    v
}
