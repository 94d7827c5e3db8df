//! Flat-output pulse design for a controllable linear system `ẋ = Ax + Bu`.
//!
//! The target is written as `x_f = Σ_k A^k B b_k`; Cayley–Hamilton turns the
//! `b_k` into end values of a flat output `g`, which is then interpolated by a
//! polynomial that is flat at `t = 0`. The control is `u = Σ_k p_k g^{(k)}`
//! with `p_k` the characteristic-polynomial coefficients of `A`.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{lstsq, numerical_rank};
use crate::poly::{cheb_deriv_at_one, Polynomial};
use crate::pulse::{PolyDerivSum, Pulse};

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
}

impl LinearSystem {
    pub fn new(a: DMatrix<f64>, b: DMatrix<f64>) -> Result<Self> {
        if a.nrows() == 0 || a.nrows() != a.ncols() {
            return Err(Error::InvalidInput("A must be square and non-empty"));
        }
        if b.nrows() != a.nrows() || b.ncols() == 0 {
            return Err(Error::InvalidInput("B must have n rows and at least one column"));
        }
        if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite system matrix"));
        }
        Ok(LinearSystem { a, b })
    }

    /// Springs `ż_k = iω_k z_k + u` in real coordinates `(x_1, y_1, x_2, ...)`.
    pub fn springs(omegas: &[f64]) -> Result<Self> {
        let n = 2 * omegas.len();
        let mut a = DMatrix::zeros(n, n);
        let mut b = DMatrix::zeros(n, 1);
        for (k, &w) in omegas.iter().enumerate() {
            a[(2 * k, 2 * k + 1)] = -w;
            a[(2 * k + 1, 2 * k)] = w;
            b[(2 * k, 0)] = 1.0;
        }
        Self::new(a, b)
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn m(&self) -> usize {
        self.b.ncols()
    }

    /// Coefficients `p_0..p_n` (ascending, `p_n = 1`) of `det(λI - A)`.
    pub fn char_poly(&self) -> Vec<f64> {
        // Faddeev–LeVerrier
        let n = self.n();
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        let mut m = DMatrix::<f64>::zeros(n, n);
        for k in 1..=n {
            m = &self.a * &m + DMatrix::identity(n, n) * c[n + 1 - k];
            c[n - k] = -(&self.a * &m).trace() / k as f64;
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Controllability {
    pub matrix: DMatrix<f64>,
    pub rank: usize,
}

/// `[B, AB, ..., A^{n-1}B]` and its numerical rank.
pub fn kalman_controllability(sys: &LinearSystem) -> Controllability {
    let (n, m) = (sys.n(), sys.m());
    let mut matrix = DMatrix::zeros(n, n * m);
    let mut blk = sys.b.clone();
    for k in 0..n {
        matrix.view_mut((0, k * m), (n, m)).copy_from(&blk);
        blk = &sys.a * blk;
    }
    let rank = numerical_rank(&matrix);
    Controllability { matrix, rank }
}

/// Minimum-norm `b_0..b_{n-1}` with `Σ A^k B b_k = x_f`.
pub fn solve_bk(sys: &LinearSystem, x_f: &DVector<f64>) -> Result<Vec<DVector<f64>>> {
    if x_f.len() != sys.n() {
        return Err(Error::InvalidInput("target dimension does not match the system"));
    }
    let ctrl = kalman_controllability(sys);
    let sol = lstsq(&ctrl.matrix, x_f, sys.n() as f64 * f64::EPSILON);
    let scale = x_f.norm();
    if sol.residual > 1e-9 * scale.max(f64::MIN_POSITIVE) && scale > 0.0 {
        return Err(if ctrl.rank < sys.n() {
            Error::NotControllable { rank: ctrl.rank, n: sys.n() }
        } else {
            Error::UnreachableTarget { rank: ctrl.rank, residual: sol.residual }
        });
    }
    let m = sys.m();
    Ok((0..sys.n())
        .map(|k| DVector::from_iterator(m, (0..m).map(|i| sol.x[k * m + i])))
        .collect())
}

/// End values `g^{(0)}(t_f)..g^{(n-1)}(t_f)` from `b_k` by forward substitution
/// in `b_{n-1-j} = Σ_{k≤j} p_{n-j+k} g^{(k)}(t_f)`.
pub fn boundary_conditions_from_bk(b: &[DVector<f64>], p: &[f64]) -> Result<Vec<DVector<f64>>> {
    let n = b.len();
    if p.len() != n + 1 || p[n] != 1.0 {
        return Err(Error::InvalidInput("need monic characteristic polynomial of degree n"));
    }
    let mut g: Vec<DVector<f64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = b[n - 1 - j].clone();
        for (k, gk) in g.iter().enumerate() {
            v -= gk * p[n - j + k];
        }
        g.push(v);
    }
    Ok(g)
}

/// Degree `2n - 1` polynomial with `g^{(k)}(0) = left[k]` and
/// `g^{(k)}(t_f) = right[k]` for `k < n`.
pub fn hermite_interpolate(left: &[f64], right: &[f64], t_f: f64) -> Result<Polynomial> {
    let n = right.len();
    if left.len() != n || n == 0 {
        return Err(Error::InvalidInput("need n left and n right conditions"));
    }
    if !(t_f > 0.0) {
        return Err(Error::InvalidInput("horizon must be positive"));
    }
    if left.iter().all(|&v| v == 0.0) {
        return hermite_flat_left(right, t_f);
    }
    let d = 2 * n;
    // rhs in the s variable: d^k/ds^k = t_f^k d^k/dt^k
    let mut rhs = DVector::zeros(d);
    let mut f = 1.0;
    for k in 0..n {
        rhs[k] = left[k] * f;
        rhs[n + k] = right[k] * f;
        f *= t_f;
    }
    // monomials in s
    let mut mono = DMatrix::zeros(d, d);
    for k in 0..n {
        mono[(k, k)] = factorial_ratio(k, k);
        for j in k..d {
            mono[(n + k, j)] = factorial_ratio(j, k);
        }
    }
    let sol = equilibrated_lstsq(mono, rhs.clone(), 1e-14);
    if sol.condition <= 1e12 {
        return Polynomial::from_monomial_s(sol.x.as_slice(), t_f);
    }
    // Chebyshev basis in x = 2s - 1: d^k/ds^k = 2^k d^k/dx^k
    let mut cheb = DMatrix::zeros(d, d);
    for k in 0..n {
        let sc = Float::powi(2.0, k as i32);
        for j in 0..d {
            let at_one = cheb_deriv_at_one(j, k) * sc;
            let sign = if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
            cheb[(k, j)] = sign * at_one;
            cheb[(n + k, j)] = at_one;
        }
    }
    let sol = equilibrated_lstsq(cheb, rhs, 1e-15);
    if sol.condition > 1e15 {
        return Err(Error::Conditioning { condition: sol.condition });
    }
    Polynomial::from_chebyshev(sol.x.iter().cloned().collect(), t_f)
}

/// Zero left data: `g = s^n h(1 - s)` with `h` of degree `n - 1`, whose
/// Taylor coefficients follow from the right data without a linear solve.
fn hermite_flat_left(right: &[f64], t_f: f64) -> Result<Polynomial> {
    let n = right.len();
    // c_k = [v^k] g with v = 1 - s
    let mut c = Vec::with_capacity(n);
    let mut f = 1.0;
    for (k, r) in right.iter().enumerate() {
        if k > 0 {
            f *= -t_f / k as f64;
        }
        c.push(r * f);
    }
    // h = c (1 - v)^{-n} mod v^n
    let mut binom = vec![1.0; n];
    for j in 1..n {
        binom[j] = binom[j - 1] * (n + j - 1) as f64 / j as f64;
    }
    let h: Vec<f64> = (0..n)
        .map(|m| (0..=m).map(|k| c[k] * binom[m - k]).sum())
        .collect();
    // s^n v^m = (sv)^m s^{n-m}, with sv = (1 - x²)/4 and s = (1 + x)/2
    let sv = Polynomial::from_chebyshev(vec![0.125, 0.0, -0.125], t_f)?;
    let s = Polynomial::s(t_f)?;
    let mut g = Polynomial::constant(0.0, t_f)?;
    let mut sv_pow = Polynomial::constant(1.0, t_f)?;
    for (m, &hm) in h.iter().enumerate() {
        if hm != 0.0 {
            g = g.add(&sv_pow.mul(&s.pow(n - m)).scale(hm));
        }
        sv_pow = sv_pow.mul(&sv);
    }
    Ok(g)
}

fn equilibrated_lstsq(mut m: DMatrix<f64>, mut rhs: DVector<f64>, cut: f64) -> crate::linalg::Lstsq {
    for i in 0..m.nrows() {
        let s = m.row(i).amax();
        if s > 0.0 {
            m.row_mut(i).scale_mut(1.0 / s);
            rhs[i] /= s;
        }
    }
    lstsq(&m, &rhs, cut)
}

fn factorial_ratio(j: usize, k: usize) -> f64 {
    // j! / (j - k)!
    ((j - k + 1)..=j).fold(1.0, |acc, v| acc * v as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralStaDesign {
    pub system: LinearSystem,
    pub x_f: DVector<f64>,
    pub b: Vec<DVector<f64>>,
    /// `boundary[k]` holds `g^{(k)}(t_f)` for every control channel.
    pub boundary: Vec<DVector<f64>>,
    /// One flat output per control channel.
    pub g: Vec<Polynomial>,
    pub char_poly: Vec<f64>,
    pub t_f: f64,
    pub rank: usize,
    /// `|Σ A^k B b_k - x_f|`.
    pub reconstruction_residual: f64,
}

impl GeneralStaDesign {
    /// Control channel `i` as a pulse.
    pub fn pulse(&self, channel: usize) -> Pulse {
        Pulse::PolyDerivSum(PolyDerivSum::new(self.g[channel].clone(), self.char_poly.clone()))
    }

    pub fn pulses(&self) -> Vec<Pulse> {
        (0..self.g.len()).map(|i| self.pulse(i)).collect()
    }
}

/// Flat-output control taking `x(0) = 0` to `x(t_f) = x_f`.
pub fn general_sta(sys: &LinearSystem, x_f: &DVector<f64>, t_f: f64) -> Result<GeneralStaDesign> {
    if !(t_f > 0.0 && t_f.is_finite()) {
        return Err(Error::InvalidInput("horizon must be positive"));
    }
    let rank = kalman_controllability(sys).rank;
    let b = solve_bk(sys, x_f)?;
    let p = sys.char_poly();
    let boundary = boundary_conditions_from_bk(&b, &p)?;
    let n = sys.n();
    let zeros = vec![0.0; n];
    let g = (0..sys.m())
        .map(|i| {
            let right: Vec<f64> = boundary.iter().map(|v| v[i]).collect();
            hermite_interpolate(&zeros, &right, t_f)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut recon = DVector::zeros(n);
    let mut ak_b = sys.b.clone();
    for bk in &b {
        recon += &ak_b * bk;
        ak_b = &sys.a * ak_b;
    }
    Ok(GeneralStaDesign {
        system: sys.clone(),
        x_f: x_f.clone(),
        b,
        boundary,
        g,
        char_poly: p,
        t_f,
        rank,
        reconstruction_residual: (recon - x_f).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn kalman_rank_examples() {
        let sys = LinearSystem::new(DMatrix::zeros(2, 2), DMatrix::from_column_slice(2, 1, &[1.0, 0.0])).unwrap();
        assert_eq!(kalman_controllability(&sys).rank, 1);
        assert_eq!(kalman_controllability(&LinearSystem::springs(&[0.3, 0.3]).unwrap()).rank, 2);
        assert_eq!(kalman_controllability(&LinearSystem::springs(&[0.3, 0.8]).unwrap()).rank, 4);
        // y of a zero-frequency spring never moves
        assert_eq!(kalman_controllability(&LinearSystem::springs(&[0.0, 0.5]).unwrap()).rank, 3);
    }

    #[test]
    fn char_poly_of_springs() {
        let p = LinearSystem::springs(&[0.3, 0.8]).unwrap().char_poly();
        let q = crate::sta::char_poly_coeffs(&[0.3, 0.8]);
        for (a, b) in p.iter().zip(&q) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn selective_example() {
        let sys = LinearSystem::springs(&[0.0, 0.5]).unwrap();
        let x_f = DVector::from_column_slice(&[PI / 2.0, 0.0, 0.0, 0.0]);
        let b = solve_bk(&sys, &x_f).unwrap();
        let want = [PI / 2.0, 0.0, 2.0 * PI, 0.0];
        for (bk, w) in b.iter().zip(want) {
            assert!((bk[0] - w).abs() < 1e-12);
        }
        let g = boundary_conditions_from_bk(&b, &sys.char_poly()).unwrap();
        let want = [0.0, 2.0 * PI, 0.0, 0.0];
        for (gk, w) in g.iter().zip(want) {
            assert!((gk[0] - w).abs() < 1e-12);
        }
    }

    #[test]
    fn robust_example() {
        let sys = LinearSystem::springs(&[0.2, 0.7]).unwrap();
        let x_f = DVector::from_column_slice(&[1.0, 0.0, 1.0, 0.0]);
        let b = solve_bk(&sys, &x_f).unwrap();
        let got: Vec<f64> = b.iter().map(|v| v[0]).collect();
        for (x, w) in got.iter().zip([1.0, 0.0, 0.0, 0.0]) {
            assert!((x - w).abs() < 1e-12);
        }
        let g = boundary_conditions_from_bk(&b, &sys.char_poly()).unwrap();
        let got: Vec<f64> = g.iter().map(|v| v[0]).collect();
        for (x, w) in got.iter().zip([0.0, 0.0, 0.0, 1.0]) {
            assert!((x - w).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_selective_target_is_rejected() {
        let sys = LinearSystem::springs(&[0.5, 0.5]).unwrap();
        let x_f = DVector::from_column_slice(&[PI / 2.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            general_sta(&sys, &x_f, 10.0),
            Err(Error::NotControllable { rank: 2, n: 4 })
        ));
    }

    #[test]
    fn hermite_basics() {
        let g = hermite_interpolate(&[0.0], &[1.0], 3.0).unwrap();
        assert!((g.eval_s(0.4) - 0.4).abs() < 1e-14);
        let z = hermite_interpolate(&[0.0; 3], &[0.0; 3], 3.0).unwrap();
        assert!(z.abs_bound() == 0.0);
        let right = [0.0, 2.0 * PI, 0.0, 0.0];
        let g = hermite_interpolate(&[0.0; 4], &right, 30.0).unwrap();
        for k in 0..4 {
            let d = g.derivative_n(k);
            assert!(d.eval(0.0).abs() < 1e-9);
            assert!((d.eval(30.0) - right[k]).abs() < 1e-9);
        }
    }

    #[test]
    fn hermite_general_left_data() {
        let g = hermite_interpolate(&[1.0, -0.5], &[2.0, 0.25], 2.0).unwrap();
        let d = g.derivative();
        assert!((g.eval(0.0) - 1.0).abs() < 1e-12 && (d.eval(0.0) + 0.5).abs() < 1e-12);
        assert!((g.eval(2.0) - 2.0).abs() < 1e-12 && (d.eval(2.0) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn hermite_high_order() {
        let n = 16;
        let mut right = vec![0.0; n];
        right[n - 1] = 1.0;
        let g = hermite_interpolate(&vec![0.0; n], &right, 24.0).unwrap();
        let want = crate::sta::g_polynomial_min(8, 24.0).unwrap();
        for k in 0..=20 {
            let t = 24.0 * k as f64 / 20.0;
            assert!((g.eval(t) - want.eval(t)).abs() < 1e-9, "{t}: {} vs {}", g.eval(t), want.eval(t));
        }
    }
}
