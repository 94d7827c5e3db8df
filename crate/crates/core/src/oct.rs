//! Linear-quadratic optimal control of a finite set of springs.
//!
//! Approach I reaches every target exactly with minimum energy `∫u²`.
//! Approach II minimizes `Σ ½|z_k(t_f) - z_kf|² + (λ/2)∫u²`. In both cases the
//! optimal field is a sum of the springs' own harmonics, and the amplitudes
//! solve a small real-linear system built from sinc kernels.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result, Warning};
use crate::linalg::lstsq;
use crate::metrics::{pulse_energy, pulse_max_amplitude};
use crate::pulse::{ExpSum, Pulse};
use crate::spectral::propagate_exact;

/// Above this condition estimate the solve is flagged and done in the minimum-norm sense.
pub const WARN_CONDITION: f64 = 1e10;
/// Singular values below this fraction of the largest count as zero.
const SINGULAR_CUT: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct OctProblem {
    pub omegas: Vec<f64>,
    pub targets: Vec<Complex64>,
    pub t_f: f64,
    pub lambda: Option<f64>,
}

impl OctProblem {
    pub fn new(omegas: Vec<f64>, targets: Vec<Complex64>, t_f: f64, lambda: Option<f64>) -> Result<Self> {
        if omegas.is_empty() || omegas.len() != targets.len() {
            return Err(Error::InvalidInput("one target per frequency required"));
        }
        if !(t_f > 0.0 && t_f.is_finite()) {
            return Err(Error::InvalidInput("horizon must be positive"));
        }
        if omegas.iter().any(|w| !w.is_finite()) || targets.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidInput("non-finite frequency or target"));
        }
        if let Some(l) = lambda {
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::InvalidPenalty { lambda: l });
            }
        }
        Ok(OctProblem { omegas, targets, t_f, lambda })
    }

    pub fn n(&self) -> usize {
        self.omegas.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjointSolution {
    /// `p_k(0)` for approach I, `p_k(t_f)` for approach II.
    pub p: Vec<Complex64>,
    /// Residual of the real linear system relative to its right-hand side.
    pub residual: f64,
    pub condition_estimate: f64,
    pub warnings: Vec<Warning>,
}

pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        Float::sin(x) / x
    }
}

fn kernel(omegas: &[f64], t_f: f64, phase_sign: f64, sinc_sign: f64) -> DMatrix<Complex64> {
    let n = omegas.len();
    DMatrix::from_fn(n, n, |j, k| {
        let (wj, wk) = (omegas[j], omegas[k]);
        Complex64::from_polar(sinc((wj + sinc_sign * wk) * t_f / 2.0), (wj + phase_sign * wk) * t_f / 2.0)
    })
}

/// `A_jk = e^{i(ω_j+ω_k)t_f/2} sinc((ω_j-ω_k)t_f/2)`,
/// `B_jk = e^{i(ω_j-ω_k)t_f/2} sinc((ω_j+ω_k)t_f/2)`.
pub fn kernel_matrices_i(omegas: &[f64], t_f: f64) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    (kernel(omegas, t_f, 1.0, -1.0), kernel(omegas, t_f, -1.0, 1.0))
}

/// `C_jk = e^{i(ω_j-ω_k)t_f/2} sinc((ω_j-ω_k)t_f/2)`,
/// `D_jk = e^{i(ω_j+ω_k)t_f/2} sinc((ω_j+ω_k)t_f/2)`.
pub fn kernel_matrices_ii(omegas: &[f64], t_f: f64) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    (kernel(omegas, t_f, -1.0, -1.0), kernel(omegas, t_f, 1.0, 1.0))
}

/// Solves `diag(d)·w + P w + Q w̄ = rhs` for complex `w`, as a real system in
/// `(Re w, Im w)`. Unknowns listed in `drop_im` have their imaginary part fixed to 0.
fn solve_real_linear(
    diag: Complex64,
    p: &DMatrix<Complex64>,
    q: &DMatrix<Complex64>,
    rhs: &[Complex64],
    drop_im: &[bool],
) -> Result<(Vec<Complex64>, f64, f64)> {
    let n = rhs.len();
    let mut cols: Vec<(usize, bool)> = Vec::with_capacity(2 * n);
    for k in 0..n {
        cols.push((k, false));
        if !drop_im[k] {
            cols.push((k, true));
        }
    }
    let mut m = DMatrix::zeros(2 * n, cols.len());
    for (c, &(k, imag)) in cols.iter().enumerate() {
        for j in 0..n {
            let d = if j == k { diag } else { Complex64::new(0.0, 0.0) };
            // column of w_k = 1 (real part) or w_k = i (imaginary part)
            let v = if imag {
                Complex64::i() * (d + p[(j, k)] - q[(j, k)])
            } else {
                d + p[(j, k)] + q[(j, k)]
            };
            m[(j, c)] = v.re;
            m[(n + j, c)] = v.im;
        }
    }
    let b = DVector::from_iterator(2 * n, rhs.iter().map(|z| z.re).chain(rhs.iter().map(|z| z.im)));
    let sol = lstsq(&m, &b, SINGULAR_CUT);
    if sol.rank < cols.len() {
        return Err(Error::NearSingular { condition: sol.condition });
    }
    let mut w = alloc::vec![Complex64::new(0.0, 0.0); n];
    for (c, &(k, imag)) in cols.iter().enumerate() {
        if imag {
            w[k].im = sol.x[c];
        } else {
            w[k].re = sol.x[c];
        }
    }
    let rel = if b.norm() > 0.0 { sol.residual / b.norm() } else { sol.residual };
    Ok((w, rel, sol.condition))
}

fn warnings_for(condition: f64) -> Vec<Warning> {
    if condition > WARN_CONDITION {
        alloc::vec![Warning::IllConditioned { condition }]
    } else {
        Vec::new()
    }
}

/// Exact-endpoint, minimum-energy amplitudes `p_k(0)`.
///
/// A spring at `ω = 0` only sees `Re p_k`, so `Im p_k` is fixed to zero there.
pub fn solve_approach1(problem: &OctProblem) -> Result<AdjointSolution> {
    let (a, b) = kernel_matrices_i(&problem.omegas, problem.t_f);
    let rhs: Vec<Complex64> = problem.targets.iter().map(|z| z * (2.0 / problem.t_f)).collect();
    let inert: Vec<bool> = problem.omegas.iter().map(|w| w.abs() * problem.t_f < 1e-12).collect();
    let (p, residual, condition) = solve_real_linear(Complex64::new(0.0, 0.0), &a, &b, &rhs, &inert)?;
    Ok(AdjointSolution { p, residual, condition_estimate: condition, warnings: warnings_for(condition) })
}

/// `u(t) = Σ Re[p_k(0) e^{iω_k t}]`.
pub fn pulse_approach1(sol: &AdjointSolution, omegas: &[f64], t_f: f64) -> Pulse {
    Pulse::ExpSum(ExpSum {
        terms: sol.p.iter().zip(omegas).map(|(p, w)| (*p, *w)).collect(),
        t_f,
    })
}

/// Penalized problem: end states `z_k(t_f)` and `p_k(t_f) = z_kf - z_k(t_f)`.
pub fn solve_approach2(problem: &OctProblem) -> Result<(Vec<Complex64>, AdjointSolution)> {
    let lambda = problem.lambda.ok_or(Error::InvalidPenalty { lambda: 0.0 })?;
    let (c, d) = kernel_matrices_ii(&problem.omegas, problem.t_f);
    let n = problem.n();
    // (2λ/t_f) z + C z + D z̄ = C z_f + D z̄_f
    let rhs: Vec<Complex64> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| c[(j, k)] * problem.targets[k] + d[(j, k)] * problem.targets[k].conj())
                .sum()
        })
        .collect();
    let diag = Complex64::new(2.0 * lambda / problem.t_f, 0.0);
    let (z, residual, condition) = solve_real_linear(diag, &c, &d, &rhs, &alloc::vec![false; n])?;
    let p = problem.targets.iter().zip(&z).map(|(zf, z)| zf - z).collect();
    Ok((z, AdjointSolution { p, residual, condition_estimate: condition, warnings: warnings_for(condition) }))
}

/// `u(t) = (1/λ) Σ Re[p_k(t_f) e^{iω_k(t - t_f)}]`.
pub fn pulse_approach2(sol: &AdjointSolution, omegas: &[f64], t_f: f64, lambda: f64) -> Pulse {
    Pulse::ExpSum(ExpSum {
        terms: sol
            .p
            .iter()
            .zip(omegas)
            .map(|(p, w)| (p * Complex64::from_polar(1.0 / lambda, -w * t_f), *w))
            .collect(),
        t_f,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport {
    pub endpoints: Vec<Complex64>,
    pub endpoint_errors: Vec<f64>,
    pub max_endpoint_error: f64,
    pub energy: f64,
    pub max_amplitude: f64,
    /// Penalized cost, when the problem has a `λ`.
    pub cost: Option<f64>,
}

/// Propagates `pulse` to every design frequency and reports the figures of merit.
pub fn self_consistency_check(problem: &OctProblem, pulse: &Pulse) -> Result<ConsistencyReport> {
    let endpoints = problem
        .omegas
        .iter()
        .map(|&w| propagate_exact(pulse, w, problem.t_f))
        .collect::<Result<Vec<_>>>()?;
    let endpoint_errors: Vec<f64> = endpoints.iter().zip(&problem.targets).map(|(z, t)| (z - t).norm()).collect();
    let max_endpoint_error = endpoint_errors.iter().cloned().fold(0.0, f64::max);
    let energy = pulse_energy(pulse)?;
    let cost = problem
        .lambda
        .map(|l| endpoint_errors.iter().map(|e| 0.5 * e * e).sum::<f64>() + 0.5 * l * energy);
    Ok(ConsistencyReport {
        endpoints,
        endpoint_errors,
        max_endpoint_error,
        energy,
        max_amplitude: pulse_max_amplitude(pulse),
        cost,
    })
}
