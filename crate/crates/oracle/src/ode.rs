//! Fixed-step classical RK4.

use num_complex::Complex64;

/// Integrates `y' = f(t, y)` from `t0` to `t1` in `n` steps.
pub fn rk4<F: Fn(f64, &[f64]) -> Vec<f64>>(f: F, y0: &[f64], t0: f64, t1: f64, n: usize) -> Vec<f64> {
    let h = (t1 - t0) / n as f64;
    let mut y = y0.to_vec();
    let axpy = |y: &[f64], k: &[f64], a: f64| -> Vec<f64> { y.iter().zip(k).map(|(y, k)| y + a * k).collect() };
    for i in 0..n {
        let t = t0 + i as f64 * h;
        let k1 = f(t, &y);
        let k2 = f(t + h / 2.0, &axpy(&y, &k1, h / 2.0));
        let k3 = f(t + h / 2.0, &axpy(&y, &k2, h / 2.0));
        let k4 = f(t + h, &axpy(&y, &k3, h));
        for j in 0..y.len() {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
    }
    y
}

/// `ż = iωz + u` from rest.
pub fn spring<F: Fn(f64) -> f64>(u: F, omega: f64, t_f: f64, n: usize) -> Complex64 {
    let y = rk4(|t, y| vec![-omega * y[1] + u(t), omega * y[0]], &[0.0, 0.0], 0.0, t_f, n);
    Complex64::new(y[0], y[1])
}

/// Like [`spring`] but doubles the step count from `n0` until two results agree to `tol`.
pub fn spring_converged<F: Fn(f64) -> f64>(u: F, omega: f64, t_f: f64, n0: usize, tol: f64) -> Complex64 {
    let mut n = n0;
    let mut prev = spring(&u, omega, t_f, n);
    loop {
        n *= 2;
        let next = spring(&u, omega, t_f, n);
        // RK4 error drops 16x per doubling, so `next` is about 15x closer than the gap
        if (next - prev).norm() < tol || n > 1 << 24 {
            return next;
        }
        prev = next;
    }
}

/// `ẋ = Ax + b u` with dense row-major `A`.
pub fn linear<F: Fn(f64) -> f64>(a: &[Vec<f64>], b: &[f64], u: F, x0: &[f64], t_f: f64, n: usize) -> Vec<f64> {
    rk4(
        |t, x| {
            let ut = u(t);
            a.iter()
                .zip(b)
                .map(|(row, bi)| row.iter().zip(x).map(|(a, x)| a * x).sum::<f64>() + bi * ut)
                .collect()
        },
        x0,
        0.0,
        t_f,
        n,
    )
}

/// `v̇ = (0, u, ω) × v`, returned as `[x, y, z]`.
pub fn bloch<F: Fn(f64) -> f64>(u: F, omega: f64, v0: [f64; 3], t0: f64, t1: f64, n: usize) -> [f64; 3] {
    let y = rk4(
        |t, v| {
            let w = [0.0, u(t), omega];
            vec![w[1] * v[2] - w[2] * v[1], w[2] * v[0] - w[0] * v[2], w[0] * v[1] - w[1] * v[0]]
        },
        &v0,
        t0,
        t1,
        n,
    );
    [y[0], y[1], y[2]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resonant_spring() {
        // u = cos(ωt): z(T) = e^{iωT}(T/2 + (1 - e^{-2iωT})/(4iω))
        let (w, t) = (1.3, 5.0);
        let z = spring(|s| (w * s).cos(), w, t, 4000);
        let i = Complex64::i();
        let want = Complex64::from_polar(1.0, w * t) * (t / 2.0 + (1.0 - Complex64::from_polar(1.0, -2.0 * w * t)) / (4.0 * i * w));
        assert!((z - want).norm() < 1e-10);
    }

    #[test]
    fn precession() {
        let v = bloch(|_| 0.0, 2.0, [1.0, 0.0, 0.0], 0.0, 1.0, 1000);
        assert!((v[0] - 2f64.cos()).abs() < 1e-12 && (v[1] - 2f64.sin()).abs() < 1e-12);
    }
}
