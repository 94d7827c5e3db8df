//! Adaptive Gauss–Kronrod (7, 15) quadrature.

use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let s = f(c - h * XGK[j]) + f(c + h * XGK[j]);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// `∫_a^b f` to absolute accuracy `tol`, bisecting the worst panel first.
///
/// Panics if 100 000 panels are not enough.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    // start from panels short enough to see the oscillations of typical integrands
    let mut panels: Vec<(f64, f64, Complex64, f64)> = (0..16)
        .map(|i| {
            let lo = a + (b - a) * i as f64 / 16.0;
            let hi = a + (b - a) * (i + 1) as f64 / 16.0;
            let (v, e) = kronrod(&f, lo, hi);
            (lo, hi, v, e)
        })
        .collect();
    loop {
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= tol {
            return panels.iter().map(|p| p.2).sum();
        }
        assert!(panels.len() < 100_000, "quadrature did not converge, error {err:e}");
        let (i, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (lo, hi, _, _) = panels.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        for (l, h) in [(lo, mid), (mid, hi)] {
            let (v, e) = kronrod(&f, l, h);
            panels.push((l, h, v, e));
        }
    }
}

/// `∫_a^b f` for a real integrand.
pub fn integrate_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    integrate(|t| Complex64::new(f(t), 0.0), a, b, tol).re
}

/// `z(t) = ∫_0^t e^{iω(t-τ)} u(τ) dτ`.
pub fn spring_endpoint<F: Fn(f64) -> f64>(u: F, omega: f64, t: f64, tol: f64) -> Complex64 {
    integrate(|tau| Complex64::from_polar(u(tau), omega * (t - tau)), 0.0, t, tol)
}
