//! Imaginary error function for complex arguments.
//!
//! `erfi(z) = -i erf(iz)`, evaluated through the Faddeeva function
//! `w(z) = e^{-z²} erfc(-iz)` with Weideman's rational approximation
//! (40 terms) and a Taylor series near the origin.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;
use once_cell::race::OnceBox;

use crate::error::{Error, Result};

const N_TERMS: usize = 40;
const TAYLOR_RADIUS: f64 = 1.5;
/// Largest `Re(z²)` before `e^{z²}` overflows.
const MAX_EXPONENT: f64 = 700.0;

struct Weideman {
    l: f64,
    a: Vec<f64>,
}

static TABLE: OnceBox<Weideman> = OnceBox::new();

fn table() -> &'static Weideman {
    TABLE.get_or_init(|| {
        let m = 2 * N_TERMS;
        let l = Float::sqrt(N_TERMS as f64 / Float::sqrt(2.0));
        let f = |k: usize| -> f64 {
            if k == 0 {
                return l * l;
            }
            let t = l * Float::tan(k as f64 * PI / (2.0 * m as f64));
            Float::exp(-t * t) * (l * l + t * t)
        };
        let fk: Vec<f64> = (0..m).map(f).collect();
        let a = (1..=N_TERMS)
            .map(|n| {
                let mut s = fk[0];
                for (k, v) in fk.iter().enumerate().skip(1) {
                    s += 2.0 * v * Float::cos(PI * (k * n) as f64 / m as f64);
                }
                s / (2.0 * m as f64)
            })
            .collect();
        Box::new(Weideman { l, a })
    })
}

/// Faddeeva function `w(z)`. Accurate to ~1e-14 relative in the upper half plane.
pub fn faddeeva_w(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        // w(z) = 2 e^{-z²} - w(-z)
        return (-z * z).exp() * 2.0 - faddeeva_w(-z);
    }
    let tb = table();
    let i = Complex64::i();
    let lz = Complex64::new(tb.l, 0.0) - i * z;
    let zz = (Complex64::new(tb.l, 0.0) + i * z) / lz;
    let mut p = Complex64::new(0.0, 0.0);
    for &a in tb.a.iter().rev() {
        p = p * zz + a;
    }
    p * 2.0 / (lz * lz) + (1.0 / Float::sqrt(PI)) / lz
}

fn erfi_taylor(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for n in 1..200 {
        term = term * z2 / n as f64;
        let add = term / (2 * n + 1) as f64;
        sum += add;
        if add.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum * (2.0 / Float::sqrt(PI))
}

/// `erfi(z)` for complex `z`.
///
/// Fails with [`Error::ErfiDomain`] when `Re(z²)` is large enough for the
/// result to overflow. Along the diagonals `arg z = ±π/4`, where the chirp
/// integrals live, `z²` is imaginary and any magnitude is accepted.
pub fn erfi(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.re * z.re - z.im * z.im > MAX_EXPONENT {
        return Err(Error::ErfiDomain { re: z.re, im: z.im });
    }
    if z.norm() <= TAYLOR_RADIUS {
        return Ok(erfi_taylor(z));
    }
    let i = Complex64::i();
    let e = (z * z).exp();
    Ok(if z.im > 0.0 {
        i * (Complex64::new(1.0, 0.0) - e * faddeeva_w(z))
    } else {
        -i * (Complex64::new(1.0, 0.0) - e * faddeeva_w(-z))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_axis_values() {
        // erfi(1) = 1.6504257587975428...
        let v = erfi(c(1.0, 0.0)).unwrap();
        assert!((v.re - 1.650_425_758_797_542_8).abs() < 1e-14 && v.im.abs() < 1e-16);
        let v = erfi(c(2.0, 0.0)).unwrap();
        assert!((v.re - 18.564_802_414_575_55).abs() < 1e-11);
    }

    #[test]
    fn imaginary_axis_is_erf() {
        // erfi(iy) = i erf(y); erf(2) = 0.9953222650189527
        let v = erfi(c(0.0, 2.0)).unwrap();
        assert!(v.re.abs() < 1e-15 && (v.im - 0.995_322_265_018_952_7).abs() < 1e-14);
    }

    #[test]
    fn faddeeva_reference() {
        // w(1 + i) = 0.30474420525691259 + 0.20821893820283162 i
        let w = faddeeva_w(c(1.0, 1.0));
        assert!((w - c(0.304_744_205_256_912_6, 0.208_218_938_202_831_6)).norm() < 1e-14);
    }

    #[test]
    fn branches_agree_at_taylor_radius() {
        for k in 0..16 {
            let th = k as f64 * PI / 8.0 + 0.1;
            let z = c(TAYLOR_RADIUS * th.cos(), TAYLOR_RADIUS * th.sin());
            let i = Complex64::i();
            let e = (z * z).exp();
            let far = if z.im > 0.0 {
                i * (1.0 - e * faddeeva_w(z))
            } else {
                -i * (1.0 - e * faddeeva_w(-z))
            };
            let near = erfi_taylor(z);
            assert!((far - near).norm() < 1e-13 * near.norm().max(1.0), "{z}");
        }
    }

    #[test]
    fn diagonal_large_argument() {
        // erfi(r e^{iπ/4}) -> i (sign of imaginary part) as r grows.
        let z = Complex64::from_polar(300.0, PI / 4.0);
        let v = erfi(z).unwrap();
        assert!((v - Complex64::i()).norm() < 1e-2);
        assert!(v.re.is_finite());
    }

    #[test]
    fn overflow_is_rejected() {
        assert!(matches!(erfi(c(30.0, 0.0)), Err(Error::ErfiDomain { .. })));
    }
}
