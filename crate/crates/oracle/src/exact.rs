//! Exact rational linear algebra and polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Exact value of a finite double.
pub fn from_f64(x: f64) -> Q {
    Q::from_float(x).expect("finite")
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().expect("finite rational")
}

/// Rank by fraction-exact Gaussian elimination.
pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = m.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[r][c];
            for j in c..cols {
                let d = &f * &m[r][j];
                m[i][j] -= d;
            }
        }
        r += 1;
    }
    r
}

/// Solves the square system `m x = rhs`; `None` if singular.
pub fn solve(m: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().zip(rhs).map(|(r, b)| {
        let mut r = r.clone();
        r.push(b.clone());
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[c][c];
            for j in c..=n {
                let d = &f * &a[c][j];
                a[i][j] -= d;
            }
        }
    }
    Some((0..n).map(|i| &a[i][n] / &a[i][i]).collect())
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..m).map(|j| (0..k).fold(Q::zero(), |s, l| s + &row[l] * &b[l][j])).collect())
        .collect()
}

/// Kalman matrix `[B, AB, …, A^{n-1}B]` for a single input.
pub fn kalman(a: &[Vec<Q>], b: &[Q]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut cols = vec![b.to_vec()];
    for _ in 1..n {
        let prev = cols.last().unwrap();
        let next = a.iter().map(|row| row.iter().zip(prev).fold(Q::zero(), |s, (x, y)| s + x * y)).collect();
        cols.push(next);
    }
    (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Spring block matrix for rational frequencies.
pub fn springs_a(omegas: &[Q]) -> Vec<Vec<Q>> {
    let n = 2 * omegas.len();
    let mut a = vec![vec![Q::zero(); n]; n];
    for (k, w) in omegas.iter().enumerate() {
        a[2 * k][2 * k + 1] = -w.clone();
        a[2 * k + 1][2 * k] = w.clone();
    }
    a
}

pub fn springs_b(n: usize) -> Vec<Q> {
    (0..2 * n).map(|i| if i % 2 == 0 { Q::one() } else { Q::zero() }).collect()
}

/// Ascending coefficients of `Π (λ² + ω_k²)`.
pub fn springs_char_poly(omegas: &[Q]) -> Vec<Q> {
    let mut p = vec![Q::one()];
    for w in omegas {
        let f = [w * w, Q::zero(), Q::one()];
        p = poly_mul(&p, &f);
    }
    p
}

pub fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_eval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

pub fn poly_deriv(p: &[Q]) -> Vec<Q> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * Q::from_integer(BigInt::from(k))).collect()
}

/// Lowest-degree polynomial in `s` with `p^{(k)}(0) = left[k]`, `p^{(k)}(1) = right[k]`.
pub fn hermite(left: &[Q], right: &[Q]) -> Vec<Q> {
    let n = left.len() + right.len();
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    let unit: Vec<Vec<Q>> = (0..n).map(|j| (0..n).map(|i| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for (at, data) in [(Q::zero(), left), (Q::one(), right)] {
        for (k, v) in data.iter().enumerate() {
            rows.push(
                unit.iter()
                    .map(|e| {
                        let mut d = e.clone();
                        for _ in 0..k {
                            d = poly_deriv(&d);
                        }
                        poly_eval(&d, &at)
                    })
                    .collect(),
            );
            rhs.push(v.clone());
        }
    }
    solve(&rows, &rhs).expect("Hermite data is always solvable")
}

pub fn max_abs(v: &[Q]) -> Q {
    v.iter().map(|x| x.abs()).fold(Q::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothstep() {
        let p = hermite(&[q(0, 1), q(0, 1)], &[q(1, 1), q(0, 1)]);
        assert_eq!(p, vec![q(0, 1), q(0, 1), q(3, 1), q(-2, 1)]);
    }

    #[test]
    fn kalman_rank_of_equal_springs() {
        let w = [q(1, 2), q(1, 2)];
        assert_eq!(rank(&kalman(&springs_a(&w), &springs_b(2))), 2);
        let w = [q(1, 3), q(1, 2)];
        assert_eq!(rank(&kalman(&springs_a(&w), &springs_b(2))), 4);
        // the y component of a static spring never moves
        let w = [q(0, 1), q(1, 2)];
        assert_eq!(rank(&kalman(&springs_a(&w), &springs_b(2))), 3);
    }
}
