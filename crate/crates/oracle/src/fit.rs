//! Least-squares polynomial fits.

/// Fit of `y ≈ Σ c_k x^k`, `k ≤ deg`.
#[derive(Debug, Clone)]
pub struct PolyFit {
    pub coeffs: Vec<f64>,
    /// Root-mean-square residual.
    pub rms: f64,
}

/// Solves the normal equations after centring and scaling `x` for conditioning.
pub fn polyfit(x: &[f64], y: &[f64], deg: usize) -> PolyFit {
    assert_eq!(x.len(), y.len());
    assert!(x.len() > deg, "not enough points");
    let n = deg + 1;
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let half = x.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let xs: Vec<f64> = x.iter().map(|v| (v - mean) / half).collect();
    let mut m = vec![vec![0.0; n + 1]; n];
    for (xi, yi) in xs.iter().zip(y) {
        let pw: Vec<f64> = (0..n).map(|k| xi.powi(k as i32)).collect();
        for r in 0..n {
            for c in 0..n {
                m[r][c] += pw[r] * pw[c];
            }
            m[r][n] += pw[r] * yi;
        }
    }
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        m.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..=n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    let scaled: Vec<f64> = (0..n).map(|k| m[k][n] / m[k][k]).collect();
    // expand Σ a_k ((x - mean)/half)^k back into powers of x
    let mut coeffs = vec![0.0; n];
    for (k, a) in scaled.iter().enumerate() {
        let mut binom = 1.0;
        for j in 0..=k {
            coeffs[j] += a * binom * (-mean).powi((k - j) as i32) / half.powi(k as i32);
            binom *= (k - j) as f64 / (j + 1) as f64;
        }
    }
    let rms = (xs
        .iter()
        .zip(y)
        .map(|(xi, yi)| (yi - scaled.iter().rev().fold(0.0, |acc, a| acc * xi + a)).powi(2))
        .sum::<f64>()
        / x.len() as f64)
        .sqrt();
    PolyFit { coeffs, rms }
}
