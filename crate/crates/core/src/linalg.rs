use nalgebra::{DMatrix, DVector};

pub(crate) struct Lstsq {
    pub x: DVector<f64>,
    pub condition: f64,
    pub rank: usize,
    pub residual: f64,
}

/// Minimum-norm least squares through the SVD. Singular values below
/// `rel_cut * σ_max` are treated as zero.
pub(crate) fn lstsq(m: &DMatrix<f64>, rhs: &DVector<f64>, rel_cut: f64) -> Lstsq {
    let svd = m.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let smin = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    let cut = rel_cut * smax;
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let mut x = DVector::zeros(m.ncols());
    let mut rank = 0;
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > cut && s > 0.0 {
            rank += 1;
            let coef = u.column(i).dot(rhs) / s;
            x += vt.row(i).transpose() * coef;
        }
    }
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    let residual = (m * &x - rhs).norm();
    Lstsq { x, condition, rank, residual }
}

pub(crate) fn numerical_rank(m: &DMatrix<f64>) -> usize {
    let n = m.nrows().max(m.ncols());
    let sv = m.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let cut = n as f64 * f64::EPSILON * smax;
    sv.iter().filter(|&&s| s > cut && s > 0.0).count()
}
