//! Frequency grids and ensemble control problems.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};

/// State of one spring, `z = x + iy`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpringState(pub Complex64);

impl SpringState {
    pub fn x(&self) -> f64 {
        self.0.re
    }
    pub fn y(&self) -> f64 {
        self.0.im
    }
    pub fn radius(&self) -> f64 {
        self.0.norm()
    }
    pub fn phase(&self) -> f64 {
        self.0.arg()
    }
}

impl From<Complex64> for SpringState {
    fn from(z: Complex64) -> Self {
        SpringState(z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridConvention {
    /// `ω_k = ω_min + k (ω_max - ω_min)/(N - 1)`, both ends included.
    Inclusive,
    /// Cell midpoints of `N` equal cells.
    Midpoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    omegas: Vec<f64>,
}

impl FrequencyGrid {
    pub fn new(min: f64, max: f64, n: usize, convention: GridConvention) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("frequency grid needs at least one point"));
        }
        if !(min.is_finite() && max.is_finite()) || max < min {
            return Err(Error::InvalidInput("frequency band must satisfy min <= max"));
        }
        if n > 1 && max == min {
            return Err(Error::InvalidInput("degenerate band with several frequencies"));
        }
        let omegas = match convention {
            GridConvention::Inclusive if n == 1 => alloc::vec![0.5 * (min + max)],
            GridConvention::Inclusive => (0..n)
                .map(|k| min + (max - min) * k as f64 / (n - 1) as f64)
                .collect(),
            GridConvention::Midpoint => (0..n)
                .map(|k| min + (max - min) * (k as f64 + 0.5) / n as f64)
                .collect(),
        };
        Ok(FrequencyGrid { omegas })
    }

    pub fn inclusive(min: f64, max: f64, n: usize) -> Result<Self> {
        Self::new(min, max, n, GridConvention::Inclusive)
    }

    pub fn midpoint(min: f64, max: f64, n: usize) -> Result<Self> {
        Self::new(min, max, n, GridConvention::Midpoint)
    }

    /// Arbitrary strictly increasing frequencies.
    pub fn from_vec(omegas: Vec<f64>) -> Result<Self> {
        if omegas.is_empty() {
            return Err(Error::InvalidInput("frequency grid needs at least one point"));
        }
        if omegas.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidInput("non-finite frequency"));
        }
        if omegas.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("frequencies must be strictly increasing"));
        }
        Ok(FrequencyGrid { omegas })
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }
}

/// Frequencies, their end-state targets and the control horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleProblem {
    pub grid: FrequencyGrid,
    pub targets: Vec<Complex64>,
    pub t_f: f64,
}

impl EnsembleProblem {
    pub fn new(grid: FrequencyGrid, targets: Vec<Complex64>, t_f: f64) -> Result<Self> {
        if targets.len() != grid.len() {
            return Err(Error::InvalidInput("one target per frequency required"));
        }
        if !(t_f > 0.0 && t_f.is_finite()) {
            return Err(Error::InvalidInput("horizon must be positive"));
        }
        if targets.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidInput("non-finite target"));
        }
        Ok(EnsembleProblem { grid, targets, t_f })
    }

    /// Every spring sent to the same target.
    pub fn uniform(grid: FrequencyGrid, target: Complex64, t_f: f64) -> Result<Self> {
        let targets = alloc::vec![target; grid.len()];
        Self::new(grid, targets, t_f)
    }

    pub fn omegas(&self) -> &[f64] {
        self.grid.omegas()
    }

    /// Largest `|ω|`, useful for choosing step sizes.
    pub fn max_abs_omega(&self) -> f64 {
        self.omegas().iter().fold(0.0, |m, w| Float::max(m, w.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions() {
        let g = FrequencyGrid::inclusive(0.0, 1.0, 5).unwrap();
        assert_eq!(g.omegas(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = FrequencyGrid::midpoint(0.0, 1.0, 4).unwrap();
        assert_eq!(g.omegas(), &[0.125, 0.375, 0.625, 0.875]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FrequencyGrid::inclusive(1.0, 0.0, 3).is_err());
        assert!(FrequencyGrid::from_vec(alloc::vec![0.0, 0.0]).is_err());
        let g = FrequencyGrid::inclusive(0.0, 1.0, 3).unwrap();
        assert!(EnsembleProblem::new(g.clone(), alloc::vec![Complex64::new(1.0, 0.0)], 1.0).is_err());
        assert!(EnsembleProblem::uniform(g, Complex64::new(1.0, 0.0), -1.0).is_err());
    }
}
