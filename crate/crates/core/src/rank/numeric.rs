use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::RankError;
use crate::system::SparseMatrix;

/// Singular-value cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tolerance {
    /// `max(rows, cols) · ε · σ₁`.
    Auto,
    Fixed(f64),
}

impl Tolerance {
    pub fn resolve(self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        match self {
            Tolerance::Auto => rows.max(cols) as f64 * f64::EPSILON * sigma_max,
            Tolerance::Fixed(t) => t,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericResult {
    /// Descending, `min(rows, cols)` values.
    pub singular_values: Vec<f64>,
    pub tolerance: f64,
    /// `cols − #{σ ≥ tolerance}`.
    pub nullity: usize,
    /// Smallest kept over largest discarded value; see [`gap_ratio`].
    pub gap_ratio: Option<f64>,
}

/// `Σ_min / σ_max` around `tolerance`.
///
/// With no discarded values the tolerance stands in for `σ_max`; with no kept
/// values there is no ratio. A discarded value of exactly zero gives `+∞`.
pub fn gap_ratio(singular_values: &[f64], tolerance: f64) -> Option<f64> {
    let kept = |s: f64| s >= tolerance && s > 0.0;
    let kept_min = singular_values.iter().copied().filter(|&s| kept(s)).fold(None, |m: Option<f64>, s| {
        Some(m.map_or(s, |m| m.min(s)))
    })?;
    let dropped_max = singular_values.iter().copied().filter(|&s| !kept(s)).fold(None, |m: Option<f64>, s| {
        Some(m.map_or(s, |m| m.max(s)))
    });
    let denom = dropped_max.unwrap_or(tolerance);
    Some(if denom == 0.0 { f64::INFINITY } else { kept_min / denom })
}

/// Full singular spectrum of the float mirror by dense SVD.
pub fn numeric_nullity(m: &SparseMatrix, tolerance: Tolerance, size_cap: usize) -> Result<NumericResult, RankError> {
    if m.cols() > size_cap {
        return Err(RankError::SizeCap { cols: m.cols(), cap: size_cap });
    }
    let (rows, cols) = (m.row_count(), m.cols());
    let mut sv: Vec<f64> = if rows == 0 || cols == 0 {
        Vec::new()
    } else {
        let dense = DMatrix::from_row_slice(rows, cols, &m.to_dense_f64());
        // a tall matrix has the same singular values as its transpose; nalgebra prefers rows ≥ cols
        dense.singular_values().iter().copied().collect()
    };
    sv.sort_by(|a, b| b.total_cmp(a));
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let tol = tolerance.resolve(rows, cols, sigma_max);
    let kept = sv.iter().filter(|&&s| s >= tol && s > 0.0).count();
    Ok(NumericResult { gap_ratio: gap_ratio(&sv, tol), singular_values: sv, tolerance: tol, nullity: cols - kept })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::FieldScalar;

    #[test]
    fn zero_matrix() {
        let m = SparseMatrix::new(4, 1, vec![vec![]; 4]);
        let r = numeric_nullity(&m, Tolerance::Auto, 100).unwrap();
        assert_eq!(r.nullity, 4);
        assert_eq!(r.gap_ratio, None);
    }

    #[test]
    fn identity_is_full_rank() {
        let r = numeric_nullity(&SparseMatrix::identity(5), Tolerance::Fixed(1e-12), 100).unwrap();
        assert_eq!(r.nullity, 0);
        assert_eq!(r.singular_values, vec![1.0; 5]);
        assert_eq!(r.gap_ratio, Some(1e12));
    }

    #[test]
    fn wide_matrix_counts_missing_values() {
        let row = vec![(0, FieldScalar::one()), (2, FieldScalar::from_int(2))];
        let m = SparseMatrix::new(3, 1, vec![row]);
        let r = numeric_nullity(&m, Tolerance::Auto, 100).unwrap();
        assert_eq!(r.singular_values.len(), 1);
        assert_eq!(r.nullity, 2);
    }

    #[test]
    fn size_cap_enforced() {
        let m = SparseMatrix::identity(10);
        assert!(matches!(numeric_nullity(&m, Tolerance::Auto, 5), Err(RankError::SizeCap { .. })));
    }

    #[test]
    fn gap_with_exact_zero() {
        assert_eq!(gap_ratio(&[3.0, 1.0, 0.0], 1e-9), Some(f64::INFINITY));
        assert_eq!(gap_ratio(&[3.0, 1.0, 1e-10], 1e-9), Some(1e10));
    }
}
