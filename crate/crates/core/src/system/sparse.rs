use crate::numfield::{FieldError, FieldScalar};

/// Nonzero entries of one row, sorted by column.
pub type SparseRow = Vec<(usize, FieldScalar)>;

/// Row-major sparse matrix over ℚ(√d).
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    cols: usize,
    d: u32,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    /// Rows are sorted by column and stripped of explicit zeros.
    pub fn new(cols: usize, d: u32, rows: Vec<SparseRow>) -> Self {
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.retain(|(_, x)| !x.is_zero());
                r.sort_by_key(|(c, _)| *c);
                r
            })
            .collect();
        Self { cols, d, rows }
    }

    pub fn from_dense(rows: &[Vec<FieldScalar>], cols: usize, d: u32) -> Self {
        Self::new(
            cols,
            d,
            rows.iter().map(|r| r.iter().cloned().enumerate().collect()).collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, 1, (0..n).map(|i| vec![(i, FieldScalar::one())]).collect())
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn discriminant(&self) -> u32 {
        self.d
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Appends the rows of `other` below these.
    pub fn stacked(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.cols, "stacking matrices with different widths");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self { cols: self.cols, d: self.d.max(other.d), rows }
    }

    /// Product with a dense vector.
    pub fn mul_vec(&self, x: &[FieldScalar]) -> Result<Vec<FieldScalar>, FieldError> {
        if x.len() != self.cols {
            return Err(FieldError::LengthMismatch { expected: self.cols, found: x.len() });
        }
        self.rows
            .iter()
            .map(|r| {
                r.iter().try_fold(FieldScalar::zero(), |acc, (c, a)| {
                    if x[*c].is_zero() {
                        Ok(acc)
                    } else {
                        acc.checked_add(&a.checked_mul(&x[*c])?)
                    }
                })
            })
            .collect()
    }

    /// Whether `x` satisfies every row exactly.
    pub fn annihilates(&self, x: &[FieldScalar]) -> Result<bool, FieldError> {
        Ok(self.mul_vec(x)?.iter().all(FieldScalar::is_zero))
    }

    /// Row-major dense copy in doubles, each entry rounded once.
    pub fn to_dense_f64(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.rows.len() * self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for (c, x) in r {
                out[i * self.cols + c] = x.to_f64();
            }
        }
        out
    }

    /// Rows in a permuted order.
    pub fn permuted_rows(&self, order: &[usize]) -> SparseMatrix {
        Self { cols: self.cols, d: self.d, rows: order.iter().map(|&i| self.rows[i].clone()).collect() }
    }
}
