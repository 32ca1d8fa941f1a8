use std::fmt;

use super::{FieldError, FieldScalar};

/// Dense row-major matrix over ℚ(√d).
#[derive(Clone, Debug)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    d: u32,
    entries: Vec<FieldScalar>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize, d: u32) -> Self {
        let zero = FieldScalar::zero().coerce(d).expect("zero coerces");
        Self { rows, cols, d, entries: vec![zero; rows * cols] }
    }

    pub fn identity(n: usize, d: u32) -> Self {
        let mut m = Self::zeros(n, n, d);
        for i in 0..n {
            m.entries[i * n + i] = FieldScalar::one().coerce(d).expect("one coerces");
        }
        m
    }

    /// Builds a matrix from row vectors; every entry is coerced to one discriminant.
    pub fn from_rows(rows: Vec<Vec<FieldScalar>>) -> Result<Self, FieldError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut d = 1;
        for row in &rows {
            if row.len() != ncols {
                return Err(FieldError::ShapeMismatch {
                    op: "from_rows",
                    left: (nrows, ncols),
                    right: (1, row.len()),
                });
            }
            for x in row {
                if x.discriminant() != 1 {
                    if d != 1 && d != x.discriminant() {
                        return Err(FieldError::DiscriminantMismatch { left: d, right: x.discriminant() });
                    }
                    d = x.discriminant();
                }
            }
        }
        let entries = rows
            .into_iter()
            .flatten()
            .map(|x| x.coerce(d))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { rows: nrows, cols: ncols, d, entries })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| FieldScalar::from_int(x)).collect())
            .collect();
        Self::from_rows(rows).expect("integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn discriminant(&self) -> u32 {
        self.d
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: FieldScalar) -> Result<(), FieldError> {
        let value = value.coerce(self.d).or_else(|_| {
            // A genuine quadratic entry upgrades a rational matrix.
            if self.d == 1 {
                let d = value.discriminant();
                for e in &mut self.entries {
                    *e = e.coerce(d)?;
                }
                self.d = d;
                Ok(value.clone())
            } else {
                Err(FieldError::DiscriminantMismatch { left: self.d, right: value.discriminant() })
            }
        })?;
        self.entries[i * self.cols + j] = value;
        Ok(())
    }

    pub fn entries(&self) -> &[FieldScalar] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, d: self.d, entries }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        if self.cols != other.rows {
            return Err(FieldError::ShapeMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let d = self.join_discriminant(other)?;
        let mut out = Self::zeros(self.rows, other.cols, d);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = out.entries[idx].checked_add(&a.checked_mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.zip_with(other, "add", |x, y| x.checked_add(y))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.zip_with(other, "sub", |x, y| x.checked_sub(y))
    }

    pub fn scale(&self, k: &FieldScalar) -> Result<Self, FieldError> {
        let d = match (self.d, k.discriminant()) {
            (1, y) => y,
            (x, _) => x,
        };
        let entries = self
            .entries
            .iter()
            .map(|x| x.checked_mul(k).and_then(|p| p.coerce(d)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, d, entries })
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            d: self.d,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldScalar::is_zero)
    }

    /// Inverse by exact Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self, FieldError> {
        if !self.is_square() {
            return Err(FieldError::ShapeMismatch {
                op: "inverse",
                left: (self.rows, self.cols),
                right: (self.rows, self.cols),
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n, self.d);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(FieldError::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).inverse()?;
            a.scale_row(col, &p)?;
            inv.scale_row(col, &p)?;
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                a.axpy_row(r, col, &f)?;
                inv.axpy_row(r, col, &f)?;
            }
        }
        Ok(inv)
    }

    /// Row-major flattening.
    pub fn to_vec(&self) -> Vec<FieldScalar> {
        self.entries.clone()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(FieldScalar::to_f64).collect()
    }

    fn swap_rows(&mut self, r: usize, s: usize) {
        for j in 0..self.cols {
            self.entries.swap(r * self.cols + j, s * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, k: &FieldScalar) -> Result<(), FieldError> {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.entries[idx] = self.entries[idx].checked_mul(k)?;
        }
        Ok(())
    }

    // row r -= f * row s
    fn axpy_row(&mut self, r: usize, s: usize, f: &FieldScalar) -> Result<(), FieldError> {
        for j in 0..self.cols {
            let delta = f.checked_mul(&self.entries[s * self.cols + j])?;
            let idx = r * self.cols + j;
            self.entries[idx] = self.entries[idx].checked_sub(&delta)?;
        }
        Ok(())
    }

    fn join_discriminant(&self, other: &Self) -> Result<u32, FieldError> {
        match (self.d, other.d) {
            (x, y) if x == y => Ok(x),
            (1, y) => Ok(y),
            (x, 1) => Ok(x),
            (x, y) => Err(FieldError::DiscriminantMismatch { left: x, right: y }),
        }
    }

    fn zip_with<F>(&self, other: &Self, op: &'static str, f: F) -> Result<Self, FieldError>
    where
        F: Fn(&FieldScalar, &FieldScalar) -> Result<FieldScalar, FieldError>,
    {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(FieldError::ShapeMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let d = self.join_discriminant(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| f(x, y).and_then(|z| z.coerce(d)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, d, entries })
    }
}

// Rational entries compare equal across discriminants, so `d` is not part of equality.
impl PartialEq for FieldMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for FieldMatrix {}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
