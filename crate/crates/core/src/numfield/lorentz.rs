use super::{FieldError, FieldMatrix, FieldScalar};

/// The form `diag(1, …, 1, −1)` on ℝ^{n+1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LorentzForm {
    n: usize,
}

impl LorentzForm {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    /// Spatial dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Size `n + 1` of vectors and matrices acted on.
    pub fn size(&self) -> usize {
        self.n + 1
    }

    /// Diagonal entry at position `i`.
    pub fn sign(&self, i: usize) -> i64 {
        if i == self.n {
            -1
        } else {
            1
        }
    }

    pub fn matrix(&self) -> FieldMatrix {
        let mut j = FieldMatrix::identity(self.size(), 1);
        j.set(self.n, self.n, FieldScalar::from_int(-1)).expect("rational entry");
        j
    }
}

/// Lorentzian pairing `uᵀ J v`.
pub fn lorentz_product(u: &[FieldScalar], v: &[FieldScalar], form: &LorentzForm) -> Result<FieldScalar, FieldError> {
    if u.len() != form.size() || v.len() != form.size() {
        return Err(FieldError::LengthMismatch { expected: form.size(), found: u.len().max(v.len()) });
    }
    let mut acc = FieldScalar::zero();
    for (i, (x, y)) in u.iter().zip(v).enumerate() {
        let p = x.checked_mul(y)?;
        acc = if form.sign(i) > 0 { acc.checked_add(&p)? } else { acc.checked_sub(&p)? };
    }
    Ok(acc)
}

/// Reflection in the hyperplane Lorentz-orthogonal to `normal`:
/// `R = I − (2/⟨v,v⟩) · v vᵀ J`.
///
/// The normal need not be unit; entries stay in the field of the normal.
pub fn reflection_matrix(normal: &[FieldScalar], form: &LorentzForm) -> Result<FieldMatrix, FieldError> {
    let norm = lorentz_product(normal, normal, form)?;
    if !norm.is_positive() {
        return Err(FieldError::NotSpacelike(norm.to_string()));
    }
    let k = FieldScalar::from_int(2).checked_div(&norm)?;
    let size = form.size();
    let mut rows = Vec::with_capacity(size);
    for i in 0..size {
        let mut row = Vec::with_capacity(size);
        for j in 0..size {
            // (v vᵀ J)_{ij} = v_i v_j J_jj
            let mut t = normal[i].checked_mul(&normal[j])?.checked_mul(&k)?;
            if form.sign(j) < 0 {
                t = -t;
            }
            let delta = if i == j { FieldScalar::one() } else { FieldScalar::zero() };
            row.push(delta.checked_sub(&t)?);
        }
        rows.push(row);
    }
    FieldMatrix::from_rows(rows)
}

/// A basis of the Lie algebra of `O(n,1)`: the matrices `A` with `Aᵀ J + J A = 0`.
///
/// Rotations `E_ij − E_ji` (spatial `i < j`) come first, then boosts `E_in + E_ni`.
pub fn lie_algebra_basis(n: usize) -> Vec<FieldMatrix> {
    let size = n + 1;
    let mut basis = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut a = FieldMatrix::zeros(size, size, 1);
            a.set(i, j, FieldScalar::one()).expect("rational entry");
            a.set(j, i, FieldScalar::from_int(-1)).expect("rational entry");
            basis.push(a);
        }
    }
    for i in 0..n {
        let mut a = FieldMatrix::zeros(size, size, 1);
        a.set(i, n, FieldScalar::one()).expect("rational entry");
        a.set(n, i, FieldScalar::one()).expect("rational entry");
        basis.push(a);
    }
    basis
}

/// Dimension `n(n+1)/2` of `O(n,1)`.
pub fn lie_algebra_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Checks `Mᵀ J M = J`.
pub fn preserves_form(m: &FieldMatrix, form: &LorentzForm) -> Result<bool, FieldError> {
    let j = form.matrix();
    Ok(m.transpose().mul(&j)?.mul(m)? == j)
}
