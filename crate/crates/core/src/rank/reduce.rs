use rayon::prelude::*;

use crate::numfield::{lie_algebra_basis, FieldMatrix, FieldScalar};
use crate::system::{CocycleSystem, SparseMatrix, SparseRow};

/// Solves the tangency block edge by edge: every `D_e` is written as
/// `Σ_a x_{e,a} A_a M_e` over the Lie algebra basis, and the relator rows are
/// rewritten in the coordinates `x`, giving `dim(G)·|edges|` columns.
///
/// The tangency rows of an edge cut out exactly the `dim(G)`-dimensional
/// space `𝔤·M_e`, so the nullity is unchanged.
pub fn lie_coordinates(sys: &CocycleSystem) -> SparseMatrix {
    let n = sys.dimension();
    let size = n + 1;
    let block = sys.block();
    let basis = lie_algebra_basis(n);
    let dim_g = basis.len();
    let tangent: Vec<Vec<FieldMatrix>> = (0..sys.edge_count())
        .into_par_iter()
        .map(|e| basis.iter().map(|a| a.mul(sys.image(e)).expect("square matrices")).collect())
        .collect();
    let rows: Vec<SparseRow> = sys.matrix().rows()[sys.tangency_row_count()..]
        .par_iter()
        .map(|row| {
            let mut out: Vec<(usize, FieldScalar)> = Vec::new();
            for (col, coef) in row {
                let (e, k) = (col / block, col % block);
                let (i, j) = (k / size, k % size);
                for (a, t) in tangent[e].iter().enumerate() {
                    let entry = t.get(i, j);
                    if !entry.is_zero() {
                        out.push((e * dim_g + a, coef.checked_mul(entry).expect("common field")));
                    }
                }
            }
            out.sort_by_key(|(c, _)| *c);
            let mut merged: SparseRow = Vec::with_capacity(out.len());
            for (c, x) in out {
                match merged.last_mut() {
                    Some((lc, lx)) if *lc == c => *lx = lx.checked_add(&x).expect("common field"),
                    _ => merged.push((c, x)),
                }
            }
            merged
        })
        .collect();
    SparseMatrix::new(dim_g * sys.edge_count(), sys.matrix().discriminant(), rows)
}
