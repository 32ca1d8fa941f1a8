//! Fraction-free sparse elimination over `ℤ[√d]`.
//!
//! Rows are scaled to integral entries `a + b√d`. A pivot row is multiplied by
//! the conjugate of its pivot so that the pivot `N` is a rational integer;
//! other rows are updated as `r ← N·r − α·p` and divided by the gcd of their
//! integer components.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numfield::FieldScalar;
use crate::system::SparseMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
struct QInt {
    a: BigInt,
    b: BigInt,
}

impl QInt {
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn mul(&self, o: &QInt, d: &BigInt) -> QInt {
        QInt { a: &self.a * &o.a + d * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a }
    }

    fn scale(&self, k: &BigInt) -> QInt {
        QInt { a: &self.a * k, b: &self.b * k }
    }

    fn conj(&self) -> QInt {
        QInt { a: self.a.clone(), b: -&self.b }
    }

    fn to_scalar(&self, d: u32) -> FieldScalar {
        FieldScalar::from_integers(self.a.clone(), self.b.clone(), BigInt::one(), d)
    }
}

type IntRow = Vec<(usize, QInt)>;

fn to_int_row(row: &[(usize, FieldScalar)]) -> IntRow {
    let k = row.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(&x.denominator_lcm()));
    let mut out: IntRow = row
        .iter()
        .map(|(c, x)| {
            let (a, b) = x.scaled_integers(&k);
            (*c, QInt { a, b })
        })
        .collect();
    strip_content(&mut out);
    out
}

fn strip_content(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, x) in row.iter() {
        g = g.gcd(&x.a).gcd(&x.b);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, x) in row.iter_mut() {
        x.a /= &g;
        x.b /= &g;
    }
}

fn entry(row: &IntRow, col: usize) -> Option<&QInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `n·r − α·p`, dropping cancelled entries.
fn combine(r: &IntRow, p: &IntRow, n: &BigInt, alpha: &QInt, d: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let ci = r.get(i).map_or(usize::MAX, |e| e.0);
        let cj = p.get(j).map_or(usize::MAX, |e| e.0);
        let (col, val) = if ci < cj {
            i += 1;
            (ci, r[i - 1].1.scale(n))
        } else if cj < ci {
            j += 1;
            let t = alpha.mul(&p[j - 1].1, d);
            (cj, QInt { a: -t.a, b: -t.b })
        } else {
            i += 1;
            j += 1;
            let t = alpha.mul(&p[j - 1].1, d);
            let s = r[i - 1].1.scale(n);
            (ci, QInt { a: s.a - t.a, b: s.b - t.b })
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    strip_content(&mut out);
    out
}

/// Makes the pivot at `col` a rational integer by multiplying with its conjugate.
fn rationalise(row: &mut IntRow, col: usize, d: &BigInt) {
    let pivot = entry(row, col).expect("pivot present").clone();
    if pivot.b.is_zero() {
        return;
    }
    let c = pivot.conj();
    for (_, x) in row.iter_mut() {
        *x = x.mul(&c, d);
    }
    strip_content(row);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PivotStrategy {
    /// Sparsest row, then the column with fewest nonzeros in that row.
    Markowitz,
    /// Rows in a seeded random order, random nonzero column.
    Shuffled { seed: u64 },
}

/// Result of an exact elimination.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub rank: usize,
    pub cols: usize,
    d: u32,
    /// Reduced pivot rows `(pivot column, row)`, kept in Gauss–Jordan mode.
    pivots: Vec<(usize, IntRow)>,
}

impl Elimination {
    pub fn nullity(&self) -> usize {
        self.cols - self.rank
    }

    /// A basis of the kernel (Gauss–Jordan runs only): for each free column
    /// `f`, `x_f = 1` and `x_c = −a_{p,f} / π_p` on pivot columns.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldScalar>> {
        let mut is_pivot = vec![false; self.cols];
        for (c, _) in &self.pivots {
            is_pivot[*c] = true;
        }
        let pivots: Vec<(usize, FieldScalar, &IntRow)> = self
            .pivots
            .iter()
            .map(|(c, row)| (*c, entry(row, *c).unwrap().to_scalar(self.d), row))
            .collect();
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![FieldScalar::zero(); self.cols];
                x[f] = FieldScalar::one();
                for (c, pi, row) in &pivots {
                    if let Some(a) = entry(row, f) {
                        x[*c] = -(a.to_scalar(self.d).checked_div(pi).expect("nonzero pivot"));
                    }
                }
                x
            })
            .collect()
    }
}

/// Exact rank by fraction-free elimination; `jordan` also clears pivot columns
/// above the pivot so that a kernel basis can be read off.
pub fn eliminate(m: &SparseMatrix, strategy: PivotStrategy, jordan: bool) -> Elimination {
    let d_u32 = m.discriminant();
    let d = BigInt::from(d_u32);
    let mut rows: Vec<Option<IntRow>> =
        m.rows().par_iter().map(|r| to_int_row(r)).map(|r| (!r.is_empty()).then_some(r)).collect();
    let mut col_count = vec![0usize; m.cols()];
    for r in rows.iter().flatten() {
        for (c, _) in r {
            col_count[*c] += 1;
        }
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(match strategy {
        PivotStrategy::Shuffled { seed } => seed,
        PivotStrategy::Markowitz => 0,
    });
    if let PivotStrategy::Shuffled { .. } = strategy {
        order.shuffle(&mut rng);
    }

    let mut pivots: Vec<(usize, IntRow)> = Vec::new();
    let mut rank = 0;
    let total = rows.iter().flatten().count().min(m.cols()).max(1);
    let mut next_report = total / 10;
    loop {
        let chosen = match strategy {
            PivotStrategy::Markowitz => rows
                .iter()
                .enumerate()
                .filter_map(|(i, r)| r.as_ref().map(|r| (r.len(), i)))
                .min()
                .map(|(_, i)| i),
            PivotStrategy::Shuffled { .. } => order.iter().copied().find(|&i| rows[i].is_some()),
        };
        let Some(pr) = chosen else { break };
        let mut prow = rows[pr].take().unwrap();
        let col = match strategy {
            PivotStrategy::Markowitz => prow.iter().map(|(c, _)| (col_count[*c], *c)).min().unwrap().1,
            PivotStrategy::Shuffled { .. } => prow[rng.random_range(0..prow.len())].0,
        };
        for (c, _) in &prow {
            col_count[*c] -= 1;
        }
        rationalise(&mut prow, col, &d);
        let n = entry(&prow, col).unwrap().a.clone();

        let mut targets: Vec<(usize, IntRow)> = Vec::new();
        for (i, slot) in rows.iter_mut().enumerate() {
            if slot.as_ref().is_some_and(|r| entry(r, col).is_some()) {
                targets.push((i, slot.take().unwrap()));
            }
        }
        for (_, r) in &targets {
            for (c, _) in r {
                col_count[*c] -= 1;
            }
        }
        let updated: Vec<(usize, IntRow)> = targets
            .into_par_iter()
            .map(|(i, r)| {
                let alpha = entry(&r, col).unwrap().clone();
                (i, combine(&r, &prow, &n, &alpha, &d))
            })
            .collect();
        for (i, r) in updated {
            if !r.is_empty() {
                for (c, _) in &r {
                    col_count[*c] += 1;
                }
                rows[i] = Some(r);
            }
        }
        if jordan {
            pivots.par_iter_mut().for_each(|(_, r)| {
                if let Some(alpha) = entry(r, col).cloned() {
                    *r = combine(r, &prow, &n, &alpha, &d);
                }
            });
            pivots.push((col, prow));
        }
        rank += 1;
        if rank >= next_report {
            log::info!("exact elimination: rank {rank} of at most {total}");
            next_report += (total / 10).max(1);
        }
    }
    Elimination { rank, cols: m.cols(), d: d_u32, pivots }
}

/// `cols − rank`, with the default pivoting.
pub fn exact_nullity(m: &SparseMatrix) -> usize {
    eliminate(m, PivotStrategy::Markowitz, false).nullity()
}

/// Exact rank of a list of dense vectors.
pub fn exact_rank_of_vectors(vectors: &[Vec<FieldScalar>], d: u32) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let m = SparseMatrix::from_dense(vectors, first.len(), d);
    eliminate(&m, PivotStrategy::Markowitz, false).rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> SparseMatrix {
        let dense: Vec<Vec<FieldScalar>> =
            rows.iter().map(|r| r.iter().map(|&x| FieldScalar::from_int(x)).collect()).collect();
        SparseMatrix::from_dense(&dense, rows[0].len(), 1)
    }

    #[test]
    fn identity_has_no_kernel() {
        assert_eq!(exact_nullity(&SparseMatrix::identity(7)), 0);
    }

    #[test]
    fn small_integer_rank() {
        let m = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(exact_nullity(&m), 1);
        let e = eliminate(&m, PivotStrategy::Markowitz, true);
        let basis = e.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert!(m.annihilates(&basis[0]).unwrap());
    }

    #[test]
    fn quadratic_entries() {
        // rows (1, √2) and (√2, 2) are proportional
        let s = FieldScalar::sqrt_d(2).unwrap();
        let rows = vec![vec![FieldScalar::one(), s.clone()], vec![s, FieldScalar::from_int(2)]];
        let m = SparseMatrix::from_dense(&rows, 2, 2);
        assert_eq!(exact_nullity(&m), 1);
        let e = eliminate(&m, PivotStrategy::Markowitz, true);
        assert!(m.annihilates(&e.kernel_basis()[0]).unwrap());
    }

    #[test]
    fn rational_entries_are_cleared() {
        let half = FieldScalar::from_ratio(1, 2).unwrap();
        let third = FieldScalar::from_ratio(1, 3).unwrap();
        let rows = vec![vec![half.clone(), third.clone()], vec![FieldScalar::from_int(3), FieldScalar::from_int(2)]];
        assert_eq!(exact_nullity(&SparseMatrix::from_dense(&rows, 2, 1)), 1);
    }

    #[test]
    fn pivot_order_does_not_change_rank() {
        let m = int_matrix(&[
            &[1, 0, 2, 0, 1],
            &[0, 1, 1, 0, 0],
            &[1, 1, 3, 0, 1],
            &[0, 0, 0, 5, 5],
            &[2, 0, 4, 5, 7],
        ]);
        let base = exact_nullity(&m);
        for seed in 0..10 {
            assert_eq!(eliminate(&m, PivotStrategy::Shuffled { seed }, seed % 2 == 0).nullity(), base);
        }
    }
}
