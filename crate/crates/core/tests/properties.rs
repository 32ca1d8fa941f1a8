use proptest::prelude::*;
use rigidcover::cover::{zigzag_table, ZigzagTemplate};
use rigidcover::numfield::FieldScalar;
use rigidcover::rank::{eliminate, exact_nullity, numeric_nullity, PivotStrategy, Tolerance};
use rigidcover::system::SparseMatrix;

#[test]
fn zigzag_passes_through_dimension_nine() {
    let rows = zigzag_table(9).unwrap();
    assert!(rows.iter().all(|r| r.connected));
    for dim in 2..=9 {
        for t in ZigzagTemplate::ALL {
            assert!(rows.iter().any(|r| r.dim == dim && r.template == t));
        }
    }
}

/// Small integer matrices of deliberately low rank: products of a tall and a
/// wide factor.
fn low_rank() -> impl Strategy<Value = (usize, usize, Vec<Vec<i64>>)> {
    (1usize..7, 1usize..7, 0usize..4).prop_flat_map(|(r, c, k)| {
        let a = prop::collection::vec(prop::collection::vec(-3i64..4, k), r);
        let b = prop::collection::vec(prop::collection::vec(-3i64..4, c), k);
        (Just(r), Just(c), a, b).prop_map(|(r, c, a, b)| {
            let m = (0..r).map(|i| (0..c).map(|j| (0..a[i].len()).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect();
            (r, c, m)
        })
    })
}

fn sparse(c: usize, m: &[Vec<i64>], d: u32) -> SparseMatrix {
    let rows = m.iter().map(|row| row.iter().map(|&x| FieldScalar::from_int(x)).collect::<Vec<_>>()).collect::<Vec<_>>();
    SparseMatrix::from_dense(&rows, c, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engines_agree_on_integer_matrices((_, c, m) in low_rank(), seed in 0u64..1000) {
        let a = sparse(c, &m, 1);
        let exact = exact_nullity(&a);
        prop_assert_eq!(eliminate(&a, PivotStrategy::Shuffled { seed }, false).nullity(), exact);
        let mut order: Vec<usize> = (0..a.row_count()).collect();
        order.reverse();
        prop_assert_eq!(exact_nullity(&a.permuted_rows(&order)), exact);
        prop_assert_eq!(numeric_nullity(&a, Tolerance::Auto, 100).unwrap().nullity, exact);
    }

    #[test]
    fn kernel_basis_is_annihilated((_, c, m) in low_rank()) {
        let a = sparse(c, &m, 2);
        let e = eliminate(&a, PivotStrategy::Markowitz, true);
        let basis = e.kernel_basis();
        prop_assert_eq!(basis.len(), e.nullity());
        for x in &basis {
            prop_assert!(a.annihilates(x).unwrap());
        }
    }
}
