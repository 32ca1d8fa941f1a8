use std::fmt::Write;

use super::CocycleSystem;
use crate::hexfloat;

/// `row col a_num a_den b_num b_den` per nonzero entry `a + b√d`, after a header.
pub fn export_triplets(sys: &CocycleSystem) -> String {
    let m = sys.matrix();
    let mut out = format!("# rows {} cols {} d {}\n", m.row_count(), m.cols(), m.discriminant());
    for (i, row) in m.rows().iter().enumerate() {
        for (j, x) in row {
            let (a, b) = (x.rational_part(), x.surd_part());
            writeln!(out, "{i} {j} {} {} {} {}", a.numer(), a.denom(), b.numer(), b.denom()).unwrap();
        }
    }
    out
}

/// `row col value` per nonzero entry of the float mirror, values as hex floats.
pub fn export_float(sys: &CocycleSystem) -> String {
    let mut out = format!("# rows {} cols {}\n", sys.rows(), sys.cols());
    for (i, row) in sys.float_mirror().iter().enumerate() {
        for (j, x) in row {
            writeln!(out, "{i} {j} {}", hexfloat::format(*x)).unwrap();
        }
    }
    out
}
