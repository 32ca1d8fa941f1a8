use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigidcover::complex::Colouring;
use rigidcover::cover::build_window;
use rigidcover::numfield::lie_algebra_dim;
use rigidcover::polytope::{builtin_octahedron, Polytope};
use rigidcover::rank::{exact_nullity, exact_rank_of_vectors, groupoid_group_oracle, spanning_tree};
use rigidcover::synthetic::{coboundary_defect, enumerate_square_lifts, random_case, SyntheticCase};
use rigidcover::system::{assemble, coboundary_vectors, AssemblyMode};

fn cell24() -> (Polytope, Colouring) {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let p = Polytope::load(dir.join("24cell.json")).unwrap();
    let col = Colouring::parse(&std::fs::read_to_string(dir.join("24cell.colouring")).unwrap(), &p).unwrap();
    (p, col)
}

/// Endless seeded stream alternating octahedron and 24-cell subsets.
fn cases(seed: u64) -> impl Iterator<Item = SyntheticCase> {
    let oct = builtin_octahedron();
    let oct_col = Colouring::two_colouring(&oct).unwrap();
    let (c24, c24_col) = cell24();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..).map(move |i| {
        if i % 2 == 0 {
            let k = rng.random_range(3..=6);
            random_case(&oct, &oct_col, k, &mut rng)
        } else {
            let k = rng.random_range(3..=6);
            random_case(&c24, &c24_col, k, &mut rng)
        }
    })
}

#[test]
fn coboundaries_lie_in_kernel() {
    // cases whose loop holonomies have a common centralizer lose exactly that
    // much coboundary rank; the criterion needs 20 without any loss
    let mut full_rank = 0;
    for case in cases(11).take(200) {
        let w = build_window(&case.complex, -1, 1).unwrap();
        let sys = assemble(&w, &case.polytope, AssemblyMode::Simplified).unwrap();
        let vs = coboundary_vectors(&sys, &w).unwrap();
        let dim_g = lie_algebra_dim(sys.dimension());
        assert_eq!(vs.len(), dim_g * w.used_vertex_count());
        assert!(vs.iter().all(|v| sys.satisfies(v).unwrap()));
        let dense: Vec<_> = vs.into_iter().map(|v| v.0).collect();
        let rank = exact_rank_of_vectors(&dense, sys.matrix().discriminant());
        let defect = coboundary_defect(&w, &sys);
        assert_eq!(rank, dim_g * w.used_vertex_count() - defect, "{}", case.polytope.name());
        assert!(exact_nullity(sys.matrix()) >= rank);
        full_rank += usize::from(defect == 0);
        if full_rank == 20 {
            break;
        }
    }
    assert_eq!(full_rank, 20);
}

#[test]
fn window_counts() {
    let mut seen = 0;
    for case in cases(5).take(6) {
        let cx = &case.complex;
        let half = cx.vertex_count() / 2;
        for s in 1..=3 {
            let (m, n) = (-1, 2 * s - 1);
            let w = build_window(cx, m, n).unwrap();
            assert_eq!(w.vertices().len(), half * (2 * s as usize + 1));
            assert_eq!(w.edges().len(), case.polytope.facet_count() * half * s as usize);
            let squares = w.squares().len();
            assert_eq!(squares, enumerate_square_lifts(cx, &case.polytope, m, n));
            let approx = cx.squares().len() as f64 * (s as f64 - 0.5);
            assert!((squares as f64 - approx).abs() <= cx.squares().len() as f64);
        }
        seen += 1;
    }
    assert_eq!(seen, 6);
}

#[test]
fn groupoid_group_relation() {
    let mut checked = 0;
    for (i, case) in cases(23).take(100).enumerate() {
        let w = build_window(&case.complex, -1, 1).unwrap();
        if spanning_tree(&w, 0).is_err() {
            continue;
        }
        let sys = assemble(&w, &case.polytope, AssemblyMode::Simplified).unwrap();
        let report = groupoid_group_oracle(&w, &sys, 1000 + i as u64).unwrap();
        assert!(report.holds, "{}: {report:?}", case.polytope.name());
        checked += 1;
        if checked == 10 {
            break;
        }
    }
    assert_eq!(checked, 10);
}
