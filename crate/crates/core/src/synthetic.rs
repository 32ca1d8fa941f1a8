//! Random small test complexes: facet subsets of a coloured polytope with a
//! random state, plus an independent count of the coboundary defect.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::Rng;

use crate::complex::{build_oriented_complex, Colouring, OrientedComplex, State, StateRule};
use crate::cover::CoverWindow;
use crate::numfield::{lie_algebra_basis, FieldMatrix, FieldScalar};
use crate::polytope::Polytope;
use crate::rank::exact_nullity;
use crate::system::{CocycleSystem, SparseMatrix};

#[derive(Clone, Debug)]
pub struct SyntheticCase {
    pub polytope: Polytope,
    pub colouring: Colouring,
    pub state: State,
    pub complex: OrientedComplex,
}

/// Restricts `base` to `k` random facets, compacts the colours in use, and
/// draws a random state (Independent rule).
pub fn random_case(base: &Polytope, col: &Colouring, k: usize, rng: &mut impl Rng) -> SyntheticCase {
    let mut picked = sample(rng, base.facet_count(), k).into_vec();
    picked.sort_unstable();
    let name = format!("{}-sub{}", base.name(), k);
    let polytope = base.restrict(&picked, name).expect("restriction of valid data");
    let mut used: Vec<usize> = picked.iter().map(|&f| col.colour(f)).collect();
    used.sort_unstable();
    used.dedup();
    let colouring =
        Colouring::new(picked.iter().map(|&f| used.binary_search(&col.colour(f)).unwrap()).collect());
    let state = State::from_mask(rng.random::<u64>(), k);
    let complex = build_oriented_complex(&polytope, &colouring, &state, &StateRule::Independent)
        .expect("independent rule on a proper colouring");
    SyntheticCase { polytope, colouring, state, complex }
}

/// `Σ` over connected components of the dimension of the Lie-algebra
/// centralizer of the loop holonomies.
///
/// A per-vertex choice `W` gives the zero coboundary iff `W_head = M W_tail M⁻¹`
/// on every edge; on a component this forces `W = T_u W_root T_u⁻¹` along a
/// spanning tree, with `W_root` commuting with every loop `T_h⁻¹ M T_t`.
pub fn coboundary_defect(w: &CoverWindow, sys: &CocycleSystem) -> usize {
    let n = sys.dimension();
    let size = n + 1;
    let basis = lie_algebra_basis(n);
    let nv = w.vertices().len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (e, edge) in w.edges().iter().enumerate() {
        incident[edge.even_vertex].push(e);
        incident[edge.odd_vertex].push(e);
    }
    let mut transport: Vec<Option<FieldMatrix>> = vec![None; nv];
    let mut tree_edge = vec![false; w.edges().len()];
    let mut defect = 0;
    for root in 0..nv {
        if transport[root].is_some() || incident[root].is_empty() {
            continue;
        }
        transport[root] = Some(FieldMatrix::identity(size, 1));
        let mut stack = vec![root];
        let mut component = Vec::new();
        while let Some(u) = stack.pop() {
            component.push(u);
            for &e in &incident[u] {
                let edge = &w.edges()[e];
                let other = if edge.even_vertex == u { edge.odd_vertex } else { edge.even_vertex };
                if transport[other].is_none() {
                    // M is an involution, so T_other = M T_u in either direction
                    let t = sys.image(e).mul(transport[u].as_ref().unwrap()).unwrap();
                    transport[other] = Some(t);
                    tree_edge[e] = true;
                    stack.push(other);
                }
            }
        }
        let mut loops = Vec::new();
        for &u in &component {
            for &e in &incident[u] {
                let edge = &w.edges()[e];
                if tree_edge[e] || edge.even_vertex != u {
                    continue;
                }
                let th = transport[edge.odd_vertex].as_ref().unwrap();
                let tt = transport[edge.even_vertex].as_ref().unwrap();
                loops.push(th.inverse().unwrap().mul(sys.image(e)).unwrap().mul(tt).unwrap());
            }
        }
        let mut rows: Vec<Vec<FieldScalar>> = Vec::new();
        for l in &loops {
            let comm: Vec<FieldMatrix> =
                basis.iter().map(|a| a.mul(l).unwrap().sub(&l.mul(a).unwrap()).unwrap()).collect();
            for i in 0..size {
                for j in 0..size {
                    rows.push(comm.iter().map(|c| c.get(i, j).clone()).collect());
                }
            }
        }
        defect += if rows.is_empty() {
            basis.len()
        } else {
            exact_nullity(&SparseMatrix::from_dense(&rows, basis.len(), sys.matrix().discriminant()))
        };
    }
    defect
}

/// Counts lifted squares with every corner level in `[m, n]` by walking each
/// codimension-2 face from every vertex and level, deduplicating by face and
/// corner set.
pub fn enumerate_square_lifts(cx: &OrientedComplex, p: &Polytope, m: i32, n: i32) -> usize {
    let col = cx.colouring();
    let mut seen = BTreeSet::new();
    for &(i, j) in p.codim2_faces() {
        let (bi, bj) = (1u32 << col.colour(i), 1u32 << col.colour(j));
        for v in 0..cx.vertex_count() as u32 {
            for t in m..=n {
                if (v.count_ones() as i32 + t).rem_euclid(2) != 0 {
                    continue;
                }
                let mut corners = [(v, t); 4];
                let (mut u, mut level) = (v, t);
                for (k, (f, bit)) in [(i, bi), (j, bj), (i, bi), (j, bj)].into_iter().enumerate().take(3) {
                    level += cx.state(u).letter(f).step();
                    u ^= bit;
                    corners[k + 1] = (u, level);
                }
                if corners.iter().all(|&(_, l)| (m..=n).contains(&l)) {
                    corners.sort_unstable();
                    seen.insert((i, j, corners));
                }
            }
        }
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::build_window;
    use crate::polytope::builtin_octahedron;
    use crate::system::{assemble, AssemblyMode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn octahedron_window_has_no_defect() {
        let p = builtin_octahedron();
        let col = Colouring::two_colouring(&p).unwrap();
        let cx = build_oriented_complex(&p, &col, &State::from_mask(0b0001_1011, 8), &StateRule::Independent).unwrap();
        let w = build_window(&cx, -1, 1).unwrap();
        let sys = assemble(&w, &p, AssemblyMode::Simplified).unwrap();
        assert_eq!(coboundary_defect(&w, &sys), 0);
    }

    #[test]
    fn single_facet_case_has_full_defect_per_component() {
        let p = builtin_octahedron();
        let col = Colouring::two_colouring(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let case = random_case(&p, &col, 1, &mut rng);
        assert_eq!(case.colouring.colours(), 1);
        let w = build_window(&case.complex, -1, 1).unwrap();
        let sys = assemble(&w, &case.polytope, AssemblyMode::Simplified).unwrap();
        // one edge per component; the loop-free centralizer is all of 𝔤
        let components = w.edges().len();
        assert_eq!(coboundary_defect(&w, &sys), 6 * components);
    }
}
