use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use super::{Letter, OrientedComplex, State, Vertex};
use crate::polytope::Polytope;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkStatus {
    pub vertex: Vertex,
    /// Components of the ascending (O) and descending (I) link; 0 means empty.
    pub ascending_components: usize,
    pub descending_components: usize,
}

impl LinkStatus {
    pub fn ascending_connected(&self) -> bool {
        self.ascending_components == 1
    }

    pub fn descending_connected(&self) -> bool {
        self.descending_components == 1
    }

    pub fn passes(&self) -> bool {
        self.ascending_connected() && self.descending_connected()
    }
}

fn components(p: &Polytope, state: &State, letter: Letter) -> usize {
    let nf = p.facet_count();
    let mut uf = UnionFind::<usize>::new(nf);
    for &(f, g) in p.codim2_faces() {
        if state.letter(f) == letter && state.letter(g) == letter {
            uf.union(f, g);
        }
    }
    let mut roots: Vec<usize> = (0..nf).filter(|&f| state.letter(f) == letter).map(|f| uf.find(f)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Connectivity of the ascending and descending link at every vertex of `C`.
pub fn check_links(cx: &OrientedComplex, p: &Polytope) -> Vec<LinkStatus> {
    (0..cx.vertex_count() as Vertex)
        .into_par_iter()
        .map(|v| {
            let s = cx.state(v);
            LinkStatus {
                vertex: v,
                ascending_components: components(p, s, Letter::O),
                descending_components: components(p, s, Letter::I),
            }
        })
        .collect()
}

/// Bitmask test that `set` is nonempty and connected in the graph `neighbours`.
fn connected(neighbours: &[u64], set: u64) -> bool {
    if set == 0 {
        return false;
    }
    let mut reached = set & set.wrapping_neg();
    let mut frontier = reached;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let i = f.trailing_zeros() as usize;
            next |= neighbours[i];
            f &= f - 1;
        }
        frontier = next & set & !reached;
        reached |= frontier;
    }
    reached == set
}

/// Fast link test on O-masks, for polytopes with at most 64 facets.
///
/// `swap[v]` is the facet mask whose letters are swapped at vertex `v`.
pub fn links_pass_mask(neighbours: &[u64], full: u64, s0: u64, swap: &[u64]) -> bool {
    swap.iter().all(|&m| {
        let out = (s0 ^ m) & full;
        connected(neighbours, out) && connected(neighbours, full & !out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_oriented_complex, Colouring, StateRule};
    use crate::polytope::builtin_octahedron;

    fn links(mask: u64) -> Vec<LinkStatus> {
        let p = builtin_octahedron();
        let col = Colouring::two_colouring(&p).unwrap();
        let cx = build_oriented_complex(&p, &col, &State::from_mask(mask, 8), &StateRule::Independent).unwrap();
        check_links(&cx, &p)
    }

    #[test]
    fn all_out_fails_descending() {
        let st = links(0xff);
        assert_eq!(st[0].ascending_components, 1);
        assert_eq!(st[0].descending_components, 0);
        assert!(!st[0].passes());
    }

    #[test]
    fn opposite_facets_are_disconnected() {
        // facets 0 = (+,+,+) and 7 = (−,−,−) are opposite
        let st = links(0b1000_0001);
        assert_eq!(st[0].ascending_components, 2);
    }

    #[test]
    fn known_passing_state() {
        assert!(links(0b0001_1011).iter().all(LinkStatus::passes));
    }

    #[test]
    fn mask_test_agrees_with_union_find() {
        let p = builtin_octahedron();
        let col = Colouring::two_colouring(&p).unwrap();
        let neighbours: Vec<u64> = (0..8).map(|f| p.neighbours(f).fold(0, |m, g| m | 1 << g)).collect();
        let swap: Vec<u64> = (0..4u32)
            .map(|v| (0..8).filter(|&f| v >> col.colour(f) & 1 == 1).fold(0, |m, f| m | 1 << f))
            .collect();
        for mask in 0..256u64 {
            let slow = links(mask).iter().all(LinkStatus::passes);
            assert_eq!(links_pass_mask(&neighbours, 0xff, mask, &swap), slow, "mask {mask:#b}");
        }
    }
}
