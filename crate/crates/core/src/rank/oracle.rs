use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::exact::exact_nullity;
use super::RankError;
use crate::cover::CoverWindow;
use crate::numfield::lie_algebra_dim;
use crate::system::CocycleSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub groupoid_nullity: usize,
    pub group_nullity: usize,
    pub dim_g: usize,
    pub vertex_count: usize,
    pub tree_edges: Vec<usize>,
    /// `groupoid = group + dim(G)·(|V′| − 1)`.
    pub holds: bool,
}

/// Spanning tree of the window's 1-skeleton over the vertices touched by
/// edges, greedily from a seeded shuffle of the edges.
pub fn spanning_tree(w: &CoverWindow, seed: u64) -> Result<(Vec<usize>, usize), RankError> {
    let nv = w.vertices().len();
    let mut used = vec![false; nv];
    for e in w.edges() {
        used[e.even_vertex] = true;
        used[e.odd_vertex] = true;
    }
    let vertex_count = used.iter().filter(|&&u| u).count();
    let mut order: Vec<usize> = (0..w.edges().len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut uf = UnionFind::<usize>::new(nv);
    let mut tree = Vec::with_capacity(vertex_count.saturating_sub(1));
    for e in order {
        let edge = &w.edges()[e];
        if uf.union(edge.even_vertex, edge.odd_vertex) {
            tree.push(e);
        }
    }
    if tree.len() + 1 != vertex_count {
        return Err(RankError::Disconnected);
    }
    tree.sort_unstable();
    Ok((tree, vertex_count))
}

/// Compares the exact nullity of the groupoid system with that of the group
/// system obtained by pinning `D_e = 0` on a spanning tree.
pub fn groupoid_group_oracle(w: &CoverWindow, sys: &CocycleSystem, seed: u64) -> Result<OracleReport, RankError> {
    let (tree, vertex_count) = spanning_tree(w, seed)?;
    let groupoid_nullity = exact_nullity(sys.matrix());
    let group = sys.matrix().stacked(&sys.pinning_rows(&tree));
    let group_nullity = exact_nullity(&group);
    let dim_g = lie_algebra_dim(sys.dimension());
    Ok(OracleReport {
        groupoid_nullity,
        group_nullity,
        dim_g,
        vertex_count,
        holds: groupoid_nullity == group_nullity + dim_g * (vertex_count - 1),
        tree_edges: tree,
    })
}
