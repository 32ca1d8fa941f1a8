use super::CoverError;
use crate::complex::{OrientedComplex, SquareClass, Vertex};

/// Lift of a `C`-edge whose even endpoint sits at level `even_level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedEdge {
    pub base_edge: usize,
    pub facet: usize,
    pub even_level: i32,
    pub odd_level: i32,
    /// Window vertex indices of the even and odd endpoint.
    pub even_vertex: usize,
    pub odd_vertex: usize,
}

/// Lift of a `C`-square with its base corner at level `base_level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedSquare {
    pub base_square: usize,
    pub class: SquareClass,
    pub base_level: i32,
    /// Levels, window vertices and window edges along the boundary walk.
    pub corner_levels: [i32; 4],
    pub corner_vertices: [usize; 4],
    pub edges: [usize; 4],
}

impl LiftedSquare {
    /// Twice the level: the middle level for coherent squares, `t + ½` for bad ones.
    pub fn level_x2(&self) -> i32 {
        let lo = *self.corner_levels.iter().min().unwrap();
        let hi = *self.corner_levels.iter().max().unwrap();
        lo + hi
    }
}

/// The subcomplex of the cover spanned by cells with levels in `[m, n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverWindow {
    m: i32,
    n: i32,
    colours: usize,
    vertices: Vec<(Vertex, i32)>,
    edges: Vec<LiftedEdge>,
    squares: Vec<LiftedSquare>,
}

fn parity_rank(colours: usize) -> Vec<usize> {
    let mut counts = [0usize; 2];
    (0..1u32 << colours)
        .map(|v| {
            let p = (v.count_ones() % 2) as usize;
            counts[p] += 1;
            counts[p] - 1
        })
        .collect()
}

struct VertexIndex {
    m: i32,
    n: i32,
    half: usize,
    rank: Vec<usize>,
}

impl VertexIndex {
    fn get(&self, v: Vertex, t: i32) -> Option<usize> {
        if t < self.m || t > self.n || (v.count_ones() as i32 + t).rem_euclid(2) != 0 {
            return None;
        }
        Some((t - self.m) as usize * self.half + self.rank[v as usize])
    }
}

/// Lifts every cell of `cx` whose levels lie in `[m, n]`.
///
/// Vertices `(v, t)` need `|v| + t` even. Every edge lift with both endpoints
/// in range is kept, ordered by (even level, even vertex, facet); square lifts
/// are kept when all four corners are in range, ordered by (lowest level, square).
pub fn build_window(cx: &OrientedComplex, m: i32, n: i32) -> Result<CoverWindow, CoverError> {
    if n - m < 2 {
        return Err(CoverError::NarrowWindow { m, n });
    }
    let c = cx.colours();
    let half = 1usize << c.saturating_sub(1);
    let index = VertexIndex { m, n, half, rank: parity_rank(c) };

    let mut vertices = Vec::with_capacity(half * (n - m + 1) as usize);
    for t in m..=n {
        for v in 0..1u32 << c {
            if index.get(v, t).is_some() {
                vertices.push((v, t));
            }
        }
    }

    let mut edges = Vec::new();
    let mut edge_at = std::collections::HashMap::new();
    let first_even = if m.rem_euclid(2) == 0 { m } else { m + 1 };
    for t in (first_even..=n).step_by(2) {
        for (id, e) in cx.edges().iter().enumerate() {
            let odd_level = t + e.rise();
            if odd_level < m || odd_level > n {
                continue;
            }
            edge_at.insert((id, t), edges.len());
            edges.push(LiftedEdge {
                base_edge: id,
                facet: e.facet,
                even_level: t,
                odd_level,
                even_vertex: index.get(e.even, t).expect("even vertex in window"),
                odd_vertex: index.get(e.odd, odd_level).expect("odd vertex in window"),
            });
        }
    }

    let mut squares = Vec::new();
    for (id, sq) in cx.squares().iter().enumerate() {
        let h = sq.heights();
        let lo = *h.iter().min().unwrap();
        let hi = *h.iter().max().unwrap();
        let parity = (sq.base.count_ones() % 2) as i32;
        for base_level in (m - lo)..=(n - hi) {
            if (base_level + parity).rem_euclid(2) != 0 {
                continue;
            }
            let corner_levels = h.map(|x| base_level + x);
            let mut corner_vertices = [0; 4];
            let mut lifted = [0; 4];
            for k in 0..4 {
                corner_vertices[k] = index.get(sq.corners[k], corner_levels[k]).expect("corner in window");
                let (a, b) = (k, (k + 1) % 4);
                let even_level = if sq.corners[a].count_ones() % 2 == 0 { corner_levels[a] } else { corner_levels[b] };
                lifted[k] = edge_at[&(sq.edges[k], even_level)];
            }
            squares.push(LiftedSquare {
                base_square: id,
                class: sq.class,
                base_level,
                corner_levels,
                corner_vertices,
                edges: lifted,
            });
        }
    }
    squares.sort_by_key(|s| (*s.corner_levels.iter().min().unwrap(), s.base_square));

    Ok(CoverWindow { m, n, colours: c, vertices, edges, squares })
}

/// Translates every level by `2k` (the deck transformation).
pub fn monodromy_shift(w: &CoverWindow, k: i32) -> CoverWindow {
    let d = 2 * k;
    CoverWindow {
        m: w.m + d,
        n: w.n + d,
        colours: w.colours,
        vertices: w.vertices.iter().map(|&(v, t)| (v, t + d)).collect(),
        edges: w
            .edges
            .iter()
            .map(|e| LiftedEdge { even_level: e.even_level + d, odd_level: e.odd_level + d, ..e.clone() })
            .collect(),
        squares: w
            .squares
            .iter()
            .map(|s| LiftedSquare {
                base_level: s.base_level + d,
                corner_levels: s.corner_levels.map(|t| t + d),
                ..s.clone()
            })
            .collect(),
    }
}

impl CoverWindow {
    pub fn bounds(&self) -> (i32, i32) {
        (self.m, self.n)
    }

    pub fn colours(&self) -> usize {
        self.colours
    }

    /// Vertices `(v, t)` ordered by (level, v).
    pub fn vertices(&self) -> &[(Vertex, i32)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[LiftedEdge] {
        &self.edges
    }

    pub fn squares(&self) -> &[LiftedSquare] {
        &self.squares
    }

    /// Vertices touched by at least one edge.
    pub fn used_vertex_count(&self) -> usize {
        let mut used = vec![false; self.vertices.len()];
        for e in &self.edges {
            used[e.even_vertex] = true;
            used[e.odd_vertex] = true;
        }
        used.into_iter().filter(|&u| u).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_oriented_complex, Colouring, State, StateRule};
    use crate::polytope::builtin_octahedron;

    fn octahedron_window(m: i32, n: i32) -> CoverWindow {
        let p = builtin_octahedron();
        let col = Colouring::two_colouring(&p).unwrap();
        let cx = build_oriented_complex(&p, &col, &State::from_mask(0b0001_1011, 8), &StateRule::Independent).unwrap();
        build_window(&cx, m, n).unwrap()
    }

    fn counts(w: &CoverWindow) -> (usize, usize, usize) {
        (w.vertices().len(), w.edges().len(), w.squares().len())
    }

    #[test]
    fn octahedron_unit_window() {
        assert_eq!(counts(&octahedron_window(-1, 1)), (6, 16, 6));
    }

    #[test]
    fn octahedron_s2_window() {
        assert_eq!(counts(&octahedron_window(-1, 3)), (10, 32, 18));
    }

    #[test]
    fn narrow_window_rejected() {
        let p = builtin_octahedron();
        let col = Colouring::two_colouring(&p).unwrap();
        let cx = build_oriented_complex(&p, &col, &State::from_mask(0b0001_1011, 8), &StateRule::Independent).unwrap();
        assert_eq!(build_window(&cx, -1, 0).unwrap_err(), CoverError::NarrowWindow { m: -1, n: 0 });
    }

    #[test]
    fn edges_change_level_by_one() {
        let w = octahedron_window(-1, 3);
        for e in w.edges() {
            assert_eq!((e.even_level - e.odd_level).abs(), 1);
            assert_eq!(w.vertices()[e.even_vertex].1, e.even_level);
            assert_eq!(w.vertices()[e.odd_vertex].1, e.odd_level);
        }
    }

    #[test]
    fn square_boundaries_close_up() {
        let w = octahedron_window(-1, 3);
        for s in w.squares() {
            for k in 0..4 {
                let e = &w.edges()[s.edges[k]];
                let ends = [s.corner_vertices[k], s.corner_vertices[(k + 1) % 4]];
                assert!(ends.contains(&e.even_vertex) && ends.contains(&e.odd_vertex));
            }
            assert_eq!(s.level_x2() % 2, 0);
        }
    }

    #[test]
    fn shift_round_trip() {
        let w = octahedron_window(-1, 1);
        assert_eq!(monodromy_shift(&w, 0), w);
        let up = monodromy_shift(&w, 1);
        assert_eq!(up.bounds(), (1, 3));
        assert_eq!(counts(&up), (6, 16, 6));
        assert_eq!(monodromy_shift(&up, -1), w);
    }
}
