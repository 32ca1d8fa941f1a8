use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{SparseMatrix, SparseRow, SystemError};
use crate::cover::{CoverWindow, LiftedSquare};
use crate::numfield::{lie_algebra_basis, FieldMatrix, FieldScalar, LorentzForm};
use crate::polytope::Polytope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssemblyMode {
    /// First-order expansion of the full relator word, with exact inverses.
    Generic,
    /// The inverse-free form valid for commuting involutions.
    Simplified,
}

/// A dense candidate solution, one scalar per column.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelVector(pub Vec<FieldScalar>);

/// The assembled system: tangency rows first (edge order), then relator rows
/// (square order). Column `e·(n+1)² + i·(n+1) + j` is entry `(i, j)` of `D_e`.
#[derive(Clone, Debug)]
pub struct CocycleSystem {
    n: usize,
    mode: AssemblyMode,
    matrix: SparseMatrix,
    tangency_rows: usize,
    edge_facets: Vec<usize>,
    reflections: Vec<FieldMatrix>,
    mirror: Vec<Vec<(usize, f64)>>,
}

impl CocycleSystem {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> AssemblyMode {
        self.mode
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.row_count()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn tangency_row_count(&self) -> usize {
        self.tangency_rows
    }

    pub fn edge_count(&self) -> usize {
        self.edge_facets.len()
    }

    /// `(n+1)²`, the number of unknowns per edge.
    pub fn block(&self) -> usize {
        (self.n + 1) * (self.n + 1)
    }

    pub fn variable(&self, edge: usize, i: usize, j: usize) -> usize {
        edge * self.block() + i * (self.n + 1) + j
    }

    /// Image of lifted edge `e`.
    pub fn image(&self, e: usize) -> &FieldMatrix {
        &self.reflections[self.edge_facets[e]]
    }

    /// Rows of doubles, each the one-step rounding of the exact entry.
    pub fn float_mirror(&self) -> &[Vec<(usize, f64)>] {
        &self.mirror
    }

    /// Relator block alone.
    pub fn relator_matrix(&self) -> SparseMatrix {
        SparseMatrix::new(
            self.cols(),
            self.matrix.discriminant(),
            self.matrix.rows()[self.tangency_rows..].to_vec(),
        )
    }

    /// Rows `D_e = 0` for the given edges, one per entry.
    pub fn pinning_rows(&self, edges: &[usize]) -> SparseMatrix {
        let rows = edges
            .iter()
            .flat_map(|&e| (0..self.block()).map(move |k| vec![(e * self.block() + k, FieldScalar::one())]))
            .collect();
        SparseMatrix::new(self.cols(), self.matrix.discriminant(), rows)
    }

    pub fn satisfies(&self, v: &KernelVector) -> Result<bool, SystemError> {
        Ok(self.matrix.annihilates(&v.0)?)
    }
}

/// Image of every lifted edge: the reflection in its facet.
pub fn assign_images(w: &CoverWindow, p: &Polytope) -> Vec<FieldMatrix> {
    w.edges().iter().map(|e| p.reflection(e.facet).clone()).collect()
}

fn row_from(acc: BTreeMap<usize, FieldScalar>) -> SparseRow {
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// The `(n+1)²` rows of `Dᵀ J M + (J M)ᵀ D = 0` for the unknown `D` of `edge`.
pub fn tangency_rows(edge: usize, m: &FieldMatrix, n: usize) -> Result<Vec<SparseRow>, SystemError> {
    let size = n + 1;
    let jm = LorentzForm::new(n).matrix().mul(m)?;
    let var = |i: usize, j: usize| edge * size * size + i * size + j;
    let mut rows = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            let mut acc: BTreeMap<usize, FieldScalar> = BTreeMap::new();
            for k in 0..size {
                // (Dᵀ JM)_{ab} = Σ_k D_{ka} (JM)_{kb};  ((JM)ᵀ D)_{ab} = Σ_k (JM)_{ka} D_{kb}
                for (col, coef) in [(var(k, a), jm.get(k, b)), (var(k, b), jm.get(k, a))] {
                    if !coef.is_zero() {
                        let e = acc.entry(col).or_insert_with(FieldScalar::zero);
                        *e = e.checked_add(coef)?;
                    }
                }
            }
            rows.push(row_from(acc));
        }
    }
    Ok(rows)
}

/// A term `sign · L · D_edge · R` of a linearised relator.
struct Term {
    sign: i32,
    left: FieldMatrix,
    edge: usize,
    right: FieldMatrix,
}

fn term_rows(terms: &[Term], n: usize) -> Result<Vec<SparseRow>, SystemError> {
    let size = n + 1;
    let mut rows = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            let mut acc: BTreeMap<usize, FieldScalar> = BTreeMap::new();
            for t in terms {
                // (L D R)_{ab} = Σ_{k,l} L_{ak} D_{kl} R_{lb}
                for k in 0..size {
                    let lk = t.left.get(a, k);
                    if lk.is_zero() {
                        continue;
                    }
                    for l in 0..size {
                        let rl = t.right.get(l, b);
                        if rl.is_zero() {
                            continue;
                        }
                        let mut coef = lk.checked_mul(rl)?;
                        if t.sign < 0 {
                            coef = -coef;
                        }
                        let e = acc.entry(t.edge * size * size + k * size + l).or_insert_with(FieldScalar::zero);
                        *e = e.checked_add(&coef)?;
                    }
                }
            }
            rows.push(row_from(acc));
        }
    }
    Ok(rows)
}

/// The generators of a lifted square, oriented from even to odd vertices.
///
/// With `W` the first even corner on the boundary walk and `X, Y, Z` the
/// following corners, returns `g₁ = W→X`, `g₂ = W→Z`, `g₃ = Y→Z`, `g₄ = Y→X`,
/// so the loop `X → Y → Z → W → X` reads `g₁ g₂⁻¹ g₃ g₄⁻¹` right to left.
fn square_generators(w: &CoverWindow, sq: &LiftedSquare) -> [usize; 4] {
    let even_corner = |k: usize| w.vertices()[sq.corner_vertices[k]].0.count_ones().is_multiple_of(2);
    let s = if even_corner(0) { 0 } else { 1 };
    // legs: s = W–X, s+1 = X–Y, s+2 = Y–Z, s+3 = Z–W
    let leg = |k: usize| sq.edges[(s + k) % 4];
    [leg(0), leg(3), leg(2), leg(1)]
}

/// The `(n+1)²` rows saying that the relator of `sq` vanishes to first order.
pub fn relator_rows(
    w: &CoverWindow,
    square: usize,
    images: &[FieldMatrix],
    n: usize,
    mode: AssemblyMode,
) -> Result<Vec<SparseRow>, SystemError> {
    let sq = &w.squares()[square];
    let g = square_generators(w, sq);
    let m = g.map(|e| &images[e]);
    let id = FieldMatrix::identity(n + 1, 1);
    let terms = match mode {
        AssemblyMode::Generic => {
            // d/dt of M₁ M₂⁻¹ M₃ M₄⁻¹ with (M + tD)⁻¹' = −M⁻¹ D M⁻¹
            let m2i = m[1].inverse()?;
            let m4i = m[3].inverse()?;
            let p12 = m[0].mul(&m2i)?;
            let tail2 = m2i.mul(m[2])?.mul(&m4i)?;
            let whole = p12.mul(m[2])?.mul(&m4i)?;
            vec![
                Term { sign: 1, left: id, edge: g[0], right: tail2.clone() },
                Term { sign: -1, left: p12.clone(), edge: g[1], right: tail2 },
                Term { sign: 1, left: p12, edge: g[2], right: m4i.clone() },
                Term { sign: -1, left: whole, edge: g[3], right: m4i },
            ]
        }
        AssemblyMode::Simplified => {
            let pre = |what| SystemError::SimplifiedPrecondition { square, what };
            if m[0] != m[2] || m[1] != m[3] {
                return Err(pre("opposite sides with equal images"));
            }
            let prod = m[0].mul(m[1])?;
            if prod != m[1].mul(m[0])? {
                return Err(pre("commuting images"));
            }
            if m[0].mul(m[0])? != id || m[1].mul(m[1])? != id {
                return Err(pre("involutive images"));
            }
            // D₁M₁ − M₁M₂D₂M₁ + M₁M₂D₃M₂ − D₄M₂
            vec![
                Term { sign: 1, left: id.clone(), edge: g[0], right: m[0].clone() },
                Term { sign: -1, left: prod.clone(), edge: g[1], right: m[0].clone() },
                Term { sign: 1, left: prod, edge: g[2], right: m[1].clone() },
                Term { sign: -1, left: id, edge: g[3], right: m[1].clone() },
            ]
        }
    };
    term_rows(&terms, n)
}

/// Assembles tangency and relator rows for every lifted edge and square.
pub fn assemble(w: &CoverWindow, p: &Polytope, mode: AssemblyMode) -> Result<CocycleSystem, SystemError> {
    let n = p.dimension();
    let images = assign_images(w, p);
    let tangency: Vec<Vec<SparseRow>> = images
        .par_iter()
        .enumerate()
        .map(|(e, m)| tangency_rows(e, m, n))
        .collect::<Result<_, _>>()?;
    let relators: Vec<Vec<SparseRow>> = (0..w.squares().len())
        .into_par_iter()
        .map(|s| relator_rows(w, s, &images, n, mode))
        .collect::<Result<_, _>>()?;
    let tangency_rows = tangency.iter().map(Vec::len).sum();
    let rows: Vec<SparseRow> = tangency.into_iter().chain(relators).flatten().collect();
    let cols = (n + 1) * (n + 1) * images.len();
    let matrix = SparseMatrix::new(cols, p.discriminant(), rows);
    let mirror = matrix.rows().iter().map(|r| r.iter().map(|(c, x)| (*c, x.to_f64())).collect()).collect();
    Ok(CocycleSystem {
        n,
        mode,
        matrix,
        tangency_rows,
        edge_facets: w.edges().iter().map(|e| e.facet).collect(),
        reflections: (0..p.facet_count()).map(|f| p.reflection(f).clone()).collect(),
        mirror,
    })
}

/// `ζ(g) = W_head σ(g) − σ(g) W_tail` for a per-vertex choice `weight(u)` (`None` is zero).
pub fn coboundary_vector<'a>(
    sys: &CocycleSystem,
    w: &CoverWindow,
    weight: impl Fn(usize) -> Option<&'a FieldMatrix>,
) -> Result<KernelVector, SystemError> {
    let size = sys.dimension() + 1;
    let mut v = vec![FieldScalar::zero(); sys.cols()];
    for (e, edge) in w.edges().iter().enumerate() {
        let m = sys.image(e);
        let mut d = FieldMatrix::zeros(size, size, 1);
        if let Some(head) = weight(edge.odd_vertex) {
            d = d.add(&head.mul(m)?)?;
        }
        if let Some(tail) = weight(edge.even_vertex) {
            d = d.sub(&m.mul(tail)?)?;
        }
        for i in 0..size {
            for j in 0..size {
                v[sys.variable(e, i, j)] = d.get(i, j).clone();
            }
        }
    }
    Ok(KernelVector(v))
}

/// One coboundary vector per (vertex touched by an edge, Lie algebra basis element).
pub fn coboundary_vectors(sys: &CocycleSystem, w: &CoverWindow) -> Result<Vec<KernelVector>, SystemError> {
    let basis = lie_algebra_basis(sys.dimension());
    let mut used = vec![false; w.vertices().len()];
    for e in w.edges() {
        used[e.even_vertex] = true;
        used[e.odd_vertex] = true;
    }
    let pairs: Vec<(usize, usize)> = (0..used.len())
        .filter(|&u| used[u])
        .flat_map(|u| (0..basis.len()).map(move |a| (u, a)))
        .collect();
    pairs
        .par_iter()
        .map(|&(u, a)| coboundary_vector(sys, w, |x| (x == u).then_some(&basis[a])))
        .collect()
}

/// The closed-form size `(rows, cols)` for window `[−1, 2s−1]`, with the
/// square term `n₂ 2^{c−2} (s − ½)` approximating the lifted-square count.
pub fn approximate_size(n: usize, facets: usize, colours: u32, codim2: usize, s: usize) -> (f64, u128) {
    let block = ((n + 1) * (n + 1)) as u128;
    let edges = facets as u128 * (1u128 << (colours - 1)) * s as u128;
    let squares = codim2 as f64 * 2f64.powi(colours as i32 - 2) * (s as f64 - 0.5);
    (block as f64 * (edges as f64 + squares), block * edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_oriented_complex, Colouring, State, StateRule};
    use crate::cover::build_window;
    use crate::numfield::lie_algebra_dim;
    use crate::polytope::builtin_octahedron;

    fn octahedron(s: i32) -> (Polytope, CoverWindow) {
        let p = builtin_octahedron();
        let col = Colouring::two_colouring(&p).unwrap();
        let cx = build_oriented_complex(&p, &col, &State::from_mask(0b0001_1011, 8), &StateRule::Independent).unwrap();
        let w = build_window(&cx, -1, 2 * s - 1).unwrap();
        (p, w)
    }

    #[test]
    fn octahedron_size() {
        let (p, w) = octahedron(1);
        let sys = assemble(&w, &p, AssemblyMode::Simplified).unwrap();
        assert_eq!((sys.rows(), sys.cols()), (352, 256));
        assert_eq!(sys.tangency_row_count(), 256);
    }

    #[test]
    fn images_are_involutions_shared_by_lifts() {
        let (p, w) = octahedron(1);
        let images = assign_images(&w, &p);
        assert_eq!(images.len(), 16);
        let mut distinct: Vec<&FieldMatrix> = Vec::new();
        for m in &images {
            assert_eq!(m.mul(m).unwrap(), FieldMatrix::identity(4, 1));
            if !distinct.contains(&m) {
                distinct.push(m);
            }
        }
        assert_eq!(distinct.len(), 8);
        for sq in w.squares() {
            assert_eq!(images[sq.edges[0]], images[sq.edges[2]]);
            assert_eq!(images[sq.edges[1]], images[sq.edges[3]]);
        }
    }

    #[test]
    fn tangent_directions_satisfy_tangency() {
        let p = builtin_octahedron();
        let m = p.reflection(3);
        let rows = tangency_rows(0, m, 3).unwrap();
        let sys = SparseMatrix::new(16, 1, rows);
        assert!(sys.annihilates(&vec![FieldScalar::zero(); 16]).unwrap());
        for a in lie_algebra_basis(3) {
            let d = a.mul(m).unwrap().to_vec();
            assert!(sys.annihilates(&d).unwrap());
        }
    }

    #[test]
    fn coboundaries_satisfy_both_modes() {
        let (p, w) = octahedron(1);
        for mode in [AssemblyMode::Generic, AssemblyMode::Simplified] {
            let sys = assemble(&w, &p, mode).unwrap();
            let vs = coboundary_vectors(&sys, &w).unwrap();
            assert_eq!(vs.len(), 6 * lie_algebra_dim(3));
            for v in &vs {
                assert!(sys.satisfies(v).unwrap());
            }
        }
    }

    #[test]
    fn constant_weight_is_classical_coboundary() {
        let (p, w) = octahedron(1);
        let sys = assemble(&w, &p, AssemblyMode::Simplified).unwrap();
        let a = &lie_algebra_basis(3)[4];
        let v = coboundary_vector(&sys, &w, |_| Some(a)).unwrap();
        let m = sys.image(0);
        let expected = a.mul(m).unwrap().sub(&m.mul(a).unwrap()).unwrap().to_vec();
        assert_eq!(&v.0[..16], &expected[..]);
        assert!(sys.satisfies(&v).unwrap());
    }

    #[test]
    fn mirror_matches_exact_entries() {
        let (p, w) = octahedron(1);
        let sys = assemble(&w, &p, AssemblyMode::Generic).unwrap();
        for (exact, float) in sys.matrix().rows().iter().zip(sys.float_mirror()) {
            assert_eq!(exact.len(), float.len());
            for ((c, x), (cf, f)) in exact.iter().zip(float) {
                assert_eq!(c, cf);
                assert_eq!(x.to_f64().to_bits(), f.to_bits());
            }
        }
    }

    #[test]
    fn size_formula() {
        assert_eq!(approximate_size(3, 8, 2, 12, 1), (352.0, 256));
        assert_eq!(approximate_size(4, 10, 5, 30, 1), (7000.0, 4000));
        assert_eq!(approximate_size(5, 16, 8, 88, 1), (175104.0, 73728));
        assert_eq!(approximate_size(4, 120, 5, 720, 1), (120000.0, 48000));
    }
}
