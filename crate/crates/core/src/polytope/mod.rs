//! Right-angled polytopes given by exact facet normals.
//!
//! Two facets are adjacent exactly when their normals are Lorentz-orthogonal;
//! each adjacent pair is taken to meet in a single codimension-2 face unless
//! the data file lists the codimension-2 faces explicitly.

mod format;

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::numfield::{lorentz_product, reflection_matrix, FieldError, FieldMatrix, FieldScalar, LorentzForm};

pub use format::{PolytopeFile, RawFacet};

#[derive(Debug, thiserror::Error)]
pub enum PolytopeError {
    #[error("cannot read polytope file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("polytope parse error: {0}")]
    Parse(String),
    #[error("duplicate facet id {0}")]
    DuplicateFacet(u32),
    #[error("unknown facet id {0}")]
    UnknownFacet(u32),
    #[error("facet {id}: normal has {found} entries, expected {expected}")]
    NormalLength { id: u32, expected: usize, found: usize },
    #[error("facet {id}: {source}")]
    Normal { id: u32, source: FieldError },
    #[error("declared adjacency disagrees with normals at facets {0} and {1}")]
    AdjacencyMismatch(u32, u32),
    #[error("codimension-2 face {0}–{1} joins non-adjacent facets")]
    Codim2NotAdjacent(u32, u32),
    #[error("declared facet count {declared} but file lists {found}")]
    FacetCount { declared: usize, found: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Combinatorial counts recorded alongside a polytope for cross-checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredCounts {
    pub ideal_vertices: usize,
    pub real_vertices: usize,
    pub facets: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub id: u32,
    pub normal: Vec<FieldScalar>,
}

/// A validated right-angled polytope in ℍⁿ.
#[derive(Clone, Debug)]
pub struct Polytope {
    name: String,
    n: usize,
    d: u32,
    facets: Vec<Facet>,
    adjacency: Vec<Vec<bool>>,
    codim2: Vec<(usize, usize)>,
    declared_counts: Option<DeclaredCounts>,
    reflections: Vec<FieldMatrix>,
}

impl Polytope {
    /// Validates facet data and derives adjacency, codimension-2 faces, and reflections.
    ///
    /// `declared_adjacency` and `codim2_override` are pairs of facet ids.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        d: u32,
        facets: Vec<Facet>,
        declared_adjacency: Option<Vec<(u32, u32)>>,
        codim2_override: Option<Vec<(u32, u32)>>,
        declared_counts: Option<DeclaredCounts>,
    ) -> Result<Self, PolytopeError> {
        let form = LorentzForm::new(n);
        let mut index = HashMap::new();
        for (i, f) in facets.iter().enumerate() {
            if index.insert(f.id, i).is_some() {
                return Err(PolytopeError::DuplicateFacet(f.id));
            }
            if f.normal.len() != n + 1 {
                return Err(PolytopeError::NormalLength { id: f.id, expected: n + 1, found: f.normal.len() });
            }
        }
        if let Some(c) = declared_counts {
            if c.facets != facets.len() {
                return Err(PolytopeError::FacetCount { declared: c.facets, found: facets.len() });
            }
        }
        let facets = facets
            .into_iter()
            .map(|f| {
                let normal = f
                    .normal
                    .iter()
                    .map(|x| x.coerce(d))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|source| PolytopeError::Normal { id: f.id, source })?;
                Ok(Facet { id: f.id, normal })
            })
            .collect::<Result<Vec<_>, PolytopeError>>()?;
        let reflections = facets
            .iter()
            .map(|f| reflection_matrix(&f.normal, &form).map_err(|source| PolytopeError::Normal { id: f.id, source }))
            .collect::<Result<Vec<_>, _>>()?;

        let adjacency = compute_adjacency(&facets, &form)?;
        let lookup = |id: u32| index.get(&id).copied().ok_or(PolytopeError::UnknownFacet(id));

        if let Some(pairs) = declared_adjacency {
            let mut declared = vec![vec![false; facets.len()]; facets.len()];
            for (x, y) in pairs {
                let (i, j) = (lookup(x)?, lookup(y)?);
                declared[i][j] = true;
                declared[j][i] = true;
            }
            for i in 0..facets.len() {
                for j in 0..facets.len() {
                    if declared[i][j] != adjacency[i][j] {
                        return Err(PolytopeError::AdjacencyMismatch(facets[i].id, facets[j].id));
                    }
                }
            }
        }

        let codim2 = match codim2_override {
            Some(pairs) => {
                let mut out = Vec::with_capacity(pairs.len());
                for (x, y) in pairs {
                    let (i, j) = (lookup(x)?, lookup(y)?);
                    if !adjacency[i][j] {
                        return Err(PolytopeError::Codim2NotAdjacent(x, y));
                    }
                    out.push((i.min(j), i.max(j)));
                }
                out.sort_unstable();
                out
            }
            None => enumerate_codim2(&adjacency),
        };

        Ok(Self { name: name.into(), n, d, facets, adjacency, codim2, declared_counts, reflections })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Dimension of the ambient hyperbolic space.
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn discriminant(&self) -> u32 {
        self.d
    }

    pub fn form(&self) -> LorentzForm {
        LorentzForm::new(self.n)
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_id(&self, index: usize) -> u32 {
        self.facets[index].id
    }

    pub fn facet_index(&self, id: u32) -> Option<usize> {
        self.facets.iter().position(|f| f.id == id)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adjacency
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[i].iter().enumerate().filter(|(_, &a)| a).map(|(j, _)| j)
    }

    /// Codimension-2 faces as sorted pairs of facet indices.
    pub fn codim2_faces(&self) -> &[(usize, usize)] {
        &self.codim2
    }

    pub fn declared_counts(&self) -> Option<DeclaredCounts> {
        self.declared_counts
    }

    /// Reflection in the wall of facet `index`.
    pub fn reflection(&self, index: usize) -> &FieldMatrix {
        &self.reflections[index]
    }

    /// Keeps only the facets at `indices` (in that order), e.g. to build
    /// small synthetic test complexes from a real polytope.
    pub fn restrict(&self, indices: &[usize], name: impl Into<String>) -> Result<Self, PolytopeError> {
        let facets = indices.iter().map(|&i| self.facets[i].clone()).collect();
        Self::new(name, self.n, self.d, facets, None, None, None)
    }

    /// Loads and validates a polytope file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, PolytopeError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| PolytopeError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, PolytopeError> {
        let file: PolytopeFile = serde_json::from_str(text).map_err(|e| PolytopeError::Parse(e.to_string()))?;
        file.into_polytope()
    }

    pub fn to_file(&self) -> Result<PolytopeFile, PolytopeError> {
        PolytopeFile::from_polytope(self)
    }
}

/// Facets `i ≠ j` are adjacent iff `⟨uᵢ, uⱼ⟩ = 0` exactly.
pub fn compute_adjacency(facets: &[Facet], form: &LorentzForm) -> Result<Vec<Vec<bool>>, FieldError> {
    let k = facets.len();
    let mut adj = vec![vec![false; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let p = lorentz_product(&facets[i].normal, &facets[j].normal, form)?;
            if p.is_zero() {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    Ok(adj)
}

/// One codimension-2 face per adjacent facet pair.
pub fn enumerate_codim2(adjacency: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..adjacency.len() {
        for j in (i + 1)..adjacency.len() {
            if adjacency[i][j] {
                out.push((i, j));
            }
        }
    }
    out
}

/// The ideal right-angled octahedron in ℍ³: normals `(±1, ±1, ±1, −1)`.
///
/// Facet ids run 1..=8 in lexicographic sign order, `+` before `−`.
pub fn builtin_octahedron() -> Polytope {
    let mut facets = Vec::with_capacity(8);
    let mut id = 1;
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            for s3 in [1, -1] {
                let normal = [s1, s2, s3, -1].iter().map(|&x| FieldScalar::from_int(x)).collect();
                facets.push(Facet { id, normal });
                id += 1;
            }
        }
    }
    let counts = DeclaredCounts { ideal_vertices: 6, real_vertices: 0, facets: 8 };
    Polytope::new("octahedron", 3, 1, facets, None, None, Some(counts)).expect("octahedron data is valid")
}

/// All `k`-cliques of the facet adjacency graph as increasing index lists.
pub fn cliques(adjacency: &[Vec<bool>], k: usize) -> Vec<Vec<usize>> {
    fn extend(adj: &[Vec<bool>], k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let start = current.last().map_or(0, |&l| l + 1);
        for f in start..adj.len() {
            if current.iter().all(|&g| adj[g][f]) {
                current.push(f);
                extend(adj, k, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(adjacency, k, &mut Vec::new(), &mut out);
    out
}

/// Number of `k`-cliques of the facet adjacency graph, `k ≥ 1`.
pub fn count_cliques(adjacency: &[Vec<bool>], k: usize) -> usize {
    cliques(adjacency, k).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron_combinatorics() {
        let p = builtin_octahedron();
        assert_eq!(p.facet_count(), 8);
        assert_eq!(p.dimension(), 3);
        assert_eq!(p.codim2_faces().len(), 12);
        for i in 0..8 {
            assert_eq!(p.neighbours(i).count(), 3);
            assert!(!p.adjacent(i, i));
        }
    }

    #[test]
    fn octahedron_adjacency_is_hamming_distance_one() {
        let p = builtin_octahedron();
        for i in 0..8 {
            for j in 0..8 {
                let signs = |k: usize| -> Vec<bool> {
                    p.facets()[k].normal[..3].iter().map(|x| x.is_positive()).collect()
                };
                let dist = signs(i).iter().zip(signs(j)).filter(|(a, b)| **a != *b).count();
                assert_eq!(p.adjacent(i, j), dist == 1);
            }
        }
        // opposite facets pair to −4
        let f = p.facets();
        let v = lorentz_product(&f[0].normal, &f[7].normal, &p.form()).unwrap();
        assert_eq!(v, FieldScalar::from_int(-4));
    }

    #[test]
    fn adjacent_reflections_commute() {
        let p = builtin_octahedron();
        for &(i, j) in p.codim2_faces() {
            let a = p.reflection(i).mul(p.reflection(j)).unwrap();
            let b = p.reflection(j).mul(p.reflection(i)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn no_adjacent_facets_gives_no_codim2_faces() {
        let p = builtin_octahedron();
        let sub = p.restrict(&[0, 7], "opposite pair").unwrap();
        assert!(sub.codim2_faces().is_empty());
    }

    #[test]
    fn duplicated_facet_id_is_rejected() {
        let p = builtin_octahedron();
        let mut facets = p.facets().to_vec();
        facets[1].id = facets[0].id;
        let err = Polytope::new("dup", 3, 1, facets, None, None, None).unwrap_err();
        assert!(matches!(err, PolytopeError::DuplicateFacet(1)));
    }

    #[test]
    fn wrong_declared_adjacency_is_rejected() {
        let p = builtin_octahedron();
        let err = Polytope::new("bad", 3, 1, p.facets().to_vec(), Some(vec![(1, 8)]), None, None).unwrap_err();
        assert!(matches!(err, PolytopeError::AdjacencyMismatch(..)));
    }

    #[test]
    fn octahedron_has_no_triangles() {
        let p = builtin_octahedron();
        assert_eq!(count_cliques(p.adjacency(), 2), 12);
        assert_eq!(count_cliques(p.adjacency(), 3), 0);
    }
}
