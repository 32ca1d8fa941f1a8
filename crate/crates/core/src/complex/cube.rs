use rayon::prelude::*;

use super::{classify_square, OrientedComplex, SquareClass, Vertex};
use crate::polytope::{cliques, Polytope};

/// Outcome for one abstract oriented cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubeVerdict {
    Coherent,
    /// Bad square on directions `(a, b)` times a coherent cube.
    QuasiCoherent(usize, usize),
    Offending(String),
}

/// Classifies an oriented `dim`-cube given `step(corner, d)`, the level change
/// along direction `d` from a corner with bit `d` clear.
pub fn check_cube(dim: usize, step: impl Fn(u32, usize) -> i32) -> CubeVerdict {
    let mut bad_pair = None;
    for a in 0..dim {
        for b in (a + 1)..dim {
            let (ea, eb) = (1u32 << a, 1u32 << b);
            let mut bad = 0;
            let mut total = 0;
            for corner in (0..1u32 << dim).filter(|c| c & (ea | eb) == 0) {
                total += 1;
                let steps = [step(corner, a), step(corner | ea, b), -step(corner | eb, a), -step(corner, b)];
                match classify_square(steps) {
                    SquareClass::Coherent => {}
                    SquareClass::Bad => bad += 1,
                    SquareClass::Invalid => {
                        return CubeVerdict::Offending(format!("square on directions ({a}, {b}) is invalid"))
                    }
                }
            }
            if bad == 0 {
                continue;
            }
            if bad != total {
                return CubeVerdict::Offending(format!("directions ({a}, {b}) mix bad and coherent squares"));
            }
            if let Some((x, y)) = bad_pair {
                return CubeVerdict::Offending(format!("bad squares on two direction pairs ({x}, {y}) and ({a}, {b})"));
            }
            bad_pair = Some((a, b));
        }
    }
    match bad_pair {
        None => CubeVerdict::Coherent,
        Some((a, b)) => CubeVerdict::QuasiCoherent(a, b),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffendingCube {
    pub base: Vertex,
    pub facets: Vec<u32>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuasiCoherenceReport {
    pub cubes_checked: usize,
    pub coherent: usize,
    pub quasi_coherent: usize,
    pub offending: Vec<OffendingCube>,
}

impl QuasiCoherenceReport {
    pub fn is_ok(&self) -> bool {
        self.offending.is_empty()
    }
}

/// Checks every cube of dimension `2..=n` of `C` (one per pairwise adjacent
/// facet set and base vertex) for coherence or quasi-coherence.
pub fn validate_quasi_coherence(cx: &OrientedComplex, p: &Polytope) -> QuasiCoherenceReport {
    let col = cx.colouring();
    let mut report = QuasiCoherenceReport::default();
    for k in 2..=p.dimension() {
        let sets = cliques(p.adjacency(), k);
        if sets.is_empty() {
            break;
        }
        let results: Vec<(Vertex, &Vec<usize>, CubeVerdict)> = sets
            .par_iter()
            .flat_map_iter(|set| {
                let dirs: Vec<Vertex> = set.iter().map(|&f| 1 << col.colour(f)).collect();
                let span = dirs.iter().fold(0, |m, d| m | d);
                (0..cx.vertex_count() as Vertex).filter(move |v| v & span == 0).map(move |base| {
                    let verdict = check_cube(set.len(), |corner, d| {
                        let v = (0..set.len()).filter(|&i| corner >> i & 1 == 1).fold(base, |v, i| v ^ dirs[i]);
                        cx.state(v).letter(set[d]).step()
                    });
                    (base, set, verdict)
                })
            })
            .collect();
        for (base, set, verdict) in results {
            report.cubes_checked += 1;
            match verdict {
                CubeVerdict::Coherent => report.coherent += 1,
                CubeVerdict::QuasiCoherent(..) => report.quasi_coherent += 1,
                CubeVerdict::Offending(reason) => report.offending.push(OffendingCube {
                    base,
                    facets: set.iter().map(|&f| p.facet_id(f)).collect(),
                    reason,
                }),
            }
        }
    }
    report
}
