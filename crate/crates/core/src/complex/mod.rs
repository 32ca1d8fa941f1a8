//! The dual cube complex `C` of a coloured right-angled polytope: one vertex
//! per copy `P_v`, one edge per facet between copies, one square per
//! codimension-2 face, oriented by the propagated states.

mod colouring;
mod cube;
mod links;
mod state;

pub use colouring::{validate_colouring, Colouring};
pub use cube::{check_cube, validate_quasi_coherence, CubeVerdict, OffendingCube, QuasiCoherenceReport};
pub use links::{check_links, links_pass_mask, LinkStatus};
pub use state::{propagate_states, Letter, State, StateRule, StateSpec};

use crate::polytope::Polytope;

/// A vertex `v ∈ (ℤ/2)^c` as a bitmask over colours.
pub type Vertex = u32;

/// Largest colour count for which all `2^c` vertices are materialised.
pub const MAX_COLOURS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("facet {0} has no entry")]
    MissingFacet(u32),
    #[error("facet {0} is not a facet of the polytope")]
    UnknownFacet(u32),
    #[error("{0}")]
    Parse(String),
    #[error("paired rule needs an even number of colours, got {0}")]
    OddPairing(usize),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("{0} colours is more than supported")]
    TooManyColours(usize),
    #[error("improper colouring: adjacent facets {0:?} share a colour")]
    ImproperColouring(Vec<(u32, u32)>),
    #[error("state rule is not well defined at vertex {vertex:#b} crossing colour {colour}")]
    IllDefinedState { vertex: Vertex, colour: usize },
    #[error("state has {found} letters, polytope has {expected} facets")]
    StateLength { expected: usize, found: usize },
    #[error("edge ({even:#b}, facet {facet}) is oriented inconsistently by its endpoints")]
    InconsistentOrientation { even: Vertex, facet: u32 },
    #[error("square at {base:#b} on facets {facets:?} is neither coherent nor bad")]
    InvalidSquare { base: Vertex, facets: (u32, u32) },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeOrientation {
    OutFromEven,
    InToEven,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SquareClass {
    Coherent,
    Bad,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub even: Vertex,
    pub odd: Vertex,
    pub facet: usize,
    pub orientation: EdgeOrientation,
}

impl Edge {
    /// Level change walking from the even endpoint to the odd one.
    pub fn rise(&self) -> i32 {
        match self.orientation {
            EdgeOrientation::OutFromEven => 1,
            EdgeOrientation::InToEven => -1,
        }
    }
}

/// Square at `base` (colour bits `i`, `j` cleared) on adjacent facets `F`, `F'`.
///
/// `corners` and `edges` follow the boundary walk `base → +e_i (F) → +e_i+e_j (F')
/// → +e_j (F) → base (F')`; `steps[k]` is the level change along the k-th leg.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub base: Vertex,
    pub facets: (usize, usize),
    pub corners: [Vertex; 4],
    pub edges: [usize; 4],
    pub steps: [i32; 4],
    pub class: SquareClass,
}

impl Square {
    /// Level of each corner relative to `base`.
    pub fn heights(&self) -> [i32; 4] {
        let mut h = [0; 4];
        for k in 1..4 {
            h[k] = h[k - 1] + self.steps[k - 1];
        }
        h
    }
}

/// Classifies a square from the level changes along its four boundary legs.
///
/// Closed walks with opposite sides parallel are coherent; the alternating
/// walk `±(1,−1,1,−1)` is bad; anything with non-zero total is invalid.
pub fn classify_square(steps: [i32; 4]) -> SquareClass {
    if steps.iter().sum::<i32>() != 0 {
        SquareClass::Invalid
    } else if steps[0] == -steps[2] && steps[1] == -steps[3] {
        SquareClass::Coherent
    } else if steps[0] == steps[2] && steps[1] == steps[3] && steps[0] == -steps[1] {
        SquareClass::Bad
    } else {
        SquareClass::Invalid
    }
}

/// The oriented dual cube complex.
#[derive(Clone, Debug)]
pub struct OrientedComplex {
    colours: usize,
    facet_count: usize,
    colouring: Colouring,
    rule: StateRule,
    states: Vec<State>,
    even_rank: Vec<usize>,
    edges: Vec<Edge>,
    squares: Vec<Square>,
}

fn is_even(v: Vertex) -> bool {
    v.count_ones().is_multiple_of(2)
}

fn edge_index(even_rank: &[usize], nf: usize, x: Vertex, y: Vertex, facet: usize) -> usize {
    let even = if is_even(x) { x } else { y };
    even_rank[even as usize] * nf + facet
}

/// Walks a square from `base` and returns its leg steps and corners.
fn square_walk(states: &[State], base: Vertex, f: usize, g: usize, ei: Vertex, ej: Vertex) -> ([Vertex; 4], [i32; 4]) {
    let corners = [base, base ^ ei, base ^ ei ^ ej, base ^ ej];
    let legs = [f, g, f, g];
    let mut steps = [0; 4];
    for k in 0..4 {
        steps[k] = states[corners[k] as usize].letter(legs[k]).step();
    }
    (corners, steps)
}

/// Tallies square classes without building the complex (diagnostics for invalid data).
pub fn square_tally(p: &Polytope, col: &Colouring, states: &[State]) -> [usize; 3] {
    let mut tally = [0; 3];
    for &(f, g) in p.codim2_faces() {
        let (ei, ej) = (1 << col.colour(f), 1 << col.colour(g));
        for base in (0..states.len() as Vertex).filter(|v| v & (ei | ej) == 0) {
            let (_, steps) = square_walk(states, base, f, g, ei, ej);
            tally[match classify_square(steps) {
                SquareClass::Coherent => 0,
                SquareClass::Bad => 1,
                SquareClass::Invalid => 2,
            }] += 1;
        }
    }
    tally
}

/// Builds `C` with every edge oriented and every square classified.
///
/// Fails on an improper colouring, an ill-defined state rule, or any square
/// that is neither coherent nor bad.
pub fn build_oriented_complex(
    p: &Polytope,
    col: &Colouring,
    s0: &State,
    rule: &StateRule,
) -> Result<OrientedComplex, ComplexError> {
    let clashes = validate_colouring(p, col)?;
    if !clashes.is_empty() {
        return Err(ComplexError::ImproperColouring(clashes));
    }
    if s0.0.len() != p.facet_count() {
        return Err(ComplexError::StateLength { expected: p.facet_count(), found: s0.0.len() });
    }
    let states = propagate_states(s0, rule, col)?;
    let c = col.colours();
    let nf = p.facet_count();
    let nv = 1usize << c;

    let mut even_rank = vec![usize::MAX; nv];
    let mut rank = 0;
    for v in 0..nv {
        if is_even(v as Vertex) {
            even_rank[v] = rank;
            rank += 1;
        }
    }

    let mut edges = Vec::with_capacity(nf * nv / 2);
    for even in (0..nv as Vertex).filter(|&v| is_even(v)) {
        for f in 0..nf {
            let odd = even ^ (1 << col.colour(f));
            let from_even = states[even as usize].letter(f);
            if states[odd as usize].letter(f) != from_even.flip() {
                return Err(ComplexError::InconsistentOrientation { even, facet: p.facet_id(f) });
            }
            let orientation = match from_even {
                Letter::O => EdgeOrientation::OutFromEven,
                Letter::I => EdgeOrientation::InToEven,
            };
            edges.push(Edge { even, odd, facet: f, orientation });
        }
    }

    let mut squares = Vec::with_capacity(p.codim2_faces().len() * nv / 4);
    for &(f, g) in p.codim2_faces() {
        let (ei, ej) = (1 << col.colour(f), 1 << col.colour(g));
        for base in (0..nv as Vertex).filter(|v| v & (ei | ej) == 0) {
            let (corners, steps) = square_walk(&states, base, f, g, ei, ej);
            let class = classify_square(steps);
            if class == SquareClass::Invalid {
                return Err(ComplexError::InvalidSquare { base, facets: (p.facet_id(f), p.facet_id(g)) });
            }
            let legs = [f, g, f, g];
            let mut ids = [0; 4];
            for k in 0..4 {
                ids[k] = edge_index(&even_rank, nf, corners[k], corners[(k + 1) % 4], legs[k]);
            }
            squares.push(Square { base, facets: (f, g), corners, edges: ids, steps, class });
        }
    }

    Ok(OrientedComplex {
        colours: c,
        facet_count: nf,
        colouring: col.clone(),
        rule: rule.clone(),
        states,
        even_rank,
        edges,
        squares,
    })
}

impl OrientedComplex {
    pub fn colours(&self) -> usize {
        self.colours
    }

    pub fn facet_count(&self) -> usize {
        self.facet_count
    }

    pub fn colouring(&self) -> &Colouring {
        &self.colouring
    }

    pub fn rule(&self) -> &StateRule {
        &self.rule
    }

    pub fn vertex_count(&self) -> usize {
        1 << self.colours
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, v: Vertex) -> &State {
        &self.states[v as usize]
    }

    /// Edges ordered by (even vertex, facet index).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    /// Index of the edge with even endpoint `even` on facet `facet`.
    pub fn edge_id(&self, even: Vertex, facet: usize) -> usize {
        self.even_rank[even as usize] * self.facet_count + facet
    }

    /// Position of an even vertex among the even vertices.
    pub fn even_rank(&self, even: Vertex) -> usize {
        self.even_rank[even as usize]
    }

    pub fn count(&self, class: SquareClass) -> usize {
        self.squares.iter().filter(|s| s.class == class).count()
    }

    /// Level of each vertex of `C` relative to `x_0`, well defined on coherent data only.
    ///
    /// Bad squares make the level of `C` itself multi-valued, so this walks a
    /// spanning tree and is meaningful only up to the monodromy.
    pub fn tree_levels(&self) -> Vec<i32> {
        let mut level = vec![i32::MIN; self.vertex_count()];
        level[0] = 0;
        let mut stack = vec![0 as Vertex];
        while let Some(v) = stack.pop() {
            for f in 0..self.facet_count {
                let w = v ^ (1 << self.colouring.colour(f));
                if level[w as usize] == i32::MIN {
                    level[w as usize] = level[v as usize] + self.states[v as usize].letter(f).step();
                    stack.push(w);
                }
            }
        }
        level
    }
}
