//! Infinitesimal-rigidity bounds for infinite cyclic covers of hyperbolic
//! manifolds built from coloured right-angled polytopes.
//!
//! The pipeline runs polytope → coloured cube complex → cover window →
//! cocycle system → nullity and `dim H¹` bound.

pub mod complex;
pub mod cover;
pub mod hexfloat;
pub mod numfield;
pub mod polytope;
pub mod rank;
pub mod synthetic;
pub mod system;

pub use complex::{Colouring, OrientedComplex, SquareClass, State, StateRule, StateSpec};
pub use cover::CoverWindow;
pub use numfield::{FieldMatrix, FieldScalar};
pub use polytope::Polytope;
pub use rank::{Engine, RankConfig, RankReport, Tolerance, Verdict};
pub use system::{AssemblyMode, CocycleSystem, SparseMatrix};
