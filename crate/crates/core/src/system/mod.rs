//! The linear system whose kernel is the space of groupoid cocycles of the
//! window: one unknown `(n+1)×(n+1)` matrix `D_e` per lifted edge, tangency
//! rows per edge, and relator rows per lifted square.

mod assemble;
mod export;
mod sparse;

pub use assemble::{
    approximate_size, assemble, assign_images, coboundary_vector, coboundary_vectors, relator_rows, tangency_rows,
    AssemblyMode, CocycleSystem, KernelVector,
};
pub use export::{export_float, export_triplets};
pub use sparse::{SparseMatrix, SparseRow};

use crate::numfield::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("square {square}: simplified relator needs {what}")]
    SimplifiedPrecondition { square: usize, what: &'static str },
}
