//! Exact arithmetic in a real quadratic field ℚ(√d) and the Lorentz linear
//! algebra built on it: the form `J = diag(1, …, 1, −1)`, facet reflections
//! in `O⁺(n,1)`, and a basis of its Lie algebra.

mod lorentz;
mod matrix;
mod scalar;

pub use lorentz::{
    lie_algebra_basis, lie_algebra_dim, lorentz_product, preserves_form, reflection_matrix, LorentzForm,
};
pub use matrix::FieldMatrix;
pub use scalar::{is_squarefree, FieldScalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("discriminant mismatch: √{left} vs √{right}")]
    DiscriminantMismatch { left: u32, right: u32 },
    #[error("discriminant {0} is not a positive square-free integer")]
    InvalidDiscriminant(u32),
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("normal is not spacelike (⟨v,v⟩ = {0})")]
    NotSpacelike(String),
}
