//! The finite window `F_[m,n]` of the infinite cyclic cover of `C`, the
//! zigzag connectivity check on abstract cubes, and exhaustive state search.

mod search;
mod window;
mod zigzag;

pub use search::{search_states, SearchError, SearchOptions};
pub use window::{build_window, monodromy_shift, CoverWindow, LiftedEdge, LiftedSquare};
pub use zigzag::{check_zigzag, zigzag_table, ZigzagRow, ZigzagTemplate};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("window [{m}, {n}] is too narrow (need n − m ≥ 2)")]
    NarrowWindow { m: i32, n: i32 },
    #[error("zigzag dimension {0} is outside 2..=9")]
    ZigzagDimension(usize),
}
