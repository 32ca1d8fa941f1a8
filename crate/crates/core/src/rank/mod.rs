//! Nullity of the cocycle system by dense SVD and by exact elimination, and
//! the resulting bound on `dim H¹`.

mod exact;
mod numeric;
mod oracle;
mod reduce;

pub use exact::{eliminate, exact_nullity, exact_rank_of_vectors, Elimination, PivotStrategy};
pub use numeric::{gap_ratio, numeric_nullity, NumericResult, Tolerance};
pub use oracle::{groupoid_group_oracle, spanning_tree, OracleReport};
pub use reduce::lie_coordinates;

use serde::{Deserialize, Serialize, Serializer};

use crate::hexfloat;
use crate::numfield::lie_algebra_dim;
use crate::system::{CocycleSystem, SparseMatrix};

/// Default certification threshold for the singular-value gap.
pub const DEFAULT_CERTIFICATION: f64 = 1e6;
/// Largest column count handed to dense SVD.
pub const DEFAULT_SIZE_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RankError {
    #[error("{cols} columns exceed the dense SVD cap of {cap}; enable tangency pre-elimination")]
    SizeCap { cols: usize, cap: usize },
    #[error("window 1-skeleton is disconnected")]
    Disconnected,
    #[error("nullity {nullity} is below the coboundary dimension {coboundaries}: internal inconsistency")]
    NegativeBound { nullity: usize, coboundaries: usize },
    #[error("engines disagree: numeric nullity {numeric}, exact nullity {exact}")]
    Disagreement { numeric: usize, exact: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Numeric,
    Exact,
    Both,
}

impl Engine {
    fn numeric(self) -> bool {
        matches!(self, Engine::Numeric | Engine::Both)
    }

    fn exact(self) -> bool {
        matches!(self, Engine::Exact | Engine::Both)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Rigid,
    BoundPositive,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankConfig {
    pub engine: Engine,
    pub tolerance: Tolerance,
    pub certification_threshold: f64,
    pub size_cap: usize,
    /// Solve tangency rows per edge before ranking.
    pub pre_eliminate: bool,
    pub pivot: PivotStrategy,
}

impl Default for RankConfig {
    fn default() -> Self {
        Self {
            engine: Engine::Both,
            tolerance: Tolerance::Auto,
            certification_threshold: DEFAULT_CERTIFICATION,
            size_cap: DEFAULT_SIZE_CAP,
            pre_eliminate: false,
            pivot: PivotStrategy::Markowitz,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nullity {
    pub numeric: Option<usize>,
    pub exact: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Accounting {
    pub dim_g: usize,
    pub vertex_count: usize,
    pub h1_bound: usize,
}

fn ser_hex_list<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| hexfloat::format(*x)))
}

fn ser_opt_float<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) if x.is_finite() => s.serialize_f64(*x),
        Some(x) => s.serialize_str(&hexfloat::format(*x)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankReport {
    pub rows: usize,
    pub cols: usize,
    pub engine: Engine,
    /// Size of the matrix actually ranked, when pre-elimination changed it.
    pub reduced: Option<(usize, usize)>,
    pub nullity: Nullity,
    #[serde(serialize_with = "ser_hex_list")]
    pub singular_values: Vec<f64>,
    #[serde(serialize_with = "ser_opt_float")]
    pub tolerance: Option<f64>,
    #[serde(serialize_with = "ser_opt_float")]
    pub gap_ratio: Option<f64>,
    pub accounting: Accounting,
    pub verdict: Verdict,
}

/// `nullity − dim(G)·|V′|`; Rigid iff zero.
pub fn h1_bound(nullity: usize, vertex_count: usize, n: usize) -> Result<(usize, Verdict), RankError> {
    let coboundaries = lie_algebra_dim(n) * vertex_count;
    let bound = nullity.checked_sub(coboundaries).ok_or(RankError::NegativeBound { nullity, coboundaries })?;
    Ok((bound, if bound == 0 { Verdict::Rigid } else { Verdict::BoundPositive }))
}

/// Runs the configured engines on `sys` and turns the nullity into a verdict.
///
/// The numeric count certifies only when the gap ratio reaches the
/// threshold; otherwise the verdict is Inconclusive. A certified numeric
/// count that differs from the exact one is an error.
pub fn analyse(sys: &CocycleSystem, vertex_count: usize, cfg: &RankConfig) -> Result<RankReport, RankError> {
    let reduced_matrix;
    let target: &SparseMatrix = if cfg.pre_eliminate {
        reduced_matrix = lie_coordinates(sys);
        &reduced_matrix
    } else {
        sys.matrix()
    };
    let numeric = if cfg.engine.numeric() {
        Some(numeric_nullity(target, cfg.tolerance, cfg.size_cap)?)
    } else {
        None
    };
    let exact = cfg.engine.exact().then(|| eliminate(target, cfg.pivot, false).nullity());
    let certified = numeric
        .as_ref()
        .map(|r| r.gap_ratio.is_some_and(|g| g >= cfg.certification_threshold) || r.singular_values.iter().all(|&s| s == 0.0));
    if let (Some(r), Some(e), Some(true)) = (&numeric, exact, certified) {
        if r.nullity != e {
            return Err(RankError::Disagreement { numeric: r.nullity, exact: e });
        }
    }
    let nullity = exact.or(numeric.as_ref().map(|r| r.nullity)).expect("at least one engine");
    let (bound, mut verdict) = h1_bound(nullity, vertex_count, sys.dimension())?;
    if certified == Some(false) {
        verdict = Verdict::Inconclusive;
    }
    Ok(RankReport {
        rows: sys.rows(),
        cols: sys.cols(),
        engine: cfg.engine,
        reduced: cfg.pre_eliminate.then(|| (target.row_count(), target.cols())),
        nullity: Nullity { numeric: numeric.as_ref().map(|r| r.nullity), exact },
        singular_values: numeric.as_ref().map(|r| r.singular_values.clone()).unwrap_or_default(),
        tolerance: numeric.as_ref().map(|r| r.tolerance),
        gap_ratio: numeric.as_ref().and_then(|r| r.gap_ratio),
        accounting: Accounting { dim_g: lie_algebra_dim(sys.dimension()), vertex_count, h1_bound: bound },
        verdict,
    })
}
