use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rigidcover::rank::{Engine, PivotStrategy, RankConfig, Tolerance, DEFAULT_CERTIFICATION, DEFAULT_SIZE_CAP};
use rigidcover::system::AssemblyMode;

#[derive(Parser, Debug)]
#[command(name = "rigidcover", version, about = "Infinitesimal-rigidity bounds for cyclic covers of coloured right-angled polytopes")]
pub struct Cli {
    /// Log progress to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check colouring, state propagation, squares, quasi-coherence and links.
    Validate(InputConfig),
    /// Build, assemble and rank the cocycle system.
    Run(RunConfig),
    /// Connectivity table for the zigzag templates.
    Zigzag(ZigzagConfig),
    /// List states whose links are connected at every vertex.
    SearchStates(SearchConfig),
    /// Write the assembled system as exact triplets and/or hex floats.
    ExportSystem(ExportConfig),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleArg {
    #[default]
    Independent,
    Paired,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineArg {
    Numeric,
    Exact,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Numeric => Engine::Numeric,
            EngineArg::Exact => Engine::Exact,
            EngineArg::Both => Engine::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Generic,
    Simplified,
    Both,
}

impl ModeArg {
    pub fn modes(self) -> Vec<AssemblyMode> {
        match self {
            ModeArg::Generic => vec![AssemblyMode::Generic],
            ModeArg::Simplified => vec![AssemblyMode::Simplified],
            ModeArg::Both => vec![AssemblyMode::Simplified, AssemblyMode::Generic],
        }
    }
}

fn parse_tolerance(s: &str) -> Result<Tolerance, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Tolerance::Auto);
    }
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(Tolerance::Fixed(t)),
        _ => Err(format!("expected `auto` or a positive number, got `{s}`")),
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad colour `{a}`"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad colour `{b}`"))?;
    if a == 0 || b == 0 {
        return Err("colours start at 1".into());
    }
    Ok((a, b))
}

fn parse_s(s: &str) -> Result<i32, String> {
    match s.parse::<i32>() {
        Ok(v) if (1..=1000).contains(&v) => Ok(v),
        _ => Err(format!("window size s must be an integer ≥ 1, got `{s}`")),
    }
}

/// Polytope, colouring and state sources shared by every pipeline command.
#[derive(Args, Clone, Debug, Default, Serialize)]
pub struct InputConfig {
    /// Polytope JSON file; the built-in octahedron when omitted.
    #[arg(long)]
    pub polytope: Option<PathBuf>,
    /// Colouring file (`facet colour` lines); the 2-colouring when omitted.
    #[arg(long)]
    pub colouring: Option<PathBuf>,
    /// State file (rule, pairs, `facet I|O` lines).
    #[arg(long, conflicts_with = "search_states")]
    pub state: Option<PathBuf>,
    /// Use every state whose links pass instead of a state file
    /// (`export-system` takes the first).
    #[arg(long)]
    pub search_states: bool,
    /// Propagation rule for searched states.
    #[arg(long, value_enum, default_value = "independent")]
    pub rule: RuleArg,
    /// Paired colours for the paired rule, e.g. `--pair 1,2 --pair 3,4`.
    #[arg(long = "pair", value_parser = parse_pair)]
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct RunConfig {
    #[command(flatten)]
    pub inputs: InputConfig,
    /// Window `[-1, 2s-1]`.
    #[arg(short, long = "window", default_value = "1", value_parser = parse_s)]
    pub s: i32,
    #[arg(long, value_enum, default_value = "both")]
    pub engine: EngineArg,
    /// `auto` or a fixed singular-value cutoff.
    #[arg(long, default_value = "auto", value_parser = parse_tolerance)]
    pub tolerance: Tolerance,
    #[arg(long, value_enum, default_value = "simplified")]
    pub mode: ModeArg,
    /// Gap ratio needed to certify a numeric count.
    #[arg(long, default_value_t = DEFAULT_CERTIFICATION)]
    pub threshold: f64,
    /// Largest column count handed to dense SVD.
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    pub size_cap: usize,
    /// Solve tangency rows per edge before ranking.
    #[arg(long)]
    pub pre_eliminate: bool,
    /// Shuffle exact pivots with this seed instead of Markowitz order.
    #[arg(long)]
    pub pivot_seed: Option<u64>,
    /// With --search-states, stop after this many states.
    #[arg(long)]
    pub max_states: Option<usize>,
    /// JSON report path; stdout when omitted.
    #[arg(short, long)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    /// Also write a CSV summary here.
    #[arg(long)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
}

impl RunConfig {
    pub fn rank_config(&self) -> RankConfig {
        RankConfig {
            engine: self.engine.into(),
            tolerance: self.tolerance,
            certification_threshold: self.threshold,
            size_cap: self.size_cap,
            pre_eliminate: self.pre_eliminate,
            pivot: self.pivot_seed.map_or(PivotStrategy::Markowitz, |seed| PivotStrategy::Shuffled { seed }),
        }
    }

    /// Defaults as on the command line, for the given inputs.
    pub fn with_inputs(inputs: InputConfig) -> Self {
        Self {
            inputs,
            s: 1,
            engine: EngineArg::Both,
            tolerance: Tolerance::Auto,
            mode: ModeArg::Simplified,
            threshold: DEFAULT_CERTIFICATION,
            size_cap: DEFAULT_SIZE_CAP,
            pre_eliminate: false,
            pivot_seed: None,
            max_states: None,
            output: None,
            csv: None,
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct ZigzagConfig {
    /// Largest cube dimension, 2 to 9.
    #[arg(long, default_value = "9")]
    pub max_dim: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
pub struct SearchConfig {
    #[command(flatten)]
    pub inputs: InputConfig,
    /// Write each listed state as `state-NNN.state` into this directory.
    #[arg(long)]
    pub write_dir: Option<PathBuf>,
    /// List at most this many states; the count covers all of them.
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
pub struct ExportConfig {
    #[command(flatten)]
    pub inputs: InputConfig,
    #[arg(short, long = "window", default_value = "1", value_parser = parse_s)]
    pub s: i32,
    #[arg(long, value_enum, default_value = "simplified")]
    pub mode: ModeArg,
    /// Exact triplets `row col a_num a_den b_num b_den`.
    #[arg(long)]
    pub triplets: Option<PathBuf>,
    /// Float mirror `row col hex`.
    #[arg(long)]
    pub float: Option<PathBuf>,
}
