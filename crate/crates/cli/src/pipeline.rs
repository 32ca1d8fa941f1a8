use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use rigidcover::complex::{
    build_oriented_complex, check_links, propagate_states, square_tally, validate_colouring, validate_quasi_coherence,
    Colouring, OrientedComplex, State, StateRule, StateSpec,
};
use rigidcover::cover::{build_window, search_states, CoverWindow, SearchOptions};
use rigidcover::polytope::{builtin_octahedron, Polytope};
use rigidcover::rank::{analyse, RankReport, Verdict};
use rigidcover::system::{approximate_size, assemble, AssemblyMode, CocycleSystem};

use crate::config::{InputConfig, RuleArg, RunConfig};
use crate::error::{fail, Stage, StageContext, StageResult};

#[derive(Clone, Debug, Serialize)]
pub struct InputFile {
    pub role: &'static str,
    pub path: String,
    pub sha256: String,
}

fn sha256(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn read(path: &Path, role: &'static str, provenance: &mut Vec<InputFile>) -> StageResult<String> {
    let bytes = std::fs::read(path).stage(Stage::Input, &format!("reading {role} file {}", path.display()))?;
    provenance.push(InputFile { role, path: path.display().to_string(), sha256: sha256(&bytes) });
    String::from_utf8(bytes).stage(Stage::Input, &format!("{role} file {} is not UTF-8", path.display()))
}

/// A state and its position in the search order, if it came from a search.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub index: Option<usize>,
    pub state: State,
}

#[derive(Clone, Debug)]
pub struct Inputs {
    pub polytope: Polytope,
    pub colouring: Colouring,
    pub rule: StateRule,
    pub states: Vec<Candidate>,
    pub provenance: Vec<InputFile>,
}

fn rule_from_args(cfg: &InputConfig) -> StageResult<StateRule> {
    match cfg.rule {
        RuleArg::Independent if cfg.pairs.is_empty() => Ok(StateRule::Independent),
        RuleArg::Independent => fail(Stage::Input, "--pair needs --rule paired"),
        RuleArg::Paired if cfg.pairs.is_empty() => fail(Stage::Input, "--rule paired needs --pair a,b"),
        RuleArg::Paired => Ok(StateRule::Paired(cfg.pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect())),
    }
}

/// Reads polytope and colouring, and the state file or the searched states.
/// `need_state` makes a missing state source an input error.
pub fn load_inputs(cfg: &InputConfig, need_state: bool) -> StageResult<Inputs> {
    let mut provenance = Vec::new();
    let polytope = match &cfg.polytope {
        Some(path) => {
            let text = read(path, "polytope", &mut provenance)?;
            Polytope::from_json(&text).stage(Stage::Input, &format!("parsing {}", path.display()))?
        }
        None => {
            let p = builtin_octahedron();
            let canonical = serde_json::to_vec(&p.to_file().stage(Stage::Input, "serializing built-in polytope")?)
                .stage(Stage::Input, "serializing built-in polytope")?;
            provenance.push(InputFile { role: "polytope", path: "builtin:octahedron".into(), sha256: sha256(&canonical) });
            p
        }
    };
    let colouring = match &cfg.colouring {
        Some(path) => {
            let text = read(path, "colouring", &mut provenance)?;
            Colouring::parse(&text, &polytope).stage(Stage::Input, &format!("parsing {}", path.display()))?
        }
        None => match Colouring::two_colouring(&polytope) {
            Some(c) => c,
            None => return fail(Stage::Input, "no colouring given and the polytope has no 2-colouring"),
        },
    };
    let (rule, states) = match (&cfg.state, cfg.search_states) {
        (Some(path), _) => {
            let text = read(path, "state", &mut provenance)?;
            let spec = StateSpec::parse(&text, &polytope).stage(Stage::Input, &format!("parsing {}", path.display()))?;
            (spec.rule, vec![Candidate { index: None, state: spec.state }])
        }
        (None, true) => {
            let rule = rule_from_args(cfg)?;
            let violations = validate_colouring(&polytope, &colouring).stage(Stage::Input, "checking colouring")?;
            if !violations.is_empty() {
                return fail(Stage::Validation, format!("colouring is improper at facet pairs {violations:?}"));
            }
            let found = search_states(&polytope, &colouring, &rule, &SearchOptions::default())
                .stage(Stage::Input, "searching states")?;
            let states = found.into_iter().enumerate().map(|(i, state)| Candidate { index: Some(i), state }).collect();
            (rule, states)
        }
        (None, false) if need_state => return fail(Stage::Input, "give --state FILE or --search-states"),
        (None, false) => (rule_from_args(cfg)?, Vec::new()),
    };
    Ok(Inputs { polytope, colouring, rule, states, provenance })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SquareCounts {
    pub coherent: usize,
    pub bad: usize,
    pub invalid: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CubeProblem {
    pub base: u32,
    pub facets: Vec<u32>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiCoherence {
    pub cubes_checked: usize,
    pub coherent: usize,
    pub quasi_coherent: usize,
    pub offending: Vec<CubeProblem>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkRow {
    pub vertex: u32,
    pub ascending_components: usize,
    pub descending_components: usize,
    pub passes: bool,
}

/// Each section is absent when an earlier check already failed.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub colouring_violations: Vec<(u32, u32)>,
    pub propagation_error: Option<String>,
    pub squares: Option<SquareCounts>,
    pub quasi_coherence: Option<QuasiCoherence>,
    pub links: Option<Vec<LinkRow>>,
}

impl ValidationReport {
    pub fn failures(&self) -> String {
        let mut out = Vec::new();
        if !self.colouring_violations.is_empty() {
            out.push(format!("colouring violated at facet pairs {:?}", self.colouring_violations));
        }
        if let Some(e) = &self.propagation_error {
            out.push(format!("state propagation: {e}"));
        }
        if let Some(s) = self.squares.as_ref().filter(|s| s.invalid > 0) {
            out.push(format!("{} invalid squares", s.invalid));
        }
        if let Some(q) = self.quasi_coherence.as_ref().filter(|q| !q.offending.is_empty()) {
            let first = &q.offending[0];
            out.push(format!(
                "{} offending cubes, first at vertex {} facets {:?}: {}",
                q.offending.len(),
                first.base,
                first.facets,
                first.reason
            ));
        }
        if let Some(links) = &self.links {
            let bad: Vec<u32> = links.iter().filter(|l| !l.passes).map(|l| l.vertex).collect();
            if !bad.is_empty() {
                out.push(format!("links disconnected or empty at vertices {bad:?}"));
            }
        }
        out.join("; ")
    }
}

pub fn validate(p: &Polytope, col: &Colouring, rule: &StateRule, s0: &State) -> StageResult<(ValidationReport, Option<OrientedComplex>)> {
    let violations = validate_colouring(p, col).stage(Stage::Input, "checking colouring")?;
    let mut report = ValidationReport {
        passed: false,
        colouring_violations: violations.clone(),
        propagation_error: None,
        squares: None,
        quasi_coherence: None,
        links: None,
    };
    if !violations.is_empty() {
        return Ok((report, None));
    }
    let states = match propagate_states(s0, rule, col) {
        Ok(s) => s,
        Err(e) => {
            report.propagation_error = Some(e.to_string());
            return Ok((report, None));
        }
    };
    let [coherent, bad, invalid] = square_tally(p, col, &states);
    report.squares = Some(SquareCounts { coherent, bad, invalid });
    if invalid > 0 {
        return Ok((report, None));
    }
    let cx = build_oriented_complex(p, col, s0, rule).stage(Stage::Validation, "building the oriented complex")?;
    let q = validate_quasi_coherence(&cx, p);
    report.quasi_coherence = Some(QuasiCoherence {
        cubes_checked: q.cubes_checked,
        coherent: q.coherent,
        quasi_coherent: q.quasi_coherent,
        offending: q
            .offending
            .iter()
            .map(|o| CubeProblem { base: o.base, facets: o.facets.clone(), reason: o.reason.clone() })
            .collect(),
    });
    let links: Vec<LinkRow> = check_links(&cx, p)
        .into_iter()
        .map(|l| LinkRow {
            vertex: l.vertex,
            ascending_components: l.ascending_components,
            descending_components: l.descending_components,
            passes: l.passes(),
        })
        .collect();
    report.passed = q.is_ok() && links.iter().all(|l| l.passes);
    report.links = Some(links);
    Ok((report, Some(cx)))
}

#[derive(Clone, Debug, Serialize)]
pub struct PolytopeSummary {
    pub name: String,
    pub dimension: usize,
    pub discriminant: u32,
    pub facets: usize,
    pub codim2_faces: usize,
    pub colours: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StateSummary {
    pub index: Option<usize>,
    pub rule: &'static str,
    pub pairs: Vec<(usize, usize)>,
    pub word: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexSummary {
    pub vertices: usize,
    pub edges: usize,
    pub squares: usize,
    pub coherent_squares: usize,
    pub bad_squares: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowSummary {
    pub m: i32,
    pub n: i32,
    pub vertices: usize,
    pub used_vertices: usize,
    pub edges: usize,
    pub squares: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeFormula {
    pub rows: f64,
    pub cols: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemReport {
    pub mode: AssemblyMode,
    pub tangency_rows: usize,
    pub rank: RankReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: Tool = Tool { name: "rigidcover", version: env!("CARGO_PKG_VERSION") };

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: Tool,
    pub config: RunConfig,
    pub input_files: Vec<InputFile>,
    pub polytope: PolytopeSummary,
    pub state: StateSummary,
    pub complex: ComplexSummary,
    pub window: WindowSummary,
    pub size_formula: SizeFormula,
    pub systems: Vec<SystemReport>,
    pub verdict: Verdict,
}

fn state_summary(index: Option<usize>, rule: &StateRule, state: &State) -> StateSummary {
    let pairs = match rule {
        StateRule::Independent => Vec::new(),
        StateRule::Paired(p) => p.iter().map(|&(a, b)| (a + 1, b + 1)).collect(),
    };
    StateSummary { index, rule: rule.name(), pairs, word: state.word() }
}

pub fn window_for(cx: &OrientedComplex, s: i32) -> StageResult<CoverWindow> {
    build_window(cx, -1, 2 * s - 1).stage(Stage::Input, "building the cover window")
}

pub fn assemble_system(w: &CoverWindow, p: &Polytope, mode: AssemblyMode) -> StageResult<CocycleSystem> {
    assemble(w, p, mode).stage(Stage::Engine, "assembling the cocycle system")
}

/// Validation, window, assembly and ranking for one state.
pub fn run_state(inputs: &Inputs, candidate: &Candidate, cfg: &RunConfig) -> StageResult<RunReport> {
    let p = &inputs.polytope;
    let (validation, cx) = validate(p, &inputs.colouring, &inputs.rule, &candidate.state)?;
    let Some(cx) = cx.filter(|_| validation.passed) else {
        return fail(Stage::Validation, validation.failures());
    };
    let w = window_for(&cx, cfg.s)?;
    let rank_cfg = cfg.rank_config();
    let mut systems = Vec::new();
    for mode in cfg.mode.modes() {
        let sys = assemble_system(&w, p, mode)?;
        log::info!("{mode:?} system {}x{}", sys.rows(), sys.cols());
        let rank = analyse(&sys, w.used_vertex_count(), &rank_cfg).stage(Stage::Engine, "ranking the system")?;
        systems.push(SystemReport { mode, tangency_rows: sys.tangency_row_count(), rank });
    }
    if let [a, b] = &systems[..] {
        if a.rank.accounting.h1_bound != b.rank.accounting.h1_bound {
            return fail(
                Stage::Engine,
                format!("assembly modes disagree: bounds {} and {}", a.rank.accounting.h1_bound, b.rank.accounting.h1_bound),
            );
        }
    }
    let verdict = if systems.iter().any(|s| s.rank.verdict == Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        systems[0].rank.verdict
    };
    let (rows, cols) = approximate_size(p.dimension(), p.facet_count(), cx.colours() as u32, p.codim2_faces().len(), cfg.s as usize);
    let squares = |c| cx.count(c);
    Ok(RunReport {
        tool: TOOL,
        config: cfg.clone(),
        input_files: inputs.provenance.clone(),
        polytope: PolytopeSummary {
            name: p.name().to_string(),
            dimension: p.dimension(),
            discriminant: p.discriminant(),
            facets: p.facet_count(),
            codim2_faces: p.codim2_faces().len(),
            colours: inputs.colouring.colours(),
        },
        state: state_summary(candidate.index, &inputs.rule, &candidate.state),
        complex: ComplexSummary {
            vertices: cx.vertex_count(),
            edges: cx.edges().len(),
            squares: cx.squares().len(),
            coherent_squares: squares(rigidcover::complex::SquareClass::Coherent),
            bad_squares: squares(rigidcover::complex::SquareClass::Bad),
        },
        window: WindowSummary {
            m: w.bounds().0,
            n: w.bounds().1,
            vertices: w.vertices().len(),
            used_vertices: w.used_vertex_count(),
            edges: w.edges().len(),
            squares: w.squares().len(),
        },
        size_formula: SizeFormula { rows, cols },
        systems,
        verdict,
    })
}

/// Runs every candidate state; with a search, states failing validation are
/// skipped (and logged) rather than fatal.
pub fn run_all(inputs: &Inputs, cfg: &RunConfig) -> StageResult<Vec<RunReport>> {
    let searched = inputs.states.iter().any(|c| c.index.is_some());
    let limit = cfg.max_states.unwrap_or(usize::MAX);
    let chosen: Vec<&Candidate> = inputs.states.iter().take(limit).collect();
    if chosen.is_empty() {
        return fail(Stage::Validation, "no state passes the link conditions");
    }
    let results: Vec<StageResult<RunReport>> = chosen.par_iter().map(|c| run_state(inputs, c, cfg)).collect();
    let mut reports = Vec::with_capacity(results.len());
    for (c, r) in chosen.iter().zip(results) {
        match r {
            Err(e) if searched && e.stage == Stage::Validation => {
                log::warn!("skipping state {}: {e}", c.state.word());
            }
            Err(e) => return Err(e),
            Ok(r) => reports.push(r),
        }
    }
    if reports.is_empty() {
        return fail(Stage::Validation, "no searched state passes validation");
    }
    Ok(reports)
}

#[derive(Debug, Serialize)]
pub struct CsvRow {
    pub state_index: Option<usize>,
    pub state: String,
    pub s: i32,
    pub mode: AssemblyMode,
    pub rows: usize,
    pub cols: usize,
    pub nullity_numeric: Option<usize>,
    pub nullity_exact: Option<usize>,
    pub gap_ratio: Option<String>,
    pub h1_bound: usize,
    pub verdict: Verdict,
}

pub fn csv_rows(reports: &[RunReport]) -> Vec<CsvRow> {
    reports
        .iter()
        .flat_map(|r| {
            r.systems.iter().map(move |s| CsvRow {
                state_index: r.state.index,
                state: r.state.word.clone(),
                s: r.config.s,
                mode: s.mode,
                rows: s.rank.rows,
                cols: s.rank.cols,
                nullity_numeric: s.rank.nullity.numeric,
                nullity_exact: s.rank.nullity.exact,
                gap_ratio: s.rank.gap_ratio.map(|g| format!("{g:e}")),
                h1_bound: s.rank.accounting.h1_bound,
                verdict: s.rank.verdict,
            })
        })
        .collect()
}
