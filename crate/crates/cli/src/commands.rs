use std::path::Path;

use serde::Serialize;

use rigidcover::complex::{validate_colouring, StateSpec};
use rigidcover::cover::{zigzag_table, ZigzagRow};
use rigidcover::rank::Verdict;
use rigidcover::system::{export_float, export_triplets};

use crate::config::{ExportConfig, InputConfig, RunConfig, SearchConfig, ZigzagConfig};
use crate::error::{fail, Stage, StageContext, StageResult};
use crate::pipeline::{
    assemble_system, csv_rows, load_inputs, run_all, validate, window_for, InputFile, RunReport, StateSummary,
    ValidationReport, TOOL,
};

fn emit(path: Option<&Path>, text: &str) -> StageResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).stage(Stage::Input, &format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> StageResult<String> {
    let mut s = serde_json::to_string_pretty(value).stage(Stage::Input, "serializing report")?;
    s.push('\n');
    Ok(s)
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> StageResult<()> {
    let mut w = csv::Writer::from_path(path).stage(Stage::Input, &format!("creating {}", path.display()))?;
    for r in rows {
        w.serialize(r).stage(Stage::Input, "writing CSV")?;
    }
    w.flush().stage(Stage::Input, "writing CSV")
}

#[derive(Serialize)]
struct StateValidation {
    state: StateSummary,
    report: ValidationReport,
}

#[derive(Serialize)]
struct ValidateOutput {
    input_files: Vec<InputFile>,
    colouring_violations: Vec<(u32, u32)>,
    states: Vec<StateValidation>,
    passed: bool,
}

pub fn cmd_validate(cfg: &InputConfig) -> StageResult<()> {
    let inputs = load_inputs(cfg, false)?;
    let violations =
        validate_colouring(&inputs.polytope, &inputs.colouring).stage(Stage::Input, "checking colouring")?;
    let mut states = Vec::new();
    for c in &inputs.states {
        let (report, _) = validate(&inputs.polytope, &inputs.colouring, &inputs.rule, &c.state)?;
        let state = StateSummary {
            index: c.index,
            rule: inputs.rule.name(),
            pairs: Vec::new(),
            word: c.state.word(),
        };
        states.push(StateValidation { state, report });
    }
    let passed = violations.is_empty() && states.iter().all(|s| s.report.passed);
    let out = ValidateOutput { input_files: inputs.provenance, colouring_violations: violations, states, passed };
    emit(None, &pretty(&out)?)?;
    if !passed {
        let first = out
            .states
            .iter()
            .find(|s| !s.report.passed)
            .map(|s| format!("state {}: {}", s.state.word, s.report.failures()))
            .unwrap_or_else(|| format!("colouring violated at facet pairs {:?}", out.colouring_violations));
        return fail(Stage::Validation, first);
    }
    Ok(())
}

/// Runs the pipeline and returns the reports as written.
pub fn cmd_run(cfg: &RunConfig) -> StageResult<Vec<RunReport>> {
    let inputs = load_inputs(&cfg.inputs, true)?;
    let reports = run_all(&inputs, cfg)?;
    let text = if cfg.inputs.search_states {
        let mut out = String::new();
        for r in &reports {
            out.push_str(&serde_json::to_string(r).stage(Stage::Input, "serializing report")?);
            out.push('\n');
        }
        out
    } else {
        pretty(&reports[0])?
    };
    emit(cfg.output.as_deref(), &text)?;
    if let Some(path) = &cfg.csv {
        write_csv(path, &csv_rows(&reports))?;
    }
    let inconclusive: Vec<String> =
        reports.iter().filter(|r| r.verdict == Verdict::Inconclusive).map(|r| r.state.word.clone()).collect();
    if !inconclusive.is_empty() {
        return fail(Stage::Certification, format!("gap ratio below threshold for states {inconclusive:?}"));
    }
    Ok(reports)
}

pub fn cmd_zigzag(cfg: &ZigzagConfig) -> StageResult<Vec<ZigzagRow>> {
    let rows = zigzag_table(cfg.max_dim).stage(Stage::Input, "zigzag table")?;
    emit(cfg.output.as_deref(), &pretty(&rows)?)?;
    if let Some(path) = &cfg.csv {
        write_csv(path, &rows)?;
    }
    if let Some(r) = rows.iter().find(|r| !r.connected) {
        return fail(Stage::Validation, format!("{:?} in dimension {} disconnected at offset {}", r.template, r.dim, r.offset));
    }
    Ok(rows)
}

#[derive(Serialize)]
struct FoundState {
    index: usize,
    word: String,
    o_count: usize,
}

#[derive(Serialize)]
struct SearchOutput {
    tool: crate::pipeline::Tool,
    input_files: Vec<InputFile>,
    rule: &'static str,
    count: usize,
    states: Vec<FoundState>,
}

pub fn cmd_search_states(cfg: &SearchConfig) -> StageResult<usize> {
    let mut inputs_cfg = cfg.inputs.clone();
    inputs_cfg.search_states = true;
    inputs_cfg.state = None;
    let inputs = load_inputs(&inputs_cfg, true)?;
    let count = inputs.states.len();
    let listed = &inputs.states[..count.min(cfg.limit.unwrap_or(usize::MAX))];
    if let Some(dir) = &cfg.write_dir {
        std::fs::create_dir_all(dir).stage(Stage::Input, &format!("creating {}", dir.display()))?;
        for c in listed {
            let spec = StateSpec { rule: inputs.rule.clone(), state: c.state.clone() };
            let path = dir.join(format!("state-{:03}.state", c.index.unwrap_or(0)));
            std::fs::write(&path, spec.to_text(&inputs.polytope)).stage(Stage::Input, &format!("writing {}", path.display()))?;
        }
    }
    let states: Vec<FoundState> = listed
        .iter()
        .map(|c| FoundState {
            index: c.index.unwrap_or(0),
            word: c.state.word(),
            o_count: c.state.count(rigidcover::complex::Letter::O),
        })
        .collect();
    let out = SearchOutput { tool: TOOL, input_files: inputs.provenance, rule: inputs.rule.name(), count, states };
    emit(cfg.output.as_deref(), &pretty(&out)?)?;
    Ok(out.count)
}

pub fn cmd_export_system(cfg: &ExportConfig) -> StageResult<()> {
    let inputs = load_inputs(&cfg.inputs, true)?;
    let Some(first) = inputs.states.first() else {
        return fail(Stage::Validation, "no state passes the link conditions");
    };
    let (report, cx) = validate(&inputs.polytope, &inputs.colouring, &inputs.rule, &first.state)?;
    let Some(cx) = cx.filter(|_| report.passed) else {
        return fail(Stage::Validation, report.failures());
    };
    let w = window_for(&cx, cfg.s)?;
    let modes = cfg.mode.modes();
    if modes.len() != 1 {
        return fail(Stage::Input, "export-system takes a single --mode");
    }
    let sys = assemble_system(&w, &inputs.polytope, modes[0])?;
    if cfg.triplets.is_none() && cfg.float.is_none() {
        return emit(None, &export_triplets(&sys));
    }
    if let Some(p) = &cfg.triplets {
        emit(Some(p), &export_triplets(&sys))?;
    }
    if let Some(p) = &cfg.float {
        emit(Some(p), &export_float(&sys))?;
    }
    Ok(())
}
