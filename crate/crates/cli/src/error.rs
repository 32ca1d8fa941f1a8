use std::fmt;

/// Failure classes, each with its own exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Input,
    Validation,
    Engine,
    Certification,
}

impl Stage {
    pub fn exit_code(self) -> i32 {
        match self {
            Stage::Input => 2,
            Stage::Validation => 3,
            Stage::Engine => 4,
            Stage::Certification => 5,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Stage::Input => "input",
            Stage::Validation => "validation",
            Stage::Engine => "engine",
            Stage::Certification => "certification",
        }
    }
}

#[derive(Debug)]
pub struct StageError {
    pub stage: Stage,
    pub error: anyhow::Error,
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {:#}", self.stage.tag(), self.error)
    }
}

impl std::error::Error for StageError {}

pub type StageResult<T> = Result<T, StageError>;

pub trait StageContext<T> {
    fn stage(self, stage: Stage, what: &str) -> StageResult<T>;
}

impl<T, E: Into<anyhow::Error>> StageContext<T> for Result<T, E> {
    fn stage(self, stage: Stage, what: &str) -> StageResult<T> {
        self.map_err(|e| StageError { stage, error: e.into().context(what.to_string()) })
    }
}

pub fn fail<T>(stage: Stage, msg: impl Into<String>) -> StageResult<T> {
    Err(StageError { stage, error: anyhow::anyhow!(msg.into()) })
}
