use thiserror::Error;

use crate::model::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("no surviving scenarios")]
    NoSurvivors,
    #[error("uncoverable residual set")]
    Uncoverable,
    #[error("total weight is zero")]
    ZeroWeight,
    #[error("box {0} does not exist")]
    UnknownBox(usize),
    #[error("node {0} does not exist")]
    UnknownNode(usize),
    #[error("rho must lie in (0, 1], got {0}")]
    BadRho(f64),
    #[error("empty weight multiset")]
    EmptyWeights,
    #[error("step cap of {cap} exceeded on a solver path")]
    StepCap { cap: usize },
    #[error("{0}")]
    Guard(String),
    #[error("not a min-sum set cover instance: {0}")]
    NotMssc(String),
    #[error("bad parameter: {0}")]
    Param(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join(vs: &[Violation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
