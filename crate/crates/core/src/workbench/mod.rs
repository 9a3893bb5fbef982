//! Fixtures, the `.ecat` file format, reports and the command-line driver.

pub mod cli;
pub mod fixtures;
pub mod format;
pub mod report;

use crate::actions::ActionError;
use crate::canonical::CanonicalError;
use crate::centers::CenterError;
use crate::core_cat::{BudgetExceeded, CategoryError, ValidationReport};
use crate::enriched_core::EnrichedError;
use crate::monoidal_cat::MonoidalError;

pub use fixtures::{build_fixture, Build, FixtureKind, FixtureSpec};
pub use format::{load_doc, load_str, save_doc, save_str, Document, FileDoc, FunctorEntry, Names};
pub use report::{Outcome, Report};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WorkbenchError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Semantic(String),
    #[error("serialization failed: {0}")]
    Serialize(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid structure:\n{0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Monoidal(#[from] MonoidalError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Enriched(#[from] EnrichedError),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error(transparent)]
    Center(#[from] CenterError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

fn monoidal_budget(e: &MonoidalError) -> bool {
    matches!(e, MonoidalError::Budget(_))
}

fn action_budget(e: &ActionError) -> bool {
    match e {
        ActionError::Budget(_) => true,
        ActionError::Monoidal(m) => monoidal_budget(m),
        _ => false,
    }
}

fn enriched_budget(e: &EnrichedError) -> bool {
    match e {
        EnrichedError::Budget(_) => true,
        EnrichedError::Monoidal(m) => monoidal_budget(m),
        _ => false,
    }
}

fn canonical_budget(e: &CanonicalError) -> bool {
    match e {
        CanonicalError::Budget(_) => true,
        CanonicalError::Action(a) => action_budget(a),
        CanonicalError::Enriched(x) => enriched_budget(x),
        CanonicalError::Monoidal(m) => monoidal_budget(m),
        _ => false,
    }
}

impl WorkbenchError {
    /// Whether the failure is an exhausted search budget rather than a finding.
    pub fn is_budget(&self) -> bool {
        match self {
            WorkbenchError::Budget(_) => true,
            WorkbenchError::Monoidal(m) => monoidal_budget(m),
            WorkbenchError::Action(a) => action_budget(a),
            WorkbenchError::Enriched(e) => enriched_budget(e),
            WorkbenchError::Canonical(c) => canonical_budget(c),
            WorkbenchError::Center(c) => match c {
                CenterError::Budget(_) => true,
                CenterError::Canonical(x) => canonical_budget(x),
                CenterError::Enriched(x) => enriched_budget(x),
                CenterError::Monoidal(x) => monoidal_budget(x),
                CenterError::Action(x) => action_budget(x),
                _ => false,
            },
            _ => false,
        }
    }

    /// Exit status: 2 for budget, usage and unreadable input; 1 for a reported negative.
    pub fn exit_code(&self) -> i32 {
        match self {
            WorkbenchError::Parse(_)
            | WorkbenchError::Io { .. }
            | WorkbenchError::Usage(_)
            | WorkbenchError::Serialize(_) => 2,
            e if e.is_budget() => 2,
            _ => 1,
        }
    }
}
