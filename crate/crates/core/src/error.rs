use thiserror::Error;

use crate::poset::Label;

/// Errors raised by poset construction and the algebraic operations built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(Label),
    #[error("unknown label `{0}`")]
    UnknownLabel(Label),
    #[error("relations contain a cycle: {}", render_cycle(.cycle))]
    CycleDetected { cycle: Vec<Label> },
    #[error("label `{0}` occurs in both operands")]
    LabelClash(Label),
    #[error("posets are defined on different ground sets")]
    GroundSetMismatch,
    #[error("subset {{{}}} is not convex", render_set(.0))]
    NotConvex(Vec<Label>),
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("poset has {n} elements, more than the supported {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },
    #[error("vertex `{0}` not found in the outer poset")]
    VertexNotFound(Label),
    #[error("inner poset of a composition must be nonempty")]
    EmptyInner,
    #[error("poset is not N-free (contains an induced N)")]
    NotWn,
    #[error("poset is not nabla-compatible")]
    NotNablaCompatible,
    #[error("operation requires a nonempty poset")]
    EmptyPoset,
    #[error("arity-2 operation expects a poset on {{1,2}}")]
    NotBinary,
    #[error("invalid poset document: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn render_cycle(cycle: &[Label]) -> String {
    cycle.iter().map(Label::as_str).collect::<Vec<_>>().join(" <= ")
}

fn render_set(set: &[Label]) -> String {
    set.iter().map(Label::as_str).collect::<Vec<_>>().join(",")
}
