use std::fmt;

use thiserror::Error;

use crate::arrangement::Kind;

/// A syntax or well-formedness error in one of the text formats, with the
/// byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub(crate) fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid arrangement parameters: {0}")]
    InvalidArrangement(String),
    #[error("point has {got} coordinates but the arrangement lives in R^{expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("expected a {expected} arrangement, got {got}")]
    WrongKind { expected: Kind, got: Kind },
    #[error("arrangements differ: {0}")]
    ArrangementMismatch(String),
    #[error("inconsistent equality system: {0}")]
    InconsistentEqualities(String),
    #[error("grid parameters below the sufficiency bound: {0}")]
    InsufficientGrid(String),
    #[error("vertex {0} is not in the tree")]
    ForeignVertex(String),
    #[error("vertex {0} is a leaf and has no children")]
    LeafHasNoChildren(String),
    #[error("label {0} is out of range")]
    LabelOutOfRange(usize),
    #[error("not a parent-to-child path: {0}")]
    NotAPath(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("non-realizable code: {0}")]
    NonRealizable(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// A stable snake_case name for the variant, for machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArrangement(_) => "invalid_arrangement",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::WrongKind { .. } => "wrong_kind",
            Error::ArrangementMismatch(_) => "arrangement_mismatch",
            Error::InconsistentEqualities(_) => "inconsistent_equalities",
            Error::InsufficientGrid(_) => "insufficient_grid",
            Error::ForeignVertex(_) => "foreign_vertex",
            Error::LeafHasNoChildren(_) => "leaf_has_no_children",
            Error::LabelOutOfRange(_) => "label_out_of_range",
            Error::NotAPath(_) => "not_a_path",
            Error::InvalidTree(_) => "invalid_tree",
            Error::NonRealizable(_) => "non_realizable",
            Error::InvalidObject(_) => "invalid_object",
            Error::Parse(_) => "parse",
        }
    }
}
