//! Document formats and instance encoders.

mod dimacs;
mod document;
mod encode;

pub use dimacs::{parse_dimacs, parse_dimacs_with, CnfInstance};
pub use document::{emit_certificate, emit_system, parse_certificate, parse_system, parse_unknown};
pub use encode::{encode_3sat, encode_kcoloring, parse_edges, Graph};

/// Position-bearing errors for every text format; line and term numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Document(String),
    #[error("poly {poly}, term {term}: {msg}")]
    Term { poly: usize, term: usize, msg: String },
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Encode(String),
}
