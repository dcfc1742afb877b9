//! Weighted finite-state transducers over the tropical semiring.
//!
//! Machines are built from rule files and strings, combined with union,
//! concatenation, closure and composition, and queried with a
//! best-path search that breaks cost ties lexicographically.

mod compose;
#[allow(clippy::module_inception)]
mod fst;
mod io;
mod ops;
mod optimize;
mod search;
mod symbols;
mod weight;

use thiserror::Error;

pub use compose::compose;
pub use fst::{Arc, Fst, StateId};
pub use io::{parse_rule_file, string_file, string_file_with, Rule};
pub use ops::{
    closure, compile_string, concat, concat_all, invert, linear, optional, project_input,
    project_output, union, union_all, with_weight, ClosureMode,
};
pub use optimize::{connect, optimize, rm_epsilon};
pub use search::{shortest_path, shortest_path_labels, IndexedFst, Path};
pub use symbols::{Label, SymbolTable, EPSILON, EPSILON_SYMBOL};
pub use weight::Weight;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FstError {
    #[error("symbol tables are not compatible")]
    SymbolTableMismatch,
    #[error("no accepting path for the input")]
    NoAcceptingPath,
    #[error("rule file has no rows")]
    EmptyRuleFile,
    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("symbol {0:?} is not in the symbol table")]
    UnknownSymbol(String),
    #[error("arc label is not in the symbol table")]
    UnknownLabel,
    #[error("state {0} does not exist")]
    InvalidState(StateId),
    #[error("operation needs at least one operand")]
    NoOperands,
    #[error("bad binary machine: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}
