//! Punctuation-restoration datasets: line selection, cleaning, per-word
//! labels, stratified splits, statistics, and macro-F1 scoring.

mod config;
mod eval;
mod extract;
mod io;
mod split;
mod stats;
mod tagger;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use config::{PunctConfig, SCRIPT_LANGUAGES};
pub use eval::{evaluate, evaluate_labels, ConfusionMatrix, EvalReport, LabelScore};
pub use extract::{
    clean_foreign_words, extract_labels, normalize_line, prepare_lines, render, select_lines,
    Prepared, Rejection,
};
pub use io::{read_jsonl, read_label_sequences, write_jsonl};
pub use split::{dominant_label, split_dataset, Split, SplitSizes};
pub use stats::{compute_stats, CorpusStats, LabelCount};
pub use tagger::{predict_all, MajorityTagger, Tagger, UnigramTagger};

/// What follows a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Label {
    Blank,
    End,
    Comma,
    Qm,
}

impl Label {
    pub const ALL: [Label; 4] = [Label::Blank, Label::End, Label::Comma, Label::Qm];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::Blank => "BLANK",
            Label::End => "END",
            Label::Comma => "COMMA",
            Label::Qm => "QM",
        }
    }

    /// Rank used when several marks follow one word: QM > END > COMMA > BLANK.
    pub(crate) fn priority(self) -> u8 {
        match self {
            Label::Blank => 0,
            Label::Comma => 1,
            Label::End => 2,
            Label::Qm => 3,
        }
    }

    pub(crate) fn stronger(self, other: Label) -> Label {
        if other.priority() > self.priority() {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Label {
    type Err = PunctError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| PunctError::UnknownLabel(s.to_string()))
    }
}

/// Words with one label each.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledSentence {
    pub words: Vec<String>,
    pub labels: Vec<Label>,
}

impl LabeledSentence {
    pub fn new(words: Vec<String>, labels: Vec<Label>) -> Self {
        assert_eq!(words.len(), labels.len(), "one label per word");
        LabeledSentence { words, labels }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PunctError {
    #[error("not enough sentences: {requested} requested, {available} available")]
    InsufficientData { requested: usize, available: usize },
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("sentence {0}: gold and predicted lengths differ")]
    LengthMismatch(usize),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("no punctuation preset for language {0:?}")]
    UnknownLanguage(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("line {line}: {message}")]
    Json { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}
