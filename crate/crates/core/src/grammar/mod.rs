//! Language packs and the classification and verbalization grammars
//! compiled from them.

mod alphabet;
mod cardinal;
pub mod check;
mod classify;
mod grouping;
mod pack;
mod verbalize;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fst::FstError;

pub use alphabet::Alphabet;
pub use cardinal::build_cardinal;
pub use classify::{
    build_classifier, build_decimal, build_money, CLASS_WEIGHT, PASSTHROUGH_WEIGHT,
};
pub use grouping::{group_digits, GroupingError};
pub use pack::{
    Currency, CurrencyPosition, GrammarPack, Grouping, Magnitude, NumberWord, PackSources,
};
pub use verbalize::{build_verbalizer, MAX_REORDERED_FRACTION};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PackError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{file}: {source}")]
    Rules { file: String, source: FstError },
    #[error("invalid pack: {0}")]
    Validation(String),
    #[error("no built-in pack for language {0:?}")]
    UnknownLanguage(String),
    #[error("grammar construction failed: {0}")]
    Fst(#[from] FstError),
}

/// Token classes the classifier can emit. `Word` is the passthrough class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemioticClass {
    Cardinal,
    Decimal,
    Money,
    Word,
}

impl SemioticClass {
    pub const ALL: [SemioticClass; 4] = [
        SemioticClass::Cardinal,
        SemioticClass::Decimal,
        SemioticClass::Money,
        SemioticClass::Word,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemioticClass::Cardinal => "cardinal",
            SemioticClass::Decimal => "decimal",
            SemioticClass::Money => "money",
            SemioticClass::Word => "word",
        }
    }
}

impl fmt::Display for SemioticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemioticClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SemioticClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| s.to_string())
    }
}
