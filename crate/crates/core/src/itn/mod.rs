//! The four-stage inverse text normalization API: classify, parse,
//! generate reorderings, verbalize.

mod reorder;
mod tags;

use thiserror::Error;

use crate::fst::{FstError, IndexedFst};
use crate::grammar::{
    build_classifier, build_verbalizer, Alphabet, GrammarPack, PackError, SemioticClass,
};

pub use reorder::{generate_reorderings, Reorderings, MAX_FIELDS};
pub use tags::{parse, serialize, Token};

/// Serializations tried per utterance before giving up.
pub const MAX_ATTEMPTS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ItnError {
    #[error("malformed tag at byte {0}")]
    MalformedTag(usize),
    #[error("unknown semiotic class {0:?}")]
    UnknownClass(String),
    #[error("{class} token has {count} fields, more than {MAX_FIELDS}")]
    TooManyFields { class: SemioticClass, count: usize },
    #[error("no accepting path")]
    NoAcceptingPath,
    #[error("no serialization of the tokens could be verbalized")]
    Unverbalizable,
}

impl From<FstError> for ItnError {
    fn from(_: FstError) -> Self {
        ItnError::NoAcceptingPath
    }
}

/// Compiled classifier and verbalizer for one language pack.
///
/// Immutable once built; share it across threads by reference.
#[derive(Debug, Clone)]
pub struct Normalizer {
    pack: GrammarPack,
    alphabet: Alphabet,
    classifier: IndexedFst,
    verbalizer: IndexedFst,
}

impl Normalizer {
    pub fn new(pack: GrammarPack) -> Result<Self, PackError> {
        let alphabet = Alphabet::new(&pack);
        let classifier = IndexedFst::new(build_classifier(&pack, &alphabet)?);
        let verbalizer = IndexedFst::new(build_verbalizer(&pack, &alphabet)?);
        Ok(Normalizer {
            pack,
            alphabet,
            classifier,
            verbalizer,
        })
    }

    pub fn pack(&self) -> &GrammarPack {
        &self.pack
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn transduce(&self, fst: &IndexedFst, text: &str) -> Result<String, ItnError> {
        let (labels, unknown) = self.alphabet.encode(text);
        let path = fst.shortest_path(&labels)?;
        Ok(self.alphabet.decode(&path.olabels, &unknown))
    }

    /// Tags the whitespace-separated words of `text` with their
    /// minimum-cost semiotic classes.
    pub fn classify(&self, text: &str) -> Result<String, ItnError> {
        let words: Vec<&str> = text.split_whitespace().collect();
        if words.is_empty() {
            return Ok(String::new());
        }
        let mut input = words.join(" ");
        input.push(' ');
        let tagged = self.transduce(&self.classifier, &input)?;
        Ok(tagged.trim_end().to_string())
    }

    /// Written form of one serialization, or `NoAcceptingPath` if the
    /// verbalizer does not accept this field order.
    pub fn verbalize(&self, serialization: &str) -> Result<String, ItnError> {
        if serialization.is_empty() {
            return Ok(String::new());
        }
        self.transduce(&self.verbalizer, serialization)
    }

    /// Verbalizes the first serialization of `tokens` the verbalizer accepts.
    pub fn verbalize_tokens(&self, tokens: &[Token]) -> Result<String, ItnError> {
        for s in generate_reorderings(tokens)?.take(MAX_ATTEMPTS) {
            match self.verbalize(&s) {
                Ok(written) => return Ok(written),
                Err(ItnError::NoAcceptingPath) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(ItnError::Unverbalizable)
    }

    fn try_inverse_normalize(&self, text: &str) -> Result<String, ItnError> {
        let tagged = self.classify(text)?;
        let tokens = parse(&tagged)?;
        self.verbalize_tokens(&tokens)
    }

    /// Spoken-domain text to written-domain text. Never fails: if any stage
    /// errors, the input is returned unchanged and a warning is logged.
    pub fn inverse_normalize(&self, text: &str) -> String {
        match self.try_inverse_normalize(text) {
            Ok(written) => written,
            Err(e) => {
                log::warn!("inverse normalization failed ({e}); returning input unchanged");
                text.to_string()
            }
        }
    }
}

/// One-shot [`Normalizer::inverse_normalize`]. Compiling the grammars
/// dominates the cost; build a [`Normalizer`] for repeated use.
pub fn inverse_normalize(text: &str, pack: &GrammarPack) -> String {
    match Normalizer::new(pack.clone()) {
        Ok(n) => n.inverse_normalize(text),
        Err(e) => {
            log::warn!("grammar compilation failed ({e}); returning input unchanged");
            text.to_string()
        }
    }
}
