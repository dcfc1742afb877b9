use std::ops::RangeInclusive;

use super::{Label, PunctError};

/// Languages with a built-in preset, with the Unicode block of their script.
pub const SCRIPT_LANGUAGES: &[(&str, RangeInclusive<u32>)] = &[
    ("hi", 0x0900..=0x097F),
    ("mr", 0x0900..=0x097F),
    ("bn", 0x0980..=0x09FF),
    ("as", 0x0980..=0x09FF),
    ("pa", 0x0A00..=0x0A7F),
    ("gu", 0x0A80..=0x0AFF),
    ("or", 0x0B00..=0x0B7F),
    ("ta", 0x0B80..=0x0BFF),
    ("te", 0x0C00..=0x0C7F),
    ("kn", 0x0C80..=0x0CFF),
    ("ml", 0x0D00..=0x0D7F),
];

const DANDA: char = '।';

/// Which characters count as each punctuation label and which scripts are native.
///
/// The first character of each mark list is the one used when rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PunctConfig {
    pub end_marks: Vec<char>,
    pub comma_marks: Vec<char>,
    pub qm_marks: Vec<char>,
    /// Letters outside these code point ranges make a word foreign.
    pub allowed_script_ranges: Vec<RangeInclusive<u32>>,
    pub min_words: usize,
}

impl PunctConfig {
    pub fn new(end_marks: Vec<char>, allowed_script_ranges: Vec<RangeInclusive<u32>>) -> Self {
        PunctConfig {
            end_marks,
            comma_marks: vec![','],
            qm_marks: vec!['?'],
            allowed_script_ranges,
            min_words: 2,
        }
    }

    /// Preset for one of [`SCRIPT_LANGUAGES`]. Scripts that use the danda
    /// end sentences with it or a full stop; the rest with a full stop.
    pub fn for_language(lang: &str) -> Result<Self, PunctError> {
        let (_, range) = SCRIPT_LANGUAGES
            .iter()
            .find(|(l, _)| *l == lang)
            .ok_or_else(|| PunctError::UnknownLanguage(lang.to_string()))?;
        let end = match lang {
            "hi" | "mr" | "bn" | "as" | "pa" | "or" => vec![DANDA, '.'],
            _ => vec!['.'],
        };
        Ok(PunctConfig::new(end, vec![range.clone()]))
    }

    pub fn validate(&self) -> Result<(), PunctError> {
        let sets = [&self.end_marks, &self.comma_marks, &self.qm_marks];
        if sets.iter().any(|s| s.is_empty()) {
            return Err(PunctError::Config(
                "every mark set needs a character".into(),
            ));
        }
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                if let Some(c) = a.iter().find(|c| b.contains(c)) {
                    return Err(PunctError::Config(format!("{c:?} is in two mark sets")));
                }
            }
        }
        if self.min_words == 0 {
            return Err(PunctError::Config("min_words must be at least 1".into()));
        }
        Ok(())
    }

    pub fn label_of(&self, c: char) -> Option<Label> {
        if self.qm_marks.contains(&c) {
            Some(Label::Qm)
        } else if self.end_marks.contains(&c) {
            Some(Label::End)
        } else if self.comma_marks.contains(&c) {
            Some(Label::Comma)
        } else {
            None
        }
    }

    pub fn is_mark(&self, c: char) -> bool {
        self.label_of(c).is_some()
    }

    /// Mark written after a word carrying `label`; `None` for BLANK.
    pub fn primary_mark(&self, label: Label) -> Option<char> {
        match label {
            Label::Blank => None,
            Label::End => self.end_marks.first().copied(),
            Label::Comma => self.comma_marks.first().copied(),
            Label::Qm => self.qm_marks.first().copied(),
        }
    }

    pub fn is_native(&self, c: char) -> bool {
        let cp = c as u32;
        self.allowed_script_ranges.iter().any(|r| r.contains(&cp))
    }
}
