use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::fst::{parse_rule_file, Rule};

use super::PackError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Grouping {
    /// Separator before the last three digits, then every two (12,34,567).
    #[default]
    Indian,
    /// Separator every three digits (1,234,567).
    Western,
}

impl FromStr for Grouping {
    type Err = PackError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "indian" => Ok(Grouping::Indian),
            "western" => Ok(Grouping::Western),
            other => Err(PackError::Validation(format!("unknown grouping {other:?}"))),
        }
    }
}

impl fmt::Display for Grouping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Grouping::Indian => "indian",
            Grouping::Western => "western",
        })
    }
}

/// Where the currency unit word sits relative to the amount when spoken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CurrencyPosition {
    #[default]
    After,
    Before,
    Both,
}

impl FromStr for CurrencyPosition {
    type Err = PackError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "after" => Ok(CurrencyPosition::After),
            "before" => Ok(CurrencyPosition::Before),
            "both" => Ok(CurrencyPosition::Both),
            other => Err(PackError::Validation(format!(
                "unknown currency_position {other:?}"
            ))),
        }
    }
}

impl CurrencyPosition {
    pub fn allows_after(self) -> bool {
        matches!(self, CurrencyPosition::After | CurrencyPosition::Both)
    }

    pub fn allows_before(self) -> bool {
        matches!(self, CurrencyPosition::Before | CurrencyPosition::Both)
    }
}

/// A spoken form and the number it denotes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberWord {
    pub spoken: String,
    pub value: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Magnitude {
    pub spoken: String,
    /// Power of ten the word multiplies by (thousand = 3, lakh = 5).
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Currency {
    pub spoken: String,
    pub symbol: String,
}

/// Raw text of the files making up a language pack.
#[derive(Debug, Clone, Copy)]
pub struct PackSources<'a> {
    pub digits: &'a str,
    pub teens: &'a str,
    pub ties: &'a str,
    pub magnitudes: &'a str,
    pub currency: &'a str,
    pub config: &'a str,
}

/// Declarative per-language number vocabulary from which every grammar is compiled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrammarPack {
    pub lang: String,
    pub digits: Vec<NumberWord>,
    /// Any subset of 10..=99 spelled irregularly.
    pub teens: Vec<NumberWord>,
    pub ties: Vec<NumberWord>,
    pub hundreds: Vec<String>,
    pub magnitudes: Vec<Magnitude>,
    /// Deleted inside cardinals ("and").
    pub conjunctions: Vec<String>,
    pub decimal_words: Vec<String>,
    pub currencies: Vec<Currency>,
    pub currency_position: CurrencyPosition,
    pub grouping: Grouping,
    pub zero: Vec<String>,
}

const BUILTIN_LANGS: &[&str] = &["hi", "test"];

macro_rules! builtin_sources {
    ($lang:literal) => {
        PackSources {
            digits: include_str!(concat!("../../../../packs/", $lang, "/digits.tsv")),
            teens: include_str!(concat!("../../../../packs/", $lang, "/teens.tsv")),
            ties: include_str!(concat!("../../../../packs/", $lang, "/ties.tsv")),
            magnitudes: include_str!(concat!("../../../../packs/", $lang, "/magnitudes.tsv")),
            currency: include_str!(concat!("../../../../packs/", $lang, "/currency.tsv")),
            config: include_str!(concat!("../../../../packs/", $lang, "/config")),
        }
    };
}

fn normalize_spoken(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(normalize_spoken)
        .filter(|s| !s.is_empty())
        .collect()
}

fn rules(file: &str, text: &str, required: bool) -> Result<Vec<Rule>, PackError> {
    match parse_rule_file(text) {
        Ok(r) => Ok(r),
        Err(crate::fst::FstError::EmptyRuleFile) if !required => Ok(Vec::new()),
        Err(source) => Err(PackError::Rules {
            file: file.to_string(),
            source,
        }),
    }
}

fn number_words(file: &str, rules: Vec<Rule>) -> Result<Vec<NumberWord>, PackError> {
    rules
        .into_iter()
        .map(|r| {
            let written = r.written.trim();
            if written.is_empty() || !written.bytes().all(|b| b.is_ascii_digit()) {
                return Err(PackError::Validation(format!(
                    "{file}: written form {:?} of {:?} is not ASCII digits",
                    r.written, r.spoken
                )));
            }
            let value = written.parse().map_err(|_| {
                PackError::Validation(format!("{file}: {written:?} is out of range"))
            })?;
            Ok(NumberWord {
                spoken: normalize_spoken(&r.spoken),
                value,
            })
        })
        .collect()
}

impl GrammarPack {
    /// Packs compiled into the library.
    pub fn builtin_languages() -> &'static [&'static str] {
        BUILTIN_LANGS
    }

    pub fn builtin(lang: &str) -> Result<Self, PackError> {
        let sources = match lang {
            "hi" => builtin_sources!("hi"),
            "test" => builtin_sources!("test"),
            other => return Err(PackError::UnknownLanguage(other.to_string())),
        };
        Self::from_sources(lang, &sources)
    }

    /// Loads `digits.tsv`, `teens.tsv`, `ties.tsv`, `magnitudes.tsv`,
    /// `currency.tsv` and `config` from `dir`.
    pub fn from_dir(lang: &str, dir: &Path) -> Result<Self, PackError> {
        let read = |name: &str| {
            let path = dir.join(name);
            fs::read_to_string(&path).map_err(|e| PackError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })
        };
        let (digits, teens, ties) = (read("digits.tsv")?, read("teens.tsv")?, read("ties.tsv")?);
        let (magnitudes, currency, config) = (
            read("magnitudes.tsv")?,
            read("currency.tsv")?,
            read("config")?,
        );
        Self::from_sources(
            lang,
            &PackSources {
                digits: &digits,
                teens: &teens,
                ties: &ties,
                magnitudes: &magnitudes,
                currency: &currency,
                config: &config,
            },
        )
    }

    pub fn from_sources(lang: &str, src: &PackSources<'_>) -> Result<Self, PackError> {
        let mut pack = GrammarPack {
            lang: lang.to_string(),
            digits: number_words("digits.tsv", rules("digits.tsv", src.digits, true)?)?,
            teens: number_words("teens.tsv", rules("teens.tsv", src.teens, false)?)?,
            ties: number_words("ties.tsv", rules("ties.tsv", src.ties, false)?)?,
            hundreds: Vec::new(),
            magnitudes: Vec::new(),
            conjunctions: Vec::new(),
            decimal_words: Vec::new(),
            currencies: Vec::new(),
            currency_position: CurrencyPosition::default(),
            grouping: Grouping::default(),
            zero: Vec::new(),
        };
        for r in rules("magnitudes.tsv", src.magnitudes, false)? {
            let exponent = r.written.trim().parse().map_err(|_| {
                PackError::Validation(format!(
                    "magnitudes.tsv: exponent {:?} of {:?} is not an integer",
                    r.written, r.spoken
                ))
            })?;
            pack.magnitudes.push(Magnitude {
                spoken: normalize_spoken(&r.spoken),
                exponent,
            });
        }
        for r in rules("currency.tsv", src.currency, false)? {
            pack.currencies.push(Currency {
                spoken: normalize_spoken(&r.spoken),
                symbol: r.written.trim().to_string(),
            });
        }
        for (i, raw) in src.config.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                PackError::Validation(format!("config line {}: expected key=value", i + 1))
            })?;
            match key.trim() {
                "grouping" => pack.grouping = value.parse()?,
                "decimal" => pack.decimal_words = split_list(value),
                "hundred" => pack.hundreds = split_list(value),
                "zero" => pack.zero = split_list(value),
                "conjunctions" => pack.conjunctions = split_list(value),
                "currency_position" => pack.currency_position = value.parse()?,
                other => {
                    return Err(PackError::Validation(format!(
                        "config line {}: unknown key {other:?}",
                        i + 1
                    )))
                }
            }
        }
        pack.validate()?;
        Ok(pack)
    }

    pub fn validate(&self) -> Result<(), PackError> {
        let fail = |msg: String| Err(PackError::Validation(msg));
        let digit_values: BTreeSet<u32> = self.digits.iter().map(|d| d.value).collect();
        if let Some(bad) = digit_values.iter().find(|&&v| v > 9) {
            return fail(format!("digits.tsv maps to {bad}, expected a single digit"));
        }
        if digit_values.len() != 10 {
            let missing: Vec<u32> = (0..10).filter(|v| !digit_values.contains(v)).collect();
            return fail(format!("digits.tsv does not cover {missing:?}"));
        }
        if let Some(t) = self.teens.iter().find(|t| !(10..=99).contains(&t.value)) {
            return fail(format!(
                "teens.tsv: {} = {} is outside 10..99",
                t.spoken, t.value
            ));
        }
        if let Some(t) = self
            .ties
            .iter()
            .find(|t| !(20..=90).contains(&t.value) || t.value % 10 != 0)
        {
            return fail(format!(
                "ties.tsv: {} = {} is not a multiple of ten in 20..90",
                t.spoken, t.value
            ));
        }
        if self.hundreds.is_empty() {
            return fail("config: no hundred word".into());
        }
        let mut exps = BTreeSet::new();
        for m in &self.magnitudes {
            if m.exponent == 0 || m.exponent > 30 {
                return fail(format!(
                    "magnitudes.tsv: exponent of {} must be in 1..=30",
                    m.spoken
                ));
            }
            if !exps.insert(m.exponent) {
                return fail(format!(
                    "magnitudes.tsv: exponent {} listed twice",
                    m.exponent
                ));
            }
        }
        if let Some(c) = self.currencies.iter().find(|c| c.symbol.is_empty()) {
            return fail(format!("currency.tsv: {} has no symbol", c.spoken));
        }
        let all_spoken = self
            .digits
            .iter()
            .chain(&self.teens)
            .chain(&self.ties)
            .map(|w| &w.spoken)
            .chain(self.hundreds.iter())
            .chain(self.magnitudes.iter().map(|m| &m.spoken))
            .chain(self.currencies.iter().map(|c| &c.spoken))
            .chain(self.conjunctions.iter())
            .chain(self.decimal_words.iter())
            .chain(self.zero.iter());
        for s in all_spoken {
            if s.is_empty() {
                return fail("empty spoken form".into());
            }
            if s.contains(['"', '\\']) {
                return fail(format!("spoken form {s:?} contains a quote or backslash"));
            }
        }
        Ok(())
    }

    /// Magnitudes sorted by descending exponent.
    pub fn magnitudes_descending(&self) -> Vec<&Magnitude> {
        let mut m: Vec<&Magnitude> = self.magnitudes.iter().collect();
        m.sort_by_key(|x| std::cmp::Reverse(x.exponent));
        m
    }

    /// Every spoken form for zero: the `zero` config list plus digit rows for 0.
    pub fn zero_forms(&self) -> Vec<String> {
        let mut forms: Vec<String> = self.zero.clone();
        for d in self.digits.iter().filter(|d| d.value == 0) {
            if !forms.contains(&d.spoken) {
                forms.push(d.spoken.clone());
            }
        }
        forms
    }

    /// Characters used anywhere in the pack.
    pub(crate) fn characters(&self) -> BTreeSet<char> {
        let mut chars = BTreeSet::new();
        let words = self
            .digits
            .iter()
            .chain(&self.teens)
            .chain(&self.ties)
            .map(|w| w.spoken.as_str())
            .chain(self.hundreds.iter().map(String::as_str))
            .chain(self.magnitudes.iter().map(|m| m.spoken.as_str()))
            .chain(self.conjunctions.iter().map(String::as_str))
            .chain(self.decimal_words.iter().map(String::as_str))
            .chain(self.zero.iter().map(String::as_str))
            .chain(
                self.currencies
                    .iter()
                    .flat_map(|c| [c.spoken.as_str(), c.symbol.as_str()]),
            );
        for w in words {
            chars.extend(w.chars().filter(|c| !c.is_whitespace()));
        }
        chars
    }
}
