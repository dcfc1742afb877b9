use unicode_normalization::UnicodeNormalization;

use super::{Label, LabeledSentence, PunctConfig};

/// Why a line produced no training sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    /// Fewer words than the configured minimum.
    TooShort(usize),
}

/// Canonical composition (NFC).
pub fn normalize_line(line: &str) -> String {
    line.nfc().collect()
}

/// Keeps lines that contain at least one configured punctuation mark.
pub fn select_lines<'a, I, S>(lines: I, cfg: &'a PunctConfig) -> impl Iterator<Item = S> + 'a
where
    I: IntoIterator<Item = S>,
    I::IntoIter: 'a,
    S: AsRef<str>,
{
    lines
        .into_iter()
        .filter(move |l| l.as_ref().chars().any(|c| cfg.is_mark(c)))
}

fn is_foreign(word: &str, cfg: &PunctConfig) -> bool {
    word.chars().any(|c| c.is_alphabetic() && !cfg.is_native(c))
}

/// Deletes words containing letters outside the configured scripts. Their
/// punctuation marks stay behind as standalone tokens, so the line keeps
/// its sentence structure with the word missing.
pub fn clean_foreign_words(line: &str, cfg: &PunctConfig) -> String {
    let mut kept: Vec<String> = Vec::new();
    for token in line.split_whitespace() {
        if is_foreign(token, cfg) {
            let marks: String = token.chars().filter(|&c| cfg.is_mark(c)).collect();
            if !marks.is_empty() {
                kept.push(marks);
            }
        } else {
            kept.push(token.to_string());
        }
    }
    kept.join(" ")
}

/// Splits a cleaned line into words and the label of the punctuation after
/// each word.
///
/// Marks at the end of a token, and marks standing alone or leading the
/// next token, label the preceding word; marks inside a word are removed.
pub fn extract_labels(line: &str, cfg: &PunctConfig) -> Result<LabeledSentence, Rejection> {
    let mut words: Vec<String> = Vec::new();
    let mut labels: Vec<Label> = Vec::new();
    for token in line.split_whitespace() {
        let chars: Vec<char> = token.chars().collect();
        let lead = chars.iter().take_while(|&&c| cfg.is_mark(c)).count();
        if lead == chars.len() {
            if let Some(last) = labels.last_mut() {
                for &c in &chars {
                    *last = last.stronger(cfg.label_of(c).expect("mark"));
                }
            }
            continue;
        }
        if let Some(last) = labels.last_mut() {
            for &c in &chars[..lead] {
                *last = last.stronger(cfg.label_of(c).expect("mark"));
            }
        }
        let trail = chars.iter().rev().take_while(|&&c| cfg.is_mark(c)).count();
        let body = &chars[lead..chars.len() - trail];
        let label = chars[chars.len() - trail..]
            .iter()
            .fold(Label::Blank, |l, &c| {
                l.stronger(cfg.label_of(c).expect("mark"))
            });
        words.push(body.iter().filter(|&&c| !cfg.is_mark(c)).collect());
        labels.push(label);
    }
    if words.len() < cfg.min_words {
        return Err(Rejection::TooShort(words.len()));
    }
    Ok(LabeledSentence { words, labels })
}

/// Writes a sentence back out with each label's primary mark after its word.
pub fn render(sentence: &LabeledSentence, cfg: &PunctConfig) -> String {
    let mut out = String::new();
    for (i, (w, l)) in sentence.words.iter().zip(&sentence.labels).enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(w);
        if let Some(m) = cfg.primary_mark(*l) {
            out.push(m);
        }
    }
    out
}

/// Outcome of running raw lines through selection, normalization, cleaning
/// and label extraction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Prepared {
    pub sentences: Vec<LabeledSentence>,
    pub lines_read: usize,
    pub lines_selected: usize,
    pub rejected: usize,
}

pub fn prepare_lines<I, S>(lines: I, cfg: &PunctConfig) -> Prepared
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut out = Prepared::default();
    for line in lines {
        out.lines_read += 1;
        let line = normalize_line(line.as_ref());
        if !line.chars().any(|c| cfg.is_mark(c)) {
            continue;
        }
        out.lines_selected += 1;
        match extract_labels(&clean_foreign_words(&line, cfg), cfg) {
            Ok(s) => out.sentences.push(s),
            Err(_) => out.rejected += 1,
        }
    }
    out
}
