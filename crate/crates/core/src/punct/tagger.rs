use std::collections::HashMap;

use super::{Label, LabeledSentence, PunctError};

/// Anything that labels a word sequence, one label per word.
pub trait Tagger {
    fn predict(&self, words: &[String]) -> Vec<Label>;
}

pub fn predict_all(tagger: &dyn Tagger, dataset: &[LabeledSentence]) -> Vec<Vec<Label>> {
    dataset.iter().map(|s| tagger.predict(&s.words)).collect()
}

/// Predicts BLANK for every word.
#[derive(Debug, Clone, Copy, Default)]
pub struct MajorityTagger;

impl Tagger for MajorityTagger {
    fn predict(&self, words: &[String]) -> Vec<Label> {
        vec![Label::Blank; words.len()]
    }
}

fn argmax(counts: &[u64; 4]) -> Label {
    let mut best = Label::Blank;
    for l in Label::ALL {
        if counts[l.index()] > counts[best.index()] {
            best = l;
        }
    }
    best
}

/// Most frequent training label per word type.
///
/// Unknown words get BLANK, except in sentence-final position where they
/// get the most frequent sentence-final label.
#[derive(Debug, Clone)]
pub struct UnigramTagger {
    by_word: HashMap<String, Label>,
    final_label: Label,
}

impl UnigramTagger {
    pub fn train(dataset: &[LabeledSentence]) -> Result<Self, PunctError> {
        let mut counts: HashMap<&str, [u64; 4]> = HashMap::new();
        let mut finals = [0u64; 4];
        for s in dataset {
            for (w, l) in s.words.iter().zip(&s.labels) {
                counts.entry(w.as_str()).or_default()[l.index()] += 1;
            }
            if let Some(l) = s.labels.last() {
                finals[l.index()] += 1;
            }
        }
        if counts.is_empty() {
            return Err(PunctError::EmptyDataset);
        }
        Ok(UnigramTagger {
            by_word: counts
                .into_iter()
                .map(|(w, c)| (w.to_string(), argmax(&c)))
                .collect(),
            final_label: argmax(&finals),
        })
    }
}

impl Tagger for UnigramTagger {
    fn predict(&self, words: &[String]) -> Vec<Label> {
        let last = words.len().saturating_sub(1);
        words
            .iter()
            .enumerate()
            .map(|(i, w)| match self.by_word.get(w) {
                Some(&l) => l,
                None if i == last => self.final_label,
                None => Label::Blank,
            })
            .collect()
    }
}
