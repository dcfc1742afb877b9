use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Label, LabeledSentence, PunctError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabelCount {
    pub count: u64,
    pub percent: f64,
}

/// Label distribution of a dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub sentences: usize,
    pub words: u64,
    pub labels: BTreeMap<Label, LabelCount>,
}

impl CorpusStats {
    pub fn percent(&self, label: Label) -> f64 {
        self.labels.get(&label).map_or(0.0, |c| c.percent)
    }

    pub fn count(&self, label: Label) -> u64 {
        self.labels.get(&label).map_or(0, |c| c.count)
    }
}

pub fn compute_stats(dataset: &[LabeledSentence]) -> Result<CorpusStats, PunctError> {
    let mut counts = [0u64; 4];
    for s in dataset {
        for l in &s.labels {
            counts[l.index()] += 1;
        }
    }
    let words: u64 = counts.iter().sum();
    if words == 0 {
        return Err(PunctError::EmptyDataset);
    }
    let labels = Label::ALL
        .into_iter()
        .map(|l| {
            let count = counts[l.index()];
            (
                l,
                LabelCount {
                    count,
                    percent: 100.0 * count as f64 / words as f64,
                },
            )
        })
        .collect();
    Ok(CorpusStats {
        sentences: dataset.len(),
        words,
        labels,
    })
}
