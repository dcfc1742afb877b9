use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Label, LabeledSentence, PunctError};

/// Word counts indexed by (gold label, predicted label).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[u64; 4]; 4],
}

impl ConfusionMatrix {
    pub fn add(&mut self, gold: Label, predicted: Label) {
        self.counts[gold.index()][predicted.index()] += 1;
    }

    pub fn merge(&mut self, other: &ConfusionMatrix) {
        for (row, o) in self.counts.iter_mut().zip(&other.counts) {
            for (c, x) in row.iter_mut().zip(o) {
                *c += x;
            }
        }
    }

    pub fn get(&self, gold: Label, predicted: Label) -> u64 {
        self.counts[gold.index()][predicted.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn support(&self, label: Label) -> u64 {
        self.counts[label.index()].iter().sum()
    }

    pub fn predicted(&self, label: Label) -> u64 {
        self.counts.iter().map(|row| row[label.index()]).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabelScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: u64,
}

/// Per-label scores and their unweighted mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub labels: BTreeMap<Label, LabelScore>,
    pub macro_f1: f64,
    pub confusion: ConfusionMatrix,
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl EvalReport {
    /// Scores from a confusion matrix. Any 0/0 precision, recall or F1 is 0,
    /// so a label absent from both gold and predictions scores F1 = 0.
    pub fn from_confusion(confusion: ConfusionMatrix) -> Self {
        let labels: BTreeMap<Label, LabelScore> = Label::ALL
            .into_iter()
            .map(|l| {
                let tp = confusion.get(l, l);
                let precision = ratio(tp, confusion.predicted(l));
                let recall = ratio(tp, confusion.support(l));
                let f1 = if precision + recall == 0.0 {
                    0.0
                } else {
                    2.0 * precision * recall / (precision + recall)
                };
                (
                    l,
                    LabelScore {
                        precision,
                        recall,
                        f1,
                        support: confusion.support(l),
                    },
                )
            })
            .collect();
        let macro_f1 = labels.values().map(|s| s.f1).sum::<f64>() / Label::ALL.len() as f64;
        EvalReport {
            labels,
            macro_f1,
            confusion,
        }
    }

    pub fn f1(&self, label: Label) -> f64 {
        self.labels[&label].f1
    }

    /// Aligned plain-text table.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<8}{:>10}{:>10}{:>10}{:>10}",
            "label", "precision", "recall", "f1", "support"
        );
        for (l, s) in &self.labels {
            let _ = writeln!(
                out,
                "{:<8}{:>10.4}{:>10.4}{:>10.4}{:>10}",
                l.name(),
                s.precision,
                s.recall,
                s.f1,
                s.support
            );
        }
        let _ = writeln!(out, "{:<8}{:>30.4}", "macro", self.macro_f1);
        out
    }
}

/// Scores predicted label sequences against gold ones, sentence by sentence.
pub fn evaluate_labels(
    gold: &[Vec<Label>],
    predicted: &[Vec<Label>],
) -> Result<EvalReport, PunctError> {
    let mut confusion = ConfusionMatrix::default();
    for (i, (g, p)) in gold.iter().zip(predicted).enumerate() {
        if g.len() != p.len() {
            return Err(PunctError::LengthMismatch(i));
        }
        for (&g, &p) in g.iter().zip(p) {
            confusion.add(g, p);
        }
    }
    if gold.len() != predicted.len() {
        return Err(PunctError::LengthMismatch(gold.len().min(predicted.len())));
    }
    Ok(EvalReport::from_confusion(confusion))
}

pub fn evaluate(
    gold: &[LabeledSentence],
    predicted: &[Vec<Label>],
) -> Result<EvalReport, PunctError> {
    let gold: Vec<Vec<Label>> = gold.iter().map(|s| s.labels.clone()).collect();
    evaluate_labels(&gold, predicted)
}
