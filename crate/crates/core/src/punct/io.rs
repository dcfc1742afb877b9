use std::io::{BufRead, Write};

use serde::Deserialize;

use super::{Label, LabeledSentence, PunctError};

/// One JSON object per line: `{"words": [...], "labels": [...]}`.
pub fn write_jsonl(mut w: impl Write, sentences: &[LabeledSentence]) -> Result<(), PunctError> {
    for s in sentences {
        let line = serde_json::to_string(s).map_err(|e| PunctError::Io(e.to_string()))?;
        writeln!(w, "{line}").map_err(|e| PunctError::Io(e.to_string()))?;
    }
    Ok(())
}

fn lines(r: impl BufRead) -> impl Iterator<Item = Result<(usize, String), PunctError>> {
    r.lines().enumerate().filter_map(|(i, l)| match l {
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some(Ok((i + 1, l))),
        Err(e) => Some(Err(PunctError::Io(e.to_string()))),
    })
}

pub fn read_jsonl(r: impl BufRead) -> Result<Vec<LabeledSentence>, PunctError> {
    lines(r)
        .map(|l| {
            let (line, text) = l?;
            let s: LabeledSentence = serde_json::from_str(&text).map_err(|e| PunctError::Json {
                line,
                message: e.to_string(),
            })?;
            if s.words.len() != s.labels.len() {
                return Err(PunctError::Json {
                    line,
                    message: "words and labels differ in length".into(),
                });
            }
            Ok(s)
        })
        .collect()
}

#[derive(Deserialize)]
struct Labels {
    labels: Vec<Label>,
}

/// Reads only the `labels` field of each line, as in prediction files.
pub fn read_label_sequences(r: impl BufRead) -> Result<Vec<Vec<Label>>, PunctError> {
    lines(r)
        .map(|l| {
            let (line, text) = l?;
            serde_json::from_str::<Labels>(&text)
                .map(|x| x.labels)
                .map_err(|e| PunctError::Json {
                    line,
                    message: e.to_string(),
                })
        })
        .collect()
}
