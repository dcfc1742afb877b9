use std::sync::Arc as Shared;

use crate::fst::{
    closure, concat_all, linear, string_file_with, union_all, Arc, ClosureMode, Fst, FstError,
    Label, Rule, SymbolTable, Weight, EPSILON,
};

use super::GrammarPack;

/// Separator between words on the grammar side.
pub(crate) const BOUNDARY: char = ' ';
/// Stands in for characters the pack never mentions.
pub(crate) const OTHER_SYMBOL: &str = "<other>";

/// Character-level symbol table shared by every grammar of one pack.
///
/// Layout: epsilon, the word boundary, the placeholder for unknown
/// characters, printable ASCII, then every other character of the pack.
#[derive(Debug, Clone)]
pub struct Alphabet {
    table: Shared<SymbolTable>,
}

impl Alphabet {
    pub fn new(pack: &GrammarPack) -> Self {
        let mut table = SymbolTable::new();
        table.intern(" ");
        table.intern(OTHER_SYMBOL);
        for b in 0x21u8..=0x7e {
            table.intern(&(b as char).to_string());
        }
        for c in pack.characters() {
            table.intern(c.encode_utf8(&mut [0; 4]));
        }
        Alphabet {
            table: Shared::new(table),
        }
    }

    pub fn table(&self) -> &Shared<SymbolTable> {
        &self.table
    }

    pub(crate) fn other(&self) -> Label {
        2
    }

    pub(crate) fn boundary(&self) -> Label {
        1
    }

    /// Label of a known character.
    pub(crate) fn label(&self, c: char) -> Option<Label> {
        if c == BOUNDARY {
            return Some(self.boundary());
        }
        self.table.id_of(c.encode_utf8(&mut [0; 4]))
    }

    fn labels(&self, s: &str) -> Vec<Label> {
        s.chars()
            .map(|c| {
                self.label(c)
                    .expect("grammar text uses only alphabet characters")
            })
            .collect()
    }

    /// Maps text to labels, replacing unknown characters with the placeholder.
    /// The replaced characters are returned in order.
    pub fn encode(&self, text: &str) -> (Vec<Label>, Vec<char>) {
        let mut unknown = Vec::new();
        let labels = text
            .chars()
            .map(|c| {
                self.label(c).unwrap_or_else(|| {
                    unknown.push(c);
                    self.other()
                })
            })
            .collect();
        (labels, unknown)
    }

    /// Inverse of [`Alphabet::encode`]: placeholders are filled from `unknown` in order.
    pub fn decode(&self, labels: &[Label], unknown: &[char]) -> String {
        let mut rest = unknown.iter();
        let mut out = String::new();
        for &l in labels {
            if l == self.other() {
                if let Some(c) = rest.next() {
                    out.push(*c);
                }
            } else if let Some(s) = self.table.symbol(l) {
                out.push_str(s);
            }
        }
        out
    }

    pub(crate) fn cross(&self, input: &str, output: &str) -> Fst {
        linear(
            &self.labels(input),
            &self.labels(output),
            self.table.clone(),
            self.table.clone(),
        )
    }

    pub(crate) fn insert(&self, output: &str) -> Fst {
        self.cross("", output)
    }

    pub(crate) fn delete(&self, input: &str) -> Fst {
        self.cross(input, "")
    }

    /// Deletes one spoken word (or multi-word phrase) and its trailing boundary.
    pub(crate) fn delete_word(&self, spoken: &str) -> Fst {
        self.delete(&format!("{spoken}{BOUNDARY}"))
    }

    /// Union of `spoken word ␣ → written` rows.
    pub(crate) fn word_rows(&self, rows: &[(String, String)]) -> Result<Fst, FstError> {
        let rules: Vec<Rule> = rows
            .iter()
            .map(|(s, w)| Rule::new(format!("{s}{BOUNDARY}"), w.clone()))
            .collect();
        string_file_with(&rules, &self.table)
    }

    /// Deletes any one of the `words`; the empty list gives the empty-string machine.
    pub(crate) fn delete_any(&self, words: &[String]) -> Fst {
        if words.is_empty() {
            return self.insert("");
        }
        let rows: Vec<(String, String)> =
            words.iter().map(|w| (w.clone(), String::new())).collect();
        self.word_rows(&rows).expect("non-empty rows")
    }

    /// Two-state machine with one arc per `(input, output)` character pair.
    pub(crate) fn char_map(&self, pairs: &[(Label, Label)]) -> Fst {
        let mut fst = Fst::with_symbols(self.table.clone());
        let s = fst.add_state();
        let f = fst.add_state();
        fst.set_start(s);
        fst.set_final(f, Weight::ONE);
        for &(i, o) in pairs {
            fst.add_arc(s, Arc::new(i, o, Weight::ONE, f));
        }
        fst
    }

    /// Identity over the ASCII digits.
    pub(crate) fn digit(&self) -> Fst {
        let pairs: Vec<(Label, Label)> = ('0'..='9')
            .map(|c| {
                let l = self.label(c).expect("ascii");
                (l, l)
            })
            .collect();
        self.char_map(&pairs)
    }

    pub(crate) fn digits_plus(&self) -> Fst {
        closure(&self.digit(), ClosureMode::Plus)
    }

    /// Labels of every non-boundary symbol, including the placeholder.
    pub(crate) fn word_chars(&self) -> impl Iterator<Item = Label> + '_ {
        (0..self.table.len() as Label).filter(|&l| l != EPSILON && l != self.boundary())
    }

    pub(crate) fn concat(&self, parts: &[&Fst]) -> Fst {
        concat_all(parts).expect("shared alphabet")
    }

    pub(crate) fn union(&self, parts: &[&Fst]) -> Fst {
        if parts.is_empty() {
            return Fst::with_symbols(self.table.clone());
        }
        union_all(parts).expect("shared alphabet")
    }

    pub(crate) fn repeat(&self, fst: &Fst, min: usize, max: usize) -> Fst {
        let mut parts: Vec<Fst> = vec![fst.clone(); min];
        let opt = crate::fst::optional(fst);
        parts.extend(std::iter::repeat_n(opt, max - min));
        let refs: Vec<&Fst> = parts.iter().collect();
        if refs.is_empty() {
            return self.insert("");
        }
        self.concat(&refs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_characters_round_trip_through_placeholder() {
        let pack = GrammarPack::builtin("test").unwrap();
        let a = Alphabet::new(&pack);
        let (labels, unknown) = a.encode("naïve ₹5 日本");
        assert_eq!(unknown, vec!['ï', '日', '本']);
        assert_eq!(a.decode(&labels, &unknown), "naïve ₹5 日本");
    }

    #[test]
    fn fixed_layout() {
        let pack = GrammarPack::builtin("hi").unwrap();
        let a = Alphabet::new(&pack);
        assert_eq!(a.table().symbol(1), Some(" "));
        assert_eq!(a.table().symbol(2), Some(OTHER_SYMBOL));
        assert!(a.label('स').is_some());
        assert!(a.label('₹').is_some());
    }
}
