use std::collections::BTreeSet;

use crate::fst::{closure, compose, optimize, optional, ClosureMode, Fst, Label};

use super::alphabet::Alphabet;
use super::{GrammarPack, PackError};

/// Spoken forms of 1..=99 as `(spoken, value)` pairs: digits, the explicit
/// teens table, ties, and tie-digit compounds for values the teens table
/// leaves out.
pub(crate) fn atoms(pack: &GrammarPack) -> Vec<(String, u32)> {
    let mut rows: Vec<(String, u32)> = Vec::new();
    for w in pack.digits.iter().filter(|d| d.value > 0) {
        rows.push((w.spoken.clone(), w.value));
    }
    for w in pack.teens.iter().chain(&pack.ties) {
        rows.push((w.spoken.clone(), w.value));
    }
    let explicit: BTreeSet<u32> = pack.teens.iter().map(|t| t.value).collect();
    for tie in &pack.ties {
        for d in pack.digits.iter().filter(|d| d.value > 0) {
            let value = tie.value + d.value;
            if !explicit.contains(&value) {
                rows.push((format!("{} {}", tie.spoken, d.spoken), value));
            }
        }
    }
    rows
}

struct Parts<'a> {
    a: &'a Alphabet,
    digit_nz: Fst,
    atom2: Fst,
    block3: Fst,
}

impl<'a> Parts<'a> {
    fn new(a: &'a Alphabet, pack: &GrammarPack) -> Result<Self, PackError> {
        let padded = |rows: Vec<(String, u32)>, width: usize| -> Result<Fst, PackError> {
            let rows: Vec<(String, String)> = rows
                .into_iter()
                .map(|(s, v)| (s, format!("{v:0width$}")))
                .collect();
            Ok(a.word_rows(&rows)?)
        };
        let nz: Vec<(String, u32)> = pack
            .digits
            .iter()
            .filter(|d| d.value > 0)
            .map(|d| (d.spoken.clone(), d.value))
            .collect();
        let digit_nz = padded(nz, 1)?;
        let atom2 = padded(atoms(pack), 2)?;

        let hundred = a.delete_any(&pack.hundreds);
        let conj = optional(&a.delete_any(&pack.conjunctions));
        let below = a.union(&[&a.insert("00"), &a.concat(&[&conj, &atom2])]);
        let with_hundred = a.concat(&[&digit_nz, &hundred, &below]);
        let block3 = optimize(&a.union(&[&a.concat(&[&a.insert("0"), &atom2]), &with_hundred]));
        Ok(Parts {
            a,
            digit_nz,
            atom2,
            block3,
        })
    }

    /// A non-zero multiplier written as exactly `width` digits.
    fn multiplier(&self, width: usize) -> Fst {
        match width {
            1 => self.digit_nz.clone(),
            2 => self.atom2.clone(),
            3 => self.block3.clone(),
            w => self
                .a
                .concat(&[&self.a.insert(&"0".repeat(w - 3)), &self.block3]),
        }
    }
}

/// Maps `(0:ε)* [1-9] [0-9]*` so padded outputs lose their leading zeros.
fn strip_leading_zeros(a: &Alphabet) -> Fst {
    let zero = a.label('0').expect("ascii");
    let nz: Vec<(Label, Label)> = ('1'..='9')
        .map(|c| {
            let l = a.label(c).expect("ascii");
            (l, l)
        })
        .collect();
    let zeros = closure(
        &a.char_map(&[(zero, crate::fst::EPSILON)]),
        ClosureMode::Star,
    );
    let rest = closure(&a.digit(), ClosureMode::Star);
    a.concat(&[&zeros, &a.char_map(&nz), &rest])
}

/// Cardinal grammar: spoken words, each followed by the boundary, to
/// ungrouped decimal digits without leading zeros.
///
/// Every magnitude contributes an optional `<multiplier> <word>` segment in
/// descending exponent order; the segment for a magnitude fills the digits
/// between it and the next larger one, and the top one takes up to three.
pub fn build_cardinal(pack: &GrammarPack, a: &Alphabet) -> Result<Fst, PackError> {
    pack.validate()?;
    let parts = Parts::new(a, pack)?;
    let mags = pack.magnitudes_descending();
    let conj = optional(&a.delete_any(&pack.conjunctions));

    let mut present = Vec::new();
    let mut absent = Vec::new();
    for (i, m) in mags.iter().enumerate() {
        let width = if i == 0 {
            3
        } else {
            (mags[i - 1].exponent - m.exponent) as usize
        };
        let word = a.delete_word(&m.spoken);
        present.push(a.concat(&[&parts.multiplier(width), &word]));
        absent.push(a.insert(&"0".repeat(width)));
    }
    let low_width = mags.last().map_or(3, |m| m.exponent as usize);
    let low_present = a.concat(&[&conj, &parts.multiplier(low_width)]);
    let low_absent = a.insert(&"0".repeat(low_width));

    let either: Vec<Fst> = present
        .iter()
        .zip(&absent)
        .map(|(p, z)| a.union(&[p, z]))
        .collect();
    // the first present segment decides where the number starts
    let mut leading = Vec::new();
    for i in 0..mags.len() {
        let mut seq: Vec<&Fst> = absent[..i].iter().collect();
        seq.push(&present[i]);
        seq.extend(either[i + 1..].iter());
        leading.push(a.concat(&seq));
    }
    let leading_refs: Vec<&Fst> = leading.iter().collect();
    let high = a.union(&leading_refs);
    let with_high = a.concat(&[&high, &a.union(&[&low_absent, &low_present])]);
    let low_alone = parts.multiplier(low_width);
    let mut only_low: Vec<&Fst> = absent.iter().collect();
    only_low.push(&low_alone);
    let only_low = a.concat(&only_low);

    let padded = optimize(&a.union(&[&with_high, &only_low]));
    let positive = compose(&padded, &strip_leading_zeros(a))?;

    let zero_rows: Vec<(String, String)> = pack
        .zero_forms()
        .into_iter()
        .map(|z| (z, "0".to_string()))
        .collect();
    let zero = a.word_rows(&zero_rows)?;
    Ok(optimize(&a.union(&[&positive, &zero])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fst::shortest_path_labels;

    fn run(pack: &GrammarPack, spoken: &str) -> Option<String> {
        let a = Alphabet::new(pack);
        let fst = build_cardinal(pack, &a).unwrap();
        let (labels, unknown) = a.encode(&format!("{spoken} "));
        let path = shortest_path_labels(&fst, &labels).ok()?;
        Some(a.decode(&path.olabels, &unknown))
    }

    #[test]
    fn english_style_examples() {
        let pack = GrammarPack::builtin("test").unwrap();
        assert_eq!(
            run(&pack, "one thousand two hundred and four").as_deref(),
            Some("1204")
        );
        assert_eq!(run(&pack, "zero").as_deref(), Some("0"));
        assert_eq!(run(&pack, "twenty one").as_deref(), Some("21"));
        assert_eq!(run(&pack, "seven million five").as_deref(), Some("7000005"));
        assert_eq!(
            run(&pack, "nine hundred ninety nine billion").as_deref(),
            Some("999000000000")
        );
        assert_eq!(run(&pack, "one hundred").as_deref(), Some("100"));
        assert_eq!(run(&pack, "thousand"), None);
        assert_eq!(run(&pack, "zero one"), None);
        assert_eq!(run(&pack, "one thousand thousand"), None);
    }

    #[test]
    fn hindi_examples() {
        let pack = GrammarPack::builtin("hi").unwrap();
        assert_eq!(run(&pack, "एक हज़ार दो सौ चार").as_deref(), Some("1204"));
        assert_eq!(
            run(&pack, "बारह लाख चौंतीस हज़ार पाँच सौ सड़सठ").as_deref(),
            Some("1234567")
        );
        assert_eq!(run(&pack, "शून्य").as_deref(), Some("0"));
    }

    #[test]
    fn hindi_atoms_come_from_teens_table() {
        let pack = GrammarPack::builtin("hi").unwrap();
        let rows = atoms(&pack);
        let values: BTreeSet<u32> = rows.iter().map(|r| r.1).collect();
        assert_eq!(values, (1..=99).collect());
        // no tie-digit compounds: every value 10..99 is explicit
        assert!(rows.iter().all(|(s, _)| !s.contains(' ')));
    }
}
