use std::collections::BTreeSet;

use crate::fst::{closure, optimize, Arc, ClosureMode, Fst, Weight, EPSILON};

use super::alphabet::Alphabet;
use super::grouping::grouping_fst;
use super::{GrammarPack, PackError};

/// Longest fractional part the verbalizer accepts when a decimal token
/// lists `fractional_part` before `integer_part`.
pub const MAX_REORDERED_FRACTION: usize = 3;

/// Copies a quoted value, undoing backslash escapes.
fn unescape(a: &Alphabet) -> Fst {
    let quote = a.label('"').expect("ascii");
    let backslash = a.label('\\').expect("ascii");
    let mut fst = Fst::with_symbols(a.table().clone());
    let inside = fst.add_state();
    let escaped = fst.add_state();
    fst.set_start(inside);
    fst.set_final(inside, Weight::ONE);
    let one = Weight::ONE;
    let chars: Vec<_> = a.word_chars().chain([a.boundary()]).collect();
    for l in chars {
        if l == backslash {
            fst.add_arc(inside, Arc::new(l, EPSILON, one, escaped));
        } else if l != quote {
            fst.add_arc(inside, Arc::new(l, l, one, inside));
        }
    }
    fst.add_arc(escaped, Arc::new(quote, quote, one, inside));
    fst.add_arc(escaped, Arc::new(backslash, backslash, one, inside));
    fst
}

/// `decimal { fractional_part: "F" integer_part: "I" }` → `I.F` for every
/// fraction `F` of at most [`MAX_REORDERED_FRACTION`] digits.
fn decimal_fraction_first(a: &Alphabet) -> Fst {
    let mut fst = a.delete("decimal { fractional_part: \"");
    let hub = fst
        .states()
        .find(|&s| fst.is_final(s))
        .expect("linear chain has a final state");
    fst.set_final(hub, Weight::ZERO);
    let digits: Vec<char> = ('0'..='9').collect();
    let mut frontier = vec![(hub, String::new())];
    while let Some((state, fraction)) = frontier.pop() {
        if !fraction.is_empty() {
            let tail = a.concat(&[
                &a.delete("\" integer_part: \""),
                &a.digits_plus(),
                &a.delete("\" }"),
                &a.insert(&format!(".{fraction}")),
            ]);
            let offset = fst.append_states(&tail);
            let tail_start = tail.start().expect("non-empty") + offset;
            fst.add_arc(state, Arc::new(EPSILON, EPSILON, Weight::ONE, tail_start));
        }
        if fraction.len() < MAX_REORDERED_FRACTION {
            for &d in &digits {
                let next = fst.add_state();
                let l = a.label(d).expect("ascii");
                fst.add_arc(state, Arc::new(l, EPSILON, Weight::ONE, next));
                frontier.push((next, format!("{fraction}{d}")));
            }
        }
    }
    fst
}

/// The verbalization transducer: serialized tokens separated by single
/// spaces in, written text out.
///
/// Every field order of every token is accepted (decimal fractions listed
/// first are limited to [`MAX_REORDERED_FRACTION`] digits). Cardinal and
/// money amounts are grouped per the pack; decimals render as
/// `integer.fractional`; money renders as symbol then amount.
pub fn build_verbalizer(pack: &GrammarPack, a: &Alphabet) -> Result<Fst, PackError> {
    pack.validate()?;
    let group = grouping_fst(a, pack.grouping);
    let close = a.delete("\" }");

    let word = a.concat(&[&a.delete("word { name: \""), &unescape(a), &close]);
    let cardinal = a.concat(&[&a.delete("cardinal { integer: \""), &group, &close]);
    let decimal = a.concat(&[
        &a.delete("decimal { integer_part: \""),
        &a.digits_plus(),
        &a.cross("\" fractional_part: \"", "."),
        &a.digits_plus(),
        &close,
    ]);
    let mut tokens = vec![word, cardinal, decimal, decimal_fraction_first(a)];

    let symbols: BTreeSet<&str> = pack.currencies.iter().map(|c| c.symbol.as_str()).collect();
    for sym in symbols {
        tokens.push(a.concat(&[
            &a.cross(&format!("money {{ currency: \"{sym}\" amount: \""), sym),
            &group,
            &close,
        ]));
        tokens.push(a.concat(&[
            &a.insert(sym),
            &a.delete("money { amount: \""),
            &group,
            &a.delete(&format!("\" currency: \"{sym}\" }}")),
        ]));
    }
    let refs: Vec<&Fst> = tokens.iter().collect();
    let token = optimize(&a.union(&refs));
    let more = closure(&a.concat(&[&a.cross(" ", " "), &token]), ClosureMode::Star);
    Ok(optimize(&a.concat(&[&token, &more])))
}
