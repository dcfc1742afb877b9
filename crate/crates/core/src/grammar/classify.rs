use crate::fst::{closure, optimize, with_weight, Arc, ClosureMode, Fst, Label, Weight, EPSILON};

use super::alphabet::Alphabet;
use super::cardinal::build_cardinal;
use super::{GrammarPack, PackError};

/// Cost of one semiotic token, however many words it spans.
pub const CLASS_WEIGHT: f64 = 1.0;
/// Cost of each word passed through verbatim.
pub const PASSTHROUGH_WEIGHT: f64 = 100.0;

fn tagged(a: &Alphabet, class: &str, fields: &[(&str, &Fst)]) -> Fst {
    let mut owned = vec![a.insert(&format!("{class} {{ "))];
    for (key, value) in fields {
        owned.push(a.insert(&format!("{key}: \"")));
        owned.push((*value).clone());
        owned.push(a.insert("\" "));
    }
    owned.push(a.insert("}"));
    let refs: Vec<&Fst> = owned.iter().collect();
    a.concat(&refs)
}

fn fraction_digits(pack: &GrammarPack, a: &Alphabet) -> Result<Fst, PackError> {
    let mut rows: Vec<(String, String)> = pack
        .digits
        .iter()
        .map(|d| (d.spoken.clone(), d.value.to_string()))
        .collect();
    for z in pack.zero_forms() {
        rows.push((z, "0".into()));
    }
    Ok(closure(&a.word_rows(&rows)?, ClosureMode::Plus))
}

fn decimal_from(pack: &GrammarPack, a: &Alphabet, cardinal: &Fst) -> Result<Fst, PackError> {
    if pack.decimal_words.is_empty() {
        return Err(PackError::Validation("config: no decimal word".into()));
    }
    let frac = a.concat(&[
        &a.delete_any(&pack.decimal_words),
        &fraction_digits(pack, a)?,
    ]);
    Ok(tagged(
        a,
        "decimal",
        &[("integer_part", cardinal), ("fractional_part", &frac)],
    ))
}

fn money_from(pack: &GrammarPack, a: &Alphabet, cardinal: &Fst) -> Result<Fst, PackError> {
    if pack.currencies.is_empty() {
        return Err(PackError::Validation("currency.tsv: no currencies".into()));
    }
    let rows: Vec<(String, String)> = pack
        .currencies
        .iter()
        .map(|c| (c.spoken.clone(), c.symbol.clone()))
        .collect();
    let unit = a.word_rows(&rows)?;
    let mut forms = Vec::new();
    if pack.currency_position.allows_after() {
        forms.push(tagged(
            a,
            "money",
            &[("amount", cardinal), ("currency", &unit)],
        ));
    }
    if pack.currency_position.allows_before() {
        forms.push(tagged(
            a,
            "money",
            &[("currency", &unit), ("amount", cardinal)],
        ));
    }
    let refs: Vec<&Fst> = forms.iter().collect();
    Ok(a.union(&refs))
}

/// Decimal class: `<cardinal> <decimal word> <digit>+`, tagged with
/// `integer_part` and `fractional_part`.
pub fn build_decimal(pack: &GrammarPack, a: &Alphabet) -> Result<Fst, PackError> {
    let cardinal = build_cardinal(pack, a)?;
    Ok(optimize(&decimal_from(pack, a, &cardinal)?))
}

/// Money class: a cardinal and a currency unit word, tagged with `amount`
/// and `currency`. Unit-first packs emit the currency field first.
pub fn build_money(pack: &GrammarPack, a: &Alphabet) -> Result<Fst, PackError> {
    let cardinal = build_cardinal(pack, a)?;
    Ok(optimize(&money_from(pack, a, &cardinal)?))
}

/// Any single word, escaped into a quoted value.
fn passthrough(a: &Alphabet) -> Fst {
    let quote = a.label('"').expect("ascii");
    let backslash = a.label('\\').expect("ascii");
    let mut fst = Fst::with_symbols(a.table().clone());
    let start = fst.add_state();
    let inside = fst.add_state();
    let esc_quote = fst.add_state();
    let esc_backslash = fst.add_state();
    let done = fst.add_state();
    fst.set_start(start);
    fst.set_final(done, Weight::ONE);
    let one = Weight::ONE;
    let chars: Vec<Label> = a.word_chars().collect();
    for from in [start, inside] {
        for &l in &chars {
            let arc = if l == quote {
                Arc::new(l, backslash, one, esc_quote)
            } else if l == backslash {
                Arc::new(l, backslash, one, esc_backslash)
            } else {
                Arc::new(l, l, one, inside)
            };
            fst.add_arc(from, arc);
        }
    }
    fst.add_arc(esc_quote, Arc::new(EPSILON, quote, one, inside));
    fst.add_arc(esc_backslash, Arc::new(EPSILON, backslash, one, inside));
    fst.add_arc(inside, Arc::new(a.boundary(), EPSILON, one, done));
    let body = tagged(a, "word", &[("name", &fst)]);
    with_weight(&body, Weight::new(PASSTHROUGH_WEIGHT))
}

/// The classification transducer: one or more tokens, each a tagged
/// cardinal, decimal, money or passthrough word, separated by single spaces.
///
/// Input is the spoken text with every word followed by the boundary symbol.
pub fn build_classifier(pack: &GrammarPack, a: &Alphabet) -> Result<Fst, PackError> {
    let cardinal = build_cardinal(pack, a)?;
    let class = Weight::new(CLASS_WEIGHT);
    let mut classes = vec![with_weight(
        &tagged(a, "cardinal", &[("integer", &cardinal)]),
        class,
    )];
    if !pack.decimal_words.is_empty() {
        classes.push(with_weight(&decimal_from(pack, a, &cardinal)?, class));
    }
    if !pack.currencies.is_empty() {
        classes.push(with_weight(&money_from(pack, a, &cardinal)?, class));
    }
    classes.push(passthrough(a));
    let refs: Vec<&Fst> = classes.iter().collect();
    let token = a.concat(&[&a.union(&refs), &a.insert(" ")]);
    Ok(optimize(&closure(&token, ClosureMode::Plus)))
}
