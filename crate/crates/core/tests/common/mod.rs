//! Test-only oracles shared by the integration suites.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::sync::Arc as Shared;

use rand::Rng;
use vachan::fst::{Arc, Fst, Label, SymbolTable, Weight, EPSILON};

pub type Relation = BTreeMap<(Vec<Label>, Vec<Label>), f64>;

pub fn abc_table() -> Shared<SymbolTable> {
    Shared::new(SymbolTable::from_symbols(["a", "b", "c"]))
}

/// Random machine with at most `max_states` states over labels 1..=3, with
/// epsilons on either side and weights that are multiples of 0.25.
pub fn random_fst(rng: &mut impl Rng, table: &Shared<SymbolTable>, max_states: usize) -> Fst {
    let mut f = Fst::with_symbols(table.clone());
    let n = rng.gen_range(1..=max_states);
    for _ in 0..n {
        f.add_state();
    }
    f.set_start(0);
    let label = |rng: &mut dyn rand::RngCore| -> Label {
        if rng.gen_bool(0.2) {
            EPSILON
        } else {
            rng.gen_range(1..=3)
        }
    };
    for s in 0..n as u32 {
        if rng.gen_bool(0.5) {
            f.set_final(s, Weight::new(rng.gen_range(0..4) as f64 * 0.25));
        }
        for _ in 0..rng.gen_range(1..=4) {
            let il = label(rng);
            let ol = label(rng);
            let w = Weight::new(rng.gen_range(0..8) as f64 * 0.25);
            let to = rng.gen_range(0..n as u32);
            f.add_arc(s, Arc::new(il, ol, w, to));
        }
    }
    f
}

#[derive(PartialEq)]
struct Item(f64, usize);
impl Eq for Item {}
impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
    }
}
impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Every `(input, output)` pair with both sides of length at most `max_len`,
/// mapped to its minimum path weight. Dijkstra over configurations
/// `(state, input so far, output so far)`, so epsilon cycles are handled.
pub fn relation(f: &Fst, max_len: usize) -> Relation {
    let mut rel = Relation::new();
    let Some(start) = f.start() else {
        return rel;
    };
    type Config = (u32, Vec<Label>, Vec<Label>);
    let mut ids: HashMap<Config, usize> = HashMap::new();
    let mut configs: Vec<Config> = Vec::new();
    let mut dist: Vec<f64> = Vec::new();
    let mut heap = BinaryHeap::new();
    let c0 = (start, vec![], vec![]);
    ids.insert(c0.clone(), 0);
    configs.push(c0);
    dist.push(0.0);
    heap.push(Item(0.0, 0));
    while let Some(Item(d, id)) = heap.pop() {
        if d > dist[id] {
            continue;
        }
        let (q, i, o) = configs[id].clone();
        if f.is_final(q) {
            let w = d + f.final_weight(q).cost();
            let e = rel.entry((i.clone(), o.clone())).or_insert(f64::INFINITY);
            if w < *e {
                *e = w;
            }
        }
        for arc in f.arcs(q) {
            let mut ni = i.clone();
            let mut no = o.clone();
            if arc.ilabel != EPSILON {
                ni.push(arc.ilabel);
            }
            if arc.olabel != EPSILON {
                no.push(arc.olabel);
            }
            if ni.len() > max_len || no.len() > max_len {
                continue;
            }
            let nd = d + arc.weight.cost();
            let key = (arc.next_state, ni, no);
            let nid = match ids.get(&key) {
                Some(&x) => x,
                None => {
                    ids.insert(key.clone(), configs.len());
                    configs.push(key);
                    dist.push(f64::INFINITY);
                    configs.len() - 1
                }
            };
            if nd < dist[nid] {
                dist[nid] = nd;
                heap.push(Item(nd, nid));
            }
        }
    }
    rel
}

pub fn relations_equal(a: &Relation, b: &Relation) -> bool {
    a.len() == b.len()
        && a.iter().all(|(k, w)| match b.get(k) {
            Some(v) => (w - v).abs() < 1e-9,
            None => false,
        })
}

/// Describes the first difference between two relations.
pub fn relation_diff(a: &Relation, b: &Relation) -> Option<String> {
    for (k, w) in a {
        match b.get(k) {
            None => return Some(format!("{k:?} (w={w}) only in left")),
            Some(v) if (w - v).abs() >= 1e-9 => return Some(format!("{k:?}: {w} vs {v}")),
            _ => {}
        }
    }
    for (k, w) in b {
        if !a.contains_key(k) {
            return Some(format!("{k:?} (w={w}) only in right"));
        }
    }
    None
}

/// Naive composition: plain state-pair product with no epsilon filter.
/// Redundant epsilon alignments produce duplicate paths, which the tropical
/// `min` absorbs, so the denoted relation is the reference one.
pub fn naive_compose(a: &Fst, b: &Fst) -> Fst {
    let mut out = Fst::new(a.input_symbols().clone(), b.output_symbols().clone());
    let (Some(sa), Some(sb)) = (a.start(), b.start()) else {
        return out;
    };
    let na = a.num_states() as u32;
    let nb = b.num_states() as u32;
    for _ in 0..na * nb {
        out.add_state();
    }
    let id = |qa: u32, qb: u32| qa * nb + qb;
    out.set_start(id(sa, sb));
    for qa in 0..na {
        for qb in 0..nb {
            let src = id(qa, qb);
            if a.is_final(qa) && b.is_final(qb) {
                out.set_final(src, a.final_weight(qa).times(b.final_weight(qb)));
            }
            for ea in a.arcs(qa) {
                if ea.olabel == EPSILON {
                    out.add_arc(
                        src,
                        Arc::new(ea.ilabel, EPSILON, ea.weight, id(ea.next_state, qb)),
                    );
                    continue;
                }
                for eb in b.arcs(qb) {
                    if eb.ilabel == ea.olabel {
                        out.add_arc(
                            src,
                            Arc::new(
                                ea.ilabel,
                                eb.olabel,
                                ea.weight.times(eb.weight),
                                id(ea.next_state, eb.next_state),
                            ),
                        );
                    }
                }
            }
            for eb in b.arcs(qb) {
                if eb.ilabel == EPSILON {
                    out.add_arc(
                        src,
                        Arc::new(EPSILON, eb.olabel, eb.weight, id(qa, eb.next_state)),
                    );
                }
            }
        }
    }
    out
}

/// Relational join of two enumerated relations.
pub fn join(a: &Relation, b: &Relation) -> Relation {
    let mut out = Relation::new();
    for ((u, v), p) in a {
        for ((v2, w), q) in b {
            if v == v2 {
                let e = out.entry((u.clone(), w.clone())).or_insert(f64::INFINITY);
                *e = e.min(p + q);
            }
        }
    }
    out
}

/// Strips epsilons from a random machine's labels by substituting a real symbol.
pub fn without_epsilons(f: &Fst) -> Fst {
    let mut g = Fst::new(f.input_symbols().clone(), f.output_symbols().clone());
    for _ in 0..f.num_states() {
        g.add_state();
    }
    if let Some(s) = f.start() {
        g.set_start(s);
    }
    for s in f.states() {
        g.set_final(s, f.final_weight(s));
        for arc in f.arcs(s) {
            let fix = |l: Label| if l == EPSILON { 1 } else { l };
            g.add_arc(
                s,
                Arc::new(fix(arc.ilabel), fix(arc.olabel), arc.weight, arc.next_state),
            );
        }
    }
    g
}

/// Reference digit grouping, walking the digits from the right.
pub fn reference_grouping(digits: &str, indian: bool) -> String {
    let mut out: Vec<char> = Vec::new();
    for (i, c) in digits.chars().rev().enumerate() {
        let boundary = if indian {
            i == 3 || (i > 3 && (i - 3) % 2 == 0)
        } else {
            i > 0 && i % 3 == 0
        };
        if boundary {
            out.push(',');
        }
        out.push(c);
    }
    out.iter().rev().collect()
}

fn first_word(rows: &[vachan::grammar::NumberWord], value: u32) -> Option<String> {
    rows.iter()
        .find(|w| w.value == value)
        .map(|w| w.spoken.clone())
}

fn say_under_1000(
    q: u64,
    pack: &vachan::grammar::GrammarPack,
    words: &mut Vec<String>,
) -> Option<()> {
    let (h, r) = ((q / 100) as u32, (q % 100) as u32);
    if h > 9 {
        return None;
    }
    if h > 0 {
        words.push(first_word(&pack.digits, h)?);
        words.push(pack.hundreds[0].clone());
        if r > 0 {
            words.extend(pack.conjunctions.first().cloned());
        }
    }
    if r == 0 {
        return Some(());
    }
    if let Some(w) = first_word(&pack.teens, r) {
        words.push(w);
    } else if r < 10 {
        words.push(first_word(&pack.digits, r)?);
    } else {
        words.push(first_word(&pack.ties, r / 10 * 10)?);
        if r % 10 > 0 {
            words.push(first_word(&pack.digits, r % 10)?);
        }
    }
    Some(())
}

/// Spoken form of `n` built chunk by chunk from the largest magnitude down,
/// using the first listed spelling of every word.
pub fn oracle_spoken(n: u64, pack: &vachan::grammar::GrammarPack) -> Option<String> {
    if n == 0 {
        return pack
            .zero
            .first()
            .cloned()
            .or_else(|| first_word(&pack.digits, 0));
    }
    let mut mags: Vec<(u32, String)> = pack
        .magnitudes
        .iter()
        .map(|m| (m.exponent, m.spoken.clone()))
        .collect();
    mags.sort_by_key(|m| std::cmp::Reverse(m.0));
    let mut words = Vec::new();
    let mut rest = n;
    let mut cap = 1000u64;
    for (e, spoken) in &mags {
        let unit = 10u64.pow(*e);
        let q = rest / unit;
        if q >= cap {
            return None;
        }
        if q > 0 {
            say_under_1000(q, pack, &mut words)?;
            words.push(spoken.clone());
        }
        rest %= unit;
        cap = unit;
        if let Some((next, _)) = mags.iter().find(|(x, _)| x < e) {
            cap = 10u64.pow(e - next);
        }
    }
    if rest >= 1000 {
        return None;
    }
    say_under_1000(rest, pack, &mut words)?;
    Some(words.join(" "))
}

/// Every output of an acyclic machine with its cheapest cost.
pub fn all_outputs(f: &Fst) -> BTreeMap<Vec<Label>, f64> {
    fn walk(
        f: &Fst,
        s: u32,
        out: &mut Vec<Label>,
        cost: f64,
        acc: &mut BTreeMap<Vec<Label>, f64>,
        depth: usize,
    ) {
        assert!(depth < 10_000, "machine is not acyclic");
        let fw = f.final_weight(s);
        if !fw.is_zero() {
            let c = cost + fw.cost();
            let e = acc.entry(out.clone()).or_insert(f64::INFINITY);
            *e = e.min(c);
        }
        for arc in f.arcs(s) {
            if arc.olabel != EPSILON {
                out.push(arc.olabel);
            }
            walk(
                f,
                arc.next_state,
                out,
                cost + arc.weight.cost(),
                acc,
                depth + 1,
            );
            if arc.olabel != EPSILON {
                out.pop();
            }
        }
    }
    let mut acc = BTreeMap::new();
    if let Some(s) = f.start() {
        walk(f, s, &mut Vec::new(), 0.0, &mut acc, 0);
    }
    acc
}

/// Every ordering of `items`, by recursive insertion.
pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    match items.split_first() {
        None => vec![Vec::new()],
        Some((head, rest)) => {
            let mut out = Vec::new();
            for p in permutations(rest) {
                for i in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(i, head.clone());
                    out.push(q);
                }
            }
            out
        }
    }
}

/// Labels in the order BLANK, END, COMMA, QM.
pub const LABEL_NAMES: [&str; 4] = ["BLANK", "END", "COMMA", "QM"];

/// Synthetic Devanagari word `i` of the vocabulary for label `class`.
/// Every word belongs to exactly one label.
pub fn planted_word(class: usize, i: usize) -> String {
    const ONSETS: [char; 8] = ['क', 'ग', 'त', 'द', 'प', 'ब', 'म', 'र'];
    const MARKERS: [char; 4] = ['न', 'ल', 'स', 'ह'];
    format!("{}{}{}", ONSETS[i % 8], ONSETS[(i / 8) % 8], MARKERS[class])
}

/// One planted line: its ten words and label indices.
pub struct PlantedLine {
    pub words: Vec<String>,
    pub labels: Vec<usize>,
}

/// `n` ten-word lines (n a multiple of 10) with exactly 85% BLANK, 8% END,
/// 5% COMMA and 2% QM words. Four lines in five end with END, the rest with
/// QM; every other line carries one COMMA word.
pub fn planted_lines(rng: &mut impl Rng, n: usize) -> Vec<PlantedLine> {
    assert_eq!(n % 10, 0);
    let mut kinds: Vec<(bool, bool)> = (0..n).map(|i| (i % 5 == 4, i % 2 == 0)).collect();
    for i in (1..kinds.len()).rev() {
        kinds.swap(i, rng.gen_range(0..=i));
    }
    kinds
        .into_iter()
        .map(|(qm, comma)| {
            let mut labels = vec![0usize; 10];
            labels[9] = if qm { 3 } else { 1 };
            if comma {
                labels[rng.gen_range(0..9)] = 2;
            }
            let words = labels
                .iter()
                .map(|&l| planted_word(l, rng.gen_range(0..40)))
                .collect();
            PlantedLine { words, labels }
        })
        .collect()
}

/// Renders a planted line with danda, comma and question mark, optionally
/// sprinkling in unpunctuated Latin-script words.
pub fn render_planted(line: &PlantedLine, rng: &mut impl Rng, foreign: bool) -> String {
    let mut tokens = Vec::new();
    for (w, &l) in line.words.iter().zip(&line.labels) {
        if foreign && rng.gen_bool(0.05) {
            tokens.push("foreign".to_string());
        }
        let mark = ["", "।", ",", "?"][l];
        tokens.push(format!("{w}{mark}"));
    }
    tokens.join(" ")
}

/// Precision, recall and F1 per label and their mean, written out longhand.
pub fn reference_scores(gold: &[Vec<usize>], pred: &[Vec<usize>]) -> ([f64; 4], f64) {
    let mut f1 = [0.0; 4];
    for (label, score) in f1.iter_mut().enumerate() {
        let mut tp = 0.0;
        let mut fp = 0.0;
        let mut fneg = 0.0;
        for (g, p) in gold.iter().zip(pred) {
            for (&a, &b) in g.iter().zip(p) {
                if a == label && b == label {
                    tp += 1.0;
                } else if b == label {
                    fp += 1.0;
                } else if a == label {
                    fneg += 1.0;
                }
            }
        }
        let precision = if tp + fp > 0.0 { tp / (tp + fp) } else { 0.0 };
        let recall = if tp + fneg > 0.0 {
            tp / (tp + fneg)
        } else {
            0.0
        };
        *score = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
    }
    let macro_f1 = (f1[0] + f1[1] + f1[2] + f1[3]) / 4.0;
    (f1, macro_f1)
}

/// Random token list with at most `max_tokens` tokens of at most
/// `max_fields` uniquely keyed fields; values include quotes, backslashes,
/// spaces and non-ASCII text.
pub fn random_tokens(
    rng: &mut impl Rng,
    max_tokens: usize,
    max_fields: usize,
) -> Vec<vachan::itn::Token> {
    use vachan::grammar::SemioticClass;
    const PIECES: [&str; 10] = ["a", "7", " ", "\"", "\\", "₹", "शब्द", "{", "}", ":"];
    let n = rng.gen_range(0..=max_tokens);
    (0..n)
        .map(|_| {
            let class = SemioticClass::ALL[rng.gen_range(0..4)];
            let k = rng.gen_range(1..=max_fields);
            let fields = (0..k).map(|i| {
                let key = format!("k{i}_{}", rng.gen_range(0..100));
                let len = rng.gen_range(0..6);
                let value: String = (0..len)
                    .map(|_| PIECES[rng.gen_range(0..PIECES.len())])
                    .collect();
                (key, value)
            });
            vachan::itn::Token::new(class, fields)
        })
        .collect()
}

/// Random token the verbalizer is expected to handle, for a pack with the
/// given currency symbols.
pub fn random_verbalizable(rng: &mut impl Rng, symbols: &[String]) -> vachan::itn::Token {
    use vachan::grammar::SemioticClass;
    use vachan::itn::Token;
    let number = |rng: &mut dyn rand::RngCore| -> String {
        match rng.gen_range(0..3) {
            0 => "0".to_string(),
            1 => rng.gen_range(1..1000u64).to_string(),
            _ => rng.gen_range(1..10_000_000_000u64).to_string(),
        }
    };
    match rng.gen_range(0..4) {
        0 => Token::new(SemioticClass::Cardinal, [("integer", number(rng))]),
        1 => {
            let frac_len = rng.gen_range(1..=3);
            let frac: String = (0..frac_len)
                .map(|_| char::from(b'0' + rng.gen_range(0..10)))
                .collect();
            Token::new(
                SemioticClass::Decimal,
                [("integer_part", number(rng)), ("fractional_part", frac)],
            )
        }
        2 => Token::new(
            SemioticClass::Money,
            [
                ("amount", number(rng)),
                ("currency", symbols[rng.gen_range(0..symbols.len())].clone()),
            ],
        ),
        _ => {
            const WORDS: [&str; 6] = ["hello", "नमस्ते", "say\"so\"", "back\\slash", "{x}", "naïve"];
            Token::word(WORDS[rng.gen_range(0..WORDS.len())])
        }
    }
}
