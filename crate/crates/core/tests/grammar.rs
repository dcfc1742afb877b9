mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vachan::fst::{compose, linear};
use vachan::grammar::check::{round_trip, spoken_form};
use vachan::grammar::{
    build_cardinal, build_classifier, build_decimal, build_money, build_verbalizer, group_digits,
    Alphabet, GrammarPack, Grouping, PackError, PackSources,
};
use vachan::itn::Normalizer;

fn packs() -> Vec<GrammarPack> {
    ["test", "hi"]
        .iter()
        .map(|l| GrammarPack::builtin(l).unwrap())
        .collect()
}

#[test]
fn library_spelling_matches_test_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for pack in packs() {
        for n in (0..=20_000).chain((0..2000).map(|_| rng.gen_range(0..1_000_000_000_000u64))) {
            assert_eq!(
                spoken_form(n, &pack),
                oracle_spoken(n, &pack),
                "{} {n}",
                pack.lang
            );
        }
    }
}

#[test]
fn cardinal_outputs_are_unambiguous() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for pack in packs() {
        let a = Alphabet::new(&pack);
        let cardinal = build_cardinal(&pack, &a).unwrap();
        let mut sample: Vec<u64> = (0..=120).collect();
        sample.extend((0..150).map(|_| rng.gen_range(0..100_000)));
        sample.extend((0..30).map(|_| rng.gen_range(0..1_000_000_000)));
        for n in sample {
            let spoken = oracle_spoken(n, &pack).unwrap();
            let (labels, _) = a.encode(&format!("{spoken} "));
            let input = linear(&labels, &labels, a.table().clone(), a.table().clone());
            let outs = all_outputs(&compose(&input, &cardinal).unwrap());
            let best = outs.values().cloned().fold(f64::INFINITY, f64::min);
            let winners: Vec<String> = outs
                .iter()
                .filter(|(_, &c)| c == best)
                .map(|(o, _)| a.decode(o, &[]))
                .collect();
            assert_eq!(winners, vec![n.to_string()], "{} {spoken:?}", pack.lang);
        }
    }
}

#[test]
fn grammar_classes_build_independently() {
    for pack in packs() {
        let a = Alphabet::new(&pack);
        for fst in [
            build_cardinal(&pack, &a).unwrap(),
            build_decimal(&pack, &a).unwrap(),
            build_money(&pack, &a).unwrap(),
            build_classifier(&pack, &a).unwrap(),
            build_verbalizer(&pack, &a).unwrap(),
        ] {
            fst.validate().unwrap();
            assert!(fst.num_states() > 0);
        }
    }
}

#[test]
fn decimal_and_money_need_their_tables() {
    let mut pack = GrammarPack::builtin("test").unwrap();
    pack.decimal_words.clear();
    pack.currencies.clear();
    let a = Alphabet::new(&pack);
    assert!(matches!(
        build_decimal(&pack, &a),
        Err(PackError::Validation(_))
    ));
    assert!(matches!(
        build_money(&pack, &a),
        Err(PackError::Validation(_))
    ));
    // the classifier simply leaves those classes out
    let n = Normalizer::new(pack).unwrap();
    assert_eq!(n.inverse_normalize("three point one four"), "3 point 1 4");
}

#[test]
fn corrupted_digit_row_is_caught() {
    let src = PackSources {
        digits: &format!(
            "{}seven\t1\n",
            include_str!("../../../packs/test/digits.tsv")
        ),
        teens: include_str!("../../../packs/test/teens.tsv"),
        ties: include_str!("../../../packs/test/ties.tsv"),
        magnitudes: include_str!("../../../packs/test/magnitudes.tsv"),
        currency: include_str!("../../../packs/test/currency.tsv"),
        config: include_str!("../../../packs/test/config"),
    };
    let pack = GrammarPack::from_sources("broken", &src).unwrap();
    let report = round_trip(&Normalizer::new(pack).unwrap(), 0..=100);
    let failure = report.failure.expect("corruption must be detected");
    assert_eq!(failure.n, 7);
    assert_eq!(failure.got, "1");
}

#[test]
fn pack_directory_loading_matches_builtin() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../packs/hi");
    let from_dir = GrammarPack::from_dir("hi", std::path::Path::new(dir)).unwrap();
    assert_eq!(from_dir, GrammarPack::builtin("hi").unwrap());
    assert!(matches!(
        GrammarPack::from_dir("xx", std::path::Path::new("/nonexistent")),
        Err(PackError::Io { .. })
    ));
}

#[test]
fn large_western_numbers() {
    let pack = GrammarPack::builtin("test").unwrap();
    let n = Normalizer::new(pack.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let v = rng.gen_range(0..1_000_000_000_000u64);
        let spoken = oracle_spoken(v, &pack).unwrap();
        assert_eq!(
            n.inverse_normalize(&spoken),
            reference_grouping(&v.to_string(), false)
        );
    }
}

fn vocabulary(pack: &GrammarPack) -> BTreeSet<String> {
    let mut v = BTreeSet::new();
    let phrases = pack
        .digits
        .iter()
        .chain(&pack.teens)
        .chain(&pack.ties)
        .map(|w| w.spoken.clone())
        .chain(pack.magnitudes.iter().map(|m| m.spoken.clone()))
        .chain(pack.currencies.iter().map(|c| c.spoken.clone()))
        .chain(pack.hundreds.clone())
        .chain(pack.zero.clone())
        .chain(pack.decimal_words.clone())
        .chain(pack.conjunctions.clone());
    for p in phrases {
        v.extend(p.split(' ').map(String::from));
    }
    v
}

fn test_normalizer() -> &'static Normalizer {
    static N: std::sync::OnceLock<Normalizer> = std::sync::OnceLock::new();
    N.get_or_init(|| Normalizer::new(GrammarPack::builtin("test").unwrap()).unwrap())
}

fn any_word() -> impl Strategy<Value = String> {
    prop_oneof![
        "[a-z]{1,8}",
        "[\"\\\\{}a-z,.?।]{1,5}",
        "\\PC{1,4}",
        prop::sample::select(
            vocabulary(&GrammarPack::builtin("test").unwrap())
                .into_iter()
                .collect::<Vec<_>>()
        ),
    ]
    .prop_filter("no whitespace", |w| {
        !w.chars().any(char::is_whitespace) && !w.is_empty()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn grouping_matches_reference(n in 0u64..u64::MAX) {
        let digits = n.to_string();
        for (style, indian) in [(Grouping::Western, false), (Grouping::Indian, true)] {
            let grouped = group_digits(&digits, style).unwrap();
            prop_assert_eq!(&grouped, &reference_grouping(&digits, indian));
            prop_assert_eq!(grouped.replace(',', ""), digits.clone());
        }
    }

    #[test]
    fn classifier_is_total(words in prop::collection::vec(any_word(), 0..7)) {
        let n = test_normalizer();
        let text = words.join(" ");
        let tagged = n.classify(&text).unwrap();
        let tokens = vachan::itn::parse(&tagged).unwrap();
        prop_assert!(tokens.len() <= words.len());
        let written = n.inverse_normalize(&text);
        for c in ['{', '}'] {
            prop_assert!(!written.contains(c) || text.contains(c));
        }
    }

    #[test]
    fn text_without_pack_words_is_unchanged(words in prop::collection::vec(any_word(), 1..7)) {
        let vocab = vocabulary(&GrammarPack::builtin("test").unwrap());
        prop_assume!(words.iter().all(|w| !vocab.contains(w)));
        let text = words.join("  \t");
        prop_assert_eq!(test_normalizer().inverse_normalize(&text), words.join(" "));
    }

    #[test]
    fn output_is_deterministic(words in prop::collection::vec(any_word(), 0..6)) {
        let text = words.join(" ");
        let a = test_normalizer().inverse_normalize(&text);
        prop_assert_eq!(a, test_normalizer().inverse_normalize(&text));
    }
}
