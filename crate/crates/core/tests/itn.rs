mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vachan::grammar::{GrammarPack, SemioticClass};
use vachan::itn::{
    generate_reorderings, inverse_normalize, parse, serialize, ItnError, Normalizer, Token,
};

fn normalizers() -> &'static [Normalizer] {
    static N: std::sync::OnceLock<Vec<Normalizer>> = std::sync::OnceLock::new();
    N.get_or_init(|| {
        ["test", "hi"]
            .iter()
            .map(|l| Normalizer::new(GrammarPack::builtin(l).unwrap()).unwrap())
            .collect()
    })
}

fn symbols(n: &Normalizer) -> Vec<String> {
    let set: BTreeSet<String> = n
        .pack()
        .currencies
        .iter()
        .map(|c| c.symbol.clone())
        .collect();
    set.into_iter().collect()
}

#[test]
fn worked_example_end_to_end() {
    let test = GrammarPack::builtin("test").unwrap();
    assert_eq!(
        inverse_normalize("one thousand two hundred and four", &test),
        "1,204"
    );
    assert_eq!(inverse_normalize("hello world", &test), "hello world");
    let hi = GrammarPack::builtin("hi").unwrap();
    let spoken = oracle_spoken(1204, &hi).unwrap();
    assert_eq!(inverse_normalize(&spoken, &hi), "1,204");
}

#[test]
fn mixed_sentences() {
    let n = &normalizers()[0];
    assert_eq!(
        n.inverse_normalize("it costs twenty five dollars and three point five percent"),
        "it costs $25 and 3.5 percent"
    );
    assert_eq!(
        n.inverse_normalize("two million three hundred thousand people, approximately."),
        "2,300,000 people, approximately."
    );
    let hi = &normalizers()[1];
    assert_eq!(hi.inverse_normalize("मेरे पास पाँच सौ रुपये हैं"), "मेरे पास ₹500 हैं");
    assert_eq!(hi.inverse_normalize("तीन दशमलव एक चार"), "3.14");
    assert_eq!(hi.inverse_normalize("दो करोड़"), "2,00,00,000");
}

#[test]
fn two_token_parse_is_in_textual_order() {
    let tokens = parse(r#"cardinal { integer: "5" } word { name: "x" }"#).unwrap();
    assert_eq!(
        tokens,
        vec![
            Token::new(SemioticClass::Cardinal, [("integer", "5")]),
            Token::word("x")
        ]
    );
}

#[test]
fn reorderings_match_permutation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let tokens = random_tokens(&mut rng, 3, 4);
        let got: Vec<String> = generate_reorderings(&tokens).unwrap().collect();
        let mut expected: Vec<String> = vec![String::new()];
        for t in &tokens {
            let mut next = Vec::new();
            for prefix in &expected {
                for p in permutations(&t.fields) {
                    let one = serialize(&[Token::new(t.class, p)]);
                    next.push(if prefix.is_empty() {
                        one
                    } else {
                        format!("{prefix} {one}")
                    });
                }
            }
            expected = next;
        }
        let got_set: BTreeSet<&String> = got.iter().collect();
        assert_eq!(got_set.len(), got.len(), "duplicates");
        assert_eq!(got_set, expected.iter().collect::<BTreeSet<_>>());
        assert_eq!(got[0], serialize(&tokens));
    }
}

#[test]
fn three_fields_give_six_reorderings() {
    let t = Token::new(SemioticClass::Money, [("a", "1"), ("b", "2"), ("c", "3")]);
    let all: BTreeSet<String> = generate_reorderings(std::slice::from_ref(&t))
        .unwrap()
        .collect();
    assert_eq!(all.len(), 6);
    let one = Token::new(SemioticClass::Cardinal, [("a", "1")]);
    assert_eq!(
        generate_reorderings(std::slice::from_ref(&one))
            .unwrap()
            .count(),
        1
    );
}

#[test]
fn verbalizer_accepts_every_reordering() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in normalizers() {
        let syms = symbols(n);
        for _ in 0..150 {
            let count = rng.gen_range(1..=3);
            let tokens: Vec<Token> = (0..count)
                .map(|_| random_verbalizable(&mut rng, &syms))
                .collect();
            let canonical = n.verbalize(&serialize(&tokens)).unwrap();
            for s in generate_reorderings(&tokens).unwrap() {
                assert_eq!(n.verbalize(&s).unwrap(), canonical, "{s}");
            }
        }
    }
}

#[test]
fn verbalized_forms() {
    let n = &normalizers()[1];
    let t = Token::new(
        SemioticClass::Money,
        [("currency", "₹"), ("amount", "1234567")],
    );
    assert_eq!(n.verbalize_tokens(&[t]).unwrap(), "₹12,34,567");
    let d = Token::new(
        SemioticClass::Decimal,
        [("fractional_part", "05"), ("integer_part", "12345")],
    );
    assert_eq!(n.verbalize_tokens(&[d]).unwrap(), "12345.05");
    let bad = Token::new(SemioticClass::Cardinal, [("integer", "12a")]);
    assert_eq!(n.verbalize_tokens(&[bad]), Err(ItnError::Unverbalizable));
}

#[test]
fn concurrent_use_is_consistent() {
    let n = &normalizers()[0];
    let inputs: Vec<String> = (0..200)
        .map(|i| oracle_spoken(i * 37, n.pack()).unwrap())
        .collect();
    let serial: Vec<String> = inputs.iter().map(|s| n.inverse_normalize(s)).collect();
    let parallel: Vec<String> = std::thread::scope(|scope| {
        let handles: Vec<_> = inputs
            .chunks(50)
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|s| n.inverse_normalize(s))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap())
            .collect()
    });
    assert_eq!(serial, parallel);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn serialize_then_parse_is_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tokens = random_tokens(&mut rng, 4, 5);
        prop_assert_eq!(parse(&serialize(&tokens)).unwrap(), tokens);
    }

    #[test]
    fn reordering_count_is_product_of_factorials(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tokens = random_tokens(&mut rng, 3, 4);
        let expected: usize = tokens.iter().map(|t| (1..=t.fields.len()).product::<usize>()).product();
        let got: BTreeSet<String> = generate_reorderings(&tokens).unwrap().collect();
        prop_assert_eq!(got.len(), expected);
    }

    #[test]
    fn parse_never_panics(text in "\\PC{0,40}") {
        let _ = parse(&text);
    }
}
