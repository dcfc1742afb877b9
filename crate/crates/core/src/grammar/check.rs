//! Round-trip checking of a pack's cardinal grammar against an independent
//! number-to-words generator.

use crate::itn::Normalizer;

use super::{group_digits, GrammarPack, Magnitude};

fn first_spelling<'a>(
    words: impl IntoIterator<Item = &'a super::NumberWord>,
    value: u32,
) -> Option<&'a str> {
    words
        .into_iter()
        .find(|w| w.value == value)
        .map(|w| w.spoken.as_str())
}

fn below_hundred(n: u64, pack: &GrammarPack, out: &mut Vec<String>) -> Option<()> {
    let v = n as u32;
    if let Some(s) = first_spelling(&pack.teens, v) {
        out.push(s.to_string());
    } else if v < 10 {
        out.push(first_spelling(&pack.digits, v)?.to_string());
    } else {
        out.push(first_spelling(&pack.ties, v - v % 10)?.to_string());
        if !v.is_multiple_of(10) {
            out.push(first_spelling(&pack.digits, v % 10)?.to_string());
        }
    }
    Some(())
}

fn below_thousand(n: u64, pack: &GrammarPack, out: &mut Vec<String>) -> Option<()> {
    if n >= 1000 {
        return None;
    }
    if n >= 100 {
        out.push(first_spelling(&pack.digits, (n / 100) as u32)?.to_string());
        out.push(pack.hundreds.first()?.clone());
        if n.is_multiple_of(100) {
            return Some(());
        }
        if let Some(conj) = pack.conjunctions.first() {
            out.push(conj.clone());
        }
        return below_hundred(n % 100, pack, out);
    }
    below_hundred(n, pack, out)
}

fn spell(
    n: u64,
    mags: &[&Magnitude],
    limit: Option<u64>,
    pack: &GrammarPack,
    out: &mut Vec<String>,
) -> Option<()> {
    for (i, m) in mags.iter().enumerate() {
        let unit = 10u64.checked_pow(m.exponent)?;
        if n < unit {
            continue;
        }
        let (q, r) = (n / unit, n % unit);
        let cap = match i {
            0 => limit,
            _ => Some(10u64.pow(mags[i - 1].exponent - m.exponent)),
        };
        if cap.is_some_and(|c| q >= c) {
            return None;
        }
        below_thousand(q, pack, out)?;
        out.push(m.spoken.clone());
        if r == 0 {
            return Some(());
        }
        return spell(r, &mags[i + 1..], Some(unit), pack, out);
    }
    below_thousand(n, pack, out)
}

/// Canonical spoken form of `n` under `pack`: first listed spelling of every
/// word, the first conjunction after a hundred when a remainder follows.
/// `None` if the pack's vocabulary cannot express `n`.
pub fn spoken_form(n: u64, pack: &GrammarPack) -> Option<String> {
    if n == 0 {
        return pack.zero_forms().into_iter().next();
    }
    let mags = pack.magnitudes_descending();
    let mut words = Vec::new();
    spell(n, &mags, None, pack, &mut words)?;
    Some(words.join(" "))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTripFailure {
    pub n: u64,
    pub spoken: Option<String>,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: u64,
    pub failure: Option<RoundTripFailure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks one number: its canonical spoken form must inverse-normalize to
/// its grouped digits.
pub fn check_number(normalizer: &Normalizer, n: u64) -> Result<(), RoundTripFailure> {
    let pack = normalizer.pack();
    let expected = group_digits(&n.to_string(), pack.grouping).expect("formatted integer");
    let Some(spoken) = spoken_form(n, pack) else {
        return Err(RoundTripFailure {
            n,
            spoken: None,
            expected,
            got: String::new(),
        });
    };
    let got = normalizer.inverse_normalize(&spoken);
    if got == expected {
        Ok(())
    } else {
        Err(RoundTripFailure {
            n,
            spoken: Some(spoken),
            expected,
            got,
        })
    }
}

/// Runs [`check_number`] over `range` in order, stopping at the first failure.
pub fn round_trip(normalizer: &Normalizer, range: std::ops::RangeInclusive<u64>) -> CheckReport {
    let mut checked = 0;
    for n in range {
        checked += 1;
        if let Err(f) = check_number(normalizer, n) {
            return CheckReport {
                checked,
                failure: Some(f),
            };
        }
    }
    CheckReport {
        checked,
        failure: None,
    }
}
