use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Label, LabeledSentence, PunctError};

/// Sentence counts requested for each split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSizes {
    pub train: usize,
    pub valid: usize,
    pub test: usize,
}

impl SplitSizes {
    pub fn total(&self) -> usize {
        self.train + self.valid + self.test
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Split {
    pub train: Vec<LabeledSentence>,
    pub valid: Vec<LabeledSentence>,
    pub test: Vec<LabeledSentence>,
}

/// Most frequent non-BLANK label of a sentence (ties go to QM, then END,
/// then COMMA); BLANK if it has no punctuation.
pub fn dominant_label(sentence: &LabeledSentence) -> Label {
    let mut counts = [0usize; 4];
    for l in &sentence.labels {
        counts[l.index()] += 1;
    }
    [Label::Qm, Label::End, Label::Comma]
        .into_iter()
        .filter(|l| counts[l.index()] > 0)
        .max_by(|a, b| {
            counts[a.index()]
                .cmp(&counts[b.index()])
                .then(a.priority().cmp(&b.priority()))
        })
        .unwrap_or(Label::Blank)
}

/// Largest-remainder allocation of `size` items across pools.
fn allocate(pools: &[usize], size: usize) -> Vec<usize> {
    let total: usize = pools.iter().sum();
    if total == 0 {
        return vec![0; pools.len()];
    }
    let mut quota: Vec<usize> = pools.iter().map(|&p| size * p / total).collect();
    let mut order: Vec<usize> = (0..pools.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse((size * pools[k]) % total));
    let mut left = size - quota.iter().sum::<usize>();
    for k in order.into_iter().cycle().take(pools.len() * 2) {
        if left == 0 {
            break;
        }
        if quota[k] < pools[k] {
            quota[k] += 1;
            left -= 1;
        }
    }
    quota
}

type Counts = [u64; 4];

fn add(into: &mut Counts, c: &Counts, sign: i64) {
    for (a, b) in into.iter_mut().zip(c) {
        *a = (*a as i64 + sign * *b as i64) as u64;
    }
}

/// Largest per-label percentage-point gap between two count vectors.
fn gap(a: &Counts, b: &Counts) -> f64 {
    let (ta, tb): (u64, u64) = (a.iter().sum(), b.iter().sum());
    if ta == 0 || tb == 0 {
        return 0.0;
    }
    (0..4)
        .map(|l| (100.0 * a[l] as f64 / ta as f64 - 100.0 * b[l] as f64 / tb as f64).abs())
        .fold(0.0, f64::max)
}

const TARGET_GAP: f64 = 0.25;
const ROUNDS: usize = 2000;
const CANDIDATES: usize = 64;

/// Deterministic stratified split.
///
/// Sentences are grouped by [`dominant_label`], shuffled per group with a
/// seeded ChaCha8 generator and dealt to valid, test and train in
/// proportion to group sizes. Random swaps with the remainder then pull the
/// per-label word percentages of valid and test towards train.
pub fn split_dataset(
    sentences: &[LabeledSentence],
    sizes: SplitSizes,
    seed: u64,
) -> Result<Split, PunctError> {
    if sizes.total() > sentences.len() {
        return Err(PunctError::InsufficientData {
            requested: sizes.total(),
            available: sentences.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut strata: BTreeMap<Label, Vec<usize>> = BTreeMap::new();
    for (i, s) in sentences.iter().enumerate() {
        strata.entry(dominant_label(s)).or_default().push(i);
    }
    let mut pools: Vec<Vec<usize>> = strata.into_values().collect();
    for p in pools.iter_mut() {
        p.shuffle(&mut rng);
    }

    let mut sets: [Vec<usize>; 3] = Default::default();
    for (set, size) in sets.iter_mut().zip([sizes.valid, sizes.test, sizes.train]) {
        let lens: Vec<usize> = pools.iter().map(Vec::len).collect();
        for (pool, take) in pools.iter_mut().zip(allocate(&lens, size)) {
            set.extend(pool.drain(..take));
        }
    }
    let [mut valid, mut test, mut train] = sets;
    let mut spare: Vec<usize> = pools.concat();

    let counts: Vec<Counts> = sentences
        .iter()
        .map(|s| {
            let mut c = [0; 4];
            for l in &s.labels {
                c[l.index()] += 1;
            }
            c
        })
        .collect();
    let total = |set: &[usize]| {
        let mut c = [0; 4];
        for &i in set {
            add(&mut c, &counts[i], 1);
        }
        c
    };
    if !train.is_empty() {
        let mut c = [total(&valid), total(&test), total(&train)];
        let score = |c: &[Counts; 3]| gap(&c[0], &c[2]).max(gap(&c[1], &c[2]));
        let mut current = score(&c);
        for _ in 0..ROUNDS {
            if current <= TARGET_GAP {
                break;
            }
            let mut best: Option<(f64, usize, usize, usize, bool)> = None;
            for _ in 0..CANDIDATES {
                let side = if rng.gen_bool(0.5) && !test.is_empty() || valid.is_empty() {
                    1
                } else {
                    0
                };
                let members = if side == 0 { &valid } else { &test };
                if members.is_empty() {
                    break;
                }
                let i = rng.gen_range(0..members.len());
                let from_spare = !spare.is_empty() && rng.gen_bool(0.5);
                let other = if from_spare { &spare } else { &train };
                let j = rng.gen_range(0..other.len());
                let (a, b) = (members[i], other[j]);
                let mut trial = c;
                add(&mut trial[side], &counts[a], -1);
                add(&mut trial[side], &counts[b], 1);
                if !from_spare {
                    add(&mut trial[2], &counts[b], -1);
                    add(&mut trial[2], &counts[a], 1);
                }
                let s = score(&trial);
                if s < current && best.is_none_or(|b| s < b.0) {
                    best = Some((s, side, i, j, from_spare));
                }
            }
            if let Some((s, side, i, j, from_spare)) = best {
                let members = if side == 0 { &mut valid } else { &mut test };
                let other = if from_spare { &mut spare } else { &mut train };
                let (a, b) = (members[i], other[j]);
                members[i] = b;
                other[j] = a;
                add(&mut c[side], &counts[a], -1);
                add(&mut c[side], &counts[b], 1);
                if !from_spare {
                    add(&mut c[2], &counts[b], -1);
                    add(&mut c[2], &counts[a], 1);
                }
                current = s;
            }
        }
    }

    let pick = |set: &[usize]| set.iter().map(|&i| sentences[i].clone()).collect();
    Ok(Split {
        train: pick(&train),
        valid: pick(&valid),
        test: pick(&test),
    })
}
