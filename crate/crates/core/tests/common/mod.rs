#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use spinsurgery_core::algebra::enumerate_chains;
use spinsurgery_core::{Curve, HomologyZ, Letter, TwistWord};

pub fn z(v: &[i64]) -> HomologyZ {
    HomologyZ::new(v.to_vec()).unwrap()
}

/// Primitive classes with entries in {-1, 0, 1}, one per ± pair.
pub fn small_classes(g: usize) -> Vec<HomologyZ> {
    let n = 2 * g;
    let mut out = Vec::new();
    for k in 0..3usize.pow(n as u32) {
        let mut r = k;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (r % 3) as i64 - 1;
                r /= 3;
                d
            })
            .collect();
        let first = v.iter().find(|&&x| x != 0);
        if first == Some(&1) {
            out.push(HomologyZ::new(v).unwrap());
        }
    }
    out
}

fn proper_subsets(g: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << g) - 1)
        .map(|m| (1..=g).filter(|h| m >> (h - 1) & 1 == 1).collect())
        .collect()
}

fn cached(
    slot: &'static [OnceLock<Vec<Letter>>; 4],
    g: usize,
    build: fn(usize) -> Vec<Letter>,
) -> Vec<Letter> {
    slot[g].get_or_init(|| build(g)).clone()
}

static LEVEL2: [OnceLock<Vec<Letter>>; 4] = [const { OnceLock::new() }; 4];
static TORELLI: [OnceLock<Vec<Letter>>; 4] = [const { OnceLock::new() }; 4];

/// Generators of the level-2 group used by the random-word suites.
pub fn letter_pool(g: usize) -> Vec<Letter> {
    cached(&LEVEL2, g, build_letter_pool)
}

/// Separating twists and bounding pairs.
pub fn torelli_pool(g: usize) -> Vec<Letter> {
    cached(&TORELLI, g, build_torelli_pool)
}

fn build_letter_pool(g: usize) -> Vec<Letter> {
    let mut pool = Vec::new();
    for c in small_classes(g) {
        for e in [2, -2] {
            pool.push(Letter::new(Curve::Nonseparating(c.clone()), e));
        }
    }
    pool.push(Letter::new(
        Curve::Nonseparating(small_classes(g)[0].clone()),
        4,
    ));
    pool.extend(torelli_pool(g));
    pool
}

fn build_torelli_pool(g: usize) -> Vec<Letter> {
    let mut pool = Vec::new();
    for s in proper_subsets(g) {
        for e in [1, -1] {
            pool.push(Letter::new(Curve::Separating(s.clone()), e));
        }
    }
    if g >= 2 {
        let chains = enumerate_chains(g);
        let step = (chains.len() / 24).max(1);
        for chain in chains.into_iter().step_by(step) {
            for e in [1, -1] {
                pool.push(Letter::new(Curve::BoundingPair(chain.clone()), e));
            }
        }
    }
    pool
}

pub fn word_from(g: usize, pool: &[Letter], picks: &[usize]) -> TwistWord {
    TwistWord::new(
        g,
        picks
            .iter()
            .map(|&i| pool[i % pool.len()].clone())
            .collect(),
    )
    .unwrap()
}

/// A genus, a random level-2 word of length ≤ `max_len`, and spin data bits.
pub fn arb_level2(
    genera: std::ops::RangeInclusive<usize>,
    max_len: usize,
) -> impl Strategy<Value = (TwistWord, u32, u32)> {
    genera.prop_flat_map(move |g| {
        let pool = letter_pool(g);
        (
            proptest::collection::vec(any::<usize>(), 0..=max_len),
            any::<u32>(),
            any::<u32>(),
        )
            .prop_map(move |(picks, s, x)| (word_from(g, &pool, &picks), s, x))
    })
}

pub fn arb_torelli(
    genera: std::ops::RangeInclusive<usize>,
    max_len: usize,
) -> impl Strategy<Value = TwistWord> {
    genera.prop_flat_map(move |g| {
        let pool = torelli_pool(g);
        proptest::collection::vec(any::<usize>(), 0..=max_len)
            .prop_map(move |picks| word_from(g, &pool, &picks))
    })
}
