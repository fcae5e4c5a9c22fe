//! Seeded samplers for words, spin data and algebra elements.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinsurgery_core::algebra::AlgebraElement;
use spinsurgery_core::homology::intersect;
use spinsurgery_core::mapping::Chain;
use spinsurgery_core::{CohomologyF2, Curve, HomologyZ, Letter, SpinStructure, TwistWord, Z8};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A primitive class with coefficients in `-2..=2`.
pub fn class(rng: &mut Rng8, genus: usize) -> HomologyZ {
    loop {
        let v: Vec<i64> = (0..2 * genus).map(|_| rng.gen_range(-2..=2)).collect();
        if let Ok(c) = HomologyZ::new(v) {
            if c.is_primitive() {
                return c;
            }
        }
    }
}

fn small_class(rng: &mut Rng8, genus: usize) -> HomologyZ {
    loop {
        let v: Vec<i64> = (0..2 * genus).map(|_| rng.gen_range(-1..=1)).collect();
        if let Ok(c) = HomologyZ::new(v) {
            if c.is_primitive() {
                return c;
            }
        }
    }
}

fn meets_once(u: &HomologyZ, v: &HomologyZ) -> bool {
    intersect(u, v).map(|k| k.abs() == 1).unwrap_or(false)
}

/// A chain `(C_1, C_2, C_3)` by rejection over small classes.
pub fn chain(rng: &mut Rng8, genus: usize) -> Chain {
    assert!(genus >= 2, "bounding pairs need genus at least 2");
    loop {
        let c1 = small_class(rng, genus);
        let c2 = small_class(rng, genus);
        if !meets_once(&c1, &c2) {
            continue;
        }
        for _ in 0..64 {
            let c3 = small_class(rng, genus);
            if meets_once(&c2, &c3) && intersect(&c1, &c3) == Ok(0) {
                if let Ok(chain) = Chain::new(c1.clone(), c2.clone(), c3) {
                    return chain;
                }
            }
        }
    }
}

fn separating(rng: &mut Rng8, genus: usize) -> Curve {
    let mut handles: Vec<usize> = (1..=genus).collect();
    handles.shuffle(rng);
    let k = rng.gen_range(1..genus);
    let mut chosen = handles[..k].to_vec();
    chosen.sort_unstable();
    Curve::Separating(chosen)
}

/// A Torelli generator: a separating twist or a bounding pair, exponent ±1.
pub fn torelli_letter(rng: &mut Rng8, genus: usize) -> Letter {
    let curve = if rng.gen_bool(0.4) {
        separating(rng, genus)
    } else {
        Curve::BoundingPair(chain(rng, genus))
    };
    Letter::new(curve, if rng.gen() { 1 } else { -1 })
}

/// A level-2 generator: mostly squared twists, with Torelli letters mixed in
/// from genus 2 on.
pub fn level2_letter(rng: &mut Rng8, genus: usize) -> Letter {
    if genus >= 2 && rng.gen_bool(0.35) {
        return torelli_letter(rng, genus);
    }
    let e = *[2i64, -2, 2, -2, 4, -4].choose(rng).unwrap();
    Letter::new(Curve::Nonseparating(class(rng, genus)), e)
}

pub fn level2_word(rng: &mut Rng8, genus: usize, max_len: usize) -> TwistWord {
    let n = rng.gen_range(0..=max_len);
    TwistWord::new(genus, (0..n).map(|_| level2_letter(rng, genus)).collect())
        .expect("sampled letters are level 2")
}

pub fn torelli_word(rng: &mut Rng8, genus: usize, max_len: usize) -> TwistWord {
    let n = rng.gen_range(0..=max_len);
    TwistWord::new(genus, (0..n).map(|_| torelli_letter(rng, genus)).collect())
        .expect("sampled letters are Torelli")
}

pub fn spin(rng: &mut Rng8, genus: usize) -> SpinStructure {
    SpinStructure::from_qvals(genus, rng.gen())
}

pub fn cohomology(rng: &mut Rng8, genus: usize) -> CohomologyF2 {
    CohomologyF2::new(genus, rng.gen::<u32>() & ((1 << (2 * genus)) - 1))
}

/// An element with up to `terms` random monomials of any degree.
pub fn element(rng: &mut Rng8, genus: usize, terms: usize) -> AlgebraElement {
    let n = rng.gen_range(0..=terms);
    let all = 1u32 << (2 * genus);
    AlgebraElement::from_terms(
        genus,
        (0..n).map(|_| (rng.gen_range(0..all), Z8::new(rng.gen_range(0..8)))),
    )
    .expect("masks are in range")
}
