//! Blow-ups and handle slides leave the Rochlin invariant of the pair unchanged.

mod common;

use common::*;
use proptest::prelude::*;
use spinsurgery_core::invariants::{rochlin, signature_exact, total_linking, SymmetricIntMatrix};
use spinsurgery_core::surgery::{
    build_mapping_torus_link, characteristic_sublink, kirby_blowup, kirby_handle_slide,
    ComponentKind,
};
use spinsurgery_core::{CharacteristicSublink, FramedLink, SpinStructure};

#[derive(Clone, Debug)]
enum Move {
    Blowup(bool),
    Slide(usize, usize),
}

fn arb_move() -> impl Strategy<Value = Move> {
    prop_oneof![
        1 => any::<bool>().prop_map(Move::Blowup),
        4 => (any::<usize>(), any::<usize>()).prop_map(|(i, j)| Move::Slide(i, j)),
    ]
}

fn apply(
    link: &FramedLink,
    sub: &CharacteristicSublink,
    m: &Move,
) -> Option<(FramedLink, CharacteristicSublink)> {
    match *m {
        Move::Blowup(positive) => {
            Some(kirby_blowup(link, sub, if positive { 1 } else { -1 }).unwrap())
        }
        Move::Slide(i, j) => {
            // keep the dotted circle out and the framings small
            let n = link.len();
            let (i, j) = (1 + i % (n - 1), 1 + j % (n - 1));
            if i == j || link.linking().get(i, i).abs() > 40 || link.linking().get(j, j).abs() > 40
            {
                return None;
            }
            Some(kirby_handle_slide(link, sub, i, j).unwrap())
        }
    }
}

fn is_characteristic(m: &SymmetricIntMatrix, sub: &CharacteristicSublink) -> bool {
    (1..m.size()).all(|i| {
        let s: i64 = (0..m.size())
            .filter(|&j| sub.contains(j))
            .map(|j| m.get(i, j))
            .sum();
        (s - m.get(i, i)).rem_euclid(2) == 0
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn moves_preserve_rochlin((w, s, _x) in arb_level2(1..=2, 3), moves in proptest::collection::vec(arb_move(), 1..12)) {
        let g = w.genus();
        let link = build_mapping_torus_link(&w).unwrap();
        let sub = characteristic_sublink(&link, &SpinStructure::from_qvals(g, s)).unwrap();
        let start = rochlin(&link, &sub).unwrap();
        let (mut link, mut sub) = (link, sub);
        for m in &moves {
            if let Some((l, c)) = apply(&link, &sub, m) {
                prop_assert!(is_characteristic(l.linking(), &c));
                prop_assert_eq!(rochlin(&l, &c).unwrap(), start);
                link = l;
                sub = c;
            }
        }
    }

    #[test]
    fn slides_keep_the_signature((w, s, _x) in arb_level2(1..=2, 3), i in any::<usize>(), j in any::<usize>()) {
        let g = w.genus();
        let link = build_mapping_torus_link(&w).unwrap();
        let sub = characteristic_sublink(&link, &SpinStructure::from_qvals(g, s)).unwrap();
        if let Some((l, c)) = apply(&link, &sub, &Move::Slide(i, j)) {
            prop_assert_eq!(signature_exact(l.linking()), signature_exact(link.linking()));
            prop_assert_eq!((total_linking(&l, &c).unwrap() - total_linking(&link, &sub).unwrap()).rem_euclid(8), 0);
        }
    }
}

#[test]
fn repeated_slide_keeps_rochlin() {
    let pool = letter_pool(1);
    let w = word_from(1, &pool, &[0, 3]);
    let link = build_mapping_torus_link(&w).unwrap();
    let sub = characteristic_sublink(&link, &SpinStructure::from_qvals(1, 0b10)).unwrap();
    let (i, j) = (link.len() - 1, 1);
    let (once, c1) = kirby_handle_slide(&link, &sub, i, j).unwrap();
    assert!(once.is_slid());
    let (twice, c2) = kirby_handle_slide(&once, &c1, i, j).unwrap();
    assert_eq!(rochlin(&twice, &c2).unwrap(), rochlin(&link, &sub).unwrap());
}

#[test]
fn blowup_appends_an_isolated_unknot() {
    let w = word_from(2, &letter_pool(2), &[5]);
    let link = build_mapping_torus_link(&w).unwrap();
    let sub = characteristic_sublink(&link, &SpinStructure::eta(2)).unwrap();
    let (up, c) = kirby_blowup(&link, &sub, -1).unwrap();
    let n = link.len();
    assert_eq!(up.len(), n + 1);
    assert_eq!(up.components()[n].kind, ComponentKind::BlowUp);
    assert_eq!(up.linking().get(n, n), -1);
    assert!((0..n).all(|k| up.linking().get(n, k) == 0));
    assert!(c.contains(n));
    assert!(kirby_blowup(&link, &sub, 2).is_err());
}

#[test]
fn slides_reject_the_dotted_circle_and_self_slides() {
    let link = build_mapping_torus_link(&word_from(1, &letter_pool(1), &[0])).unwrap();
    let sub = characteristic_sublink(&link, &SpinStructure::eta(1)).unwrap();
    assert!(kirby_handle_slide(&link, &sub, 0, 1).is_err());
    assert!(kirby_handle_slide(&link, &sub, 2, 2).is_err());
    assert!(kirby_handle_slide(&link, &sub, 2, 99).is_err());
}
