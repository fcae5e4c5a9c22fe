//! The link route against the closed formulas, and the structural properties
//! of `β` and `μ`.

mod common;

use common::*;
use proptest::prelude::*;
use spinsurgery_core::homology::{arf_form, handle_lattice};
use spinsurgery_core::homomorphisms::{
    bc_mu, bc_mu_via_link, beta_closed, beta_link, calibrate_conventions, corollary_relation_check,
    rochlin_of_word, sublink_data,
};
use spinsurgery_core::mapping::{word_action, Letter};
use spinsurgery_core::surgery::{
    build_mapping_torus_link, characteristic_sublink, ComponentKind, TwistRole,
};
use spinsurgery_core::{CohomologyF2, Conventions, Curve, HomologyZ, SpinStructure, TwistWord, Z8};

#[test]
fn calibration_lands_on_frozen_conventions() {
    let report = calibrate_conventions().unwrap();
    assert_eq!(report.candidates.len(), 16);
    assert_eq!(report.unique(), Some(Conventions::FROZEN));
    // the Seifert transpose is invisible to β; only the V − Vᵀ = J check separates it
    assert_eq!(report.beta_survivors.len(), 2);
    assert!(report
        .beta_survivors
        .iter()
        .all(|c| !c.dual_linking && !c.sval_offset && c.twist_sign == -1));
    for c in &report.candidates {
        if c.conventions.twist_sign == 1 {
            assert!(!c.beta_agrees);
            assert_eq!(c.separating_framing, 1);
        }
    }
}

#[test]
fn link_equals_closed_on_every_generator() {
    for g in 1..=2 {
        for letter in letter_pool(g) {
            let w = TwistWord::new(g, vec![letter]).unwrap();
            for s in SpinStructure::all(g) {
                for x in CohomologyF2::all(g) {
                    assert_eq!(
                        beta_link(&w, &s, &x).unwrap(),
                        beta_closed(&w, &s, &x).unwrap(),
                        "{w} {s:?} {x}"
                    );
                }
            }
        }
    }
}

#[test]
fn squared_twist_membership_table() {
    for g in 1..=2 {
        for c in small_classes(g) {
            for e in [-2i64, 2] {
                let w = TwistWord::single(g, Curve::Nonseparating(c.clone()), e).unwrap();
                let link = build_mapping_torus_link(&w).unwrap();
                let pair = link.len() - 2;
                for s in SpinStructure::all(g) {
                    let inside = characteristic_sublink(&link, &s).unwrap().contains(pair);
                    for x in CohomologyF2::all(g) {
                        let shifted = characteristic_sublink(&link, &s.act(&x))
                            .unwrap()
                            .contains(pair);
                        let table = match (inside, shifted) {
                            (true, true) | (false, false) => 0,
                            (false, true) => 1,
                            (true, false) => -1,
                        };
                        // the displayed matrix is the inverse square's; the square negates
                        let expected = Z8::new(if e < 0 { table } else { -table });
                        assert_eq!(beta_link(&w, &s, &x).unwrap(), expected);
                    }
                }
            }
        }
    }
}

#[test]
fn separating_twists() {
    for g in 2..=3 {
        for letter in torelli_pool(g)
            .into_iter()
            .filter(|l| matches!(l.curve, Curve::Separating(_)))
        {
            let Curve::Separating(handles) = &letter.curve else {
                unreachable!()
            };
            let w = TwistWord::new(g, vec![letter.clone()]).unwrap();
            let lat = handle_lattice(g, handles);
            for s in SpinStructure::all(g) {
                let arf = arf_form(&s, &lat).unwrap();
                assert_eq!(rochlin_of_word(&w, &s).unwrap().value(), 8 * arf as u8);
                for x in CohomologyF2::all(g) {
                    let b = beta_link(&w, &s, &x).unwrap();
                    let diff = arf as i64 - arf_form(&s.act(&x), &lat).unwrap() as i64;
                    assert_eq!(b, Z8::new(4 * diff));
                    assert!(b.value() == 0 || b.value() == 4);
                }
            }
        }
    }
}

#[test]
fn bounding_pairs_cancel_self_linking() {
    for letter in torelli_pool(2)
        .into_iter()
        .filter(|l| matches!(l.curve, Curve::BoundingPair(_)))
    {
        let w = TwistWord::new(2, vec![letter]).unwrap();
        let link = build_mapping_torus_link(&w).unwrap();
        for s in SpinStructure::all(2) {
            let (_, d) = sublink_data(&link, &s).unwrap();
            assert_eq!(d.total_linking, 0);
            for x in CohomologyF2::all(2) {
                let b = beta_link(&w, &s, &x).unwrap();
                assert!(b.value() == 0 || b.value() == 4);
            }
        }
    }
}

#[test]
fn birman_craggs_routes_agree_on_generators() {
    for g in 2..=3 {
        for letter in torelli_pool(g) {
            let w = TwistWord::new(g, vec![letter]).unwrap();
            assert_eq!(bc_mu(&w).unwrap(), bc_mu_via_link(&w).unwrap(), "{w}");
        }
    }
}

#[test]
fn bounding_pair_with_odd_self_linking_has_trivial_mu() {
    let mut seen = 0;
    for letter in torelli_pool(3) {
        if let Curve::BoundingPair(chain) = &letter.curve {
            let d = chain.boundary().coeffs();
            let m: i64 = (0..3).map(|h| d[2 * h] * d[2 * h + 1]).sum();
            if m % 2 != 0 {
                seen += 1;
                assert!(!bc_mu(&TwistWord::new(3, vec![letter.clone()]).unwrap()).unwrap());
            }
        }
    }
    assert!(seen > 0);
}

fn single_twists(g: usize) -> Vec<TwistWord> {
    small_classes(g)
        .into_iter()
        .flat_map(|c| {
            [1, -1].map(|e| TwistWord::single(g, Curve::Nonseparating(c.clone()), e).unwrap())
        })
        .collect()
}

#[test]
fn conjugation_relation_for_all_single_twists() {
    let g = 2;
    let eta = SpinStructure::eta(g);
    let maps = single_twists(g);
    let letters: Vec<TwistWord> = torelli_pool(g)
        .into_iter()
        .take(12)
        .map(|l| TwistWord::new(g, vec![l]).unwrap())
        .collect();
    for f in &maps {
        let sigma = eta.pullback(&word_action(f).unwrap()).unwrap();
        for h in &maps {
            let target = eta.pullback(&word_action(h).unwrap()).unwrap();
            let x = CohomologyF2::new(g, sigma.qvals() ^ target.qvals());
            for w in &letters {
                assert!(
                    corollary_relation_check(w, &sigma, &x, f, h).unwrap(),
                    "{w} f={f} g={h}"
                );
            }
        }
    }
}

#[test]
fn relation_with_eta_and_identity_source() {
    // σ = η: the left side is −μ of the g-transported letter.
    let g = 2;
    let eta = SpinStructure::eta(g);
    let id = TwistWord::empty(g);
    let w = TwistWord::single(g, Curve::Separating(vec![1]), 1).unwrap();
    for h in single_twists(g) {
        let target = eta.pullback(&word_action(&h).unwrap()).unwrap();
        let x = CohomologyF2::new(g, eta.qvals() ^ target.qvals());
        assert!(corollary_relation_check(&w, &eta, &x, &id, &h).unwrap());
        let b = beta_link(&w, &eta, &x).unwrap();
        assert_eq!(b.value() == 4, target.arf_on_handles([1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn link_route_matches_closed_route((w, s, x) in arb_level2(1..=3, 6)) {
        let g = w.genus();
        let s = SpinStructure::from_qvals(g, s);
        let x = CohomologyF2::new(g, x);
        prop_assert_eq!(beta_link(&w, &s, &x).unwrap(), beta_closed(&w, &s, &x).unwrap());
    }

    #[test]
    fn beta_is_a_homomorphism((w1, s, x) in arb_level2(1..=3, 4), picks in proptest::collection::vec(any::<usize>(), 0..4)) {
        let g = w1.genus();
        let w2 = word_from(g, &letter_pool(g), &picks);
        let s = SpinStructure::from_qvals(g, s);
        let x = CohomologyF2::new(g, x);
        let both = beta_link(&w1.compose(&w2).unwrap(), &s, &x).unwrap();
        prop_assert_eq!(both, beta_link(&w1, &s, &x).unwrap() + beta_link(&w2, &s, &x).unwrap());
    }

    #[test]
    fn torelli_values_are_two_torsion(w in arb_torelli(2..=3, 5), s in any::<u32>(), x in any::<u32>()) {
        let g = w.genus();
        let b = beta_link(&w, &SpinStructure::from_qvals(g, s), &CohomologyF2::new(g, x)).unwrap();
        prop_assert_eq!(b + b, Z8::ZERO);
    }

    #[test]
    fn bc_mu_is_additive(w1 in arb_torelli(2..=3, 4), picks in proptest::collection::vec(any::<usize>(), 0..4)) {
        let g = w1.genus();
        let w2 = word_from(g, &torelli_pool(g), &picks);
        let both = w1.compose(&w2).unwrap();
        prop_assert_eq!(bc_mu(&both).unwrap(), bc_mu(&w1).unwrap() ^ bc_mu(&w2).unwrap());
        prop_assert_eq!(bc_mu_via_link(&both).unwrap(), bc_mu(&both).unwrap());
    }

    #[test]
    fn conjugation_covariance(g in 1usize..=2, fi in any::<usize>(), fe in prop_oneof![Just(1i64), Just(-1)], ci in any::<usize>(), s in any::<u32>(), x in any::<u32>()) {
        let classes = small_classes(g);
        let f = TwistWord::single(g, Curve::Nonseparating(classes[fi % classes.len()].clone()), fe).unwrap();
        let c = classes[ci % classes.len()].clone();
        let fm = word_action(&f).unwrap();
        let fc = HomologyZ::apply(&fm, &c).unwrap();
        let s = SpinStructure::from_qvals(g, s);
        let x = CohomologyF2::new(g, x);
        let moved = TwistWord::single(g, Curve::Nonseparating(fc), 2).unwrap();
        let plain = TwistWord::single(g, Curve::Nonseparating(c), 2).unwrap();
        let (fs, fx) = (s.pullback(&fm).unwrap(), x.pullback(&fm).unwrap());
        prop_assert_eq!(beta_link(&moved, &s, &x).unwrap(), beta_link(&plain, &fs, &fx).unwrap());
        prop_assert_eq!(rochlin_of_word(&moved, &s).unwrap(), rochlin_of_word(&plain, &fs).unwrap());
    }

    #[test]
    fn paired_curves_share_membership((w, s, _x) in arb_level2(1..=3, 6)) {
        let g = w.genus();
        let link = build_mapping_torus_link(&w).unwrap();
        let sub = characteristic_sublink(&link, &SpinStructure::from_qvals(g, s)).unwrap();
        let mut groups = std::collections::BTreeMap::<(usize, usize), Vec<bool>>::new();
        for c in link.components() {
            if let ComponentKind::Twist(t) = &c.kind {
                let key = match t.role {
                    TwistRole::Square { pair } => (t.letter, pair),
                    TwistRole::BoundingPair { .. } => (t.letter, usize::MAX),
                    TwistRole::Separating { .. } => {
                        prop_assert!(sub.contains(c.id));
                        continue;
                    }
                };
                groups.entry(key).or_default().push(sub.contains(c.id));
            }
            if c.kind == ComponentKind::Dotted {
                prop_assert!(!sub.contains(c.id));
            }
        }
        for members in groups.values() {
            prop_assert_eq!(members.len(), 2);
            prop_assert_eq!(members[0], members[1]);
        }
    }

    #[test]
    fn sublinks_restrict_across_concatenation((w1, s, _x) in arb_level2(1..=2, 3), picks in proptest::collection::vec(any::<usize>(), 0..3)) {
        let g = w1.genus();
        let w2 = word_from(g, &letter_pool(g), &picks);
        let s = SpinStructure::from_qvals(g, s);
        let whole = characteristic_sublink(&build_mapping_torus_link(&w2.compose(&w1).unwrap()).unwrap(), &s).unwrap();
        let first = characteristic_sublink(&build_mapping_torus_link(&w1).unwrap(), &s).unwrap();
        let second = characteristic_sublink(&build_mapping_torus_link(&w2).unwrap(), &s).unwrap();
        let base = 1 + 2 * g;
        let mut joined = first.membership().to_vec();
        joined.extend_from_slice(&second.membership()[base..]);
        prop_assert_eq!(whole.membership(), &joined[..]);
    }
}

#[test]
fn letter_inverse_negates_beta() {
    let g = 2;
    for letter in letter_pool(g).into_iter().step_by(5) {
        let w = TwistWord::new(g, vec![letter.clone()]).unwrap();
        let inv = TwistWord::new(g, vec![Letter::inverse(&letter)]).unwrap();
        for s in SpinStructure::all(g) {
            for x in CohomologyF2::all(g).step_by(3) {
                assert_eq!(
                    beta_link(&inv, &s, &x).unwrap(),
                    -beta_link(&w, &s, &x).unwrap()
                );
            }
        }
    }
}
