use std::collections::BTreeSet;

use codiff_core::coalgebra::*;
use codiff_core::duality::{Convention, EtaMap};
use codiff_core::fixtures::{self, Rng8};
use codiff_core::*;
use proptest::prelude::*;
use rand::Rng;

fn random_map(rng: &mut Rng8, kind: Kind) -> (Cochain, usize) {
    let v = fixtures::random_space(rng, 2);
    let k = rng.gen_range(1..=3);
    let p = fixtures::random_parity(rng);
    (fixtures::random_cochain(rng, &v, kind, ParityRule::fixed(p), &[k], 0.7), k)
}

fn failing_lengths(kind: Kind, form: GradingForm, seed: u64, trials: usize) -> BTreeSet<usize> {
    let mut rng = fixtures::rng(seed);
    let mut out = BTreeSet::new();
    for _ in 0..trials {
        let (m, k) = random_map(&mut rng, kind);
        let f = extend_with(&m, k, Extension::demonstration(kind, form), 4).unwrap();
        if let Err(e) = verify_coderivation(&f) {
            out.insert(e.word.len());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn admissible_extensions_are_coderivations(seed in any::<u64>()) {
        let mut rng = fixtures::rng(seed);
        for kind in Kind::ALL {
            for form in GradingForm::ALL {
                let Ok(ext) = Extension::new(kind, form) else { continue };
                let (m, k) = random_map(&mut rng, kind);
                let f = extend_with(&m, k, ext, 4).unwrap();
                prop_assert!(verify_coderivation(&f).is_ok(), "{kind} {form:?}");
            }
        }
    }

    #[test]
    fn extension_is_linear_in_the_map(seed in any::<u64>()) {
        let mut rng = fixtures::rng(seed);
        let v = fixtures::random_space(&mut rng, 2);
        let p = fixtures::random_parity(&mut rng);
        let a = fixtures::random_cochain(&mut rng, &v, Kind::Tensor, ParityRule::fixed(p), &[2], 0.7);
        let b = fixtures::random_cochain(&mut rng, &v, Kind::Tensor, ParityRule::fixed(p), &[2], 0.7);
        let sum = a.checked_add(&b).unwrap();
        let ext = Extension::new(Kind::Tensor, GradingForm::Z2ZFirst).unwrap();
        for w in space::basis_enumerate(&v, Kind::Tensor, 3) {
            let mut both = ext.apply(&a, &w);
            chain_axpy(&mut both, &linalg::rat(1), &ext.apply(&b, &w));
            both.retain(|_, c| *c != linalg::rat(0));
            prop_assert_eq!(ext.apply(&sum, &w), both);
        }
    }
}

#[test]
fn inadmissible_cells_are_rejected() {
    for kind in Kind::ALL {
        for form in GradingForm::ALL {
            assert_eq!(Extension::new(kind, form).is_ok(), is_admissible(kind, form), "{kind} {form:?}");
        }
    }
    assert!(is_admissible(Kind::Sym, GradingForm::Z2));
    assert!(is_admissible(Kind::Ext, GradingForm::Z2ZFirst));
    assert!(!is_admissible(Kind::Sym, GradingForm::Z2ZFirst));
    assert!(!is_admissible(Kind::Ext, GradingForm::Z2));
}

#[test]
fn obstructed_cells_first_fail_on_length_three() {
    for (kind, form) in [(Kind::Sym, GradingForm::Z2ZFirst), (Kind::Ext, GradingForm::Z2)] {
        let lengths = failing_lengths(kind, form, 17, 100);
        assert_eq!(lengths.first(), Some(&3), "{kind} {form:?}: {lengths:?}");
    }
}

#[test]
fn second_form_obstructs_both_commutative_powers() {
    for kind in [Kind::Sym, Kind::Ext] {
        assert!(!failing_lengths(kind, GradingForm::Z2ZSecond, 23, 100).is_empty(), "{kind}");
    }
}

#[test]
fn transported_lie_brackets_are_codifferentials() {
    for l in [fixtures::sl2(), fixtures::heisenberg(), fixtures::osp12()] {
        let eta = EtaMap::new(l.source(), Kind::Ext, Convention::LsLm).unwrap();
        let d = eta.to_w(&l).unwrap();
        assert!(is_codifferential(&d, Kind::Sym, GradingForm::Z2, 4).unwrap().holds());
    }
    let bad = fixtures::nonassociative();
    let eta = EtaMap::new(bad.source(), Kind::Tensor, Convention::LsLm).unwrap();
    let d = eta.to_w(&bad).unwrap();
    assert!(!is_codifferential(&d, Kind::Tensor, GradingForm::Z2, 4).unwrap().holds());
}

#[test]
fn diagonal_of_a_pair() {
    let v = GradedSpace::with_parities(&[1, 1]);
    let d = diagonal(&v, Kind::Ext, &[0, 1]);
    // Both odd: the exterior power makes them commute, so e1 ⊗ e2 + e2 ⊗ e1.
    assert_eq!(d.len(), 2);
    assert!(d.values().all(|c| *c == linalg::rat(1)));
}
