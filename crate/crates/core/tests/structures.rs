use codiff_core::cochain::is_cyclic;
use codiff_core::fixtures;
use codiff_core::linalg::rat;
use codiff_core::selftest::{mixed_arity_example, odd_arity_example};
use codiff_core::structures::*;
use codiff_core::*;
use proptest::prelude::*;
use rand::Rng;

fn structure(kind: StructureKind, l: Cochain, conv: Convention) -> AlgebraStructure {
    AlgebraStructure::new(kind, l, conv).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relation_and_codifferential_routes_agree(seed in any::<u64>(), linf in any::<bool>(), ps2 in any::<bool>()) {
        let mut rng = fixtures::rng(seed);
        let v = fixtures::random_space(&mut rng, 2);
        let kind = if linf { StructureKind::LInf } else { StructureKind::AInf };
        let conv = if ps2 { Convention::Ps2Kon } else { Convention::LsLm };
        let arities: &[usize] = [&[1, 2][..], &[2, 3], &[1, 2, 3], &[1]][rng.gen_range(0..4)];
        let m = fixtures::random_cochain(&mut rng, &v, kind.flavor(), ParityRule::shifted(Parity::EVEN), arities, 0.25);
        let s = structure(kind, m, conv);
        prop_assert!(check_structure(&s, 4).routes_agree());
        if linf {
            prop_assert_eq!(check_convention_equivalence(&s, 4), Ok(true));
        }
    }

    #[test]
    fn deformation_routes_agree(seed in any::<u64>(), odd_t in any::<bool>()) {
        let mut rng = fixtures::rng(seed);
        let t = Parity::new(odd_t as u8);
        let fixtures = [
            structure(StructureKind::Lie, fixtures::sl2(), Convention::LsLm),
            structure(StructureKind::Lie, fixtures::heisenberg(), Convention::LsLm),
            structure(StructureKind::GradedLie, fixtures::osp12(), Convention::LsLm),
            structure(StructureKind::Assoc, fixtures::upper_triangular(), Convention::Ps2Kon),
            structure(StructureKind::LInf, fixtures::dgla(), Convention::LsLm),
        ];
        for s in &fixtures {
            let phi = fixtures::random_cochain(&mut rng, s.space(), s.kind.flavor(), ParityRule::shifted(t), &s.cochain.arities(), 0.3);
            let r = deformation_check(s, &phi, Some(t), 4).unwrap();
            prop_assert!(r.routes_agree(), "{} {:?}", s.kind, r);
        }
    }
}

#[test]
fn positive_fixtures_pass_in_both_pictures() {
    for conv in Convention::ALL {
        for s in [
            structure(StructureKind::Lie, fixtures::sl2(), conv),
            structure(StructureKind::GradedLie, fixtures::osp12(), conv),
            structure(StructureKind::Assoc, fixtures::upper_triangular(), conv),
            structure(StructureKind::AInf, fixtures::upper_triangular(), conv),
            structure(StructureKind::LInf, fixtures::dgla(), conv),
        ] {
            let r = check_structure(&s, 4);
            assert!(r.passes() && r.codifferential, "{} {conv:?}", s.kind);
        }
    }
    let bad = structure(StructureKind::Assoc, fixtures::nonassociative(), Convention::LsLm);
    let r = check_structure(&bad, 4);
    assert!(!r.relations_hold() && !r.codifferential);
}

#[test]
fn shape_is_validated() {
    let v = GradedSpace::with_parities(&[0, 1]);
    let lie_on_odd = Cochain::zero(&v, Kind::Ext, Parity::EVEN);
    assert!(AlgebraStructure::new(StructureKind::Lie, lie_on_odd.clone(), Convention::LsLm).is_err());
    assert!(AlgebraStructure::new(StructureKind::GradedLie, lie_on_odd, Convention::LsLm).is_ok());
    assert!(AlgebraStructure::new(StructureKind::Assoc, fixtures::sl2(), Convention::LsLm).is_err());
    let mut odd_product = Cochain::zero(&v, Kind::Tensor, Parity::ODD);
    odd_product.add_term(&[0, 0], 1, rat(1)).unwrap();
    assert!(AlgebraStructure::new(StructureKind::Assoc, odd_product, Convention::LsLm).is_err());
}

#[test]
fn coboundaries_are_trivial_deformations() {
    let mut rng = fixtures::rng(12);
    for s in [
        structure(StructureKind::Lie, fixtures::sl2(), Convention::LsLm),
        structure(StructureKind::Lie, fixtures::nonabelian2(), Convention::LsLm),
        structure(StructureKind::Assoc, fixtures::upper_triangular(), Convention::LsLm),
        structure(StructureKind::LInf, fixtures::dgla(), Convention::Ps2Kon),
    ] {
        for t in [Parity::EVEN, Parity::ODD] {
            let lowest = if s.kind.is_binary() { 0 } else { 1 };
            let a = rng.gen_range(lowest..2);
            let lam = fixtures::random_cochain(&mut rng, s.space(), s.kind.flavor(), ParityRule::shifted(t.flip()), &[a], 0.6);
            let phi = s.differential(&lam).unwrap();
            let r = deformation_check(&s, &phi, Some(t), 4).unwrap();
            assert!(r.cocycle && r.relations_mod_t2 && r.trivial, "{} {t:?}", s.kind);
            let back = s.differential(r.primitive.as_ref().unwrap()).unwrap();
            assert_eq!(back, phi);
        }
    }
}

#[test]
fn scaling_sl2_is_an_invariant_deformation() {
    let s = structure(StructureKind::Lie, fixtures::sl2(), Convention::LsLm).with_inner_product(fixtures::sl2_killing());
    let r = deformation_check(&s, &fixtures::sl2(), None, 4).unwrap();
    assert!(r.cocycle && r.relations_mod_t2 && r.trivial);
    let ip = s.inner_product.as_ref().unwrap();
    assert!(is_cyclic(&s.cochain, ip));
    assert!(!is_cyclic(r.primitive.as_ref().unwrap(), ip));
    assert_eq!(cyclic_cohomology(&s, 2).unwrap().dimension, 1);
}

#[test]
fn wrong_parameter_parity_is_rejected() {
    let s = structure(StructureKind::Lie, fixtures::sl2(), Convention::LsLm);
    assert!(matches!(deformation_check(&s, &fixtures::sl2(), Some(Parity::ODD), 4), Err(StructureError::Parity(_))));
}

#[test]
fn failure_law_for_mixed_arities() {
    let m = mixed_arity_example();
    assert!(self_bracket(&m).unwrap().is_zero());
    let v = m.source().clone();
    let mut rng = fixtures::rng(4);
    let mut nonzero = 0;
    for _ in 0..10 {
        for arity in 1..=3 {
            let p = fixtures::random_parity(&mut rng);
            let phi = fixtures::random_cochain(&mut rng, &v, Kind::Tensor, ParityRule::fixed(p), &[arity], 0.6);
            let dd = unmodified_square(&phi, &m).unwrap();
            assert!(dd.arities().iter().all(|&a| a == arity + 1));
            nonzero += !dd.is_zero() as usize;
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn single_parity_arities_square_to_zero() {
    let mut rng = fixtures::rng(8);
    for m in [odd_arity_example(), fixtures::upper_triangular()] {
        assert!(self_bracket(&m).unwrap().is_zero());
        let v = m.source().clone();
        for _ in 0..10 {
            for arity in 0..=3 {
                let p = fixtures::random_parity(&mut rng);
                let phi = fixtures::random_cochain(&mut rng, &v, Kind::Tensor, ParityRule::fixed(p), &[arity], 0.6);
                assert!(unmodified_square(&phi, &m).unwrap().is_zero());
            }
        }
    }
}
