use codiff_core::bracket::*;
use codiff_core::cochain::{cyclicize, is_cyclic_scalar};
use codiff_core::cohomology::{ce_coboundary, ModuleAction};
use codiff_core::fixtures::{self, Rng8};
use codiff_core::linalg::rat;
use codiff_core::signs::grading_pairing;
use codiff_core::*;
use proptest::prelude::*;
use rand::Rng;

fn nonzero(rng: &mut Rng8, v: &GradedSpace, kind: Kind) -> (Cochain, Bidegree) {
    loop {
        let k = rng.gen_range(1..=3);
        let p = fixtures::random_parity(rng);
        let c = fixtures::random_cochain(rng, v, kind, ParityRule::fixed(p), &[k], 0.6);
        if !c.is_zero() {
            return (c, Bidegree::of_map(p, k));
        }
    }
}

fn laws_hold(seed: u64, kind: Kind, form: GradingForm, variant: BracketVariant, law: GradingForm) -> Result<(), String> {
    let mut rng = fixtures::rng(seed);
    let v = fixtures::random_space(&mut rng, 2);
    let (x, bx) = nonzero(&mut rng, &v, kind);
    let (y, by) = nonzero(&mut rng, &v, kind);
    let (z, _) = nonzero(&mut rng, &v, kind);
    let b = |a: &Cochain, c: &Cochain| bracket(a, c, form, variant).unwrap();
    let s = rat(grading_pairing(law, bx, by).sign() as i64);
    if b(&x, &y) != b(&y, &x).scale(&-s.clone()) {
        return Err("antisymmetry".into());
    }
    let rhs = b(&b(&x, &y), &z).combine(&b(&y, &b(&x, &z)), &s).unwrap();
    if b(&x, &b(&y, &z)) != rhs {
        return Err("Jacobi".into());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coderivation_bracket_laws(seed in any::<u64>()) {
        for (kind, form) in [
            (Kind::Tensor, GradingForm::Z2),
            (Kind::Tensor, GradingForm::Z2ZFirst),
            (Kind::Tensor, GradingForm::Z2ZSecond),
            (Kind::Sym, GradingForm::Z2),
            (Kind::Ext, GradingForm::Z2ZFirst),
        ] {
            prop_assert_eq!(laws_hold(seed, kind, form, BracketVariant::Coder, form), Ok(()), "{} {:?}", kind, form);
        }
    }

    #[test]
    fn modified_brackets_obey_the_second_form(seed in any::<u64>()) {
        for variant in [BracketVariant::ModifiedFirst, BracketVariant::ModifiedSecond] {
            let r = laws_hold(seed, Kind::Tensor, GradingForm::Z2ZFirst, variant, GradingForm::Z2ZSecond);
            prop_assert_eq!(r, Ok(()), "{:?}", variant);
        }
    }

    #[test]
    fn coboundary_is_bracket_with_the_structure(seed in any::<u64>()) {
        let mut rng = fixtures::rng(seed);
        let l = fixtures::random_graded_lie(&mut rng);
        let v = l.source().clone();
        let adjoint = ModuleAction::adjoint(&l);
        for n in 0..4 {
            let p = fixtures::random_parity(&mut rng);
            let phi = fixtures::random_cochain(&mut rng, &v, Kind::Ext, ParityRule::fixed(p), &[n], 0.6);
            let d = ce_coboundary(&l, &adjoint, &phi).unwrap();
            prop_assert_eq!(&d, &bracket(&phi, &l, GradingForm::Z2ZFirst, BracketVariant::Coder).unwrap());
            prop_assert!(ce_coboundary(&l, &adjoint, &d).unwrap().is_zero());
        }
    }

    #[test]
    fn cyclic_brackets_stay_cyclic(seed in any::<u64>()) {
        let mut rng = fixtures::rng(seed);
        let v = fixtures::random_space(&mut rng, 2);
        prop_assume!(fixtures::random_inner_product(&mut rng, &v).is_some());
        let ip = fixtures::random_inner_product(&mut rng, &v).unwrap();
        let (a1, a2) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
        let (p1, p2) = (fixtures::random_parity(&mut rng), fixtures::random_parity(&mut rng));
        let f = fixtures::random_scalar_cochain(&mut rng, &v, ParityRule::fixed(p1), &[a1], 0.6);
        let g = fixtures::random_scalar_cochain(&mut rng, &v, ParityRule::fixed(p2), &[a2], 0.6);
        let (f, g) = (cyclicize(&f).unwrap(), cyclicize(&g).unwrap());
        for variant in BracketVariant::ALL {
            let r = cyclic_bracket_tilde(&f, &g, &ip, Kind::Tensor, variant).unwrap();
            prop_assert!(r.agree(), "{:?}", variant);
            prop_assert!(is_cyclic_scalar(&r.via_bracket));
        }
    }
}

#[test]
fn bracket_of_sl2_with_itself_vanishes() {
    let l = fixtures::sl2();
    assert!(bracket(&l, &l, GradingForm::Z2ZFirst, BracketVariant::Coder).unwrap().is_zero());
    let bad = fixtures::nonassociative();
    assert!(!bracket(&bad, &bad, GradingForm::Z2ZFirst, BracketVariant::Coder).unwrap().is_zero());
}

#[test]
fn mismatched_spaces_are_rejected() {
    let a = fixtures::sl2();
    let b = fixtures::nonabelian2();
    assert!(bracket(&a, &b, GradingForm::Z2ZFirst, BracketVariant::Coder).is_err());
}
