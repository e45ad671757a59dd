use codiff_core::duality::*;
use codiff_core::fixtures;
use codiff_core::*;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bar_and_restriction_signs(seed in any::<u64>()) {
        let mut rng = fixtures::rng(seed);
        let v = fixtures::random_space(&mut rng, 2);
        for flavor in [Kind::Tensor, Kind::Ext] {
            for conv in Convention::ALL {
                let p = fixtures::random_parity(&mut rng);
                let k = rng.gen_range(1..=3);
                let m = fixtures::random_cochain(&mut rng, &v, flavor, ParityRule::fixed(p), &[k], 0.7);
                let r = check_bar_identity(&m, conv, 4);
                prop_assert!(r.is_ok(), "{:?}", r);
            }
        }
    }

    #[test]
    fn permutation_identity(bits in prop::collection::vec(any::<bool>(), 1..6)) {
        let ps: Vec<Parity> = bits.iter().map(|&b| Parity::new(b as u8)).collect();
        prop_assert!(check_permutation_identity(&ps).is_ok());
    }

    #[test]
    fn four_rounds(seed in any::<u64>()) {
        let mut rng = fixtures::rng(seed);
        let v = fixtures::random_space(&mut rng, 2);
        let p = fixtures::random_parity(&mut rng);
        let k = rng.gen_range(1..=3);
        let d = fixtures::random_cochain(&mut rng, &v, Kind::Tensor, ParityRule::fixed(p), &[k], 0.7);
        prop_assert!(check_four_rounds(&d, 4).is_ok());
    }

    #[test]
    fn bracket_pulls_back(seed in any::<u64>()) {
        let mut rng = fixtures::rng(seed);
        let v = fixtures::random_space(&mut rng, 2);
        for flavor in [Kind::Tensor, Kind::Ext] {
            for conv in Convention::ALL {
                let (p, q) = (fixtures::random_parity(&mut rng), fixtures::random_parity(&mut rng));
                let (k, l) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
                let m = fixtures::random_cochain(&mut rng, &v, flavor, ParityRule::fixed(p), &[k], 0.7);
                let mu = fixtures::random_cochain(&mut rng, &v, flavor, ParityRule::fixed(q), &[l], 0.7);
                let (on_v, pulled) = check_bracket_pullback(&m, &mu, conv).unwrap();
                prop_assert_eq!(on_v, pulled);
            }
        }
    }

    #[test]
    fn transport_round_trips(seed in any::<u64>()) {
        let mut rng = fixtures::rng(seed);
        let v = fixtures::random_space(&mut rng, 2);
        for flavor in [Kind::Tensor, Kind::Ext] {
            for conv in Convention::ALL {
                let m = fixtures::random_cochain(&mut rng, &v, flavor, ParityRule::shifted(Parity::EVEN), &[1, 2, 3], 0.5);
                let w = eta_transport(&m, conv, Direction::ToW).unwrap();
                prop_assert_eq!(w.source(), &parity_reverse(&v));
                prop_assert_eq!(eta_transport(&w, conv, Direction::ToV).unwrap(), m);
            }
        }
    }
}

#[test]
fn eta_sign_examples() {
    let p = |bits: &[u8]| bits.iter().map(|&b| Parity::new(b)).collect::<Vec<_>>();
    assert_eq!(eta_sign(&p(&[1])), 1);
    assert_eq!(eta_sign(&p(&[1, 0])), -1);
    assert_eq!(eta_sign(&p(&[0, 1])), 1);
    assert_eq!(eta_sign(&p(&[1, 1, 1])), -1);
}

#[test]
fn symmetric_maps_do_not_transport_to_w() {
    let v = GradedSpace::with_parities(&[0, 1]);
    let m = Cochain::zero(&v, Kind::Sym, Parity::EVEN);
    assert!(eta_transport(&m, Convention::LsLm, Direction::ToW).is_err());
}
