use codiff_core::signs::*;
use proptest::prelude::*;

fn parities(bits: &[bool]) -> Vec<Parity> {
    bits.iter().map(|&b| Parity::new(b as u8)).collect()
}

fn perm_and_parities() -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<bool>)> {
    (1usize..=7).prop_flat_map(|n| {
        let ids: Vec<usize> = (1..=n).collect();
        (Just(ids.clone()).prop_shuffle(), Just(ids).prop_shuffle(), prop::collection::vec(any::<bool>(), n))
    })
}

proptest! {
    #[test]
    fn composition_law((s, t, bits) in perm_and_parities(), signed in any::<bool>()) {
        let sigma = Permutation::new(s).unwrap();
        let tau = Permutation::new(t).unwrap();
        let p = parities(&bits);
        let whole = koszul_sign(&sigma.then(&tau), &p, signed).unwrap();
        let parts = koszul_sign(&sigma, &p, signed).unwrap() * koszul_sign(&tau, &sigma.apply(&p), signed).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn decompositions_agree((s, _, bits) in perm_and_parities(), signed in any::<bool>()) {
        let sigma = Permutation::new(s).unwrap();
        let p = parities(&bits);
        let a = koszul_sign_by(&sigma, &p, signed, Decomposition::LeftInsertion).unwrap();
        let b = koszul_sign_by(&sigma, &p, signed, Decomposition::BubbleSort).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn swaps_rebuild_the_permutation((s, _, _) in perm_and_parities()) {
        let sigma = Permutation::new(s).unwrap();
        for how in [Decomposition::LeftInsertion, Decomposition::BubbleSort] {
            let mut xs: Vec<usize> = (1..=sigma.len()).collect();
            for j in adjacent_swaps(&sigma, how) {
                xs.swap(j, j + 1);
            }
            prop_assert_eq!(&xs[..], sigma.images());
        }
    }

    #[test]
    fn even_elements_commute_freely((s, _, bits) in perm_and_parities()) {
        let sigma = Permutation::new(s).unwrap();
        let evens = vec![Parity::EVEN; bits.len()];
        prop_assert_eq!(koszul_sign(&sigma, &evens, false).unwrap(), 1);
        prop_assert_eq!(koszul_sign(&sigma, &evens, true).unwrap(), sigma.sign());
        let odds = vec![Parity::ODD; bits.len()];
        prop_assert_eq!(koszul_sign(&sigma, &odds, false).unwrap(), sigma.sign());
    }

    #[test]
    fn inverse_sign((s, _, bits) in perm_and_parities()) {
        let sigma = Permutation::new(s).unwrap();
        let p = parities(&bits);
        let forth = koszul_sign(&sigma, &p, false).unwrap();
        let back = koszul_sign(&sigma.inverse(), &sigma.apply(&p), false).unwrap();
        prop_assert_eq!(forth * back, 1);
    }
}

#[test]
fn unshuffle_counts_are_binomial() {
    for n in 0..=6usize {
        for p in 0..=n {
            let expected = (0..p).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
            assert_eq!(unshuffles(p, n - p).len(), expected, "Sh({p},{})", n - p);
        }
    }
}

#[test]
fn pairings_on_bidegrees() {
    let odd_map = Bidegree::of_map(Parity::ODD, 2);
    let even_map = Bidegree::of_map(Parity::EVEN, 2);
    // (1,1) against (0,1): the first form sees only the degrees, the second their sums.
    assert_eq!(grading_pairing(GradingForm::Z2ZFirst, odd_map, even_map), Parity::ODD);
    assert_eq!(grading_pairing(GradingForm::Z2ZSecond, odd_map, even_map), Parity::EVEN);
    assert_eq!(grading_pairing(GradingForm::Z2, odd_map, even_map), Parity::EVEN);
}
