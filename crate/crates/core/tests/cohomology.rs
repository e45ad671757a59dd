use codiff_core::cohomology::*;
use codiff_core::fixtures;
use codiff_core::selftest::{golden_algebra, GOLDEN};
use codiff_core::structures::*;
use codiff_core::*;

fn dims(l: &Cochain, c: &Coefficients, top: usize) -> Vec<usize> {
    (0..=top).map(|n| lie_cohomology(l, c, n).unwrap().dimension).collect()
}

#[test]
fn golden_dimensions() {
    for (name, coeffs, degree, want) in GOLDEN {
        let c = if coeffs == "adjoint" { Coefficients::Adjoint } else { Coefficients::Trivial };
        assert_eq!(lie_cohomology(&golden_algebra(name), &c, degree).unwrap().dimension, want, "{name} {coeffs} {degree}");
    }
}

#[test]
fn full_cohomology_tables() {
    assert_eq!(dims(&fixtures::sl2(), &Coefficients::Trivial, 3), [1, 0, 0, 1]);
    assert_eq!(dims(&fixtures::sl2(), &Coefficients::Adjoint, 3), [0, 0, 0, 0]);
    assert_eq!(dims(&fixtures::heisenberg(), &Coefficients::Adjoint, 3), [1, 4, 5, 2]);
    assert_eq!(dims(&fixtures::heisenberg(), &Coefficients::Trivial, 3), [1, 2, 2, 1]);
    assert_eq!(dims(&fixtures::nonabelian2(), &Coefficients::Adjoint, 2), [0, 0, 0]);
}

#[test]
fn representatives_are_cocycles_and_independent() {
    let l = fixtures::heisenberg();
    let adjoint = ModuleAction::adjoint(&l);
    let r = lie_cohomology(&l, &Coefficients::Adjoint, 2).unwrap();
    assert_eq!(r.representatives.len(), r.dimension);
    for c in &r.representatives {
        assert!(ce_coboundary(&l, &adjoint, c).unwrap().is_zero());
    }
}

#[test]
fn coboundary_squares_to_zero_on_random_algebras() {
    let mut rng = fixtures::rng(41);
    for _ in 0..20 {
        let l = fixtures::random_graded_lie(&mut rng);
        for c in [Coefficients::Adjoint, Coefficients::Trivial] {
            for n in 0..4 {
                for p in [Parity::EVEN, Parity::ODD] {
                    let a = ce_matrix(&l, &c, n, p);
                    let b = ce_matrix(&l, &c, n + 1, p);
                    assert!(b.mul(&a).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn module_coefficients() {
    let l = fixtures::sl2();
    let v = l.source();
    let std2 = GradedSpace::all_even(2);
    let h = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
    let e = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
    let f = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
    let action = ModuleAction::new(v, std2, vec![h, e, f]).unwrap();
    assert!(action.relation_violation(&l).is_none());
    for n in 0..=3 {
        assert_eq!(lie_cohomology(&l, &Coefficients::Module(action.clone()), n).unwrap().dimension, 0);
    }
    let wrong = ModuleAction::new(v, GradedSpace::all_even(2), vec![Matrix::identity(2), Matrix::zeros(2, 2), Matrix::zeros(2, 2)])
        .unwrap();
    assert!(wrong.relation_violation(&l).is_some());
}

fn invariant(kind: StructureKind, l: Cochain, ip: InnerProduct) -> AlgebraStructure {
    AlgebraStructure::new(kind, l, Convention::LsLm).unwrap().with_inner_product(ip)
}

#[test]
fn cyclic_cohomology_shifts_trivial_cohomology() {
    let cases = [
        (invariant(StructureKind::Lie, fixtures::sl2(), fixtures::sl2_killing()), [0, 0, 1, 0]),
        (invariant(StructureKind::Lie, fixtures::gl2(), fixtures::gl2_trace()), [1, 0, 1, 1]),
        (invariant(StructureKind::GradedLie, fixtures::osp12(), fixtures::osp12_form()), [0, 0, 1, 0]),
    ];
    for (s, want) in cases {
        for (n, &w) in want.iter().enumerate() {
            let hc = cyclic_cohomology(&s, n).unwrap();
            assert!(hc.closed);
            assert_eq!(hc.dimension, w);
            assert_eq!(cohomology(&s, &Coefficients::Trivial, n + 1).unwrap().dimension, w);
            assert_eq!(intertwining_violation(&s, n).unwrap(), None);
        }
    }
}

#[test]
fn cyclic_cohomology_needs_an_invariant_form() {
    let s = AlgebraStructure::new(StructureKind::Lie, fixtures::sl2(), Convention::LsLm).unwrap();
    assert_eq!(cyclic_cohomology(&s, 1).unwrap_err(), StructureError::NoInnerProduct);
    let mut rng = fixtures::rng(3);
    let g = fixtures::random_even_automorphism(&mut rng, s.space());
    let skewed = fixtures::change_basis(&fixtures::sl2(), &g);
    let s = AlgebraStructure::new(StructureKind::Lie, skewed, Convention::LsLm).unwrap().with_inner_product(fixtures::sl2_killing());
    if !cochain::is_cyclic(&s.cochain, s.inner_product.as_ref().unwrap()) {
        assert!(matches!(cyclic_cohomology(&s, 1), Err(StructureError::NotInvariant(_))));
    }
}

#[test]
fn associative_cohomology_in_low_degrees() {
    let s = AlgebraStructure::new(StructureKind::Assoc, fixtures::upper_triangular(), Convention::LsLm).unwrap();
    for n in 0..3 {
        let r = cohomology(&s, &Coefficients::Adjoint, n).unwrap();
        assert!(r.closed);
        for c in &r.representatives {
            assert!(s.differential(c).unwrap().is_zero());
        }
    }
}

#[test]
fn window_on_a_dg_lie_algebra() {
    let s = AlgebraStructure::new(StructureKind::LInf, fixtures::dgla(), Convention::LsLm).unwrap();
    let r = window(&s, 3).unwrap();
    assert!(r.closed);
    for c in &r.representatives {
        let d = s.differential(c).unwrap();
        assert!((1..=3).all(|k| d.arity_part(k).is_zero()));
        assert!(r.truncated || d.is_zero());
    }
}
