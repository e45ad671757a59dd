use codiff_core::par;
use codiff_core::selftest::*;

#[test]
fn reduced_suite_passes() {
    let results = run_all(&Sizes::REDUCED, 0);
    assert!(results.iter().all(|r| r.passed), "{}", render(&results));
    assert_eq!(results.iter().map(|r| r.id).collect::<Vec<_>>(), (1..=10).collect::<Vec<_>>());
}

#[test]
fn results_do_not_depend_on_threads() {
    let parallel = run_check(8, &Sizes::REDUCED, 5);
    par::set_parallel(false);
    let sequential = run_check(8, &Sizes::REDUCED, 5);
    par::set_parallel(true);
    assert_eq!(parallel, sequential);
}
