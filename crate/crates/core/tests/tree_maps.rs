use caykit::trees::{
    build_tree_map, certify, check_perimeter, perimeter_decompose, verify_quasi_isometry, RootedTree,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn perimeter_axioms_hold(lo in 3usize..7, span in 0usize..4, r in 3usize..11, seed in any::<u64>(), root_deg in 2usize..12) {
        let hi = (lo + span).min(6);
        let root_deg = root_deg.min(r - 1).max(2);
        let mut t = RootedTree::seeded(lo, hi, seed).with_root_degree(root_deg);
        let p = perimeter_decompose(&mut t, r).unwrap();
        prop_assert_eq!(p.total(), r);
        let kids = t.children(0).unwrap();
        let check = check_perimeter(&mut t, 0, &kids, &p.members, Some(r), Some(r)).unwrap();
        prop_assert!(check.all(), "{:?}", check);
        prop_assert!(p.radius <= r);
    }

    #[test]
    fn tree_map_certificates(lo in 3usize..5, span in 0usize..3, seed in any::<u64>()) {
        let r = 5;
        let hi = (lo + span).min(r);
        let mut target = RootedTree::seeded(lo, hi, seed);
        let map = build_tree_map(&mut target, r, 3).unwrap();
        prop_assert!(map.certificates.all());
        prop_assert_eq!(certify(&map, &mut target).unwrap(), map.certificates);
        let qi = verify_quasi_isometry(&map, &mut target).unwrap();
        prop_assert_eq!(qi.upper_violations, 0);
        prop_assert_eq!(qi.lower_violations, 0);
        prop_assert!(qi.density_radius <= r + 1);
    }
}

#[test]
fn perimeter_of_regular_tree_is_rigid() {
    // In the 3-regular tree every non-root vertex has two children, so the
    // perimeter multiplicities are at most 2.
    let mut t = RootedTree::regular(3);
    for r in 4..=12 {
        let p = perimeter_decompose(&mut t, r).unwrap();
        assert_eq!(p.total(), r);
        assert!(p.members.iter().all(|&(_, d)| (1..=2).contains(&d)));
    }
}

#[test]
fn regular_target_map_is_certified() {
    let mut target = RootedTree::regular(5);
    let map = build_tree_map(&mut target, 5, 4).unwrap();
    assert!(certify(&map, &mut target).unwrap().all());
    let qi = verify_quasi_isometry(&map, &mut target).unwrap();
    assert!(qi.ok());
}

#[test]
fn degree_window_is_enforced() {
    let mut too_big = RootedTree::regular(7);
    assert!(build_tree_map(&mut too_big, 5, 2).is_err());
    let mut too_small = RootedTree::seeded(2, 4, 1);
    assert!(build_tree_map(&mut too_small, 5, 2).is_err());
}
