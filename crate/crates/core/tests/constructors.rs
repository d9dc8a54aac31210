mod common;
mod suites;

use std::time::Duration;

use suites::*;

#[test]
fn profile_enumeration() {
    let binary = complete_profiles(2, 3);
    assert_eq!(binary, vec![vec![1, 1], vec![1, 2, 2]]);
    assert_eq!(complete_profiles(2, 8).len(), 37);
    let ternary = complete_profiles(3, 8);
    assert_eq!(
        ternary,
        vec![
            vec![1, 1, 1],
            vec![1, 1, 2, 2, 2],
            vec![1, 1, 2, 2, 3, 3, 3],
            vec![1, 2, 2, 2, 2, 2, 2]
        ]
    );
}

#[test]
fn every_small_profile_gets_a_synchronizing_code() {
    let (out, slowest) = constructor_profiles();
    assert!(out.ok(), "{:?}", out.violations);
    // 37 binary profiles less {1,1}, {2,2,2,2}, {3 ×8}; 4 ternary ones
    assert_eq!(out.checked, 38);
    assert!(slowest < Duration::from_secs(30));
}
