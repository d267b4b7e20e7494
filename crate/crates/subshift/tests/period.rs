use std::sync::Arc;

use blueprint_core::{builtins, BoundedClosure, Budget, Domain, EquivalenceVerdict, PartialModel};
use blueprint_subshift::{find_period_witness, locally_admissible, PatternSet, Window};

#[test]
fn constant_window_has_period_e() {
    let b = builtins::z2();
    let c = BoundedClosure::new(&b, 4, 100_000).unwrap();
    let fs = PatternSet::empty(vec!["0".into(), "1".into()]);
    let w = locally_admissible(&b, &c, &fs, Arc::new(Domain::ball(4, 2)), 1).unwrap().windows.remove(0);
    assert!(w.colors.iter().all(|c| *c == Some(0)));
    let (u, v) = find_period_witness(&b, &w, Budget::default()).unwrap().unwrap();
    assert_eq!(u, b.parse_word("e").unwrap());
    assert!(v.is_not_equivalent());
}

#[test]
fn inverse_pair_is_not_a_period() {
    let b = builtins::z();
    let d = Arc::new(Domain::ball(2, 2));
    // positions coloured by x mod 3 never repeat with period 1 or 2
    let colors = d
        .words()
        .iter()
        .map(|w| {
            let x: i64 = w.iter().map(|&s| if s == 0 { 1 } else { -1 }).sum();
            Some(x.rem_euclid(3) as usize)
        })
        .collect();
    let w = Window { model: Arc::new(PartialModel { domain: Arc::clone(&d), states: vec![Some(0); d.len()] }), colors };
    let witness = find_period_witness(&b, &w, Budget::default()).unwrap();
    assert_eq!(witness, None);
    let aa = b.parse_word("a A").unwrap();
    assert!(blueprint_core::equivalence_query(&b, &aa, &[], Budget::default()).unwrap().is_equivalent());
}

#[test]
fn checkerboard_has_period_ee() {
    let b = builtins::z2();
    let d = Arc::new(Domain::ball(4, 2));
    let colors = d
        .words()
        .iter()
        .map(|w| {
            let x: i64 = w.iter().map(|&s| [1, -1, 1, -1][s]).sum();
            Some(x.rem_euclid(2) as usize)
        })
        .collect();
    let w = Window { model: Arc::new(PartialModel { domain: Arc::clone(&d), states: vec![Some(0); d.len()] }), colors };
    let c = BoundedClosure::new(&b, 4, 100_000).unwrap();
    blueprint_subshift::validate_window(&b, &c, &blueprint_subshift::hard_square(&b), &w).unwrap();
    let (u, v) = find_period_witness(&b, &w, Budget::default()).unwrap().unwrap();
    assert_eq!(u, b.parse_word("e e").unwrap());
    assert!(matches!(v, EquivalenceVerdict::NotEquivalent { .. }));
}
