use blueprint_core::builtins;
use blueprint_core::equiv::{abelian_separates, is_similar};
use blueprint_core::{equivalence_query, verify_chain, BoundedClosure, Budget, EquivalenceVerdict, Separation, WordProblem};
use proptest::prelude::*;

fn budget() -> Budget {
    Budget { max_len: 8, max_steps: 50_000 }
}

#[test]
fn inverse_pair_is_trivial_in_z() {
    let b = builtins::z();
    let v = equivalence_query(&b, &b.parse_word("a A").unwrap(), &[], budget()).unwrap();
    let EquivalenceVerdict::Equivalent { chain } = v else { panic!("{v:?}") };
    assert!(verify_chain(&b, &chain));
    assert_eq!(chain.first().unwrap(), &b.parse_word("a A").unwrap());
    assert!(chain.last().unwrap().is_empty());
}

#[test]
fn reflexive() {
    let b = builtins::hyperbolic();
    let w = b.parse_word("s00 s01").unwrap();
    assert!(equivalence_query(&b, &w, &w, budget()).unwrap().is_equivalent());
}

#[test]
fn free_monoid_separates() {
    let b = builtins::free1();
    let v = equivalence_query(&b, &[0], &[0, 0], budget()).unwrap();
    assert_eq!(v, EquivalenceVerdict::NotEquivalent { reason: Separation::NoRelations });
}

#[test]
fn inconsistent_input_is_an_error() {
    let b = builtins::table3();
    assert!(equivalence_query(&b, &b.parse_word("a b").unwrap(), &[], budget()).is_err());
}

#[test]
fn abelian_invariant_separates_z2_directions() {
    let b = builtins::z2();
    let e = b.parse_word("e").unwrap();
    let n = b.parse_word("n").unwrap();
    assert!(abelian_separates(&b, &e, &n));
    assert!(!abelian_separates(&b, &b.parse_word("e n").unwrap(), &b.parse_word("n e").unwrap()));
    let v = equivalence_query(&b, &e, &[], budget()).unwrap();
    assert_eq!(v, EquivalenceVerdict::NotEquivalent { reason: Separation::AbelianInvariant });
}

#[test]
fn closed_class_separation() {
    // (ab, ba) keeps length; classes are finite and fully explored.
    let src = r#"
[states]
names = ["o"]
[[generators]]
name = "a"
initial = "o"
terminal = ["o"]
[[generators]]
name = "b"
initial = "o"
terminal = ["o"]
[relations]
pairs = [["a b", "b a"], ["a a", "b b"]]
"#;
    let b = blueprint_core::Blueprint::parse(src).unwrap();
    let v = equivalence_query(&b, &b.parse_word("a a b").unwrap(), &b.parse_word("a b a").unwrap(), budget()).unwrap();
    assert!(v.is_equivalent());
    let v = equivalence_query(&b, &b.parse_word("a b").unwrap(), &b.parse_word("a a").unwrap(), budget()).unwrap();
    assert!(matches!(v, EquivalenceVerdict::NotEquivalent { reason: Separation::ClosedClass { .. } }), "{v:?}");
}

#[test]
fn small_budget_gives_unknown() {
    let b = builtins::z2();
    let u = b.parse_word("e n E N").unwrap();
    let v = equivalence_query(&b, &u, &[], Budget { max_len: 4, max_steps: 3 }).unwrap();
    assert!(matches!(v, EquivalenceVerdict::Unknown { .. }));
    assert!(equivalence_query(&b, &u, &[], budget()).unwrap().is_equivalent());
}

/// Z² words are equal in the group iff their net displacements agree.
fn displacement(w: &[usize]) -> (i64, i64) {
    w.iter().fold((0, 0), |(x, y), &s| match s {
        0 => (x + 1, y),
        1 => (x - 1, y),
        2 => (x, y + 1),
        _ => (x, y - 1),
    })
}

#[test]
fn bounded_closure_matches_z2_displacement() {
    let b = builtins::z2();
    let c = BoundedClosure::new(&b, 4, 10_000).unwrap();
    let words = blueprint_core::word::words_up_to(4, 4);
    for u in &words {
        for v in &words {
            assert_eq!(c.same_class(u, v), displacement(u) == displacement(v), "{u:?} {v:?}");
        }
    }
    assert_eq!(c.representative(&b.parse_word("n e").unwrap()).unwrap(), &b.parse_word("e n").unwrap());
    assert_eq!(c.key(&b.parse_word("e E").unwrap()), c.key(&[]));
}

#[test]
fn closure_budget_is_reported() {
    let b = builtins::z2();
    assert!(BoundedClosure::new(&b, 6, 100).is_err());
}

fn z2_word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 0..5)
}

proptest! {
    #[test]
    fn z2_verdicts_agree_with_displacement(u in z2_word(), v in z2_word()) {
        let b = builtins::z2();
        let verdict = equivalence_query(&b, &u, &v, Budget { max_len: 10, max_steps: 200_000 }).unwrap();
        match &verdict {
            EquivalenceVerdict::Equivalent { chain } => {
                prop_assert_eq!(displacement(&u), displacement(&v));
                prop_assert!(verify_chain(&b, chain));
                prop_assert_eq!(chain.first().unwrap(), &u);
                prop_assert_eq!(chain.last().unwrap(), &v);
            }
            EquivalenceVerdict::NotEquivalent { .. } => prop_assert_ne!(displacement(&u), displacement(&v)),
            EquivalenceVerdict::Unknown { .. } => {}
        }
    }

    #[test]
    fn symmetric_on_z(u in prop::collection::vec(0usize..2, 0..6), v in prop::collection::vec(0usize..2, 0..6)) {
        let b = builtins::z();
        let f = equivalence_query(&b, &u, &v, budget()).unwrap().is_equivalent();
        let g = equivalence_query(&b, &v, &u, budget()).unwrap().is_equivalent();
        prop_assert_eq!(f, g);
    }

    #[test]
    fn chain_steps_are_similarities(u in z2_word()) {
        let b = builtins::z2();
        if let EquivalenceVerdict::Equivalent { chain } =
            equivalence_query(&b, &u, &b.parse_word("e n").unwrap(), budget()).unwrap()
        {
            for p in chain.windows(2) {
                prop_assert!(is_similar(&b, &p[0], &p[1]));
            }
        }
    }

    #[test]
    fn larger_budget_never_flips(u in z2_word(), v in z2_word()) {
        let b = builtins::z2();
        let small = equivalence_query(&b, &u, &v, Budget { max_len: 5, max_steps: 500 }).unwrap();
        let large = equivalence_query(&b, &u, &v, Budget { max_len: 10, max_steps: 200_000 }).unwrap();
        match small {
            EquivalenceVerdict::Equivalent { .. } => prop_assert!(large.is_equivalent()),
            EquivalenceVerdict::NotEquivalent { .. } => prop_assert!(large.is_not_equivalent()),
            EquivalenceVerdict::Unknown { .. } => {}
        }
    }
}
