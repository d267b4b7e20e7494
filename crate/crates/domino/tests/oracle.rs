use blueprint_core::{builtins, BoundedClosure};
use blueprint_domino::{domino_run, verify_empty, verify_quotient, Schedule, Verdict};
use blueprint_subshift::{Pattern, PatternSet};
use proptest::prelude::*;

/// X is nonempty iff the graph of allowed a-steps has a cycle.
fn has_cycle(allowed: &[[bool; 2]; 2]) -> bool {
    allowed[0][0] || allowed[1][1] || (allowed[0][1] && allowed[1][0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdicts_match_the_transition_graph(forward in prop::collection::vec(any::<bool>(), 4), backward in prop::collection::vec(any::<bool>(), 4)) {
        let b = builtins::z();
        let (a, inv) = (b.gen_index("a").unwrap(), b.gen_index("A").unwrap());
        let mut patterns = Vec::new();
        let mut allowed = [[true; 2]; 2];
        for x in 0..2 {
            for y in 0..2 {
                if forward[2 * x + y] {
                    patterns.push(Pattern::new(vec![(vec![], 0, x), (vec![a], 0, y)]).unwrap());
                    allowed[x][y] = false;
                }
                if backward[2 * x + y] {
                    patterns.push(Pattern::new(vec![(vec![], 0, x), (vec![inv], 0, y)]).unwrap());
                    allowed[y][x] = false;
                }
            }
        }
        let fs = PatternSet::new(vec!["0".into(), "1".into()], patterns).unwrap();
        let c = BoundedClosure::new(&b, 8, 100_000).unwrap();
        match domino_run(&b, &c, &fs, &Schedule::default()).unwrap() {
            Verdict::Nonempty(cert) => {
                prop_assert!(has_cycle(&allowed));
                prop_assert!(verify_quotient(&b, &fs, &cert).is_ok());
            }
            Verdict::Empty(cert) => {
                prop_assert!(!has_cycle(&allowed));
                prop_assert!(verify_empty(&b, &c, &fs, &cert, 1 << 16).is_ok());
            }
            Verdict::Unknown => prop_assert!(false, "two letters never need a larger budget"),
        }
    }
}
