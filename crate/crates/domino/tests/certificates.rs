use std::sync::Arc;

use blueprint_core::{builtins, equivalence_query, Blueprint, BoundedClosure, Budget, Domain, PartialModel};
use blueprint_domino::{
    certify_empty, certify_nonempty, domino_run, domino_run_on_model, verify_empty, verify_quotient, ModelVerdict,
    QuotientCertificate, Schedule, SearchBounds, Step, Verdict,
};
use blueprint_subshift::{
    find_period_witness, forbid_all_edges, hard_square, restrict_window, shift_window, validate_window, Pattern,
    PatternSet,
};

fn closure(b: &Blueprint, len: usize) -> BoundedClosure {
    BoundedClosure::new(b, len, 2_000_000).unwrap()
}

fn mismatched_wang(b: &Blueprint) -> PatternSet {
    let e = b.gen_index("e").unwrap();
    let w = b.gen_index("E").unwrap();
    forbid_all_edges(b, vec!["0".into()], &[e, w])
}

/// Z with letters 0..3 where each a-step must add 1 mod 3.
fn cyclic3(b: &Blueprint) -> PatternSet {
    let a = b.gen_index("a").unwrap();
    let mut patterns = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            if y != (x + 1) % 3 {
                patterns.push(Pattern::new(vec![(vec![], 0, x), (vec![a], 0, y)]).unwrap());
            }
        }
    }
    PatternSet::new(vec!["0".into(), "1".into(), "2".into()], patterns).unwrap()
}

#[test]
fn mismatched_wang_is_empty_at_radius_one() {
    let b = builtins::z2();
    let c = closure(&b, 4);
    let fs = mismatched_wang(&b);
    let cert = certify_empty(&b, &c, &fs, 1).unwrap().expect("certificate");
    assert_eq!(cert.radius, 1);
    verify_empty(&b, &c, &fs, &cert, 1 << 20).unwrap();
    let back = blueprint_domino::EmptinessCertificate::parse(&cert.to_toml_string()).unwrap();
    assert_eq!(back, cert);
}

#[test]
fn full_shift_is_never_certified_empty() {
    let b = builtins::z2();
    let c = closure(&b, 4);
    let fs = PatternSet::empty(vec!["0".into(), "1".into()]);
    for r in 1..=2 {
        assert!(certify_empty(&b, &c, &fs, r).unwrap().is_none());
    }
}

#[test]
fn z_with_every_edge_forbidden_is_empty() {
    let b = builtins::z();
    let c = closure(&b, 4);
    let fs = forbid_all_edges(&b, vec!["0".into(), "1".into()], &[0, 1]);
    let cert = certify_empty(&b, &c, &fs, 1).unwrap().expect("certificate");
    verify_empty(&b, &c, &fs, &cert, 1 << 20).unwrap();
}

#[test]
fn full_shift_has_one_vertex_with_self_loops() {
    let b = builtins::z2();
    let fs = PatternSet::empty(vec!["0".into()]);
    let cert = certify_nonempty(&b, &fs, SearchBounds::up_to(1), None).unwrap().certificate.unwrap();
    assert_eq!(cert.labels, vec![(0, 0)]);
    assert_eq!(cert.edges, vec![vec![Some(0); 4]]);
    verify_quotient(&b, &fs, &cert).unwrap();
}

fn checkerboard(b: &Blueprint, fs: &PatternSet) -> QuotientCertificate {
    QuotientCertificate {
        labels: vec![(0, 0), (0, 1)],
        edges: vec![vec![Some(1); 4], vec![Some(0); 4]],
        blueprint_digest: b.digest(),
        patterns_digest: fs.digest(b),
    }
}

#[test]
fn hard_square_two_vertex_certificate_is_the_checkerboard() {
    let b = builtins::z2();
    let fs = hard_square(&b);
    let found = certify_nonempty(&b, &fs, SearchBounds::exactly(2), None).unwrap().certificate.unwrap();
    assert_eq!(found.labels, checkerboard(&b, &fs).labels);
    assert_eq!(found.edges, checkerboard(&b, &fs).edges);
    verify_quotient(&b, &fs, &found).unwrap();
    // closure holds relation by relation, both walks return to the same vertex
    for (u, v) in &b.relations {
        for start in 0..2 {
            let end = |w: &[usize]| w.iter().fold(start, |x, &s| found.edges[x][s].unwrap());
            assert_eq!(end(u), end(v));
        }
    }
}

#[test]
fn hard_square_smallest_certificate_is_all_zero() {
    let b = builtins::z2();
    let fs = hard_square(&b);
    let cert = certify_nonempty(&b, &fs, SearchBounds::up_to(2), None).unwrap().certificate.unwrap();
    assert_eq!(cert.labels, vec![(0, 0)]);
}

#[test]
fn tree_without_patterns_has_a_one_vertex_loop() {
    let b = builtins::tree12();
    let fs = PatternSet::empty(vec!["0".into()]);
    let cert = certify_nonempty(&b, &fs, SearchBounds::up_to(2), None).unwrap().certificate.unwrap();
    let s = b.gen_index("s").unwrap();
    assert_eq!(cert.labels, vec![(b.state_index("1").unwrap(), 0)]);
    assert_eq!(cert.edges[0][s], Some(0));
    verify_quotient(&b, &fs, &cert).unwrap();
}

#[test]
fn verifier_rejects_broken_certificates() {
    let b = builtins::z2();
    let fs = hard_square(&b);
    let good = checkerboard(&b, &fs);
    verify_quotient(&b, &fs, &good).unwrap();

    let mut ones = good.clone();
    ones.labels[0].1 = 1;
    assert!(verify_quotient(&b, &fs, &ones).is_err());

    // e and E no longer inverse at vertex 0
    let mut skew = good.clone();
    skew.labels = vec![(0, 0), (0, 0), (0, 0)];
    skew.edges = vec![vec![Some(1), Some(2), Some(0), Some(0)], vec![Some(2), Some(0), Some(1), Some(1)], vec![Some(0), Some(0), Some(2), Some(2)]];
    assert!(verify_quotient(&b, &fs, &skew).is_err());

    let mut stale = good.clone();
    stale.patterns_digest = "00".into();
    assert!(verify_quotient(&b, &fs, &stale).is_err());
}

#[test]
fn certificate_text_round_trip() {
    let b = builtins::z2();
    let fs = hard_square(&b);
    let cert = checkerboard(&b, &fs);
    let text = cert.to_toml_string(&b, &fs);
    let back = QuotientCertificate::parse(&text, &b, &fs).unwrap();
    assert_eq!(back, cert);
    assert_eq!(back.to_toml_string(&b, &fs), text);
}

#[test]
fn unfoldings_pass_the_window_validator() {
    let cases: Vec<(Blueprint, PatternSet)> = {
        let z2 = builtins::z2();
        let hs = hard_square(&z2);
        let z = builtins::z();
        let c3 = cyclic3(&z);
        let t = builtins::tree12();
        let hst = hard_square(&t);
        vec![(z2, hs), (z, c3), (t, hst)]
    };
    for (b, fs) in cases {
        let c = closure(&b, 6);
        let cert = certify_nonempty(&b, &fs, SearchBounds::up_to(4), None).unwrap().certificate.unwrap();
        verify_quotient(&b, &fs, &cert).unwrap();
        let win = cert.unfold(&b, Arc::new(Domain::ball(b.num_gens(), 3)));
        validate_window(&b, &c, &fs, &win).unwrap();
    }
    let b = builtins::z2();
    let fs = hard_square(&b);
    let c = closure(&b, 6);
    let win = checkerboard(&b, &fs).unfold(&b, Arc::new(Domain::ball(4, 3)));
    validate_window(&b, &c, &fs, &win).unwrap();
}

#[test]
fn nontrivial_cycles_are_periods() {
    let b = builtins::z2();
    let fs = hard_square(&b);
    let cert = checkerboard(&b, &fs);
    let win = cert.unfold(&b, Arc::new(Domain::ball(4, 3)));
    let u = cert
        .closed_walks(2)
        .into_iter()
        .find(|u| equivalence_query(&b, u, &[], Budget::default()).unwrap().is_not_equivalent())
        .expect("a nontrivial cycle");
    let shifted = shift_window(&b, &win, &u).unwrap();
    let same = restrict_window(&win, Arc::clone(shifted.domain())).unwrap();
    assert_eq!(shifted, same);
    let (w, verdict) = find_period_witness(&b, &win, Budget::default()).unwrap().unwrap();
    assert!(verdict.is_not_equivalent());
    assert!(cert.closed_walks(w.len()).contains(&w));
}

#[test]
fn driver_verdicts() {
    let z2 = builtins::z2();
    let c = closure(&z2, 8);
    let schedule = Schedule::default();
    match domino_run(&z2, &c, &mismatched_wang(&z2), &schedule).unwrap() {
        Verdict::Empty(cert) => assert_eq!(cert.radius, 1),
        v => panic!("{v:?}"),
    }
    let hs = hard_square(&z2);
    match domino_run(&z2, &c, &hs, &schedule).unwrap() {
        Verdict::Nonempty(cert) => verify_quotient(&z2, &hs, &cert).unwrap(),
        v => panic!("{v:?}"),
    }

    let z = builtins::z();
    let cz = closure(&z, 8);
    let fs = cyclic3(&z);
    let short = Schedule { steps: vec![Step { radius: 1, max_vertices: 1 }, Step { radius: 2, max_vertices: 2 }], max_nodes: 10_000 };
    let v = domino_run(&z, &cz, &fs, &short).unwrap();
    assert_eq!(v, Verdict::Unknown);
    assert_eq!(v.exit_code(), 2);
    match domino_run(&z, &cz, &fs, &schedule).unwrap() {
        Verdict::Nonempty(cert) => {
            assert_eq!(cert.num_vertices(), 3);
            verify_quotient(&z, &fs, &cert).unwrap();
        }
        v => panic!("{v:?}"),
    }
}

#[test]
fn schedule_parsing() {
    assert_eq!(Schedule::parse("default"), Some(Schedule::default()));
    let s = Schedule::parse("1:1, 2:3").unwrap();
    assert_eq!(s.steps, vec![Step { radius: 1, max_vertices: 1 }, Step { radius: 2, max_vertices: 3 }]);
    assert_eq!(Schedule::parse("1-2"), None);
}

#[test]
fn fixed_model_variant() {
    let b = builtins::tree12();
    let c = closure(&b, 4);
    let (one, two) = (b.state_index("1").unwrap(), b.state_index("2").unwrap());
    let l = b.gen_index("l").unwrap();
    // no l-edge may carry any pair of letters
    let fs = forbid_all_edges(&b, vec!["0".into()], &[l]);
    assert!(matches!(domino_run(&b, &c, &fs, &Schedule::default()).unwrap(), Verdict::Nonempty(_)));

    let domain = Arc::new(Domain::ball(3, 1));
    let states = domain
        .words()
        .iter()
        .map(|w| match w.as_slice() {
            [] => Some(two),
            [g] if *g != b.gen_index("s").unwrap() => Some(one),
            _ => None,
        })
        .collect();
    let rooted_at_two = PartialModel { domain: Arc::clone(&domain), states };
    let v = domino_run_on_model(&b, &c, &fs, &rooted_at_two, &Schedule::default()).unwrap();
    assert_eq!(v, ModelVerdict::Empty { radius: 1 });

    let free = PatternSet::empty(vec!["0".into()]);
    match domino_run_on_model(&b, &c, &free, &rooted_at_two, &Schedule::default()).unwrap() {
        ModelVerdict::Nonempty(cert) => {
            assert_eq!(cert.labels[0].0, two);
            let win = cert.unfold(&b, Arc::clone(&domain));
            assert_eq!(win.model.states, rooted_at_two.states);
        }
        v => panic!("{v:?}"),
    }
}
