use std::sync::Arc;

use blueprint_core::{builtins, ClassKey, Domain, Gen, PartialModel, Word, WordProblem};
use blueprint_qi::{
    check_map, check_qi_window, compile_qi_patterns, encode_along_qi, t_bound, CompileBudget, Component, QiAlphabet,
    QiError, QiMap, QiState, QiView,
};
use blueprint_subshift::{restrict_window, shift_window, validate_window, Pattern, PatternSet, Window};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exact word problem of Z: the exponent sum.
struct ZProblem;

impl WordProblem for ZProblem {
    fn key(&self, w: &[Gen]) -> Option<ClassKey> {
        Some(ClassKey(vec![w.iter().map(|&s| if s == 0 { 1 } else { -1 }).sum()]))
    }
}

fn pos(w: &[Gen]) -> i64 {
    w.iter().map(|&s| if s == 0 { 1i64 } else { -1 }).sum()
}

fn z_word(k: i64) -> Word {
    if k >= 0 {
        vec![0; k as usize]
    } else {
        vec![1; (-k) as usize]
    }
}

fn full(domain: Domain) -> Arc<PartialModel> {
    let states = vec![Some(0); domain.len()];
    Arc::new(PartialModel { domain: Arc::new(domain), states })
}

/// A Z-window whose color at n is `colors(n)`.
fn z_window(domain: Domain, colors: impl Fn(i64) -> usize) -> Window {
    let model = full(domain);
    let colors = model.domain.words().iter().map(|w| Some(colors(pos(w)))).collect();
    Window { model, colors }
}

fn line(r: i64) -> Domain {
    Domain::new((-r..=r).map(z_word).collect()).unwrap()
}

/// n ↦ 2n + 1: injective, misses every even integer.
fn odd_embedding(radius: i64) -> QiMap {
    let entries = (-radius..=radius).map(|k| (z_word(k), z_word(2 * k + 1), 0)).collect();
    let edges = (-radius..=radius).flat_map(|k| [(z_word(k), 0, vec![0, 0]), (z_word(k), 1, vec![1, 1])]).collect();
    QiMap { n: 1, entries, edges }
}

fn names(k: usize) -> Vec<String> {
    (0..k).map(|i| i.to_string()).collect()
}

#[test]
fn alphabet_counts_match_the_closed_form() {
    let z = builtins::z();
    // 1 + |A| (|S₁^{≤2N}| N)^{#out-gens}, with |S₁^{≤2}| = 7 and both generators leaving the state
    for (a, expected) in [(1usize, 50u128), (2, 99)] {
        let oracle = 1 + a as u128 * 7u128.pow(2);
        assert_eq!(oracle, expected);
        let alph = QiAlphabet::new(&z, &z, a, 1);
        assert_eq!(alph.count(), expected);
        assert_eq!(alph.enumerate(1000).unwrap().count() as u128, expected);
    }
    let alph = QiAlphabet::new(&z, &z, 1, 1);
    assert_eq!(alph.letter(alph.star()), vec![Component::Star]);
    for idx in 0..alph.count() as usize {
        assert_eq!(alph.index(&alph.letter(idx)).unwrap(), idx);
    }
    // ∂I out of range violates C0
    let bad = Component::Coded { state: 0, letter: 0, moves: vec![Some(vec![]), Some(vec![])], indices: vec![Some(1), Some(0)] };
    assert!(alph.component_index(&bad).is_err());
    let short = Component::Coded { state: 0, letter: 0, moves: vec![Some(vec![]), None], indices: vec![Some(0), None] };
    assert!(alph.component_index(&short).is_err());
    assert!(matches!(QiAlphabet::new(&z, &z, 1, 3).check_cap(1_000), Err(QiError::AlphabetCap { .. })));
}

#[test]
fn identity_round_trip_on_depth_four() {
    let z = builtins::z();
    let wp = ZProblem;
    let alph = QiAlphabet::new(&z, &z, 2, 1);
    let qi = QiMap::identity_z(&z, 5);
    check_map(&qi, &z, &wp, &z, &wp).unwrap();
    let target = full(Domain::ball(2, 4));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let row: Vec<usize> = (0..9).map(|_| rng.gen_range(0..2)).collect();
        let y = z_window(Domain::ball(2, 4), |n| row[(n + 4) as usize]);
        let x = encode_along_qi(&alph, &qi, &z, &wp, &z, &wp, &y, target.clone()).unwrap();
        let view = QiView::new(&z, &z, &wp, &alph, &x);
        let (u, xi) = view.theta().unwrap();
        assert!(u.is_empty());
        assert_eq!(xi.index, 0);
        let back = view.gamma(xi, 4).unwrap();
        assert_eq!(back.cells(), y.cells());
    }
}

#[test]
fn gamma_is_equivariant() {
    let z = builtins::z();
    let wp = ZProblem;
    let alph = QiAlphabet::new(&z, &z, 2, 1);
    let qi = QiMap::identity_z(&z, 8);
    let target = full(Domain::ball(2, 6));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let depth = 2;
    for _ in 0..50 {
        let row: Vec<usize> = (0..13).map(|_| rng.gen_range(0..2)).collect();
        let y = z_window(Domain::ball(2, 6), |n| row[(n + 6) as usize]);
        let x = encode_along_qi(&alph, &qi, &z, &wp, &z, &wp, &y, target.clone()).unwrap();
        let view = QiView::new(&z, &z, &wp, &alph, &x);
        let (_, xi) = view.theta().unwrap();
        let len = rng.gen_range(0..=3);
        let u: Word = (0..len).map(|_| rng.gen_range(0..2)).collect();
        let (moved, _) = view.circ(xi, &u).unwrap().unwrap();
        let lhs = view.gamma(moved, depth).unwrap();
        let big = view.gamma(xi, depth + u.len()).unwrap();
        let rhs = restrict_window(&shift_window(&z, &big, &u).unwrap(), Arc::new(Domain::ball(2, depth))).unwrap();
        assert_eq!(lhs.cells(), rhs.cells(), "u = {}", z.show_word(&u));
    }
}

#[test]
fn halving_map_passes_the_direct_checker() {
    let z = builtins::z();
    let wp = ZProblem;
    let alph = QiAlphabet::new(&z, &z, 1, 2);
    let qi = QiMap::halving_z(22);
    check_map(&qi, &z, &wp, &z, &wp).unwrap();
    let y = z_window(line(21), |_| 0);
    let x = encode_along_qi(&alph, &qi, &z, &wp, &z, &wp, &y, full(line(10))).unwrap();
    let view = QiView::new(&z, &z, &wp, &alph, &x);
    let report = check_qi_window(&view, &PatternSet::empty(names(1))).unwrap();
    assert!(report.checked > 0);
    // both preimages of 0 are coded at the origin
    let (u, xi) = view.theta().unwrap();
    assert!(u.is_empty());
    assert_eq!(xi.index, 0);
    let comps = view.components(xi.base).unwrap();
    assert!(comps.iter().all(|c| !c.is_star()));
    // 0 → 1 stays on f(0) = 0 and switches index; 1 → 2 moves one step
    let a = z.gen_index("a").unwrap();
    assert_eq!(view.mu(xi, &[a]).unwrap(), (vec![], 1));
    assert_eq!(view.mu(xi, &[a, a]).unwrap(), (vec![a], 0));
    let table = qi.to_toml_string(&z, &z);
    assert_eq!(QiMap::parse(&table, &z, &z).unwrap(), qi);
}

#[test]
fn theta_skips_starred_origin() {
    let z = builtins::z();
    let wp = ZProblem;
    let alph = QiAlphabet::new(&z, &z, 1, 1);
    let qi = odd_embedding(6);
    check_map(&qi, &z, &wp, &z, &wp).unwrap();
    let y = z_window(line(6), |_| 0);
    let x = encode_along_qi(&alph, &qi, &z, &wp, &z, &wp, &y, full(line(8))).unwrap();
    let view = QiView::new(&z, &z, &wp, &alph, &x);
    assert!(view.components(view.root().unwrap()).unwrap()[0].is_star());
    let (u, xi) = view.theta().unwrap();
    assert_eq!(u, vec![z.gen_index("a").unwrap()]);
    // ξ∘a jumps two positions
    let (next, mov) = view.circ(xi, &[0]).unwrap().unwrap();
    assert_eq!(mov, vec![0, 0]);
    assert_eq!(pos(view.word(next.base)), 3);
    check_qi_window(&view, &PatternSet::empty(names(1))).unwrap();
}

#[test]
fn movement_depends_only_on_the_class() {
    let z = builtins::z();
    let wp = ZProblem;
    let alph = QiAlphabet::new(&z, &z, 1, 2);
    let y = z_window(line(13), |_| 0);
    let x = encode_along_qi(&alph, &qi_halving(), &z, &wp, &z, &wp, &y, full(Domain::ball(2, 6))).unwrap();
    let view = QiView::new(&z, &z, &wp, &alph, &x);
    let (_, xi) = view.theta().unwrap();
    // equivalent Γ₂-words give the same endpoint
    for (u, v) in [(vec![0, 1], vec![]), (vec![0, 0, 1], vec![0]), (vec![1, 0, 1, 0], vec![])] {
        let eu = view.circ(xi, &u).unwrap().unwrap().0;
        let ev = view.circ(xi, &v).unwrap().unwrap().0;
        assert_eq!(eu, ev);
    }
}

fn qi_halving() -> QiMap {
    QiMap::halving_z(14)
}

#[test]
fn connecting_words_respect_the_interpolation_bound() {
    let z = builtins::z();
    let wp = ZProblem;
    let n = 2;
    let alph = QiAlphabet::new(&z, &z, 1, n);
    let y = z_window(line(25), |_| 0);
    let x = encode_along_qi(&alph, &QiMap::halving_z(26), &z, &wp, &z, &wp, &y, full(line(12))).unwrap();
    let view = QiView::new(&z, &z, &wp, &alph, &x);
    let (_, xi) = view.theta().unwrap();
    for k in -5i64..=5 {
        let v = z_word(k);
        let target = view.locate(&v).unwrap();
        for j in 0..n {
            let u = view.connecting_word(xi, QiState { base: target, index: j }, 64).unwrap().unwrap();
            assert!(u.len() <= n * (3 * n + 1) * (v.len() + 1), "{} for {}", u.len(), z.show_word(&v));
            // the oracle: f⁻¹(k, j) = 2k + j is at distance |2k + j|
            assert_eq!(u.len() as i64, (2 * k + j as i64).abs());
        }
    }
}

#[test]
fn compiled_patterns_admit_encodings() {
    let z = builtins::z();
    let wp = ZProblem;
    let (alph, compiled) =
        compile_qi_patterns(&z, &wp, &z, &names(1), &PatternSet::empty(names(1)), 1, CompileBudget::default()).unwrap();
    assert_eq!(alph.count(), 50);
    assert_eq!(compiled.reachability.max_target_len, 3);
    assert_eq!(compiled.reachability.max_word_len, 4);
    assert!(compiled.counts[0] > 0 && compiled.counts[1] > 0 && compiled.counts[3] > 0);
    let check = |x: &Window| validate_window(&z, &wp, &compiled.patterns, x);
    let y = z_window(line(8), |_| 0);
    let id = encode_along_qi(&alph, &QiMap::identity_z(&z, 8), &z, &wp, &z, &wp, &y, full(Domain::ball(2, 4))).unwrap();
    check(&id).unwrap();
    let odd = encode_along_qi(&alph, &odd_embedding(8), &z, &wp, &z, &wp, &y, full(Domain::ball(2, 4))).unwrap();
    check(&odd).unwrap();

    // the origin's a-step stays put: ξ∘aA leaves the origin
    let mut broken = id.clone();
    let mut letter = alph.letter(id.colors[0].unwrap());
    if let Component::Coded { moves, .. } = &mut letter[0] {
        moves[0] = Some(vec![]);
    }
    broken.colors[0] = Some(alph.index(&letter).unwrap());
    assert!(check(&broken).is_err());
    let view = QiView::new(&z, &z, &wp, &alph, &broken);
    assert!(matches!(check_qi_window(&view, &PatternSet::empty(names(1))), Err(QiError::Violation { .. })));

    // an all-⋆ window breaks density
    let stars = Window { model: id.model.clone(), colors: vec![Some(alph.star()); id.colors.len()] };
    assert!(check(&stars).is_err());
}

#[test]
fn single_cell_pattern_count_is_within_bound() {
    let z = builtins::z();
    let wp = ZProblem;
    let fs = PatternSet::new(names(1), vec![Pattern::new(vec![(vec![], 0, 0)]).unwrap()]).unwrap();
    let (alph, compiled) = compile_qi_patterns(&z, &wp, &z, &names(1), &fs, 1, CompileBudget::default()).unwrap();
    // oracle: one single-cell pattern per letter whose only component is coded with letter 0
    let oracle = alph
        .enumerate(1000)
        .unwrap()
        .filter(|l| matches!(&l[0], Component::Coded { letter: 0, .. }))
        .count();
    assert_eq!(oracle, 49);
    assert_eq!(compiled.t_sizes, vec![oracle]);
    assert!(oracle as u128 <= t_bound(&alph, &z, 1));
    assert_eq!(t_bound(&alph, &z, 1), 51);
    // every X-configuration avoids the forbidden letter, so encodings of y ≡ 0 are rejected
    let y = z_window(line(8), |_| 0);
    let x = encode_along_qi(&alph, &QiMap::identity_z(&z, 8), &z, &wp, &z, &wp, &y, full(Domain::ball(2, 3))).unwrap();
    assert!(validate_window(&z, &wp, &compiled.patterns, &x).is_err());
}

#[test]
fn alphabet_cap_and_budget_are_enforced() {
    let z = builtins::z();
    let wp = ZProblem;
    let tight = CompileBudget { max_letters: 10, max_patterns: 1_000_000 };
    assert!(matches!(
        compile_qi_patterns(&z, &wp, &z, &names(1), &PatternSet::empty(names(1)), 1, tight),
        Err(QiError::AlphabetCap { .. })
    ));
    let small = CompileBudget { max_letters: 1000, max_patterns: 5 };
    assert!(matches!(
        compile_qi_patterns(&z, &wp, &z, &names(1), &PatternSet::empty(names(1)), 1, small),
        Err(QiError::PatternBudget(5))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn round_trip_any_row(row in proptest::collection::vec(0usize..2, 13), depth in 0usize..=4) {
        let z = builtins::z();
        let wp = ZProblem;
        let alph = QiAlphabet::new(&z, &z, 2, 1);
        let y = z_window(line(6), |n| row[(n + 6) as usize]);
        let x = encode_along_qi(&alph, &QiMap::identity_z(&z, 7), &z, &wp, &z, &wp, &y, full(Domain::ball(2, 5))).unwrap();
        let view = QiView::new(&z, &z, &wp, &alph, &x);
        let (_, xi) = view.theta().unwrap();
        let back = view.gamma(xi, depth).unwrap();
        let expected = z_window(Domain::ball(2, depth), |n| row[(n + 6) as usize]);
        prop_assert_eq!(back.cells(), expected.cells());
    }
}
