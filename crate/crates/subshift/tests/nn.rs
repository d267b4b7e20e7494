use std::sync::Arc;

use blueprint_core::{builtins, Blueprint, BoundedClosure, Domain};
use blueprint_subshift::{
    apply_sliding_block, count_windows, hard_square, locally_admissible, to_nearest_neighbor, validate_window,
    Pattern, PatternSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_z_patterns(rng: &mut ChaCha8Rng) -> PatternSet {
    let words: Vec<Vec<usize>> = blueprint_core::word::words_up_to(2, 2);
    let count = rng.gen_range(1..=3);
    let patterns = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=2);
            let mut cells = Vec::new();
            while cells.len() < size {
                let w = words[rng.gen_range(0..words.len())].clone();
                if cells.iter().all(|(v, _, _)| *v != w) {
                    cells.push((w, 0, rng.gen_range(0..2)));
                }
            }
            Pattern::new(cells).unwrap()
        })
        .collect();
    PatternSet::new(vec!["0".into(), "1".into()], patterns).unwrap()
}

fn check_conjugacy(b: &Blueprint, fs: &PatternSet, r: usize) {
    let c = BoundedClosure::new(b, r + 3, 500_000).unwrap();
    let nn = to_nearest_neighbor(b, &c, fs, 1_000_000).unwrap();
    assert!(nn.patterns.is_nearest_neighbor());
    let src = Arc::new(Domain::ball(b.num_gens(), r));
    let dst = Arc::new(Domain::ball(b.num_gens(), r - nn.n));
    let xs = locally_admissible(b, &c, fs, Arc::clone(&src), 1_000_000).unwrap().windows;
    let ny = count_windows(b, &c, &nn.patterns, Arc::clone(&dst)).unwrap();
    assert_eq!(xs.len(), ny);
    for x in &xs {
        let y = apply_sliding_block(b, &nn.forward, x).unwrap();
        validate_window(b, &c, &nn.patterns, &y).unwrap();
        assert_eq!(&nn.decode_window(&y).unwrap(), x);
        let back = apply_sliding_block(b, &nn.backward, &y).unwrap();
        assert_eq!(back.colors, blueprint_subshift::restrict_window(x, Arc::clone(&dst)).unwrap().colors);
    }
}

#[test]
fn random_pattern_sets_on_z() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let b = builtins::z();
    for _ in 0..6 {
        let fs = random_z_patterns(&mut rng);
        check_conjugacy(&b, &fs, 4);
    }
}

#[test]
fn nearest_neighbor_input_gives_radius_one() {
    let b = builtins::z();
    let fs = hard_square(&b);
    assert_eq!(fs.max_support_len(), 1);
    check_conjugacy(&b, &fs, 3);
}

#[test]
fn tree12_conjugacy() {
    let b = builtins::tree12();
    check_conjugacy(&b, &hard_square(&b), 2);
}

#[test]
fn empty_pattern_set_alphabet() {
    let b = builtins::tree12();
    let c = BoundedClosure::new(&b, 2, 1000).unwrap();
    let fs = PatternSet::empty(vec!["0".into(), "1".into()]);
    let nn = to_nearest_neighbor(&b, &c, &fs, 1000).unwrap();
    assert_eq!(nn.n, 0);
    // (m, a) pairs
    assert_eq!(nn.letters.len(), 4);
}

#[test]
fn support_two_gives_ball_two() {
    let b = builtins::z();
    let c = BoundedClosure::new(&b, 4, 1000).unwrap();
    let fs = PatternSet::new(vec!["0".into(), "1".into()], vec![Pattern::new(vec![(vec![], 0, 1), (vec![0, 0], 0, 1)]).unwrap()]).unwrap();
    let nn = to_nearest_neighbor(&b, &c, &fs, 100_000).unwrap();
    assert_eq!(nn.n, 2);
    assert_eq!(nn.forward.shape.words().len(), 7);
}

