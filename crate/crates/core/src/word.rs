use std::cmp::Ordering;

/// Generator index, in declaration order.
pub type Gen = usize;
/// State index, in declaration order.
pub type State = usize;
pub type Word = Vec<Gen>;

/// Length first, then lexicographic by generator declaration order.
pub fn shortlex(a: &[Gen], b: &[Gen]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// All words of length at most `r` over `num_gens` generators, in shortlex order.
pub fn words_up_to(num_gens: usize, r: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::with_capacity(layer.len() * num_gens);
        for w in &layer {
            for s in 0..num_gens {
                let mut v = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn concat(a: &[Gen], b: &[Gen]) -> Word {
    let mut w = Vec::with_capacity(a.len() + b.len());
    w.extend_from_slice(a);
    w.extend_from_slice(b);
    w
}

pub fn is_prefix(p: &[Gen], w: &[Gen]) -> bool {
    p.len() <= w.len() && &w[..p.len()] == p
}
