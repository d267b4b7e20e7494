use std::collections::{HashMap, VecDeque};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::blueprint::Blueprint;
use crate::error::{CoreError, Result};
use crate::word::{shortlex, Gen, Word};

/// Opaque class label. Equal keys imply Γ-equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey(pub Vec<i64>);

/// A sound, possibly incomplete, solver for the word problem of a blueprint.
pub trait WordProblem {
    /// Key of a consistent word, or `None` when the word is beyond the solver's reach.
    /// Two consistent words with the same initial state and equal keys are Γ-equivalent.
    fn key(&self, w: &[Gen]) -> Option<ClassKey>;
}

/// For each relation side, the words it may be replaced with.
pub struct RelationIndex {
    sides: HashMap<Word, Vec<Word>>,
    has_empty: bool,
}

impl RelationIndex {
    pub fn new(b: &Blueprint) -> Self {
        let mut sides: HashMap<Word, Vec<Word>> = HashMap::new();
        for (u, v) in &b.relations {
            if u == v {
                continue;
            }
            sides.entry(u.clone()).or_default().push(v.clone());
            sides.entry(v.clone()).or_default().push(u.clone());
        }
        for others in sides.values_mut() {
            others.sort_by(|a, b| shortlex(a, b));
            others.dedup();
        }
        let has_empty = sides.contains_key(&Vec::new());
        RelationIndex { sides, has_empty }
    }

    /// Consistent words Γ-similar to `w` of length at most `max_len`, in shortlex order.
    /// The flag reports whether some similar word was dropped for exceeding `max_len`.
    pub fn neighbors(&self, b: &Blueprint, w: &[Gen], max_len: usize) -> (Vec<Word>, bool) {
        let mut out = Vec::new();
        let mut overflow = false;
        for i in 0..=w.len() {
            let start = if self.has_empty { i } else { i + 1 };
            for j in start..=w.len() {
                let Some(others) = self.sides.get(&w[i..j]) else { continue };
                for o in others {
                    let len = w.len() - (j - i) + o.len();
                    if len > max_len {
                        overflow = true;
                        continue;
                    }
                    let mut v = Vec::with_capacity(len);
                    v.extend_from_slice(&w[..i]);
                    v.extend_from_slice(o);
                    v.extend_from_slice(&w[j..]);
                    if b.is_consistent(&v) {
                        out.push(v);
                    }
                }
            }
        }
        out.sort_by(|a, b| shortlex(a, b));
        out.dedup();
        (out, overflow)
    }
}

pub fn is_similar(b: &Blueprint, u: &[Gen], v: &[Gen]) -> bool {
    if !b.is_consistent(u) || !b.is_consistent(v) {
        return false;
    }
    for (l, r) in &b.relations {
        for (from, to) in [(l, r), (r, l)] {
            for i in 0..=u.len() {
                if u.len() < i + from.len() || &u[i..i + from.len()] != from.as_slice() {
                    continue;
                }
                let tail = &u[i + from.len()..];
                if v.len() == i + to.len() + tail.len()
                    && v[..i] == u[..i]
                    && &v[i..i + to.len()] == to.as_slice()
                    && &v[i + to.len()..] == tail
                {
                    return true;
                }
            }
        }
    }
    false
}

/// Checks that consecutive words of a chain are Γ-similar (or equal).
pub fn verify_chain(b: &Blueprint, chain: &[Word]) -> bool {
    !chain.is_empty()
        && chain.iter().all(|w| b.is_consistent(w))
        && chain.windows(2).all(|p| p[0] == p[1] || is_similar(b, &p[0], &p[1]))
}

/// Union-find over all consistent words of length at most `max_len`, merged along Γ-similarity.
pub struct BoundedClosure {
    max_len: usize,
    index: HashMap<Word, usize>,
    words: Vec<Word>,
    parent: Vec<usize>,
    truncated: bool,
}

impl BoundedClosure {
    pub fn new(b: &Blueprint, max_len: usize, max_words: usize) -> Result<Self> {
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for s in 0..b.num_gens() {
                    if let Some(&last) = w.last() {
                        if !b.terminal(last).contains(&b.initial(s)) {
                            continue;
                        }
                    }
                    let mut v = w.clone();
                    v.push(s);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            if words.len() > max_words {
                return Err(CoreError::ClosureBudget(max_words));
            }
            layer = next;
        }
        let index: HashMap<Word, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut parent: Vec<usize> = (0..words.len()).collect();
        let rel = RelationIndex::new(b);
        let mut truncated = false;
        for i in 0..words.len() {
            let (ns, over) = rel.neighbors(b, &words[i], max_len);
            truncated |= over;
            for n in ns {
                let j = index[&n];
                union(&mut parent, i, j);
            }
        }
        for i in 0..parent.len() {
            let r = find(&mut parent, i);
            parent[i] = r;
        }
        Ok(BoundedClosure { max_len, index, words, parent, truncated })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// True when some rewrite was cut by the length bound, so classes may be incomplete.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn num_words(&self) -> usize {
        self.words.len()
    }

    /// Canonical (shortlex smallest) representative of the class of `w`.
    pub fn representative(&self, w: &[Gen]) -> Option<&Word> {
        self.index.get(w).map(|&i| &self.words[self.parent[i]])
    }

    pub fn same_class(&self, u: &[Gen], v: &[Gen]) -> bool {
        match (self.index.get(u), self.index.get(v)) {
            (Some(&i), Some(&j)) => self.parent[i] == self.parent[j],
            _ => false,
        }
    }
}

impl WordProblem for BoundedClosure {
    fn key(&self, w: &[Gen]) -> Option<ClassKey> {
        self.index.get(w).map(|&i| ClassKey(vec![self.parent[i] as i64]))
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_len: usize,
    pub max_steps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_len: 12, max_steps: 200_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separation {
    /// R = ∅: classes are singletons.
    NoRelations,
    /// The class of the first word was explored completely without meeting the second.
    ClosedClass { size: usize },
    /// Generator counts differ outside the span of the relation count differences.
    AbelianInvariant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    /// A chain of Γ-similar words from the first word to the second.
    Equivalent { chain: Vec<Word> },
    NotEquivalent { reason: Separation },
    Unknown { explored: usize },
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent { .. })
    }

    pub fn is_not_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::NotEquivalent { .. })
    }
}

pub fn equivalence_query(b: &Blueprint, u: &[Gen], v: &[Gen], budget: Budget) -> Result<EquivalenceVerdict> {
    for w in [u, v] {
        if !b.check_consistent_word(w)? {
            return Err(CoreError::InconsistentWord(b.show_word(w)));
        }
    }
    if u == v {
        return Ok(EquivalenceVerdict::Equivalent { chain: vec![u.to_vec()] });
    }
    if b.relations.is_empty() {
        return Ok(EquivalenceVerdict::NotEquivalent { reason: Separation::NoRelations });
    }
    if abelian_separates(b, u, v) {
        return Ok(EquivalenceVerdict::NotEquivalent { reason: Separation::AbelianInvariant });
    }
    let rel = RelationIndex::new(b);
    let mut parent: HashMap<Word, Option<Word>> = HashMap::new();
    parent.insert(u.to_vec(), None);
    let mut queue = VecDeque::from([u.to_vec()]);
    let mut overflow = false;
    while let Some(w) = queue.pop_front() {
        if parent.len() > budget.max_steps {
            return Ok(EquivalenceVerdict::Unknown { explored: parent.len() });
        }
        let (ns, over) = rel.neighbors(b, &w, budget.max_len.max(u.len()).max(v.len()));
        overflow |= over;
        for n in ns {
            if parent.contains_key(&n) {
                continue;
            }
            parent.insert(n.clone(), Some(w.clone()));
            if n == v {
                let mut chain = vec![n];
                while let Some(Some(p)) = parent.get(chain.last().unwrap()) {
                    chain.push(p.clone());
                }
                chain.reverse();
                return Ok(EquivalenceVerdict::Equivalent { chain });
            }
            queue.push_back(n);
        }
    }
    if overflow {
        Ok(EquivalenceVerdict::Unknown { explored: parent.len() })
    } else {
        Ok(EquivalenceVerdict::NotEquivalent { reason: Separation::ClosedClass { size: parent.len() } })
    }
}

/// True when the generator-count vector of u − v is not a rational combination of the
/// relation count differences; then no sequence of rewrites can turn u into v.
pub fn abelian_separates(b: &Blueprint, u: &[Gen], v: &[Gen]) -> bool {
    let k = b.num_gens();
    let counts = |w: &[Gen]| {
        let mut c = vec![0i64; k];
        for &s in w {
            c[s] += 1;
        }
        c
    };
    let diff = |x: &[Gen], y: &[Gen]| -> Vec<Ratio<i128>> {
        let (cx, cy) = (counts(x), counts(y));
        cx.iter().zip(&cy).map(|(a, b)| Ratio::from_integer((a - b) as i128)).collect()
    };
    let mut rows: Vec<Vec<Ratio<i128>>> = b.relations.iter().map(|(l, r)| diff(l, r)).collect();
    let target = diff(u, v);
    let rank_without = rank(&mut rows.clone());
    rows.push(target);
    rank(&mut rows) > rank_without
}

fn rank(rows: &mut [Vec<Ratio<i128>>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c];
        for x in rows[r].iter_mut() {
            *x /= pivot;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for j in 0..cols {
                    let d = rows[r][j] * f;
                    rows[i][j] -= d;
                }
            }
        }
        debug_assert!(rows[r][c].is_one());
        r += 1;
    }
    r
}
