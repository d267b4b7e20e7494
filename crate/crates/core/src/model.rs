use std::collections::HashMap;
use std::sync::Arc;

use crate::blueprint::Blueprint;
use crate::equiv::{ClassKey, WordProblem};
use crate::error::{CoreError, Result};
use crate::word::{concat, shortlex, words_up_to, Gen, State, Word};

/// A finite prefix-closed set of words, kept in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    radius: usize,
}

impl Domain {
    /// The ball S^{≤r}.
    pub fn ball(num_gens: usize, r: usize) -> Self {
        Self::from_sorted(words_up_to(num_gens, r))
    }

    /// Words x^i y^j with i < width, j < height: a rectangular block when x and y commute.
    pub fn grid(x: Gen, y: Gen, width: usize, height: usize) -> Self {
        let mut words = Vec::with_capacity(width * height);
        for i in 0..width {
            for j in 0..height {
                let mut w = vec![x; i];
                w.extend(std::iter::repeat(y).take(j));
                words.push(w);
            }
        }
        Self::new(words).expect("grid words are prefix closed")
    }

    pub fn new(mut words: Vec<Word>) -> Result<Self> {
        words.sort_by(|a, b| shortlex(a, b));
        words.dedup();
        if words.first().map_or(true, |w| !w.is_empty()) {
            return Err(CoreError::NotPrefixClosed("ε".into()));
        }
        let d = Self::from_sorted(words);
        for w in &d.words {
            if !w.is_empty() && !d.index.contains_key(&w[..w.len() - 1]) {
                return Err(CoreError::NotPrefixClosed(format!("{w:?}")));
            }
        }
        Ok(d)
    }

    fn from_sorted(words: Vec<Word>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let radius = words.iter().map(Vec::len).max().unwrap_or(0);
        Domain { words, index, radius }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Length of the longest word.
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn position(&self, w: &[Gen]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &[Gen]) -> bool {
        self.index.contains_key(w)
    }

    /// {u : wu ∈ D}.
    pub fn shifted(&self, w: &[Gen]) -> Option<Domain> {
        if !self.contains(w) {
            return None;
        }
        let words = self
            .words
            .iter()
            .filter(|u| u.starts_with(w))
            .map(|u| u[w.len()..].to_vec())
            .collect::<Vec<_>>();
        let mut words = words;
        words.sort_by(|a, b| shortlex(a, b));
        Some(Self::from_sorted(words))
    }

    /// Words of this domain of length at most r.
    pub fn truncated(&self, r: usize) -> Domain {
        Self::from_sorted(self.words.iter().filter(|w| w.len() <= r).cloned().collect())
    }
}

/// A Γ-consistent map on a finite prefix-closed domain; `None` is ∅.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialModel {
    pub domain: Arc<Domain>,
    pub states: Vec<Option<State>>,
}

impl PartialModel {
    pub fn get(&self, w: &[Gen]) -> Option<State> {
        self.domain.position(w).and_then(|i| self.states[i])
    }

    pub fn root(&self) -> State {
        self.states[0].expect("root is supported")
    }

    pub fn is_supported(&self, w: &[Gen]) -> bool {
        self.get(w).is_some()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.domain.words().iter().zip(&self.states).filter(|(_, s)| s.is_some()).map(|(w, _)| w)
    }

    pub fn restrict(&self, domain: Arc<Domain>) -> Result<PartialModel> {
        let mut states = Vec::with_capacity(domain.len());
        for w in domain.words() {
            let i = self
                .domain
                .position(w)
                .ok_or_else(|| CoreError::OutsideDomain(format!("{w:?}")))?;
            states.push(self.states[i]);
        }
        Ok(PartialModel { domain, states })
    }
}

/// Checks Γ-consistency on the domain: φ(ε) ∈ M, and children follow 𝔦/𝔱.
pub fn check_consistency(b: &Blueprint, m: &PartialModel) -> Result<()> {
    let violation = |w: &[Gen], reason: &str| CoreError::ModelViolation {
        word: b.show_word(w),
        reason: reason.to_string(),
    };
    if m.states.len() != m.domain.len() {
        return Err(violation(&[], "assignment does not cover the domain"));
    }
    match m.states[0] {
        Some(q) if q < b.num_states() => {}
        _ => return Err(violation(&[], "root must carry a state")),
    }
    for (w, st) in m.domain.words().iter().zip(&m.states).skip(1) {
        let (parent, s) = (&w[..w.len() - 1], w[w.len() - 1]);
        let expected = match m.get(parent) {
            Some(p) if b.initial(s) == p => true,
            _ => false,
        };
        match (expected, st) {
            (true, Some(q)) if b.terminal(s).contains(q) => {}
            (true, _) => return Err(violation(w, "state outside the terminal set")),
            (false, None) => {}
            (false, Some(_)) => return Err(violation(w, "supported although the action is undefined")),
        }
    }
    Ok(())
}

/// Keys of the consistent domain words under a word-problem solver.
pub fn domain_keys(b: &Blueprint, domain: &Domain, wp: &dyn WordProblem) -> Vec<Option<ClassKey>> {
    domain
        .words()
        .iter()
        .map(|w| if b.is_consistent(w) { wp.key(w) } else { None })
        .collect()
}

/// Consistency plus the model condition for supported words with equal keys.
pub fn validate_model(b: &Blueprint, m: &PartialModel, wp: &dyn WordProblem) -> Result<()> {
    check_consistency(b, m)?;
    let keys = domain_keys(b, &m.domain, wp);
    let mut seen: HashMap<&ClassKey, (usize, State)> = HashMap::new();
    for (i, st) in m.states.iter().enumerate() {
        let (Some(q), Some(k)) = (st, &keys[i]) else { continue };
        if let Some(&(j, q2)) = seen.get(k) {
            if q2 != *q {
                return Err(CoreError::ModelViolation {
                    word: b.show_word(&m.domain.words()[i]),
                    reason: format!("equivalent to {} but carries another state", b.show_word(&m.domain.words()[j])),
                });
            }
        } else {
            seen.insert(k, (i, *q));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct ModelStream {
    pub models: Vec<PartialModel>,
    /// Set when the enumeration stopped at the model cap.
    pub truncated: bool,
}

/// All Γ-consistent maps on the domain satisfying the model condition for key-equal
/// supported words, in lexicographic order of the state assignment along the shortlex word order.
pub fn enumerate_partial_models(
    b: &Blueprint,
    domain: Arc<Domain>,
    wp: &dyn WordProblem,
    max_models: usize,
) -> ModelStream {
    let mut models = Vec::new();
    let truncated = !for_each_partial_model(b, domain, wp, &mut |m| {
        if models.len() >= max_models {
            return false;
        }
        models.push(m);
        true
    });
    ModelStream { models, truncated }
}

/// Visits every partial model in order; the visitor returns false to stop.
/// Returns false when stopped early.
pub fn for_each_partial_model(
    b: &Blueprint,
    domain: Arc<Domain>,
    wp: &dyn WordProblem,
    visit: &mut dyn FnMut(PartialModel) -> bool,
) -> bool {
    let keys = domain_keys(b, &domain, wp);
    let n = domain.len();
    let parent: Vec<Option<(usize, Gen)>> = domain
        .words()
        .iter()
        .map(|w| w.split_last().map(|(&s, p)| (domain.position(p).unwrap(), s)))
        .collect();
    // class id per word, and the first word of each class in shortlex order
    let mut class_of = vec![usize::MAX; n];
    let mut class_ids: HashMap<&ClassKey, usize> = HashMap::new();
    for (i, k) in keys.iter().enumerate() {
        if let Some(k) = k {
            let next = class_ids.len();
            class_of[i] = *class_ids.entry(k).or_insert(next);
        }
    }
    let mut st = Search {
        b,
        parent: &parent,
        class_of: &class_of,
        states: vec![None; n],
        class_state: vec![None; class_ids.len()],
        class_count: vec![0; class_ids.len()],
        domain: &domain,
        visit,
    };
    for q in 0..b.num_states() {
        if !st.assign(0, Some(q)) {
            return false;
        }
    }
    true
}

struct Search<'a> {
    b: &'a Blueprint,
    parent: &'a [Option<(usize, Gen)>],
    class_of: &'a [usize],
    states: Vec<Option<State>>,
    class_state: Vec<Option<State>>,
    class_count: Vec<usize>,
    domain: &'a Arc<Domain>,
    visit: &'a mut dyn FnMut(PartialModel) -> bool,
}

impl Search<'_> {
    fn assign(&mut self, i: usize, q: Option<State>) -> bool {
        let c = self.class_of[i];
        if let Some(q) = q {
            if c != usize::MAX {
                if let Some(cq) = self.class_state[c] {
                    if cq != q {
                        return true;
                    }
                }
            }
        }
        self.states[i] = q;
        let mut claimed = false;
        if let (Some(q), true) = (q, c != usize::MAX) {
            if self.class_count[c] == 0 {
                self.class_state[c] = Some(q);
                claimed = true;
            }
            self.class_count[c] += 1;
        }
        let cont = self.next(i + 1);
        if q.is_some() && c != usize::MAX {
            self.class_count[c] -= 1;
            if claimed {
                self.class_state[c] = None;
            }
        }
        self.states[i] = None;
        cont
    }

    fn next(&mut self, i: usize) -> bool {
        if i == self.states.len() {
            let m = PartialModel { domain: Arc::clone(self.domain), states: self.states.clone() };
            return (self.visit)(m);
        }
        let (p, s) = self.parent[i].expect("non-root word has a parent");
        match self.states[p] {
            Some(ps) if self.b.initial(s) == ps => {
                let choices = self.b.terminal(s).to_vec();
                for q in choices {
                    if !self.assign(i, Some(q)) {
                        return false;
                    }
                }
                true
            }
            _ => self.assign(i, None),
        }
    }
}

/// (φ·w)(u) = φ(wu) on {u : wu ∈ D}.
pub fn partial_shift(b: &Blueprint, m: &PartialModel, w: &[Gen]) -> Result<PartialModel> {
    if !m.domain.contains(w) {
        return Err(CoreError::OutsideDomain(b.show_word(w)));
    }
    if !m.is_supported(w) {
        return Err(CoreError::UndefinedAction(b.show_word(w)));
    }
    let domain = Arc::new(m.domain.shifted(w).expect("w is in the domain"));
    let states = domain.words().iter().map(|u| m.get(&concat(w, u))).collect();
    Ok(PartialModel { domain, states })
}

/// Outcome of following one generator from a vertex of the explored ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// 𝔦(s) differs from the current state.
    Unsupported,
    /// Lands on the class whose canonical representative has this domain index.
    At(usize),
    /// Defined but its class has no supported representative in the domain.
    Outside,
}

/// Class structure of a partial model's support: canonical representatives are the
/// shortlex smallest supported domain words of each key.
#[derive(Debug, Clone)]
pub struct ClassIndex {
    /// Canonical representative index for each supported domain word.
    rep: Vec<Option<usize>>,
    by_key: HashMap<ClassKey, usize>,
}

impl ClassIndex {
    pub fn new(b: &Blueprint, m: &PartialModel, wp: &dyn WordProblem) -> Self {
        let keys = domain_keys(b, &m.domain, wp);
        let mut by_key = HashMap::new();
        let mut rep = vec![None; m.domain.len()];
        for (i, st) in m.states.iter().enumerate() {
            if st.is_none() {
                continue;
            }
            rep[i] = Some(match &keys[i] {
                Some(k) => *by_key.entry(k.clone()).or_insert(i),
                None => i,
            });
        }
        ClassIndex { rep, by_key }
    }

    pub fn rep(&self, i: usize) -> Option<usize> {
        self.rep[i]
    }

    /// Canonical representatives in shortlex order.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.rep.len()).filter(|&i| self.rep[i] == Some(i)).collect()
    }

    /// Class of an arbitrary consistent word.
    pub fn locate(&self, m: &PartialModel, wp: &dyn WordProblem, w: &[Gen]) -> Option<usize> {
        if let Some(i) = m.domain.position(w) {
            return self.rep[i];
        }
        wp.key(w).and_then(|k| self.by_key.get(&k).copied())
    }

    pub fn step(&self, b: &Blueprint, m: &PartialModel, wp: &dyn WordProblem, at: usize, s: Gen) -> Step {
        match m.states[at] {
            Some(q) if b.initial(s) == q => {}
            _ => return Step::Unsupported,
        }
        let mut w = m.domain.words()[at].clone();
        w.push(s);
        match self.locate(m, wp, &w) {
            Some(i) => Step::At(i),
            None => Step::Outside,
        }
    }

    /// Follows a word from a vertex; `None` if some step is undefined or leaves the ball.
    pub fn walk(&self, b: &Blueprint, m: &PartialModel, wp: &dyn WordProblem, at: usize, w: &[Gen]) -> Step {
        let mut cur = at;
        for &s in w {
            match self.step(b, m, wp, cur, s) {
                Step::At(i) => cur = i,
                other => return other,
            }
        }
        Step::At(cur)
    }
}
