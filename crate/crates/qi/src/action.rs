use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use blueprint_core::{Blueprint, ClassIndex, Domain, Gen, PartialModel, State, Step, Word, WordProblem};
use blueprint_subshift::{Letter, Window};

use crate::alphabet::{Component, QiAlphabet};
use crate::error::{QiError, Result};

/// A Γ₁-window over the letters of B together with the class structure needed to move in it.
pub struct QiView<'a> {
    pub b1: &'a Blueprint,
    pub b2: &'a Blueprint,
    pub wp1: &'a dyn WordProblem,
    pub alphabet: &'a QiAlphabet,
    pub window: &'a Window,
    classes: ClassIndex,
    letters: HashMap<Letter, Vec<Component>>,
}

/// A point ξ = (φ·p, x·p, i) of QI′: the window seen from the class of domain word `base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QiState {
    pub base: usize,
    pub index: usize,
}

impl<'a> QiView<'a> {
    pub fn new(
        b1: &'a Blueprint,
        b2: &'a Blueprint,
        wp1: &'a dyn WordProblem,
        alphabet: &'a QiAlphabet,
        window: &'a Window,
    ) -> Self {
        let classes = ClassIndex::new(b1, &window.model, wp1);
        let mut letters = HashMap::new();
        for c in window.colors.iter().flatten() {
            letters.entry(*c).or_insert_with(|| alphabet.letter(*c));
        }
        QiView { b1, b2, wp1, alphabet, window, classes, letters }
    }

    pub fn model(&self) -> &PartialModel {
        &self.window.model
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.window.model.domain.words()[i]
    }

    pub fn root(&self) -> Option<usize> {
        self.classes.rep(0)
    }

    /// Supported class representatives.
    pub fn vertices(&self) -> Vec<usize> {
        self.classes.vertices()
    }

    pub fn components(&self, i: usize) -> Option<&[Component]> {
        self.window.colors[i].map(|c| self.letters[&c].as_slice())
    }

    pub fn component(&self, st: QiState) -> Option<&Component> {
        self.components(st.base).map(|c| &c[st.index]).filter(|c| !c.is_star())
    }

    /// Class reached from `at` along a Γ₁-word: Ok(None) if unsupported.
    pub fn resolve(&self, at: usize, w: &[Gen]) -> Result<Option<usize>> {
        match self.classes.walk(self.b1, self.model(), self.wp1, at, w) {
            Step::At(i) => Ok(Some(i)),
            Step::Unsupported => Ok(None),
            Step::Outside => {
                let mut full = self.word(at).clone();
                full.extend_from_slice(w);
                Err(QiError::RadiusExhausted(self.b1.show_word(&full)))
            }
        }
    }

    /// Class of a domain-relative word in the class structure, if present.
    pub fn locate(&self, w: &[Gen]) -> Option<usize> {
        self.classes.locate(self.model(), self.wp1, w)
    }

    /// ξ∘s: Ok(None) when 𝔦(s) differs from the coded state.
    pub fn circ_step(&self, st: QiState, s: Gen) -> Result<Option<(QiState, Word)>> {
        let comp = self.component(st).ok_or_else(|| QiError::Violation { condition: "QI′", word: self.b1.show_word(self.word(st.base)) })?;
        let Some((mv, j)) = comp.step(s) else { return Ok(None) };
        match self.resolve(st.base, mv)? {
            Some(t) => {
                let next = QiState { base: t, index: j };
                if self.component(next).is_none() {
                    return Err(QiError::Violation { condition: "C2", word: self.b1.show_word(self.word(st.base)) });
                }
                Ok(Some((next, mv.clone())))
            }
            None => Err(QiError::Violation { condition: "C2", word: self.b1.show_word(self.word(st.base)) }),
        }
    }

    /// ξ∘u with (mov_ξ(u), ind_ξ(u)); Ok(None) when the action is undefined.
    pub fn circ(&self, st: QiState, u: &[Gen]) -> Result<Option<(QiState, Word)>> {
        let mut cur = st;
        let mut mov = Vec::new();
        for &s in u {
            match self.circ_step(cur, s)? {
                Some((next, mv)) => {
                    mov.extend(mv);
                    cur = next;
                }
                None => return Ok(None),
            }
        }
        Ok(Some((cur, mov)))
    }

    /// μ(ξ, u), with the (ε, 1) sentinel for undefined actions. Indices are 0-based.
    pub fn mu(&self, st: QiState, u: &[Gen]) -> Result<(Word, usize)> {
        Ok(match self.circ(st, u)? {
            Some((end, mov)) => (mov, end.index),
            None => (Vec::new(), 0),
        })
    }

    /// θ: shortlex smallest supported u ∈ S₁^{≤N}, then smallest index, with x(u)_i ≠ ⋆.
    pub fn theta(&self) -> Result<(Word, QiState)> {
        let words = self.model().domain.words();
        for (k, w) in words.iter().enumerate() {
            if w.len() > self.alphabet.n {
                break;
            }
            let Some(rep) = self.classes.rep(k) else { continue };
            if let Some(comps) = self.components(rep) {
                if let Some(i) = comps.iter().position(|c| !c.is_star()) {
                    return Ok((w.clone(), QiState { base: rep, index: i }));
                }
            }
        }
        Err(QiError::NoPreimage)
    }

    /// γ(ξ) on the Γ₂-ball of the given depth.
    pub fn gamma(&self, st: QiState, depth: usize) -> Result<Window> {
        if self.component(st).is_none() {
            return Err(QiError::Violation { condition: "QI′", word: self.b1.show_word(self.word(st.base)) });
        }
        let domain = Arc::new(Domain::ball(self.b2.num_gens(), depth));
        let words = domain.words();
        let mut at: Vec<Option<QiState>> = vec![None; words.len()];
        at[0] = Some(st);
        for k in 1..words.len() {
            let (&s, prefix) = words[k].split_last().unwrap();
            let p = domain.position(prefix).unwrap();
            if let Some(cur) = at[p] {
                at[k] = self.circ_step(cur, s)?.map(|(n, _)| n);
            }
        }
        let mut states: Vec<Option<State>> = Vec::with_capacity(words.len());
        let mut colors = Vec::with_capacity(words.len());
        for a in &at {
            match a.and_then(|x| self.component(x)) {
                Some(Component::Coded { state, letter, .. }) => {
                    states.push(Some(*state));
                    colors.push(Some(*letter));
                }
                _ => {
                    states.push(None);
                    colors.push(None);
                }
            }
        }
        Ok(Window { model: Arc::new(PartialModel { domain, states }), colors })
    }

    /// Shortest u ∈ S₂^{≤max_len} with ξ∘u landing on `target`; breadth first over (class, index).
    /// Ok(None) means no such word, Err means the search left the window.
    pub fn connecting_word(&self, from: QiState, target: QiState, max_len: usize) -> Result<Option<Word>> {
        let mut prev: HashMap<QiState, Option<(QiState, Gen)>> = HashMap::new();
        prev.insert(from, None);
        let mut queue = VecDeque::from([(from, 0usize)]);
        while let Some((cur, d)) = queue.pop_front() {
            if cur == target {
                let mut word = Vec::new();
                let mut c = cur;
                while let Some(Some((p, s))) = prev.get(&c) {
                    word.push(*s);
                    c = *p;
                }
                word.reverse();
                return Ok(Some(word));
            }
            if d == max_len {
                continue;
            }
            for s in 0..self.b2.num_gens() {
                if let Some((next, _)) = self.circ_step(cur, s)? {
                    if !prev.contains_key(&next) {
                        prev.insert(next, Some((cur, s)));
                        queue.push_back((next, d + 1));
                    }
                }
            }
        }
        Ok(None)
    }
}
