use std::collections::HashMap;
use std::sync::Arc;

use blueprint_core::{Blueprint, ClassIndex, ClassKey, Gen, PartialModel, Word, WordProblem};
use blueprint_subshift::Window;
use serde::{Deserialize, Serialize};

use crate::alphabet::{Component, QiAlphabet};
use crate::error::{QiError, Result};

/// Finite tables of a bounded-to-one quasi-isometry f: G(Γ₂, φ₂) → G(Γ₁, φ₁).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QiMap {
    pub n: usize,
    /// (u, image word, index): f̂(u̲) = (image̲, index). Indices are 0-based.
    pub entries: Vec<(Word, Word, usize)>,
    /// (u, s, w(u, s)) with f(u̲)·w(u, s) = f(us̲).
    pub edges: Vec<(Word, Gen, Word)>,
}

#[derive(Serialize, Deserialize)]
struct MapDoc {
    n: usize,
    entries: Vec<EntryDoc>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    source: String,
    image: String,
    index: usize,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    source: String,
    generator: String,
    step: String,
}

fn z_word(k: i64) -> Word {
    if k >= 0 {
        vec![0; k as usize]
    } else {
        vec![1; (-k) as usize]
    }
}

impl QiMap {
    /// The identity of a blueprint on the given source words.
    pub fn identity(b: &Blueprint, words: &[Word]) -> Self {
        let mut entries = Vec::new();
        let mut edges = Vec::new();
        for w in words {
            if !b.is_consistent(w) {
                continue;
            }
            entries.push((w.clone(), w.clone(), 0));
            for s in 0..b.num_gens() {
                let mut ws = w.clone();
                ws.push(s);
                if b.is_consistent(&ws) {
                    edges.push((w.clone(), s, vec![s]));
                }
            }
        }
        QiMap { n: 1, entries, edges }
    }

    /// n ↦ ⌊n/2⌋ on Z with index n mod 2, for |n| ≤ radius; N = 2.
    pub fn halving_z(radius: i64) -> Self {
        let mut entries = Vec::new();
        let mut edges = Vec::new();
        for k in -radius..=radius {
            entries.push((z_word(k), z_word(k.div_euclid(2)), k.rem_euclid(2) as usize));
            let up = if k.rem_euclid(2) == 1 { vec![0] } else { vec![] };
            let down = if k.rem_euclid(2) == 0 { vec![1] } else { vec![] };
            edges.push((z_word(k), 0, up));
            edges.push((z_word(k), 1, down));
        }
        QiMap { n: 2, entries, edges }
    }

    /// The identity of Z on |n| ≤ radius.
    pub fn identity_z(b: &Blueprint, radius: i64) -> Self {
        let words: Vec<Word> = (-radius..=radius).map(z_word).collect();
        QiMap::identity(b, &words)
    }

    pub fn to_toml_string(&self, b1: &Blueprint, b2: &Blueprint) -> String {
        let doc = MapDoc {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(u, v, i)| EntryDoc { source: b2.format_word(u), image: b1.format_word(v), index: i + 1 })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(u, s, w)| EdgeDoc { source: b2.format_word(u), generator: b2.generators[*s].name.clone(), step: b1.format_word(w) })
                .collect(),
        };
        toml::to_string(&doc).expect("map serializes")
    }

    pub fn parse(text: &str, b1: &Blueprint, b2: &Blueprint) -> Result<Self> {
        let doc: MapDoc = toml::from_str(text).map_err(|e| QiError::Core(blueprint_core::CoreError::Parse(e.to_string())))?;
        let mut entries = Vec::new();
        for e in doc.entries {
            if e.index == 0 || e.index > doc.n {
                return Err(QiError::TableGap(format!("index {} outside 1..={}", e.index, doc.n)));
            }
            entries.push((b2.parse_word(&e.source)?, b1.parse_word(&e.image)?, e.index - 1));
        }
        let mut edges = Vec::new();
        for e in doc.edges {
            edges.push((b2.parse_word(&e.source)?, b2.gen_index(&e.generator)?, b1.parse_word(&e.step)?));
        }
        Ok(QiMap { n: doc.n, entries, edges })
    }
}

fn key(b: &Blueprint, wp: &dyn WordProblem, w: &[Gen]) -> Result<ClassKey> {
    wp.key(w).ok_or_else(|| QiError::WordProblem(b.show_word(w)))
}

/// Encoding of a Γ₂-window y along a quasi-isometry into a Γ₁-window over B.
#[allow(clippy::too_many_arguments)]
pub fn encode_along_qi(
    alphabet: &QiAlphabet,
    qi: &QiMap,
    b1: &Blueprint,
    wp1: &dyn WordProblem,
    b2: &Blueprint,
    wp2: &dyn WordProblem,
    y: &Window,
    target: Arc<PartialModel>,
) -> Result<Window> {
    if qi.n != alphabet.n {
        return Err(QiError::TableGap(format!("map has N = {}, alphabet N = {}", qi.n, alphabet.n)));
    }
    let mut fhat: HashMap<ClassKey, (ClassKey, usize)> = HashMap::new();
    let mut inverse: HashMap<(ClassKey, usize), (ClassKey, Word)> = HashMap::new();
    for (u, v, i) in &qi.entries {
        let (ku, kv) = (key(b2, wp2, u)?, key(b1, wp1, v)?);
        if let Some(prev) = fhat.insert(ku.clone(), (kv.clone(), *i)) {
            if prev != (kv.clone(), *i) {
                return Err(QiError::NotInjective(b2.show_word(u)));
            }
        }
        match inverse.get(&(kv.clone(), *i)) {
            Some((k, _)) if *k != ku => return Err(QiError::NotInjective(b1.show_word(v))),
            Some(_) => {}
            None => {
                inverse.insert((kv, *i), (ku, u.clone()));
            }
        }
    }
    let mut steps: HashMap<(ClassKey, Gen), &Word> = HashMap::new();
    for (u, s, w) in &qi.edges {
        steps.insert((key(b2, wp2, u)?, *s), w);
    }
    let ycls = ClassIndex::new(b2, &y.model, wp2);
    let mut colors = Vec::with_capacity(target.domain.len());
    for (k, v) in target.domain.words().iter().enumerate() {
        if target.states[k].is_none() {
            colors.push(None);
            continue;
        }
        let kv = key(b1, wp1, v)?;
        let mut comps = Vec::with_capacity(qi.n);
        for i in 0..qi.n {
            let Some((_, u)) = inverse.get(&(kv.clone(), i)) else {
                comps.push(Component::Star);
                continue;
            };
            let cell = ycls.locate(&y.model, wp2, u).and_then(|j| y.cell(j));
            let (state, letter) = cell.ok_or_else(|| QiError::TableGap(format!("y at {}", b2.show_word(u))))?;
            let mut moves = vec![None; b2.num_gens()];
            let mut indices = vec![None; b2.num_gens()];
            for s in 0..b2.num_gens() {
                if b2.initial(s) != state {
                    continue;
                }
                let ku = key(b2, wp2, u)?;
                let w = steps.get(&(ku, s)).ok_or_else(|| QiError::TableGap(format!("w({}, {})", b2.show_word(u), b2.generators[s].name)))?;
                if w.len() > 2 * qi.n {
                    return Err(QiError::TableGap(format!("w({}, {}) longer than 2N", b2.show_word(u), b2.generators[s].name)));
                }
                let mut us = u.clone();
                us.push(s);
                let (_, j) = fhat.get(&key(b2, wp2, &us)?).ok_or_else(|| QiError::TableGap(format!("f̂({})", b2.show_word(&us))))?;
                moves[s] = Some((*w).clone());
                indices[s] = Some(*j);
            }
            comps.push(Component::Coded { state, letter, moves, indices });
        }
        colors.push(Some(alphabet.index(&comps)?));
    }
    Ok(Window { model: target, colors })
}

/// Checks the table identity f(u̲)·w(u, s) = f(us̲) for every edge whose endpoints are tabulated.
pub fn check_map(qi: &QiMap, b1: &Blueprint, wp1: &dyn WordProblem, b2: &Blueprint, wp2: &dyn WordProblem) -> Result<()> {
    let mut image: HashMap<ClassKey, &Word> = HashMap::new();
    for (u, v, _) in &qi.entries {
        image.insert(key(b2, wp2, u)?, v);
    }
    for (u, s, w) in &qi.edges {
        let mut us = u.clone();
        us.push(*s);
        let (Some(a), Some(c)) = (image.get(&key(b2, wp2, u)?), image.get(&key(b2, wp2, &us)?)) else { continue };
        let mut aw = (*a).clone();
        aw.extend_from_slice(w);
        if key(b1, wp1, &aw)? != key(b1, wp1, c)? {
            return Err(QiError::TableGap(format!("w({}, {}) does not reach f({})", b2.show_word(u), b2.generators[*s].name, b2.show_word(&us))));
        }
    }
    Ok(())
}

