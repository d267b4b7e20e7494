use blueprint_core::{Blueprint, Gen, State, Word};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, SubshiftError};

pub type Letter = usize;

/// A finitely supported map from words to M × A, stored as (word, state, letter) cells
/// sorted by word in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    pub cells: Vec<(Word, State, Letter)>,
}

impl Pattern {
    pub fn new(mut cells: Vec<(Word, State, Letter)>) -> Result<Self> {
        if cells.is_empty() {
            return Err(SubshiftError::EmptyPattern(0));
        }
        cells.sort_by(|a, b| blueprint_core::shortlex(&a.0, &b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        cells.dedup();
        if cells.windows(2).any(|p| p[0].0 == p[1].0) {
            return Err(SubshiftError::ConflictingCells { index: 0 });
        }
        Ok(Pattern { cells })
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.cells.iter().map(|c| &c.0)
    }

    pub fn max_len(&self) -> usize {
        self.cells.iter().map(|c| c.0.len()).max().unwrap_or(0)
    }

    pub fn get(&self, w: &[Gen]) -> Option<(State, Letter)> {
        self.cells.iter().find(|c| c.0 == w).map(|c| (c.1, c.2))
    }

    /// Support {ε, s} for a single generator s.
    pub fn nearest_neighbor_generator(&self) -> Option<Gen> {
        match self.cells.as_slice() {
            [(e, ..), (s, ..)] if e.is_empty() && s.len() == 1 => Some(s[0]),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSet {
    pub alphabet: Vec<String>,
    pub patterns: Vec<Pattern>,
}

#[derive(Serialize, Deserialize)]
struct Doc {
    alphabet: Vec<String>,
    #[serde(default)]
    patterns: Vec<PatternDoc>,
}

#[derive(Serialize, Deserialize)]
struct PatternDoc {
    /// (state, letter, word) triples.
    cells: Vec<[String; 3]>,
}

impl PatternSet {
    pub fn new(alphabet: Vec<String>, patterns: Vec<Pattern>) -> Result<Self> {
        for p in &patterns {
            if let Some(c) = p.cells.iter().find(|c| c.2 >= alphabet.len()) {
                return Err(SubshiftError::UnknownLetter(c.2.to_string()));
            }
        }
        Ok(PatternSet { alphabet, patterns })
    }

    pub fn empty(alphabet: Vec<String>) -> Self {
        PatternSet { alphabet, patterns: Vec::new() }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    /// Longest word in any support; 0 for the empty set.
    pub fn max_support_len(&self) -> usize {
        self.patterns.iter().map(Pattern::max_len).max().unwrap_or(0)
    }

    pub fn is_nearest_neighbor(&self) -> bool {
        self.patterns.iter().all(|p| p.nearest_neighbor_generator().is_some())
    }

    pub fn letter_index(&self, name: &str) -> Result<Letter> {
        self.alphabet
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| SubshiftError::UnknownLetter(name.to_string()))
    }

    pub fn parse(text: &str, b: &Blueprint) -> Result<Self> {
        let doc: Doc = toml::from_str(text).map_err(|e| SubshiftError::Parse(e.to_string()))?;
        let mut set = PatternSet::empty(doc.alphabet);
        for (index, p) in doc.patterns.iter().enumerate() {
            let mut cells = Vec::new();
            for [m, a, w] in &p.cells {
                cells.push((b.parse_word(w)?, b.state_index(m)?, set.letter_index(a)?));
            }
            let pat = Pattern::new(cells).map_err(|e| match e {
                SubshiftError::EmptyPattern(_) => SubshiftError::EmptyPattern(index),
                SubshiftError::ConflictingCells { .. } => SubshiftError::ConflictingCells { index },
                other => other,
            })?;
            set.patterns.push(pat);
        }
        Ok(set)
    }

    pub fn to_toml_string(&self, b: &Blueprint) -> String {
        let doc = Doc {
            alphabet: self.alphabet.clone(),
            patterns: self
                .patterns
                .iter()
                .map(|p| PatternDoc {
                    cells: p
                        .cells
                        .iter()
                        .map(|(w, m, a)| [b.states[*m].clone(), self.alphabet[*a].clone(), b.format_word(w)])
                        .collect(),
                })
                .collect(),
        };
        toml::to_string(&doc).expect("pattern set serializes")
    }

    /// SHA-256 of the serialization against `b`.
    pub fn digest(&self, b: &Blueprint) -> String {
        hex::encode(Sha256::digest(self.to_toml_string(b).as_bytes()))
    }
}

/// Forbids the letter `a` on both ends of every edge {ε, s}.
pub fn hard_square(b: &Blueprint) -> PatternSet {
    let mut patterns = Vec::new();
    for s in 0..b.num_gens() {
        for &m2 in b.terminal(s) {
            patterns.push(Pattern::new(vec![(vec![], b.initial(s), 1), (vec![s], m2, 1)]).unwrap());
        }
    }
    PatternSet { alphabet: vec!["0".into(), "1".into()], patterns }
}

/// Every pair of letters across an edge labelled by one of `gens` is forbidden.
pub fn forbid_all_edges(b: &Blueprint, alphabet: Vec<String>, gens: &[Gen]) -> PatternSet {
    let k = alphabet.len();
    let mut patterns = Vec::new();
    for &s in gens {
        for &m2 in b.terminal(s) {
            for a in 0..k {
                for c in 0..k {
                    patterns.push(Pattern::new(vec![(vec![], b.initial(s), a), (vec![s], m2, c)]).unwrap());
                }
            }
        }
    }
    PatternSet { alphabet, patterns }
}
