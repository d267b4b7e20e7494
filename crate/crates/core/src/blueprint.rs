use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CoreError, Result};
use crate::word::{Gen, State, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub initial: State,
    /// Sorted, nonempty.
    pub terminal: Vec<State>,
}

/// A finitely presented blueprint (M, S, i, t, R).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blueprint {
    pub name: String,
    pub states: Vec<String>,
    pub generators: Vec<Generator>,
    pub relations: Vec<(Word, Word)>,
    /// User assertion that every model is dense; never computed.
    pub minimal: bool,
    pub meta: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct Doc {
    #[serde(default)]
    name: String,
    #[serde(default)]
    minimal: bool,
    states: StatesDoc,
    generators: Vec<GeneratorDoc>,
    #[serde(default)]
    relations: RelationsDoc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    meta: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct StatesDoc {
    names: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorDoc {
    name: String,
    initial: String,
    terminal: Vec<String>,
}

#[derive(Serialize, Deserialize, Default)]
struct RelationsDoc {
    #[serde(default)]
    pairs: Vec<[String; 2]>,
}

impl Blueprint {
    /// Validates and builds a blueprint. Terminal sets are sorted and deduplicated.
    pub fn new(
        name: impl Into<String>,
        states: Vec<String>,
        generators: Vec<Generator>,
        relations: Vec<(Word, Word)>,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(CoreError::NoStates);
        }
        if generators.is_empty() {
            return Err(CoreError::NoGenerators);
        }
        let mut seen = HashMap::new();
        for s in &states {
            if seen.insert(s.clone(), ()).is_some() {
                return Err(CoreError::DuplicateState(s.clone()));
            }
        }
        let mut gens = Vec::with_capacity(generators.len());
        let mut names = HashMap::new();
        for mut g in generators {
            if g.name.is_empty() || g.name.chars().any(char::is_whitespace) {
                return Err(CoreError::BadGeneratorName(g.name));
            }
            if names.insert(g.name.clone(), ()).is_some() {
                return Err(CoreError::DuplicateGenerator(g.name));
            }
            if g.initial >= states.len() {
                return Err(CoreError::UnknownState(g.initial.to_string()));
            }
            g.terminal.sort_unstable();
            g.terminal.dedup();
            if g.terminal.is_empty() {
                return Err(CoreError::EmptyTerminal(g.name));
            }
            if let Some(&t) = g.terminal.iter().find(|&&t| t >= states.len()) {
                return Err(CoreError::UnknownState(t.to_string()));
            }
            gens.push(g);
        }
        let bp = Blueprint {
            name: name.into(),
            states,
            generators: gens,
            relations: Vec::new(),
            minimal: false,
            meta: BTreeMap::new(),
        };
        for (index, (u, v)) in relations.iter().enumerate() {
            for w in [u, v] {
                if w.iter().any(|&s| s >= bp.generators.len()) {
                    return Err(CoreError::UnknownGenerator(format!("{w:?}")));
                }
                if !bp.is_consistent(w) {
                    return Err(CoreError::InconsistentRelation { index });
                }
            }
            if let (Some(a), Some(b)) = (bp.initial_of(u), bp.initial_of(v)) {
                if a != b {
                    return Err(CoreError::RelationInitialMismatch { index });
                }
            }
        }
        Ok(Blueprint { relations, ..bp })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Doc = toml::from_str(text).map_err(|e| CoreError::Parse(e.to_string()))?;
        let state_index = |n: &str, states: &[String]| {
            states
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| CoreError::UnknownState(n.to_string()))
        };
        let states = doc.states.names.clone();
        let mut generators = Vec::new();
        for g in &doc.generators {
            let initial = state_index(&g.initial, &states)?;
            let terminal = g
                .terminal
                .iter()
                .map(|t| state_index(t, &states))
                .collect::<Result<Vec<_>>>()?;
            if terminal.is_empty() {
                return Err(CoreError::EmptyTerminal(g.name.clone()));
            }
            generators.push(Generator { name: g.name.clone(), initial, terminal });
        }
        let gen_names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        let mut relations = Vec::new();
        for [l, r] in &doc.relations.pairs {
            relations.push((parse_word_with(&gen_names, l)?, parse_word_with(&gen_names, r)?));
        }
        let mut bp = Blueprint::new(doc.name, states, generators, relations)?;
        bp.minimal = doc.minimal;
        bp.meta = doc.meta;
        Ok(bp)
    }

    pub fn to_toml_string(&self) -> String {
        let doc = Doc {
            name: self.name.clone(),
            minimal: self.minimal,
            states: StatesDoc { names: self.states.clone() },
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorDoc {
                    name: g.name.clone(),
                    initial: self.states[g.initial].clone(),
                    terminal: g.terminal.iter().map(|&t| self.states[t].clone()).collect(),
                })
                .collect(),
            relations: RelationsDoc {
                pairs: self
                    .relations
                    .iter()
                    .map(|(u, v)| [self.format_word(u), self.format_word(v)])
                    .collect(),
            },
            meta: self.meta.clone(),
        };
        toml::to_string(&doc).expect("blueprint serializes")
    }

    /// SHA-256 of the canonical serialization.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_toml_string().as_bytes()))
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_gens(&self) -> usize {
        self.generators.len()
    }

    pub fn initial(&self, s: Gen) -> State {
        self.generators[s].initial
    }

    pub fn terminal(&self, s: Gen) -> &[State] {
        &self.generators[s].terminal
    }

    pub fn initial_of(&self, w: &[Gen]) -> Option<State> {
        w.first().map(|&s| self.initial(s))
    }

    pub fn gen_index(&self, name: &str) -> Result<Gen> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| CoreError::UnknownGenerator(name.to_string()))
    }

    pub fn state_index(&self, name: &str) -> Result<State> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| CoreError::UnknownState(name.to_string()))
    }

    /// Space separated generator names; the empty string is ε.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split_whitespace().map(|n| self.gen_index(n)).collect()
    }

    pub fn format_word(&self, w: &[Gen]) -> String {
        w.iter()
            .map(|&s| self.generators[s].name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Like `format_word` but writes ε for the empty word.
    pub fn show_word(&self, w: &[Gen]) -> String {
        if w.is_empty() {
            "ε".to_string()
        } else {
            self.format_word(w)
        }
    }

    pub fn is_consistent(&self, w: &[Gen]) -> bool {
        w.windows(2)
            .all(|p| self.terminal(p[0]).contains(&self.initial(p[1])))
    }

    /// Consistency check that rejects unknown generator indices.
    pub fn check_consistent_word(&self, w: &[Gen]) -> Result<bool> {
        if let Some(&s) = w.iter().find(|&&s| s >= self.num_gens()) {
            return Err(CoreError::UnknownGenerator(s.to_string()));
        }
        Ok(self.is_consistent(w))
    }

    /// Quotient by additional relations (union of relation sets).
    pub fn quotient(&self, extra: Vec<(Word, Word)>) -> Result<Self> {
        let mut rel = self.relations.clone();
        rel.extend(extra);
        let mut bp = Blueprint::new(
            format!("{}/quotient", self.name),
            self.states.clone(),
            self.generators.clone(),
            rel,
        )?;
        bp.meta = self.meta.clone();
        Ok(bp)
    }
}

fn parse_word_with(names: &[String], text: &str) -> Result<Word> {
    text.split_whitespace()
        .map(|n| {
            names
                .iter()
                .position(|g| g == n)
                .ok_or_else(|| CoreError::UnknownGenerator(n.to_string()))
        })
        .collect()
}
