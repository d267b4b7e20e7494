use std::collections::VecDeque;
use std::sync::Arc;

use blueprint_core::{Blueprint, Domain, Gen, PartialModel, State, Word};
use blueprint_subshift::{Letter, PatternSet, Window};
use serde::{Deserialize, Serialize};

use crate::error::{DominoError, Result};

/// A finite labelled graph whose unfolding from vertex 0 is a configuration of X[Γ, F].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCertificate {
    pub labels: Vec<(State, Letter)>,
    /// edges[v][s] is the s-successor of v; present iff 𝔦(s) is the state of v.
    pub edges: Vec<Vec<Option<usize>>>,
    pub blueprint_digest: String,
    pub patterns_digest: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Walk {
    At(usize),
    /// Some step starts from a vertex whose state differs from the generator's initial state.
    Undefined,
    /// Some edge is not decided yet.
    Open,
}

/// Follows a word through a (possibly incomplete) labelled graph.
pub fn walk(b: &Blueprint, labels: &[(State, Letter)], edges: &[Vec<Option<usize>>], from: usize, w: &[Gen]) -> Walk {
    let mut v = from;
    for &s in w {
        if b.initial(s) != labels[v].0 {
            return Walk::Undefined;
        }
        match edges[v][s] {
            Some(t) => v = t,
            None => return Walk::Open,
        }
    }
    Walk::At(v)
}

impl QuotientCertificate {
    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    /// Unfolds the graph on a prefix-closed domain.
    pub fn unfold(&self, b: &Blueprint, domain: Arc<Domain>) -> Window {
        let mut states = Vec::with_capacity(domain.len());
        let mut colors = Vec::with_capacity(domain.len());
        for w in domain.words() {
            match walk(b, &self.labels, &self.edges, 0, w) {
                Walk::At(v) => {
                    states.push(Some(self.labels[v].0));
                    colors.push(Some(self.labels[v].1));
                }
                _ => {
                    states.push(None);
                    colors.push(None);
                }
            }
        }
        Window { model: Arc::new(PartialModel { domain, states }), colors }
    }

    /// Label of a shortest nonempty closed walk through the base vertex.
    pub fn base_cycle(&self) -> Option<Word> {
        let n = self.labels.len();
        let mut prev: Vec<Option<(usize, Gen)>> = vec![None; n];
        let mut queue = VecDeque::new();
        for (s, t) in self.edges[0].iter().enumerate() {
            if let Some(t) = *t {
                if t == 0 {
                    return Some(vec![s]);
                }
                if prev[t].is_none() {
                    prev[t] = Some((0, s));
                    queue.push_back(t);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for (s, t) in self.edges[v].iter().enumerate() {
                let Some(t) = *t else { continue };
                if t == 0 {
                    let mut word = vec![s];
                    let mut cur = v;
                    while cur != 0 {
                        let (p, g) = prev[cur].unwrap();
                        word.push(g);
                        cur = p;
                    }
                    word.reverse();
                    return Some(word);
                }
                if prev[t].is_none() {
                    prev[t] = Some((v, s));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Labels of all closed walks through the base vertex of length 1..=max_len, in shortlex order.
    pub fn closed_walks(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer: Vec<(Word, usize)> = vec![(Vec::new(), 0)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (w, v) in &layer {
                for (s, t) in self.edges[*v].iter().enumerate() {
                    if let Some(t) = *t {
                        let mut u = w.clone();
                        u.push(s);
                        if t == 0 {
                            out.push(u.clone());
                        }
                        next.push((u, t));
                    }
                }
            }
            layer = next;
        }
        out
    }

    pub fn to_toml_string(&self, b: &Blueprint, fs: &PatternSet) -> String {
        let doc = CertDoc {
            blueprint_digest: self.blueprint_digest.clone(),
            patterns_digest: self.patterns_digest.clone(),
            vertices: self
                .labels
                .iter()
                .enumerate()
                .map(|(i, &(m, a))| VertexDoc { id: i, state: b.states[m].clone(), letter: fs.alphabet[a].clone() })
                .collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .flat_map(|(v, row)| {
                    row.iter().enumerate().filter_map(move |(s, t)| {
                        t.map(|t| EdgeDoc { from: v, generator: b.generators[s].name.clone(), to: t })
                    })
                })
                .collect(),
        };
        toml::to_string(&doc).expect("certificate serializes")
    }

    pub fn parse(text: &str, b: &Blueprint, fs: &PatternSet) -> Result<Self> {
        let doc: CertDoc = toml::from_str(text).map_err(|e| DominoError::Parse(e.to_string()))?;
        let n = doc.vertices.len();
        let mut labels = vec![(0, 0); n];
        for (i, v) in doc.vertices.iter().enumerate() {
            if v.id != i {
                return Err(DominoError::Parse(format!("vertex ids must be 0..{n} in order")));
            }
            labels[i] = (b.state_index(&v.state)?, fs.letter_index(&v.letter)?);
        }
        let mut edges = vec![vec![None; b.num_gens()]; n];
        for e in &doc.edges {
            if e.from >= n || e.to >= n {
                return Err(DominoError::Parse(format!("edge {} -> {} leaves the vertex table", e.from, e.to)));
            }
            let s = b.gen_index(&e.generator)?;
            if edges[e.from][s].replace(e.to).is_some() {
                return Err(DominoError::Parse(format!("two {} edges at vertex {}", e.generator, e.from)));
            }
        }
        Ok(QuotientCertificate {
            labels,
            edges,
            blueprint_digest: doc.blueprint_digest,
            patterns_digest: doc.patterns_digest,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CertDoc {
    blueprint_digest: String,
    patterns_digest: String,
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    id: usize,
    state: String,
    letter: String,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    from: usize,
    generator: String,
    to: usize,
}

/// Independent check of the three certificate invariants.
///
/// Relation closure is checked in the strong form: for every relation (u, v) and every vertex,
/// the walk along u is defined iff the walk along v is, and both end at the same vertex. Under
/// this form, Γ-equivalent words reach the same vertex from the base, so the unfolding is a
/// Γ-model and its coloring satisfies (s2).
pub fn verify_quotient(b: &Blueprint, fs: &PatternSet, cert: &QuotientCertificate) -> Result<()> {
    let reject = |msg: String| Err(DominoError::Rejected(msg));
    if cert.blueprint_digest != b.digest() {
        return Err(DominoError::DigestMismatch("blueprint"));
    }
    if cert.patterns_digest != fs.digest(b) {
        return Err(DominoError::DigestMismatch("pattern set"));
    }
    let n = cert.labels.len();
    if n == 0 || cert.edges.len() != n {
        return reject("vertex and edge tables disagree".into());
    }
    for (v, &(m, a)) in cert.labels.iter().enumerate() {
        if m >= b.num_states() || a >= fs.alphabet_size() {
            return reject(format!("vertex {v} has an unknown label"));
        }
        if cert.edges[v].len() != b.num_gens() {
            return reject(format!("vertex {v} has a malformed edge row"));
        }
        for s in 0..b.num_gens() {
            match (b.initial(s) == m, cert.edges[v][s]) {
                (true, Some(t)) if t < n && b.terminal(s).contains(&cert.labels[t].0) => {}
                (true, Some(t)) => return reject(format!("edge {v} -{}-> {t} breaks the terminal set", b.generators[s].name)),
                (true, None) => return reject(format!("vertex {v} lacks its {} edge", b.generators[s].name)),
                (false, Some(_)) => return reject(format!("vertex {v} has a {} edge with the wrong initial state", b.generators[s].name)),
                (false, None) => {}
            }
        }
    }
    let follow = |v: usize, w: &[Gen]| -> Option<usize> {
        let mut cur = v;
        for &s in w {
            if b.initial(s) != cert.labels[cur].0 {
                return None;
            }
            cur = cert.edges[cur][s]?;
        }
        Some(cur)
    };
    for v in 0..n {
        for (i, (u, w)) in b.relations.iter().enumerate() {
            if follow(v, u) != follow(v, w) {
                return reject(format!("relation {i} is not closed at vertex {v}"));
            }
        }
        for (i, p) in fs.patterns.iter().enumerate() {
            let occurs = p.cells.iter().all(|(u, m, a)| follow(v, u).map(|t| cert.labels[t]) == Some((*m, *a)));
            if occurs {
                return reject(format!("pattern {i} occurs at vertex {v}"));
            }
        }
    }
    // every vertex reachable from the base
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for t in cert.edges[v].iter().flatten() {
            if !seen[*t] {
                seen[*t] = true;
                stack.push(*t);
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return reject(format!("vertex {v} is unreachable"));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct QuotientSearch {
    pub certificate: Option<QuotientCertificate>,
    /// Search nodes visited.
    pub nodes: usize,
    /// True when the node budget stopped the search before it was exhaustive.
    pub exhausted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_nodes: usize,
}

impl SearchBounds {
    pub fn up_to(max_vertices: usize) -> Self {
        SearchBounds { min_vertices: 1, max_vertices, max_nodes: 200_000 }
    }

    pub fn exactly(n: usize) -> Self {
        SearchBounds { min_vertices: n, max_vertices: n, max_nodes: 200_000 }
    }
}

/// Exhaustive search, in a canonical breadth-first vertex order, for a reduced quotient
/// certificate (no two vertices with the same unfolding) within the bounds. When `model`
/// is given, the unfolding must agree with it.
pub fn certify_nonempty(
    b: &Blueprint,
    fs: &PatternSet,
    bounds: SearchBounds,
    model: Option<&PartialModel>,
) -> Result<QuotientSearch> {
    if !fs.is_nearest_neighbor() {
        return Err(DominoError::NotNearestNeighbor);
    }
    let mut st = Search {
        b,
        fs,
        model,
        bounds,
        nodes: 0,
        labels: Vec::new(),
        edges: Vec::new(),
        found: None,
    };
    'roots: for m in 0..b.num_states() {
        for a in 0..fs.alphabet_size() {
            st.labels.push((m, a));
            st.edges.push(vec![None; b.num_gens()]);
            let done = st.consistent() && st.extend(0, 0);
            st.labels.pop();
            st.edges.pop();
            if done || st.nodes >= bounds.max_nodes {
                break 'roots;
            }
        }
    }
    let exhausted = st.found.is_none() && st.nodes >= bounds.max_nodes;
    let certificate = st.found.map(|(labels, edges)| QuotientCertificate {
        labels,
        edges,
        blueprint_digest: b.digest(),
        patterns_digest: fs.digest(b),
    });
    Ok(QuotientSearch { certificate, nodes: st.nodes, exhausted })
}

/// Classes of the coarsest partition compatible with labels and edges.
pub fn bisimulation_classes(labels: &[(State, Letter)], edges: &[Vec<Option<usize>>]) -> Vec<usize> {
    let relabel = |sigs: Vec<Vec<Option<usize>>>| -> Vec<usize> {
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
    };
    let mut class = relabel(labels.iter().map(|&(m, a)| vec![Some(m), Some(a)]).collect());
    loop {
        let next = relabel(
            (0..labels.len())
                .map(|v| {
                    let mut sig = vec![Some(class[v])];
                    sig.extend(edges[v].iter().map(|t| t.map(|t| class[t])));
                    sig
                })
                .collect(),
        );
        let count = |c: &[usize]| c.iter().max().map_or(0, |x| x + 1);
        if count(&next) == count(&class) {
            return next;
        }
        class = next;
    }
}

struct Search<'a> {
    b: &'a Blueprint,
    fs: &'a PatternSet,
    model: Option<&'a PartialModel>,
    bounds: SearchBounds,
    nodes: usize,
    labels: Vec<(State, Letter)>,
    edges: Vec<Vec<Option<usize>>>,
    found: Option<(Vec<(State, Letter)>, Vec<Vec<Option<usize>>>)>,
}

impl Search<'_> {
    /// Returns true when a certificate was found (search stops).
    fn extend(&mut self, mut v: usize, mut s: usize) -> bool {
        loop {
            if v == self.labels.len() {
                let n = self.labels.len();
                let classes = bisimulation_classes(&self.labels, &self.edges);
                if n < self.bounds.min_vertices || classes.iter().max() != Some(&(n - 1)) {
                    return false;
                }
                self.found = Some((self.labels.clone(), self.edges.clone()));
                return true;
            }
            if s == self.b.num_gens() {
                v += 1;
                s = 0;
                continue;
            }
            if self.b.initial(s) == self.labels[v].0 {
                break;
            }
            s += 1;
        }
        if self.nodes >= self.bounds.max_nodes {
            return false;
        }
        self.nodes += 1;
        let targets: Vec<usize> = (0..self.labels.len()).filter(|&t| self.b.terminal(s).contains(&self.labels[t].0)).collect();
        for t in targets {
            self.edges[v][s] = Some(t);
            if self.consistent() && self.extend(v, s + 1) {
                return true;
            }
            self.edges[v][s] = None;
        }
        if self.labels.len() < self.bounds.max_vertices {
            let terminal = self.b.terminal(s).to_vec();
            for q in terminal {
                for a in 0..self.fs.alphabet_size() {
                    let t = self.labels.len();
                    self.labels.push((q, a));
                    self.edges.push(vec![None; self.b.num_gens()]);
                    self.edges[v][s] = Some(t);
                    let ok = self.consistent() && self.extend(v, s + 1);
                    if ok {
                        return true;
                    }
                    self.edges[v][s] = None;
                    self.labels.pop();
                    self.edges.pop();
                }
            }
        }
        false
    }

    /// No violation among the constraints already decided by the partial graph.
    fn consistent(&self) -> bool {
        let (b, labels, edges) = (self.b, &self.labels, &self.edges);
        for v in 0..labels.len() {
            for (u, w) in &b.relations {
                match (walk(b, labels, edges, v, u), walk(b, labels, edges, v, w)) {
                    (Walk::Open, _) | (_, Walk::Open) => {}
                    (x, y) if x != y => return false,
                    _ => {}
                }
            }
            'pattern: for p in &self.fs.patterns {
                for (u, m, a) in &p.cells {
                    match walk(b, labels, edges, v, u) {
                        Walk::At(t) if labels[t] == (*m, *a) => {}
                        _ => continue 'pattern,
                    }
                }
                return false;
            }
        }
        if let Some(model) = self.model {
            for (i, w) in model.domain.words().iter().enumerate() {
                match walk(b, labels, edges, 0, w) {
                    Walk::At(t) if model.states[i] != Some(labels[t].0) => return false,
                    Walk::Undefined if model.states[i].is_some() => return false,
                    _ => {}
                }
            }
        }
        true
    }
}
