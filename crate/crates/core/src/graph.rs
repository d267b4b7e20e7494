use std::collections::VecDeque;
use std::fmt::Write;

use crate::blueprint::Blueprint;
use crate::equiv::WordProblem;
use crate::model::{ClassIndex, PartialModel, Step};
use crate::word::{Gen, State, Word};

/// Model graph of a partial model on its explored ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelGraph {
    /// Canonical representatives, shortlex order; vertex 0 is the class of ε.
    pub vertices: Vec<Word>,
    pub states: Vec<State>,
    /// (source, target, generator), sorted.
    pub edges: Vec<(usize, usize, Gen)>,
    /// Directed distance within the ball; `None` when unreachable inside it.
    pub dist: Vec<Vec<Option<usize>>>,
    /// Edges whose target class has no representative in the ball.
    pub dangling: usize,
}

pub fn model_graph(b: &Blueprint, m: &PartialModel, wp: &dyn WordProblem) -> ModelGraph {
    let classes = ClassIndex::new(b, m, wp);
    let reps = classes.vertices();
    let vid = |i: usize| reps.binary_search(&i).expect("representative is a vertex");
    let mut edges = Vec::new();
    let mut dangling = 0;
    for (v, &i) in reps.iter().enumerate() {
        for s in 0..b.num_gens() {
            match classes.step(b, m, wp, i, s) {
                Step::At(j) => edges.push((v, vid(j), s)),
                Step::Outside => dangling += 1,
                Step::Unsupported => {}
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let n = reps.len();
    let mut adj = vec![Vec::new(); n];
    for &(u, v, _) in &edges {
        adj[u].push(v);
    }
    let dist = (0..n)
        .map(|src| {
            let mut d = vec![None; n];
            d[src] = Some(0);
            let mut q = VecDeque::from([src]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if d[v].is_none() {
                        d[v] = Some(d[u].unwrap() + 1);
                        q.push_back(v);
                    }
                }
            }
            d
        })
        .collect();
    ModelGraph {
        vertices: reps.iter().map(|&i| m.domain.words()[i].clone()).collect(),
        states: reps.iter().map(|&i| m.states[i].unwrap()).collect(),
        edges,
        dist,
        dangling,
    }
}

impl ModelGraph {
    pub fn vertex_of(&self, w: &[Gen]) -> Option<usize> {
        self.vertices.iter().position(|v| v == w)
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.dist[u][v]
    }

    /// DOT rendering: vertex labels are states, edge labels generator names.
    pub fn to_dot(&self, b: &Blueprint) -> String {
        let mut out = String::from("digraph model {\n");
        for (i, w) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                "  v{i} [label=\"{}\", tooltip=\"{}\"];",
                b.states[self.states[i]],
                b.show_word(w)
            );
        }
        for &(u, v, s) in &self.edges {
            let _ = writeln!(out, "  v{u} -> v{v} [label=\"{}\"];", b.generators[s].name);
        }
        out.push_str("}\n");
        out
    }
}
