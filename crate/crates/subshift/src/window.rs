use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use blueprint_core::model::{domain_keys, for_each_partial_model};
use blueprint_core::{partial_shift, validate_model, Blueprint, ClassIndex, ClassKey, Domain, Gen, PartialModel, State, Step, WordProblem};

use crate::error::{Result, SubshiftError};
use crate::pattern::{Letter, PatternSet};

/// A partial configuration (φ, x) on a finite prefix-closed domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub model: Arc<PartialModel>,
    pub colors: Vec<Option<Letter>>,
}

impl Window {
    pub fn domain(&self) -> &Arc<blueprint_core::Domain> {
        &self.model.domain
    }

    pub fn get(&self, w: &[Gen]) -> Option<(State, Letter)> {
        let i = self.model.domain.position(w)?;
        Some((self.model.states[i]?, self.colors[i]?))
    }

    /// Cell value at a domain index.
    pub fn cell(&self, i: usize) -> Option<(State, Letter)> {
        Some((self.model.states[i]?, self.colors[i]?))
    }

    /// Cells in domain order.
    pub fn cells(&self) -> Vec<Option<(State, Letter)>> {
        (0..self.colors.len()).map(|i| self.cell(i)).collect()
    }

    pub fn to_dot(&self, b: &Blueprint, alphabet: &[String]) -> String {
        let mut out = String::from("digraph window {\n");
        let words = self.model.domain.words();
        for (i, w) in words.iter().enumerate() {
            if let Some((m, a)) = self.cell(i) {
                let _ = writeln!(out, "  w{i} [label=\"{}/{}\", tooltip=\"{}\"];", b.states[m], alphabet[a], b.show_word(w));
            }
        }
        for (i, w) in words.iter().enumerate() {
            if self.cell(i).is_none() {
                continue;
            }
            if let Some((&s, p)) = w.split_last() {
                let j = self.model.domain.position(p).unwrap();
                let _ = writeln!(out, "  w{j} -> w{i} [label=\"{}\"];", b.generators[s].name);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// (φ, x)·w restricted to {u : wu ∈ D}.
pub fn shift_window(b: &Blueprint, win: &Window, w: &[Gen]) -> Result<Window> {
    let model = partial_shift(b, &win.model, w)?;
    let colors = model
        .domain
        .words()
        .iter()
        .map(|u| {
            let mut wu = w.to_vec();
            wu.extend_from_slice(u);
            win.colors[win.model.domain.position(&wu).unwrap()]
        })
        .collect();
    Ok(Window { model: Arc::new(model), colors })
}

/// Restriction of a window to a smaller prefix-closed domain.
pub fn restrict_window(win: &Window, domain: Arc<Domain>) -> Result<Window> {
    let model = win.model.restrict(Arc::clone(&domain))?;
    let colors = domain.words().iter().map(|w| win.colors[win.model.domain.position(w).unwrap()]).collect();
    Ok(Window { model: Arc::new(model), colors })
}

/// Forbidden conjunctions of (class variable, letter) derived from pattern occurrences.
struct Constraints {
    /// Domain index of each class representative.
    reps: Vec<usize>,
    /// Class variable per domain index.
    var_of: Vec<Option<usize>>,
    /// Clauses grouped by their largest variable.
    by_last: Vec<Vec<Vec<(usize, Letter)>>>,
    /// Some pattern occurs whatever the coloring (all cells forced).
    contradiction: bool,
}

fn constraints(b: &Blueprint, wp: &dyn WordProblem, fs: &PatternSet, m: &PartialModel) -> Constraints {
    let classes = ClassIndex::new(b, m, wp);
    let reps = classes.vertices();
    let mut var_of = vec![None; m.domain.len()];
    for i in 0..m.domain.len() {
        if let Some(r) = classes.rep(i) {
            var_of[i] = Some(reps.binary_search(&r).unwrap());
        }
    }
    let mut clauses: Vec<Vec<(usize, Letter)>> = Vec::new();
    let mut contradiction = false;
    for anchor in 0..m.domain.len() {
        if m.states[anchor].is_none() {
            continue;
        }
        'pattern: for p in &fs.patterns {
            let mut clause: Vec<(usize, Letter)> = Vec::with_capacity(p.cells.len());
            for (u, q, a) in &p.cells {
                match classes.walk(b, m, wp, anchor, u) {
                    Step::At(j) if m.states[j] == Some(*q) => clause.push((var_of[j].unwrap(), *a)),
                    _ => continue 'pattern,
                }
            }
            clause.sort_unstable();
            clause.dedup();
            if clause.windows(2).any(|c| c[0].0 == c[1].0) {
                continue;
            }
            if clause.is_empty() {
                contradiction = true;
            }
            clauses.push(clause);
        }
    }
    clauses.sort();
    clauses.dedup();
    let mut by_last = vec![Vec::new(); reps.len()];
    for c in clauses {
        if let Some(&(v, _)) = c.last() {
            by_last[v].push(c);
        }
    }
    Constraints { reps, var_of, by_last, contradiction }
}

/// Visits every coloring of the model's classes satisfying (s1)–(s3) on the domain, in
/// lexicographic order of class colors. The visitor returns false to stop; returns false if stopped.
pub fn for_each_window_on(
    b: &Blueprint,
    wp: &dyn WordProblem,
    fs: &PatternSet,
    model: Arc<PartialModel>,
    visit: &mut dyn FnMut(Window) -> bool,
) -> bool {
    let c = constraints(b, wp, fs, &model);
    if c.contradiction {
        return true;
    }
    let k = fs.alphabet_size();
    let n = c.reps.len();
    let mut colors = vec![0usize; n];
    fn rec(
        v: usize,
        n: usize,
        k: usize,
        colors: &mut Vec<usize>,
        c: &Constraints,
        model: &Arc<PartialModel>,
        visit: &mut dyn FnMut(Window) -> bool,
    ) -> bool {
        if v == n {
            let cols = c.var_of.iter().map(|o| o.map(|x| colors[x])).collect();
            return visit(Window { model: Arc::clone(model), colors: cols });
        }
        for a in 0..k {
            colors[v] = a;
            let bad = c.by_last[v].iter().any(|cl| cl.iter().all(|&(x, l)| colors[x] == l));
            if !bad && !rec(v + 1, n, k, colors, c, model, visit) {
                return false;
            }
        }
        true
    }
    rec(0, n, k, &mut colors, &c, &model, visit)
}

fn check_fits(fs: &PatternSet, domain: &Domain) -> Result<()> {
    let len = fs.max_support_len();
    if len > domain.radius() {
        return Err(SubshiftError::PatternTooLarge { len, radius: domain.radius() });
    }
    Ok(())
}

/// Visits all admissible windows over all partial models of the domain.
pub fn for_each_window(
    b: &Blueprint,
    wp: &dyn WordProblem,
    fs: &PatternSet,
    domain: Arc<Domain>,
    visit: &mut dyn FnMut(Window) -> bool,
) -> Result<bool> {
    check_fits(fs, &domain)?;
    let mut cont = true;
    for_each_partial_model(b, domain, wp, &mut |m| {
        cont = for_each_window_on(b, wp, fs, Arc::new(m), visit);
        cont
    });
    Ok(cont)
}

#[derive(Debug, Clone)]
pub struct WindowStream {
    pub windows: Vec<Window>,
    /// Set when the cap stopped the enumeration.
    pub truncated: bool,
}

/// Admissible windows on the domain, collected up to `max_windows`.
pub fn locally_admissible(
    b: &Blueprint,
    wp: &dyn WordProblem,
    fs: &PatternSet,
    domain: Arc<Domain>,
    max_windows: usize,
) -> Result<WindowStream> {
    let mut windows = Vec::new();
    let done = for_each_window(b, wp, fs, domain, &mut |w| {
        if windows.len() >= max_windows {
            return false;
        }
        windows.push(w);
        true
    })?;
    Ok(WindowStream { windows, truncated: !done })
}

pub fn count_windows(b: &Blueprint, wp: &dyn WordProblem, fs: &PatternSet, domain: Arc<Domain>) -> Result<usize> {
    let mut n = 0usize;
    for_each_window(b, wp, fs, domain, &mut |_| {
        n += 1;
        true
    })?;
    Ok(n)
}

/// Checks (s1)–(s3) and the model conditions directly from the definitions, without the
/// class machinery used by the enumerator.
pub fn validate_window(b: &Blueprint, wp: &dyn WordProblem, fs: &PatternSet, win: &Window) -> Result<()> {
    let m = &win.model;
    validate_model(b, m, wp)?;
    let words = m.domain.words();
    let show = |i: usize| b.show_word(&words[i]);
    if win.colors.len() != words.len() {
        return Err(SubshiftError::Violation { condition: "(s1)", word: "ε".into() });
    }
    for i in 0..words.len() {
        if m.states[i].is_some() != win.colors[i].is_some() {
            return Err(SubshiftError::Violation { condition: "(s1)", word: show(i) });
        }
        if let Some(a) = win.colors[i] {
            if a >= fs.alphabet_size() {
                return Err(SubshiftError::Violation { condition: "alphabet", word: show(i) });
            }
        }
    }
    let keys = domain_keys(b, &m.domain, wp);
    let mut by_key: HashMap<&ClassKey, (State, Letter)> = HashMap::new();
    for i in 0..words.len() {
        let (Some(k), Some(cell)) = (&keys[i], win.cell(i)) else { continue };
        match by_key.get(k) {
            Some(&prev) if prev != cell => return Err(SubshiftError::Violation { condition: "(s2)", word: show(i) }),
            Some(_) => {}
            None => {
                by_key.insert(k, cell);
            }
        }
    }
    // value of (φ, x) at an arbitrary word; None when the domain does not determine it
    let value = |w: &[Gen]| -> Option<Option<(State, Letter)>> {
        let mut cell = win.cell(0);
        for k in 0..w.len() {
            match cell {
                Some((q, _)) if b.initial(w[k]) == q => {}
                _ => return Some(None),
            }
            let pre = &w[..=k];
            cell = match m.domain.position(pre) {
                Some(i) => win.cell(i),
                None => Some(*by_key.get(&wp.key(pre)?)?),
            };
        }
        Some(cell)
    };
    for (i, w) in words.iter().enumerate() {
        if m.states[i].is_none() {
            continue;
        }
        for p in &fs.patterns {
            let mut occurs = true;
            for (u, q, a) in &p.cells {
                let mut wu = w.clone();
                wu.extend_from_slice(u);
                if value(&wu) != Some(Some((*q, *a))) {
                    occurs = false;
                    break;
                }
            }
            if occurs {
                return Err(SubshiftError::Violation { condition: "(s3)", word: show(i) });
            }
        }
    }
    Ok(())
}
