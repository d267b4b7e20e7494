use std::collections::BTreeSet;

use blueprint_core::{Blueprint, ClassKey, Gen, State, Word, WordProblem};
use blueprint_subshift::{Letter, Pattern, PatternSet};

use crate::alphabet::{Component, QiAlphabet, QiLetter};
use crate::check::density_words;
use crate::error::{QiError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompileBudget {
    pub max_letters: u128,
    pub max_patterns: usize,
}

impl Default for CompileBudget {
    fn default() -> Self {
        CompileBudget { max_letters: 20_000, max_patterns: 2_000_000 }
    }
}

/// The reachability condition, kept as a rule: its forbidden patterns range over all
/// colorings of S₁^{≤2N+1+2N·N(3N+1)} and are checked directly instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reachability {
    pub max_target_len: usize,
    pub max_word_len: usize,
}

#[derive(Debug, Clone)]
pub struct CompiledQi {
    pub patterns: PatternSet,
    /// Patterns contributed by C1, C2, C4 and C5 (C3 is symbolic).
    pub counts: [usize; 5],
    /// |T_p| for each pattern p of the source set.
    pub t_sizes: Vec<usize>,
    pub reachability: Reachability,
}

type Cells = Vec<(Word, State, Letter)>;

struct Ctx<'a> {
    b1: &'a Blueprint,
    wp1: &'a dyn WordProblem,
    b2: &'a Blueprint,
    letters: Vec<QiLetter>,
}

/// One cell of a walk assignment.
#[derive(Clone)]
struct Cell {
    word: Word,
    key: ClassKey,
    state: State,
    letter: Letter,
}

impl Ctx<'_> {
    fn key(&self, w: &[Gen]) -> Result<ClassKey> {
        self.wp1.key(w).ok_or_else(|| QiError::WordProblem(self.b1.show_word(w)))
    }

    fn states_after(&self, w: &[Gen], root: State) -> Vec<State> {
        match w.last() {
            Some(&s) => self.b1.terminal(s).to_vec(),
            None => vec![root],
        }
    }

    /// Follows `gens` through the coded action, branching over letters of new cells.
    /// `k` receives the assignment and the end (cell, index), or None when undefined.
    fn walk(
        &self,
        assign: &mut Vec<Cell>,
        at: usize,
        idx: usize,
        gens: &[Gen],
        k: &mut dyn FnMut(&mut Vec<Cell>, Option<(usize, usize)>) -> Result<()>,
    ) -> Result<()> {
        let Some((&s, rest)) = gens.split_first() else { return k(assign, Some((at, idx))) };
        let comp = &self.letters[assign[at].letter][idx];
        let Component::Coded { state, .. } = comp else { return Ok(()) };
        if self.b2.initial(s) != *state {
            return k(assign, None);
        }
        let (mv, j) = comp.step(s).expect("C0");
        let mut word = assign[at].word.clone();
        if let Some(&first) = mv.first() {
            if self.b1.initial(first) != assign[at].state {
                return Ok(());
            }
        }
        word.extend_from_slice(mv);
        if !self.b1.is_consistent(&word) {
            return Ok(());
        }
        let key = self.key(&word)?;
        let lands = |c: &Component| matches!(c, Component::Coded { state, .. } if self.b2.terminal(s).contains(state));
        if let Some(t) = assign.iter().position(|c| c.key == key) {
            if !lands(&self.letters[assign[t].letter][j]) {
                return Ok(());
            }
            return self.walk(assign, t, j, rest, k);
        }
        let root = assign[0].state;
        for m in self.states_after(&word, root) {
            for (c, letter) in self.letters.iter().enumerate() {
                if !lands(&letter[j]) {
                    continue;
                }
                assign.push(Cell { word: word.clone(), key: key.clone(), state: m, letter: c });
                let t = assign.len() - 1;
                self.walk(assign, t, j, rest, k)?;
                assign.pop();
            }
        }
        Ok(())
    }
}

fn cells_of(assign: &[Cell]) -> Cells {
    let mut cells: Cells = assign.iter().map(|c| (c.word.clone(), c.state, c.letter)).collect();
    cells.sort();
    cells
}

fn push(out: &mut BTreeSet<Cells>, cells: Cells, budget: &CompileBudget) -> Result<()> {
    out.insert(cells);
    if out.len() > budget.max_patterns {
        return Err(QiError::PatternBudget(budget.max_patterns));
    }
    Ok(())
}

/// Forbidden patterns of QI(F, N) over Γ₁ for C1, C2, C4 and C5, with C3 returned as a rule.
#[allow(clippy::too_many_arguments)]
pub fn compile_qi_patterns(
    b1: &Blueprint,
    wp1: &dyn WordProblem,
    b2: &Blueprint,
    alphabet_a: &[String],
    fs: &PatternSet,
    n: usize,
    budget: CompileBudget,
) -> Result<(QiAlphabet, CompiledQi)> {
    let alphabet = QiAlphabet::new(b1, b2, alphabet_a.len(), n);
    let letters: Vec<QiLetter> = alphabet.enumerate(budget.max_letters)?.collect();
    let names: Vec<String> = letters.iter().map(|l| alphabet.name(b1, b2, alphabet_a, l)).collect();
    let ctx = Ctx { b1, wp1, b2, letters };
    let star = alphabet.star();
    let mut counts = [0usize; 5];
    let mut all: BTreeSet<Cells> = BTreeSet::new();

    // C1: an all-⋆ neighbourhood of density words
    let dense = density_words(b1, wp1, n)?;
    let mut c1 = BTreeSet::new();
    for m0 in 0..b1.num_states() {
        let mut words: Vec<(Word, ClassKey)> = Vec::new();
        for w in &dense {
            if w.first().is_some_and(|&s| b1.initial(s) != m0) {
                continue;
            }
            let k = ctx.key(w)?;
            if !words.iter().any(|(_, k2)| *k2 == k) {
                words.push((w.clone(), k));
            }
        }
        let choices: Vec<Vec<State>> = words.iter().map(|(w, _)| ctx.states_after(w, m0)).collect();
        let mut pick = vec![0usize; words.len()];
        loop {
            let cells: Cells = words.iter().zip(&pick).enumerate().map(|(k, ((w, _), &p))| (w.clone(), choices[k][p], star)).collect();
            let mut cells = cells;
            cells.sort();
            push(&mut c1, cells, &budget)?;
            let mut k = 0;
            while k < pick.len() && pick[k] + 1 == choices[k].len() {
                pick[k] = 0;
                k += 1;
            }
            if k == pick.len() {
                break;
            }
            pick[k] += 1;
        }
    }
    counts[0] = c1.len();
    all.extend(c1);

    // C2: the partial action lands on a coded component with a terminal state
    let mut c2 = BTreeSet::new();
    for (bi, letter) in ctx.letters.iter().enumerate() {
        for comp in letter {
            let Component::Coded { state: m2, .. } = comp else { continue };
            for m1 in 0..b1.num_states() {
                for s in 0..b2.num_gens() {
                    if b2.initial(s) != *m2 {
                        continue;
                    }
                    let (u, j) = comp.step(s).expect("C0");
                    let bad = |c: &Component| !matches!(c, Component::Coded { state, .. } if b2.terminal(s).contains(state));
                    if u.is_empty() {
                        if bad(&letter[j]) {
                            push(&mut c2, vec![(vec![], m1, bi)], &budget)?;
                        }
                        continue;
                    }
                    if b1.initial(u[0]) != m1 {
                        push(&mut c2, vec![(vec![], m1, bi)], &budget)?;
                        continue;
                    }
                    for k in 1..u.len() {
                        for &m in b1.terminal(u[k - 1]) {
                            if m == b1.initial(u[k]) {
                                continue;
                            }
                            for c in 0..ctx.letters.len() {
                                let mut cells = vec![(vec![], m1, bi), (u[..k].to_vec(), m, c)];
                                cells.sort();
                                push(&mut c2, cells, &budget)?;
                            }
                        }
                    }
                    for &m in b1.terminal(*u.last().unwrap()) {
                        for (c, other) in ctx.letters.iter().enumerate() {
                            if bad(&other[j]) {
                                let mut cells = vec![(vec![], m1, bi), (u.clone(), m, c)];
                                cells.sort();
                                push(&mut c2, cells, &budget)?;
                            }
                        }
                    }
                }
            }
        }
    }
    counts[1] = c2.len();
    all.extend(c2);

    // C4: both sides of a relation end on the same class and index
    let mut c4 = BTreeSet::new();
    for (u, v) in &b2.relations {
        for m1 in 0..b1.num_states() {
            for (bi, letter) in ctx.letters.iter().enumerate() {
                for (i, comp) in letter.iter().enumerate() {
                    if comp.is_star() {
                        continue;
                    }
                    let mut assign = vec![Cell { word: vec![], key: ctx.key(&[])?, state: m1, letter: bi }];
                    let mut emit: Vec<Cells> = Vec::new();
                    ctx.walk(&mut assign, 0, i, u, &mut |assign, end_u| {
                        let Some(end_u) = end_u else { return Ok(()) };
                        let key_u = assign[end_u.0].key.clone();
                        ctx.walk(assign, 0, i, v, &mut |assign, end_v| {
                            if let Some(end_v) = end_v {
                                if assign[end_v.0].key != key_u || end_v.1 != end_u.1 {
                                    emit.push(cells_of(assign));
                                }
                            }
                            Ok(())
                        })
                    })?;
                    for cells in emit {
                        push(&mut c4, cells, &budget)?;
                    }
                }
            }
        }
    }
    counts[3] = c4.len();
    all.extend(c4);

    // C5: T_p, all cells read from one coded index at the origin
    let mut t_sizes = Vec::new();
    for p in &fs.patterns {
        let mut tp = BTreeSet::new();
        for m1 in 0..b1.num_states() {
            for (bi, letter) in ctx.letters.iter().enumerate() {
                for (i, comp) in letter.iter().enumerate() {
                    if comp.is_star() {
                        continue;
                    }
                    let mut assign = vec![Cell { word: vec![], key: ctx.key(&[])?, state: m1, letter: bi }];
                    let mut emit: Vec<Cells> = Vec::new();
                    follow_cells(&ctx, &mut assign, i, &p.cells, &mut emit)?;
                    for cells in emit {
                        push(&mut tp, cells, &budget)?;
                    }
                }
            }
        }
        t_sizes.push(tp.len());
        counts[4] += tp.len();
        all.extend(tp);
    }

    let patterns = all.into_iter().map(Pattern::new).collect::<std::result::Result<Vec<_>, _>>()?;
    let patterns = PatternSet::new(names, patterns)?;
    let reachability = Reachability { max_target_len: 2 * n + 1, max_word_len: n * (3 * n + 1) };
    Ok((alphabet, CompiledQi { patterns, counts, t_sizes, reachability }))
}

fn follow_cells(ctx: &Ctx, assign: &mut Vec<Cell>, i: usize, cells: &[(Word, State, Letter)], emit: &mut Vec<Cells>) -> Result<()> {
    let Some(((w, m, a), rest)) = cells.split_first() else {
        emit.push(cells_of(assign));
        return Ok(());
    };
    ctx.walk(assign, 0, i, w, &mut |assign, end| {
        let Some((t, j)) = end else { return Ok(()) };
        match &ctx.letters[assign[t].letter][j] {
            Component::Coded { state, letter, .. } if state == m && letter == a => follow_cells(ctx, assign, i, rest, emit),
            _ => Ok(()),
        }
    })
}

/// The bound (|B||M₁| + 1)^e on |T_p|.
pub fn t_bound(alphabet: &QiAlphabet, b1: &Blueprint, exponent: u32) -> u128 {
    (alphabet.count() * b1.num_states() as u128 + 1).saturating_pow(exponent)
}
