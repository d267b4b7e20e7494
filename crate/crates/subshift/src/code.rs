use std::sync::Arc;

use blueprint_core::{Blueprint, Domain, PartialModel, State};

use crate::error::{Result, SubshiftError};
use crate::pattern::Letter;
use crate::window::Window;

pub type Cell = Option<(State, Letter)>;
pub type LocalRule = Arc<dyn Fn(&[Cell]) -> Cell + Send + Sync>;

/// φ(φ, x)(w) = Φ(((φ, x)·w)|_F).
#[derive(Clone)]
pub struct SlidingBlockCode {
    pub name: String,
    /// Window shape F, a finite prefix-closed set of words.
    pub shape: Arc<Domain>,
    /// Receives the cells of F in shape order; must return a state for supported inputs.
    pub rule: LocalRule,
    pub target_alphabet: usize,
}

impl std::fmt::Debug for SlidingBlockCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SlidingBlockCode").field("name", &self.name).field("shape", &self.shape.words()).finish()
    }
}

impl SlidingBlockCode {
    pub fn depth(&self) -> usize {
        self.shape.radius()
    }

    pub fn identity(alphabet: usize) -> Self {
        SlidingBlockCode {
            name: "identity".into(),
            shape: Arc::new(Domain::ball(0, 0)),
            rule: Arc::new(|cells: &[Cell]| cells[0]),
            target_alphabet: alphabet,
        }
    }

    /// M × A → M × {•}.
    pub fn forget() -> Self {
        SlidingBlockCode {
            name: "forget".into(),
            shape: Arc::new(Domain::ball(0, 0)),
            rule: Arc::new(|cells: &[Cell]| cells[0].map(|(m, _)| (m, 0))),
            target_alphabet: 1,
        }
    }

    /// Binary sum of the letters at ε and at s, defaulting to the letter at ε when s is undefined.
    pub fn xor_along(s: usize) -> Self {
        let shape = Arc::new(Domain::new(vec![vec![], vec![s]]).expect("prefix closed"));
        SlidingBlockCode {
            name: format!("xor-{s}"),
            shape,
            rule: Arc::new(|cells: &[Cell]| {
                let (m, a) = cells[0]?;
                let b = cells[1].map_or(0, |c| c.1);
                Some((m, (a ^ b) & 1))
            }),
            target_alphabet: 2,
        }
    }
}

/// Words w of the domain such that v·F lies in the domain for every prefix v of w.
pub fn code_domain(domain: &Domain, shape: &Domain) -> Domain {
    let fits = |w: &[usize]| {
        shape.words().iter().all(|f| {
            let mut wf = w.to_vec();
            wf.extend_from_slice(f);
            domain.contains(&wf)
        })
    };
    let words: Vec<_> = domain
        .words()
        .iter()
        .filter(|w| (0..=w.len()).all(|k| fits(&w[..k])))
        .cloned()
        .collect();
    Domain::new(words).expect("prefix closed by construction")
}

pub fn apply_sliding_block(b: &Blueprint, code: &SlidingBlockCode, win: &Window) -> Result<Window> {
    let src = &win.model.domain;
    if !src.contains(&[]) || code.shape.words().iter().any(|f| !src.contains(f)) {
        return Err(SubshiftError::InsufficientRadius { have: src.radius(), need: code.depth() });
    }
    let domain = Arc::new(code_domain(src, &code.shape));
    let mut states = Vec::with_capacity(domain.len());
    let mut colors = Vec::with_capacity(domain.len());
    for w in domain.words() {
        let cells: Vec<Cell> = code
            .shape
            .words()
            .iter()
            .map(|f| {
                let mut wf = w.clone();
                wf.extend_from_slice(f);
                win.get(&wf)
            })
            .collect();
        let out = if cells[0].is_some() {
            Some((code.rule)(&cells).ok_or_else(|| SubshiftError::RuleUndefined(b.show_word(w)))?)
        } else {
            None
        };
        states.push(out.map(|c| c.0));
        colors.push(out.map(|c| c.1));
    }
    Ok(Window { model: Arc::new(PartialModel { domain, states }), colors })
}
