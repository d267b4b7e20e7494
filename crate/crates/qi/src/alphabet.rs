use blueprint_core::word::words_up_to;
use blueprint_core::{Blueprint, Gen, State, Word};
use blueprint_subshift::Letter;

use crate::error::{QiError, Result};

/// One of the N coordinates of a letter of B.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Component {
    Star,
    Coded {
        state: State,
        letter: Letter,
        /// ∂P per generator of S₂, `None` for ◇.
        moves: Vec<Option<Word>>,
        /// ∂I per generator of S₂ (0-based), `None` for ◇.
        indices: Vec<Option<usize>>,
    },
}

impl Component {
    pub fn is_star(&self) -> bool {
        matches!(self, Component::Star)
    }

    pub fn state(&self) -> Option<State> {
        match self {
            Component::Coded { state, .. } => Some(*state),
            Component::Star => None,
        }
    }

    /// (∂P(s), ∂I(s)) when defined.
    pub fn step(&self, s: Gen) -> Option<(&Word, usize)> {
        match self {
            Component::Coded { moves, indices, .. } => Some((moves[s].as_ref()?, indices[s]?)),
            Component::Star => None,
        }
    }
}

pub type QiLetter = Vec<Component>;

/// The letters of B (condition C0 built in), indexed without materialising them.
#[derive(Debug, Clone)]
pub struct QiAlphabet {
    pub n: usize,
    pub letters_a: usize,
    /// S₁^{≤2N} in shortlex order.
    pub moves: Vec<Word>,
    /// Generators of S₂ starting at each state of M₂.
    out_gens: Vec<Vec<Gen>>,
    num_gens2: usize,
    /// Components per state block.
    block: Vec<u128>,
    component_count: u128,
    count: u128,
}

impl QiAlphabet {
    pub fn new(b1: &Blueprint, b2: &Blueprint, letters_a: usize, n: usize) -> Self {
        assert!(n >= 1, "N is a positive integer");
        let moves = words_up_to(b1.num_gens(), 2 * n);
        let out_gens: Vec<Vec<Gen>> =
            (0..b2.num_states()).map(|m| (0..b2.num_gens()).filter(|&s| b2.initial(s) == m).collect()).collect();
        let per_gen = (moves.len() * n) as u128;
        let block: Vec<u128> = out_gens
            .iter()
            .map(|g| per_gen.checked_pow(g.len() as u32).and_then(|x| x.checked_mul(letters_a as u128)).unwrap_or(u128::MAX))
            .collect();
        let component_count = block.iter().fold(1u128, |acc, &x| acc.saturating_add(x));
        let count = component_count.checked_pow(n as u32).unwrap_or(u128::MAX);
        QiAlphabet { n, letters_a, moves, out_gens, num_gens2: b2.num_gens(), block, component_count, count }
    }

    /// Exact size of B, saturating at u128::MAX.
    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn component_count(&self) -> u128 {
        self.component_count
    }

    /// Fails when |B| exceeds the cap, reporting the count.
    pub fn check_cap(&self, cap: u128) -> Result<()> {
        if self.count > cap {
            return Err(QiError::AlphabetCap { count: self.count, cap });
        }
        Ok(())
    }

    /// Index of the all-⋆ letter.
    pub fn star(&self) -> Letter {
        0
    }

    fn move_index(&self, w: &[Gen]) -> Option<usize> {
        self.moves.iter().position(|m| m == w)
    }

    pub fn component(&self, mut c: u128) -> Component {
        if c == 0 {
            return Component::Star;
        }
        c -= 1;
        let mut state = 0;
        while c >= self.block[state] {
            c -= self.block[state];
            state += 1;
        }
        let per_gen = (self.moves.len() * self.n) as u128;
        let gens = &self.out_gens[state];
        let mut digits = vec![0usize; gens.len()];
        for k in (0..gens.len()).rev() {
            digits[k] = (c % per_gen) as usize;
            c /= per_gen;
        }
        let letter = c as usize;
        let mut moves = vec![None; self.num_gens2];
        let mut indices = vec![None; self.num_gens2];
        for (k, &s) in gens.iter().enumerate() {
            moves[s] = Some(self.moves[digits[k] / self.n].clone());
            indices[s] = Some(digits[k] % self.n);
        }
        Component::Coded { state, letter, moves, indices }
    }

    pub fn component_index(&self, comp: &Component) -> Result<u128> {
        let Component::Coded { state, letter, moves, indices } = comp else { return Ok(0) };
        let bad = || QiError::BadLetter(format!("{comp:?}"));
        if *state >= self.block.len() || *letter >= self.letters_a {
            return Err(bad());
        }
        let per_gen = (self.moves.len() * self.n) as u128;
        let mut c = *letter as u128;
        for s in 0..self.num_gens2 {
            let coded = self.out_gens[*state].contains(&s);
            // condition C0
            if coded != moves[s].is_some() || coded != indices[s].is_some() {
                return Err(bad());
            }
            if coded {
                let m = self.move_index(moves[s].as_ref().unwrap()).ok_or_else(bad)?;
                let j = indices[s].unwrap();
                if j >= self.n {
                    return Err(bad());
                }
                c = c * per_gen + (m * self.n + j) as u128;
            }
        }
        Ok(1 + self.block[..*state].iter().sum::<u128>() + c)
    }

    pub fn letter(&self, idx: Letter) -> QiLetter {
        let mut rest = idx as u128;
        let mut comps = vec![Component::Star; self.n];
        for k in (0..self.n).rev() {
            comps[k] = self.component(rest % self.component_count);
            rest /= self.component_count;
        }
        comps
    }

    pub fn index(&self, letter: &[Component]) -> Result<Letter> {
        if letter.len() != self.n {
            return Err(QiError::BadLetter(format!("{} components", letter.len())));
        }
        let mut idx = 0u128;
        for c in letter {
            idx = idx * self.component_count + self.component_index(c)?;
        }
        usize::try_from(idx).map_err(|_| QiError::BadLetter("index overflows".into()))
    }

    /// Letters in index order; stops with an error above the cap.
    pub fn enumerate(&self, cap: u128) -> Result<impl Iterator<Item = QiLetter> + '_> {
        self.check_cap(cap)?;
        Ok((0..self.count as usize).map(move |i| self.letter(i)))
    }

    pub fn name(&self, b1: &Blueprint, b2: &Blueprint, alphabet: &[String], letter: &[Component]) -> String {
        let parts: Vec<String> = letter
            .iter()
            .map(|c| match c {
                Component::Star => "*".to_string(),
                Component::Coded { state, letter, moves, indices } => {
                    let edges: Vec<String> = (0..self.num_gens2)
                        .filter_map(|s| {
                            let w = moves[s].as_ref()?;
                            let w = if w.is_empty() { "ε".to_string() } else { b1.format_word(w).replace(' ', ".") };
                            Some(format!("{}>{}#{}", b2.generators[s].name, w, indices[s]? + 1))
                        })
                        .collect();
                    format!("{}:{}:{}", b2.states[*state], alphabet[*letter], edges.join(","))
                }
            })
            .collect();
        parts.join("|")
    }
}
