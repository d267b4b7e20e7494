use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use blueprint_core::{Blueprint, Domain, PartialModel, WordProblem};

use crate::code::{Cell, SlidingBlockCode};
use crate::error::{Result, SubshiftError};
use crate::pattern::{Pattern, PatternSet};
use crate::window::{locally_admissible, Window};

/// A nearest-neighbour presentation of an SFT together with the conjugacy codes.
#[derive(Debug, Clone)]
pub struct NnConversion {
    pub n: usize,
    /// F = S^{≤N}.
    pub shape: Arc<Domain>,
    /// The alphabet B: admissible windows on F.
    pub letters: Vec<Window>,
    /// G over the alphabet B.
    pub patterns: PatternSet,
    pub forward: SlidingBlockCode,
    pub backward: SlidingBlockCode,
}

/// Conversion with N the longest support length of `fs`.
pub fn to_nearest_neighbor(b: &Blueprint, wp: &dyn WordProblem, fs: &PatternSet, cap: usize) -> Result<NnConversion> {
    to_nearest_neighbor_with(b, wp, fs, fs.max_support_len(), cap)
}

/// Both the letter count and the pattern count are bounded by `cap`.
///
/// B = windows α on F = S^{≤N} with α(ε) ≠ ∅ that satisfy the model conditions and avoid
/// every pattern at every anchor where it fits in F. G forbids pairs (m, α), (m', α') across s
/// whose states disagree with α(ε), α'(ε) or whose overlaps α(sw), α'(w), |w| ≤ N − 1, differ.
pub fn to_nearest_neighbor_with(
    b: &Blueprint,
    wp: &dyn WordProblem,
    fs: &PatternSet,
    n: usize,
    cap: usize,
) -> Result<NnConversion> {
    let shape = Arc::new(Domain::ball(b.num_gens(), n));
    let stream = locally_admissible(b, wp, fs, Arc::clone(&shape), cap)?;
    if stream.truncated {
        return Err(SubshiftError::Cap(cap));
    }
    let letters = stream.windows;
    let k = letters.len();
    let pattern_count = b.num_gens() * b.num_states() * b.num_states() * k * k;
    if pattern_count > cap {
        return Err(SubshiftError::Cap(cap));
    }
    let inner = Domain::ball(b.num_gens(), n.saturating_sub(1));
    let mut patterns = Vec::new();
    for s in 0..b.num_gens() {
        for (i, alpha) in letters.iter().enumerate() {
            for (j, beta) in letters.iter().enumerate() {
                let overlap_differs = n > 0
                    && inner.words().iter().any(|w| {
                        let mut sw = vec![s];
                        sw.extend_from_slice(w);
                        alpha.get(&sw) != beta.get(w)
                    });
                for m in 0..b.num_states() {
                    for m2 in 0..b.num_states() {
                        let bad = alpha.model.states[0] != Some(m) || beta.model.states[0] != Some(m2) || overlap_differs;
                        if bad {
                            patterns.push(Pattern { cells: vec![(vec![], m, i), (vec![s], m2, j)] });
                        }
                    }
                }
            }
        }
    }
    let names = (0..k).map(|i| format!("b{i}")).collect();
    let patterns = PatternSet::new(names, patterns)?;
    let index: HashMap<Vec<Cell>, usize> = letters.iter().enumerate().map(|(i, a)| (a.cells(), i)).collect();
    let forward = SlidingBlockCode {
        name: "nn-forward".into(),
        shape: Arc::clone(&shape),
        rule: Arc::new(move |cells: &[Cell]| {
            let (m, _) = cells[0]?;
            index.get(cells).map(|&i| (m, i))
        }),
        target_alphabet: k,
    };
    let first_letters: Vec<usize> = letters.iter().map(|a| a.colors[0].expect("α(ε) ≠ ∅")).collect();
    let backward = SlidingBlockCode {
        name: "nn-backward".into(),
        shape: Arc::new(Domain::ball(0, 0)),
        rule: Arc::new(move |cells: &[Cell]| cells[0].map(|(m, i)| (m, first_letters[i]))),
        target_alphabet: fs.alphabet_size(),
    };
    Ok(NnConversion { n, shape, letters, patterns, forward, backward })
}

impl NnConversion {
    /// Rebuilds the source window on {w f : w ∈ D, f ∈ F} from a window over B, reading each
    /// word through the letter at its longest prefix in D.
    pub fn decode_window(&self, y: &Window) -> Result<Window> {
        let dy = &y.model.domain;
        let mut words = BTreeSet::new();
        for w in dy.words() {
            for f in self.shape.words() {
                let mut wf = w.clone();
                wf.extend_from_slice(f);
                words.insert(wf);
            }
        }
        let domain = Arc::new(Domain::new(words.into_iter().collect())?);
        let mut states = Vec::with_capacity(domain.len());
        let mut colors = Vec::with_capacity(domain.len());
        for v in domain.words() {
            let k = (0..=v.len()).rev().find(|&k| dy.contains(&v[..k])).unwrap();
            let cell = match y.get(&v[..k]) {
                Some((_, letter)) => self.letters[letter].get(&v[k..]),
                None => None,
            };
            states.push(cell.map(|c| c.0));
            colors.push(cell.map(|c| c.1));
        }
        Ok(Window { model: Arc::new(PartialModel { domain, states }), colors })
    }
}
