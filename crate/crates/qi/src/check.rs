use blueprint_core::word::words_up_to;
use blueprint_core::{Blueprint, Word, WordProblem};
use blueprint_subshift::PatternSet;

use crate::action::{QiState, QiView};
use crate::alphabet::Component;
use crate::error::{QiError, Result};

/// Words w ∈ S₁^{≤N} admitting w′ ∈ S₁^{≤N} with ww′ Γ₁-equivalent to ε.
pub fn density_words(b1: &Blueprint, wp1: &dyn WordProblem, n: usize) -> Result<Vec<Word>> {
    let eps = wp1.key(&[]).ok_or_else(|| QiError::WordProblem("ε".into()))?;
    let short = words_up_to(b1.num_gens(), n);
    let mut out = Vec::new();
    for w in &short {
        if !b1.is_consistent(w) {
            continue;
        }
        for w2 in &short {
            let mut ww = w.clone();
            ww.extend_from_slice(w2);
            if !b1.is_consistent(&ww) {
                continue;
            }
            let k = wp1.key(&ww).ok_or_else(|| QiError::WordProblem(b1.show_word(&ww)))?;
            if k == eps {
                out.push(w.clone());
                break;
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckReport {
    /// (anchor, condition) pairs decided inside the window.
    pub checked: usize,
    /// Pairs whose verification needed cells outside the window.
    pub skipped: usize,
}

/// Verifies C0–C5 directly from their definitions at every anchor of the window where the
/// verdict is decided by the window's contents. C5 uses the Γ₂ pattern set `fs`.
pub fn check_qi_window(view: &QiView, fs: &PatternSet) -> Result<CheckReport> {
    let (b1, b2) = (view.b1, view.b2);
    let n = view.alphabet.n;
    let mut report = CheckReport::default();
    let fail = |condition: &'static str, at: usize| QiError::Violation { condition, word: b1.show_word(view.word(at)) };
    let dense = density_words(b1, view.wp1, n)?;
    let reach_v = words_up_to(b1.num_gens(), 2 * n + 1);
    let reach_len = n * (3 * n + 1);
    for p in view.vertices() {
        let comps = view.components(p).expect("supported");
        // C0 is structural: letters decode only to C0-consistent components
        for c in comps {
            view.alphabet.component_index(c).map_err(|_| fail("C0", p))?;
        }
        // C1
        let c1 = (|| {
            let mut outside = None;
            for w in &dense {
                match view.resolve(p, w) {
                    Ok(Some(q)) if view.components(q).unwrap().iter().any(|c| !c.is_star()) => return Ok(true),
                    Ok(_) => {}
                    Err(e) => outside = Some(e),
                }
            }
            match outside {
                Some(e) => Err(e),
                None => Err(fail("C1", p)),
            }
        })();
        tally(c1, &mut report)?;
        for (i, comp) in comps.iter().enumerate() {
            let Component::Coded { state, .. } = comp else { continue };
            let st = QiState { base: p, index: i };
            // C2
            let c2 = (|| {
                for s in 0..b2.num_gens() {
                    if b2.initial(s) != *state {
                        continue;
                    }
                    let (mv, j) = comp.step(s).ok_or_else(|| fail("C0", p))?;
                    let q = view.resolve(p, mv)?.ok_or_else(|| fail("C2", p))?;
                    match &view.components(q).unwrap()[j] {
                        Component::Coded { state: m2, .. } if b2.terminal(s).contains(m2) => {}
                        _ => return Err(fail("C2", p)),
                    }
                }
                Ok(true)
            })();
            tally(c2, &mut report)?;
            // C3
            for v in &reach_v {
                let target = match view.resolve(p, v) {
                    Ok(Some(q)) => q,
                    Ok(None) => continue,
                    Err(_) => {
                        report.skipped += 1;
                        continue;
                    }
                };
                for (j, c) in view.components(target).unwrap().iter().enumerate() {
                    if c.is_star() {
                        continue;
                    }
                    let r = view
                        .connecting_word(st, QiState { base: target, index: j }, reach_len)
                        .and_then(|u| u.map(|_| true).ok_or_else(|| fail("C3", p)));
                    tally(r, &mut report)?;
                }
            }
            // C4
            for (u, v) in &b2.relations {
                let r = (|| match (view.circ(st, u)?, view.circ(st, v)?) {
                    (Some((a, _)), Some((b, _))) if a != b => Err(fail("C4", p)),
                    _ => Ok(true),
                })();
                tally(r, &mut report)?;
            }
            // C5
            for pat in &fs.patterns {
                let r = (|| {
                    for (w, m, a) in &pat.cells {
                        let Some((end, _)) = view.circ(st, w)? else { return Ok(true) };
                        match view.component(end) {
                            Some(Component::Coded { state, letter, .. }) if state == m && letter == a => {}
                            _ => return Ok(true),
                        }
                    }
                    Err(fail("C5", p))
                })();
                tally(r, &mut report)?;
            }
        }
    }
    Ok(report)
}

fn tally(r: Result<bool>, report: &mut CheckReport) -> Result<()> {
    match r {
        Ok(_) => report.checked += 1,
        Err(QiError::RadiusExhausted(_)) => report.skipped += 1,
        Err(e) => return Err(e),
    }
    Ok(())
}
