use blueprint_core::{equivalence_query, Blueprint, Budget, EquivalenceVerdict, Word};

use crate::error::Result;
use crate::window::Window;

/// First supported word u (shortlex) such that (φ, x)·u agrees with (φ, x) on the overlap
/// {v : uv ∈ D} and u is certified inequivalent to ε. Finding none at a given radius says
/// nothing about aperiodicity.
pub fn find_period_witness(b: &Blueprint, win: &Window, budget: Budget) -> Result<Option<(Word, EquivalenceVerdict)>> {
    let domain = &win.model.domain;
    for (i, u) in domain.words().iter().enumerate().skip(1) {
        if win.cell(i).is_none() {
            continue;
        }
        let agrees = domain.words().iter().all(|v| {
            let mut uv = u.clone();
            uv.extend_from_slice(v);
            !domain.contains(&uv) || win.get(&uv) == win.get(v)
        });
        if !agrees {
            continue;
        }
        let verdict = equivalence_query(b, u, &[], budget)?;
        if verdict.is_not_equivalent() {
            return Ok(Some((u.clone(), verdict)));
        }
    }
    Ok(None)
}
