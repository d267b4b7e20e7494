use std::sync::Arc;

use blueprint_core::model::for_each_partial_model;
use blueprint_core::{Blueprint, Domain, PartialModel, WordProblem};
use blueprint_subshift::{for_each_window, for_each_window_on, validate_window, PatternSet, Window};
use serde::{Deserialize, Serialize};

use crate::error::{DominoError, Result};

/// Statement that no admissible window exists on the ball of the given radius.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptinessCertificate {
    pub radius: usize,
    pub blueprint_digest: String,
    pub patterns_digest: String,
    /// Partial models of the ball, each of which admitted no coloring.
    pub models_explored: usize,
}

impl EmptinessCertificate {
    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("certificate serializes")
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| DominoError::Parse(e.to_string()))
    }
}

/// Some(certificate) iff no window on S^{≤r} passes (s1)–(s3). Since every configuration
/// restricts to such a window, X[Γ, F] is then empty.
pub fn certify_empty(
    b: &Blueprint,
    wp: &dyn WordProblem,
    fs: &PatternSet,
    r: usize,
) -> Result<Option<EmptinessCertificate>> {
    let domain = Arc::new(Domain::ball(b.num_gens(), r));
    let mut found = false;
    for_each_window(b, wp, fs, Arc::clone(&domain), &mut |_| {
        found = true;
        false
    })?;
    if found {
        return Ok(None);
    }
    let mut models = 0;
    for_each_partial_model(b, domain, wp, &mut |_| {
        models += 1;
        true
    });
    Ok(Some(EmptinessCertificate {
        radius: r,
        blueprint_digest: b.digest(),
        patterns_digest: fs.digest(b),
        models_explored: models,
    }))
}

/// Emptiness of X[Γ, φ, F] for the extensions of a fixed partial model.
pub fn certify_empty_on_model(
    b: &Blueprint,
    wp: &dyn WordProblem,
    fs: &PatternSet,
    model: Arc<PartialModel>,
) -> bool {
    let mut found = false;
    for_each_window_on(b, wp, fs, model, &mut |_| {
        found = true;
        false
    });
    !found
}

/// Re-checks an emptiness certificate by brute force: every assignment of letters to the
/// supported words of every partial model is fed to the window validator.
pub fn verify_empty(
    b: &Blueprint,
    wp: &dyn WordProblem,
    fs: &PatternSet,
    cert: &EmptinessCertificate,
    max_colorings: u128,
) -> Result<()> {
    if cert.blueprint_digest != b.digest() {
        return Err(DominoError::DigestMismatch("blueprint"));
    }
    if cert.patterns_digest != fs.digest(b) {
        return Err(DominoError::DigestMismatch("pattern set"));
    }
    let domain = Arc::new(Domain::ball(b.num_gens(), cert.radius));
    let k = fs.alphabet_size() as u128;
    let mut outcome: Result<()> = Ok(());
    let mut models = 0;
    for_each_partial_model(b, domain, wp, &mut |m| {
        models += 1;
        let supported: Vec<usize> = (0..m.states.len()).filter(|&i| m.states[i].is_some()).collect();
        let total = k.checked_pow(supported.len() as u32).unwrap_or(u128::MAX);
        if total > max_colorings {
            outcome = Err(DominoError::VerifierCap(total));
            return false;
        }
        let model = Arc::new(m);
        for code in 0..total {
            let mut c = code;
            let mut colors = vec![None; model.states.len()];
            for &i in &supported {
                colors[i] = Some((c % k) as usize);
                c /= k;
            }
            let w = Window { model: Arc::clone(&model), colors };
            if validate_window(b, wp, fs, &w).is_ok() {
                outcome = Err(DominoError::Rejected(format!("admissible window found at radius {}", cert.radius)));
                return false;
            }
        }
        true
    });
    outcome?;
    if models != cert.models_explored {
        return Err(DominoError::Rejected(format!("{models} partial models, certificate claims {}", cert.models_explored)));
    }
    Ok(())
}
