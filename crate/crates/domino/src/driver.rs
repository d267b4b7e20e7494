use std::sync::Arc;

use blueprint_core::{Blueprint, PartialModel, WordProblem};
use blueprint_subshift::PatternSet;

use crate::empty::{certify_empty, certify_empty_on_model, EmptinessCertificate};
use crate::error::Result;
use crate::quotient::{certify_nonempty, QuotientCertificate, SearchBounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub radius: usize,
    pub max_vertices: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub steps: Vec<Step>,
    /// Node budget of each quotient search.
    pub max_nodes: usize,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            steps: [1, 2, 4, 8].iter().enumerate().map(|(i, &v)| Step { radius: i + 1, max_vertices: v }).collect(),
            max_nodes: 200_000,
        }
    }
}

impl Schedule {
    fn bounds(&self, step: &Step) -> SearchBounds {
        SearchBounds { min_vertices: 1, max_vertices: step.max_vertices, max_nodes: self.max_nodes }
    }

    pub fn parse(text: &str) -> Option<Self> {
        if text == "default" {
            return Some(Schedule::default());
        }
        let mut steps = Vec::new();
        for part in text.split(',') {
            let (r, v) = part.trim().split_once(':')?;
            steps.push(Step { radius: r.trim().parse().ok()?, max_vertices: v.trim().parse().ok()? });
        }
        (!steps.is_empty()).then_some(Schedule { steps, max_nodes: Schedule::default().max_nodes })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Empty(EmptinessCertificate),
    Nonempty(QuotientCertificate),
    Unknown,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Nonempty(_) => 0,
            Verdict::Empty(_) => 1,
            Verdict::Unknown => 2,
        }
    }
}

/// Alternates emptiness and nonemptiness searches along the schedule.
pub fn domino_run(b: &Blueprint, wp: &dyn WordProblem, fs: &PatternSet, schedule: &Schedule) -> Result<Verdict> {
    for step in &schedule.steps {
        if let Some(cert) = certify_empty(b, wp, fs, step.radius)? {
            return Ok(Verdict::Empty(cert));
        }
        let found = certify_nonempty(b, fs, schedule.bounds(step), None)?;
        if let Some(cert) = found.certificate {
            return Ok(Verdict::Nonempty(cert));
        }
    }
    Ok(Verdict::Unknown)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelVerdict {
    /// No coloring of the model restricted to the given radius avoids the patterns.
    Empty { radius: usize },
    Nonempty(QuotientCertificate),
    Unknown,
}

/// The driver restricted to configurations whose model extends `model`.
pub fn domino_run_on_model(
    b: &Blueprint,
    wp: &dyn WordProblem,
    fs: &PatternSet,
    model: &PartialModel,
    schedule: &Schedule,
) -> Result<ModelVerdict> {
    for step in &schedule.steps {
        let r = step.radius.min(model.domain.radius());
        let ball = Arc::new(model.domain.truncated(r));
        if r >= fs.max_support_len() {
            let restricted = Arc::new(model.restrict(ball)?);
            if certify_empty_on_model(b, wp, fs, restricted) {
                return Ok(ModelVerdict::Empty { radius: r });
            }
        }
        let found = certify_nonempty(b, fs, schedule.bounds(step), Some(model))?;
        if let Some(cert) = found.certificate {
            return Ok(ModelVerdict::Nonempty(cert));
        }
    }
    Ok(ModelVerdict::Unknown)
}
