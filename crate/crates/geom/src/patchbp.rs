use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use blueprint_core::{model_graph, Blueprint, ClassKey, Domain, Gen, Generator, PartialModel, Word, WordProblem};

use crate::error::{GeomError, Result};
use crate::patch::{enumerate_patches, PatchBudget};
use crate::rat::{add, int, norm2, show_q, show_vector, sub, zero, Vector, Q};
use crate::tiling::{canonical, Patch, PartialTiling, Placed};
use crate::tileset::PuncturedTileSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildBudget {
    pub patches: PatchBudget,
    /// Relations are materialised for |w| + |w′| ≤ min(L, relation_cap).
    pub relation_cap: usize,
    pub max_relations: usize,
}

impl Default for BuildBudget {
    fn default() -> Self {
        BuildBudget { patches: PatchBudget::default(), relation_cap: 3, max_relations: 100_000 }
    }
}

/// The patch blueprint Γ(P, K, L) with the geometric data behind its states and generators.
#[derive(Debug, Clone)]
pub struct PatchBlueprint {
    pub blueprint: Blueprint,
    pub patches: Vec<Patch>,
    /// val(s) for every generator.
    pub valuations: Vec<Vector>,
    pub k: usize,
    pub l: usize,
    /// (Kρ)².
    pub r2: Q,
    pub rho2: Q,
    pub relation_cap: usize,
    pub homeomorphism_guaranteed: bool,
    index: HashMap<Patch, usize>,
}

/// Keys words of length ≤ L/2 by their valuation, exact for consistent words with a common start.
pub struct PatchWordProblem<'a> {
    pb: &'a PatchBlueprint,
}

impl WordProblem for PatchWordProblem<'_> {
    fn key(&self, w: &[Gen]) -> Option<ClassKey> {
        if 2 * w.len() > self.pb.l {
            return None;
        }
        let v = self.pb.valuation(w);
        Some(ClassKey(v.iter().flat_map(|x| [*x.numer() as i64, *x.denom() as i64]).collect()))
    }
}

fn lens_part(ts: &PuncturedTileSet, patch: &[(usize, Vector)], shift: &[Q], v: &[Q], r2: Q) -> Patch {
    let o = zero(v.len());
    canonical(
        patch
            .iter()
            .map(|(t, p)| (*t, add(p, shift)))
            .filter(|(t, p)| ts.tiles[*t].shape.meets_lens(p, &o, v, r2))
            .collect(),
    )
}

/// K ≥ 117 and L ≥ 2K + 14.
pub fn homeomorphism_guaranteed(k: usize, l: usize) -> bool {
    k >= 117 && l >= 2 * k + 14
}

pub fn build_patch_blueprint(ts: &PuncturedTileSet, k: usize, l: usize, budget: BuildBudget) -> Result<PatchBlueprint> {
    let r2 = int((k * k) as i128) * ts.rho2;
    let patches = enumerate_patches(ts, r2, budget.patches)?;
    let bound = int(9) * ts.rho2;
    let mut gens = Vec::new();
    let mut valuations = Vec::new();
    for (i, m) in patches.iter().enumerate() {
        for (_, v) in m {
            let n = norm2(v);
            if n == int(0) || n > bound {
                continue;
            }
            let here = lens_part(ts, m, &zero(2), v, r2);
            let terminal: Vec<usize> =
                (0..patches.len()).filter(|&j| lens_part(ts, &patches[j], v, v, r2) == here).collect();
            let name = format!("m{i}:{}", v.iter().map(show_q).collect::<Vec<_>>().join(","));
            gens.push(Generator { name, initial: i, terminal });
            valuations.push(v.clone());
        }
    }
    let states = (0..patches.len()).map(|i| format!("m{i}")).collect();
    let mut blueprint = Blueprint::new(format!("patch K={k} L={l}"), states, gens, Vec::new())?;
    let relation_cap = budget.relation_cap.min(l);
    let pre = PatchBlueprint {
        blueprint: blueprint.clone(),
        index: patches.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect(),
        patches,
        valuations,
        k,
        l,
        r2,
        rho2: ts.rho2,
        relation_cap,
        homeomorphism_guaranteed: homeomorphism_guaranteed(k, l),
    };
    let relations = pre.bounded_relations(relation_cap, budget.max_relations)?;
    blueprint = Blueprint::new(blueprint.name.clone(), blueprint.states.clone(), blueprint.generators.clone(), relations)?;
    blueprint.meta = BTreeMap::from([
        ("K".to_string(), k.to_string()),
        ("L".to_string(), l.to_string()),
        ("relation_cap".to_string(), relation_cap.to_string()),
        ("rho2".to_string(), show_q(&ts.rho2)),
        ("homeomorphism_guaranteed".to_string(), pre.homeomorphism_guaranteed.to_string()),
    ]);
    Ok(PatchBlueprint { blueprint, ..pre })
}

impl PatchBlueprint {
    pub fn word_problem(&self) -> PatchWordProblem<'_> {
        PatchWordProblem { pb: self }
    }

    pub fn valuation(&self, w: &[Gen]) -> Vector {
        w.iter().fold(zero(2), |acc, &s| add(&acc, &self.valuations[s]))
    }

    pub fn patch_index(&self, p: &Patch) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// The generator (m, v), if any.
    pub fn generator(&self, m: usize, v: &[Q]) -> Option<Gen> {
        (0..self.valuations.len()).find(|&s| self.blueprint.initial(s) == m && self.valuations[s] == v)
    }

    /// Consistent pairs (w, w′), w ≠ w′, with |w| + |w′| ≤ cap, equal valuation and equal start.
    fn bounded_relations(&self, cap: usize, max: usize) -> Result<Vec<(Word, Word)>> {
        let b = &self.blueprint;
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..cap {
            let mut next = Vec::new();
            for w in &layer {
                for s in 0..b.num_gens() {
                    if w.last().is_some_and(|&l| !b.terminal(l).contains(&b.initial(s))) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(s);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            if words.len() > max {
                return Err(GeomError::RelationBudget(max));
            }
            layer = next;
        }
        let mut groups: BTreeMap<(Vector, Option<usize>), Vec<Word>> = BTreeMap::new();
        for w in &words {
            groups.entry((self.valuation(w), b.initial_of(w))).or_default().push(w.clone());
        }
        let mut out = Vec::new();
        for ((v, start), ws) in &groups {
            let mut members: Vec<&Word> = ws.iter().collect();
            if start.is_some() && *v == zero(2) {
                members.push(&words[0]);
            }
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    if members[i].len() + members[j].len() <= cap {
                        out.push((members[j].clone(), members[i].clone()));
                        if out.len() > max {
                            return Err(GeomError::RelationBudget(max));
                        }
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Ψ(T) on a prefix-closed domain of words.
pub fn psi_forward_on(pb: &PatchBlueprint, ts: &PuncturedTileSet, t: &PartialTiling, domain: Arc<Domain>) -> Result<PartialModel> {
    let b = &pb.blueprint;
    let words = domain.words();
    let mut states: Vec<Option<usize>> = vec![None; words.len()];
    let mut vals: Vec<Vector> = vec![zero(2); words.len()];
    let lookup = |c: &[Q]| {
        let p = t.patch_at(ts, c, pb.r2);
        pb.patch_index(&p).ok_or_else(|| GeomError::InsufficientSupport(show_vector(c)))
    };
    states[0] = Some(lookup(&zero(2))?);
    for k in 1..words.len() {
        let (&s, prefix) = words[k].split_last().unwrap();
        let p = domain.position(prefix).unwrap();
        let Some(m) = states[p] else { continue };
        if b.initial(s) != m {
            continue;
        }
        let c = add(&vals[p], &pb.valuations[s]);
        let next = lookup(&c)?;
        if !b.terminal(s).contains(&next) {
            return Err(GeomError::InsufficientSupport(show_vector(&c)));
        }
        states[k] = Some(next);
        vals[k] = c;
    }
    Ok(PartialModel { domain, states })
}

/// Ψ(T) on the ball of the given depth. T must cover B_{(3·depth+K)ρ}.
pub fn psi_forward(pb: &PatchBlueprint, ts: &PuncturedTileSet, t: &PartialTiling, depth: usize) -> Result<PartialModel> {
    psi_forward_on(pb, ts, t, Arc::new(Domain::ball(pb.blueprint.num_gens(), depth)))
}

/// The tiles t_w = val(w) + (φ(w) ⊓ {0}) over supported words, with optional colors.
pub fn realize(
    pb: &PatchBlueprint,
    ts: &PuncturedTileSet,
    m: &PartialModel,
    colors: Option<&[Option<usize>]>,
) -> Result<PartialTiling> {
    let b = &pb.blueprint;
    let words = m.domain.words();
    let mut tiles: Vec<Placed> = Vec::new();
    let mut owner: Vec<usize> = Vec::new();
    let mut at: HashMap<Vector, usize> = HashMap::new();
    for (k, w) in words.iter().enumerate() {
        let Some(state) = m.states[k] else { continue };
        let origin = pb.patches[state].iter().find(|(_, p)| *p == zero(2)).map(|(t, _)| *t).expect("patches are punctured");
        let pos = pb.valuation(w);
        let color = colors.and_then(|c| c[k]);
        if let Some(&i) = at.get(&pos) {
            if tiles[i].tile != origin || tiles[i].color != color {
                return Err(GeomError::OverlapWords(b.show_word(&words[owner[i]]), b.show_word(w)));
            }
            continue;
        }
        at.insert(pos.clone(), tiles.len());
        tiles.push(Placed { tile: origin, pos, color });
        owner.push(k);
    }
    PartialTiling::new(ts, tiles).map_err(|e| match e {
        GeomError::Overlap(i, j) => GeomError::OverlapWords(b.show_word(&words[owner[i]]), b.show_word(&words[owner[j]])),
        e => e,
    })
}

/// Ψ⁻¹: the partial tiling T_φ of a partial model over the patch blueprint.
pub fn psi_inverse(pb: &PatchBlueprint, ts: &PuncturedTileSet, m: &PartialModel) -> Result<PartialTiling> {
    realize(pb, ts, m, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistortionReport {
    pub vertices: usize,
    pub pairs: usize,
}

/// ρ·d − ρ ≤ ‖val(u) − val(v)‖ ≤ 3ρ·d on the model graph of m, in squared form.
pub fn check_distortion(pb: &PatchBlueprint, m: &PartialModel) -> Result<DistortionReport> {
    let wp = pb.word_problem();
    let g = model_graph(&pb.blueprint, m, &wp);
    let vals: Vec<Vector> = g.vertices.iter().map(|w| pb.valuation(w)).collect();
    let mut pairs = 0;
    for u in 0..vals.len() {
        for v in 0..vals.len() {
            let Some(d) = g.distance(u, v) else { continue };
            let delta = norm2(&sub(&vals[u], &vals[v]));
            let d = int(d as i128);
            let show = || format!("{} → {}", pb.blueprint.show_word(&g.vertices[u]), pb.blueprint.show_word(&g.vertices[v]));
            if delta > int(9) * pb.rho2 * d * d {
                return Err(GeomError::Bound(format!("‖Δval‖ > 3ρd for {}", show())));
            }
            if d > int(1) && pb.rho2 * (d - int(1)) * (d - int(1)) > delta {
                return Err(GeomError::Bound(format!("ρd − ρ > ‖Δval‖ for {}", show())));
            }
            pairs += 1;
        }
    }
    Ok(DistortionReport { vertices: vals.len(), pairs })
}
