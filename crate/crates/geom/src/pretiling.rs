use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;
use std::sync::Arc;

use blueprint_core::PartialModel;
use blueprint_subshift::{Letter, PatternSet, Window};

use crate::error::{GeomError, Result};
use crate::patchbp::{realize, PatchBlueprint};
use crate::rat::{add, cmp_vec, int, show_vector, zero, Vector, Q};
use crate::tiling::{canonical, PartialTiling, Placed};
use crate::tileset::PuncturedTileSet;

pub type ZVec = Vec<i64>;

/// The basis D = {v_1..v_k} of the punctured position group and η(n) = Σ nᵢvᵢ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionGroup {
    pub basis: Vec<Vector>,
}

impl PositionGroup {
    /// Distinct generator valuations of the patch blueprint, in lexicographic order.
    pub fn of(pb: &PatchBlueprint) -> Self {
        let mut basis = pb.valuations.clone();
        basis.sort_by(|a, b| cmp_vec(a, b));
        basis.dedup();
        PositionGroup { basis }
    }

    pub fn eta(&self, n: &[i64]) -> Vector {
        self.basis
            .iter()
            .zip(n)
            .fold(zero(2), |acc, (v, &c)| add(&acc, &v.iter().map(|x| x * int(c as i128)).collect::<Vec<_>>()))
    }

    /// For each target, the preimage under η of least ℓ¹ norm, ties broken lexicographically.
    pub fn preimages(&self, targets: &[Vector], max_norm: usize) -> Result<Vec<ZVec>> {
        let k = self.basis.len();
        let mut best: HashMap<Vector, ZVec> = HashMap::from([(zero(2), vec![0; k])]);
        let mut layer: Vec<(Vector, ZVec)> = vec![(zero(2), vec![0; k])];
        let missing = |best: &HashMap<Vector, ZVec>| targets.iter().any(|t| !best.contains_key(t));
        let mut norm = 0;
        while missing(&best) {
            if norm == max_norm || layer.is_empty() {
                let t = targets.iter().find(|t| !best.contains_key(*t)).unwrap();
                return Err(GeomError::NoPreimage(show_vector(t)));
            }
            let mut next: BTreeMap<Vector, ZVec> = BTreeMap::new();
            for (p, n) in &layer {
                for i in 0..k {
                    for sign in [1i64, -1] {
                        let q = add(p, &self.basis[i].iter().map(|x| x * int(sign as i128)).collect::<Vec<_>>());
                        if best.contains_key(&q) {
                            continue;
                        }
                        let mut m = n.clone();
                        m[i] += sign;
                        next.entry(q).and_modify(|cur| {
                            if m < *cur {
                                *cur = m.clone();
                            }
                        }).or_insert(m);
                    }
                }
            }
            for (q, n) in &next {
                best.insert(q.clone(), n.clone());
            }
            layer = next.into_iter().collect();
            norm += 1;
        }
        Ok(targets.iter().map(|t| best[t].clone()).collect())
    }
}

/// A colored pretiling coding (F, ξ, c) over a position group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PretilingCoding {
    pub f: Vec<ZVec>,
    pub xi: Vec<usize>,
    pub c: Vec<Letter>,
}

impl PretilingCoding {
    /// E(F, ξ, c); an error when the pretiling has overlapping tiles.
    pub fn encode(&self, group: &PositionGroup, ts: &PuncturedTileSet) -> Result<PartialTiling> {
        let tiles = (0..self.f.len()).map(|i| Placed { tile: self.xi[i], pos: group.eta(&self.f[i]), color: Some(self.c[i]) }).collect();
        PartialTiling::new(ts, tiles)
    }

    pub fn is_consistent(&self, group: &PositionGroup, ts: &PuncturedTileSet) -> bool {
        self.encode(group, ts).is_ok()
    }
}

/// C_p: every coding on F_p with ξ_p and c fixed at z₀ and z_s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingFamily {
    pub pattern: usize,
    pub f: Vec<ZVec>,
    pub xi: Vec<usize>,
    /// (index into f, color).
    pub fixed: Vec<(usize, Letter)>,
    pub alphabet_size: usize,
}

impl CodingFamily {
    pub fn count(&self) -> u128 {
        (self.alphabet_size as u128).pow((self.f.len() - self.fixed.len()) as u32)
    }

    /// All members, colors in lexicographic order.
    pub fn codings(&self) -> impl Iterator<Item = PretilingCoding> + '_ {
        let free: Vec<usize> = (0..self.f.len()).filter(|i| !self.fixed.iter().any(|(j, _)| j == i)).collect();
        let total = self.count();
        (0..total).map(move |mut idx| {
            let mut c = vec![0; self.f.len()];
            for &(j, a) in &self.fixed {
                c[j] = a;
            }
            for &i in free.iter().rev() {
                c[i] = (idx % self.alphabet_size as u128) as usize;
                idx /= self.alphabet_size as u128;
            }
            PretilingCoding { f: self.f.clone(), xi: self.xi.clone(), c }
        })
    }
}

/// The families C_p for a nearest-neighbor pattern set over the patch blueprint. Patterns that
/// cannot occur (wrong start state, 𝔱(s) violated or overlapping union) give no family.
pub fn translate_domino_to_pretilings(
    pb: &PatchBlueprint,
    ts: &PuncturedTileSet,
    group: &PositionGroup,
    nn: &PatternSet,
) -> Result<Vec<CodingFamily>> {
    let b = &pb.blueprint;
    let mut out = Vec::new();
    for (pi, p) in nn.patterns.iter().enumerate() {
        let cells = &p.cells;
        let (e, s) = match cells.as_slice() {
            [x, y] if x.0.is_empty() && y.0.len() == 1 => (x, y),
            [y, x] if x.0.is_empty() && y.0.len() == 1 => (x, y),
            _ => return Err(GeomError::NotNearestNeighbor(pi)),
        };
        let (m, a) = (e.1, e.2);
        let (gen, m2, bcol) = (s.0[0], s.1, s.2);
        if b.initial(gen) != m || !b.terminal(gen).contains(&m2) {
            continue;
        }
        let v = &pb.valuations[gen];
        let mut tiles = pb.patches[m].clone();
        tiles.extend(pb.patches[m2].iter().map(|(t, q)| (*t, add(q, v))));
        let tiles = canonical(tiles);
        if tiles.windows(2).any(|w| w[0].1 == w[1].1) || PartialTiling::uncolored(ts, &tiles).is_err() {
            continue;
        }
        let positions: Vec<Vector> = tiles.iter().map(|(_, q)| q.clone()).collect();
        let f = group.preimages(&positions, 64)?;
        let xi = tiles.iter().map(|(t, _)| *t).collect();
        let z0 = positions.iter().position(|q| *q == zero(2)).unwrap();
        let zs = positions.iter().position(|q| q == v).unwrap();
        out.push(CodingFamily { pattern: pi, f, xi, fixed: vec![(z0, a), (zs, bcol)], alphabet_size: nn.alphabet_size() });
    }
    Ok(out)
}

/// Text form: the D-basis header, then one block per family with rows "z tile color", "*" for free colors.
pub fn codings_to_text(group: &PositionGroup, ts: &PuncturedTileSet, alphabet: &[String], families: &[CodingFamily]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "basis {}", group.basis.len());
    for v in &group.basis {
        let _ = writeln!(out, "  {}", show_vector(v));
    }
    for fam in families {
        let _ = writeln!(out, "family pattern={} size={} count={}", fam.pattern, fam.f.len(), fam.count());
        for i in 0..fam.f.len() {
            let z = fam.f[i].iter().map(i64::to_string).collect::<Vec<_>>().join(",");
            let col = fam.fixed.iter().find(|(j, _)| *j == i).map_or("*".to_string(), |(_, a)| alphabet[*a].clone());
            let _ = writeln!(out, "  ({z}) {} {col}", ts.tiles[fam.xi[i]].name);
        }
    }
    out
}

/// A colorable region inside an ambient uncolored tiling.
pub struct Region<'a> {
    pub ambient: &'a PartialTiling,
    /// Ambient tile indices that carry colors.
    pub slots: Vec<usize>,
}

/// Partial colorings of region slots that force an occurrence of some member of F(C): for every
/// coloring of the ambient tiles outside the region a translate of a member matches.
pub fn forced_constraints(
    group: &PositionGroup,
    families: &[CodingFamily],
    region: &Region,
) -> Result<Vec<Vec<(usize, Letter)>>> {
    let slot_of: HashMap<usize, usize> = region.slots.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut out: BTreeSet<Vec<(usize, Letter)>> = BTreeSet::new();
    for fam in families {
        let rel: Vec<Vector> = fam.f.iter().map(|z| group.eta(z)).collect();
        let a = fam.alphabet_size;
        for anchor in &region.ambient.tiles {
            let u = &anchor.pos;
            let mut hit: Vec<usize> = Vec::with_capacity(rel.len());
            for (i, r) in rel.iter().enumerate() {
                match region.ambient.at(&add(r, u)) {
                    Some(j) if region.ambient.tiles[j].tile == fam.xi[i] => hit.push(j),
                    _ => break,
                }
            }
            if hit.len() < rel.len() {
                continue;
            }
            let inside: Vec<usize> = (0..rel.len()).filter(|&i| slot_of.contains_key(&hit[i])).collect();
            if inside.is_empty() {
                continue;
            }
            let outside = rel.len() - inside.len();
            let mut seen: BTreeMap<Vec<Letter>, BTreeSet<Vec<Letter>>> = BTreeMap::new();
            for cd in fam.codings() {
                let inn: Vec<Letter> = inside.iter().map(|&i| cd.c[i]).collect();
                let out: Vec<Letter> = (0..rel.len()).filter(|i| !inside.contains(i)).map(|i| cd.c[i]).collect();
                seen.entry(inn).or_default().insert(out);
            }
            let full = (a as u128).pow(outside as u32);
            let mut triggers: BTreeSet<Vec<Option<Letter>>> = seen
                .into_iter()
                .filter(|(_, outs)| outs.len() as u128 == full)
                .map(|(inn, _)| inn.into_iter().map(Some).collect())
                .collect();
            // drop coordinates the trigger set does not depend on
            for j in 0..inside.len() {
                let free = triggers.iter().all(|t| {
                    (0..a).all(|c| {
                        let mut t2 = t.clone();
                        t2[j] = Some(c);
                        triggers.contains(&t2) || t[j].is_none()
                    })
                });
                if free {
                    triggers = triggers
                        .into_iter()
                        .map(|mut t| {
                            t[j] = None;
                            t
                        })
                        .collect();
                }
            }
            for t in triggers {
                let mut clause: Vec<(usize, Letter)> =
                    t.iter().enumerate().filter_map(|(j, c)| c.map(|c| (slot_of[&hit[inside[j]]], c))).collect();
                clause.sort_unstable();
                out.insert(clause);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Colorings of the region slots avoiding every forced constraint, with a visitor; returns the count.
pub fn count_region_colorings(
    slots: usize,
    alphabet: usize,
    constraints: &[Vec<(usize, Letter)>],
    visit: &mut dyn FnMut(&[Letter]),
) -> usize {
    let mut by_last: Vec<Vec<&Vec<(usize, Letter)>>> = vec![Vec::new(); slots];
    let mut contradiction = false;
    for c in constraints {
        match c.last() {
            Some(&(k, _)) => by_last[k].push(c),
            None => contradiction = true,
        }
    }
    if contradiction {
        return 0;
    }
    fn rec(k: usize, n: usize, a: usize, colors: &mut Vec<Letter>, by_last: &[Vec<&Vec<(usize, Letter)>>], visit: &mut dyn FnMut(&[Letter])) -> usize {
        if k == n {
            visit(colors);
            return 1;
        }
        let mut total = 0;
        for c in 0..a {
            colors[k] = c;
            if by_last[k].iter().any(|cl| cl.iter().all(|&(j, l)| colors[j] == l)) {
                continue;
            }
            total += rec(k + 1, n, a, colors, by_last, visit);
        }
        total
    }
    let mut colors = vec![0; slots];
    rec(0, slots, alphabet, &mut colors, &by_last, visit)
}

/// Colored partial tiling of a window: tile t_w colored by the window at w.
pub fn window_to_tiling(pb: &PatchBlueprint, ts: &PuncturedTileSet, win: &Window) -> Result<PartialTiling> {
    realize(pb, ts, &win.model, Some(&win.colors))
}

/// Window over a partial model colored by the tiles at the valuations of its words.
pub fn tiling_to_window(pb: &PatchBlueprint, t: &PartialTiling, model: Arc<PartialModel>) -> Result<Window> {
    let mut colors = Vec::with_capacity(model.domain.len());
    for (k, w) in model.domain.words().iter().enumerate() {
        if model.states[k].is_none() {
            colors.push(None);
            continue;
        }
        let pos = pb.valuation(w);
        let i = t.at(&pos).ok_or_else(|| GeomError::InsufficientSupport(show_vector(&pos)))?;
        colors.push(Some(t.tiles[i].color.ok_or_else(|| GeomError::InsufficientSupport(show_vector(&pos)))?));
    }
    Ok(Window { model, colors })
}

/// Helper for Q-valued integer points.
pub fn point(x: i64, y: i64) -> Vector {
    vec![Q::from_integer(x as i128), Q::from_integer(y as i128)]
}
