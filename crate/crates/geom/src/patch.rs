use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet};

use num_traits::Zero;

use crate::error::{GeomError, Result};
use crate::rat::{add, cmp_angle, cmp_vec, cross, dist2, dot, int, scale, norm2, sub, zero, Vector, Q};
use crate::shape::Location;
use crate::tiling::{canonical, overlap, Patch};
use crate::tileset::PuncturedTileSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatchBudget {
    pub max_nodes: usize,
    pub max_patches: usize,
}

impl Default for PatchBudget {
    fn default() -> Self {
        PatchBudget { max_nodes: 2_000_000, max_patches: 10_000 }
    }
}

struct Search<'a> {
    ts: &'a PuncturedTileSet,
    r2: Q,
    /// Once no frontier vertex lies within this squared radius, B_R is covered.
    settled2: Q,
    /// Frontier vertices within this squared radius must be closable.
    reach2: Q,
    budget: PatchBudget,
    nodes: usize,
    found: BTreeSet<Patch>,
    closed: HashSet<Vector>,
    log: Vec<Vector>,
    /// Overlap by tile pair and relative offset.
    clash: RefCell<HashMap<(usize, usize, Vector), bool>>,
}

/// A boundary point of the placed tiles with a direction no placed tile covers.
fn frontier_at(ts: &PuncturedTileSet, placed: &[(usize, Vector)], v: &[Q]) -> Option<Vector> {
    let near: Vec<&(usize, Vector)> = placed.iter().filter(|(_, p)| dist2(p, v) <= ts.rho2).collect();
    let mut dirs: Vec<Vector> = Vec::new();
    for (t, p) in &near {
        let shape = &ts.tiles[*t].shape;
        if shape.locate(&sub(v, p)) == Location::Inside {
            return None;
        }
        if let Some(ds) = shape.boundary_directions(p, v) {
            dirs.extend(ds);
        }
    }
    dirs.sort_by(|a, b| cmp_angle(a, b));
    dirs.dedup_by(|a, b| cross(a, b).is_zero() && dot(a, b) > Q::zero());
    let n = dirs.len();
    for k in 0..n {
        let d1 = &dirs[k];
        // just past d1, counterclockwise
        let probe = add(&scale(d1, int(1009)), &vec![-d1[1], d1[0]]);
        if !near.iter().any(|(t, p)| ts.tiles[*t].shape.covers_direction(p, v, &probe)) {
            return Some(probe);
        }
    }
    None
}

impl Search<'_> {
    /// Open frontier vertices within the squared radius, nearest first.
    fn frontier(&mut self, placed: &[(usize, Vector)], within2: Q) -> Vec<(Vector, Vector)> {
        let mut verts: Vec<Vector> = placed
            .iter()
            .flat_map(|(t, p)| self.ts.tiles[*t].shape.vertices().into_iter().map(move |v| add(&v, p)))
            .filter(|v| norm2(v) <= within2)
            .collect();
        verts.sort_by(|a, b| norm2(a).cmp(&norm2(b)).then_with(|| cmp_vec(a, b)));
        verts.dedup();
        let mut out = Vec::new();
        for v in verts {
            if self.closed.contains(&v) {
                continue;
            }
            match frontier_at(self.ts, placed, &v) {
                Some(d) => out.push((v, d)),
                None => {
                    // coverage only grows along a branch
                    self.closed.insert(v.clone());
                    self.log.push(v);
                }
            }
        }
        out
    }

    /// The open vertex with fewest placements (nearest on ties, forced moves first) and its placements.
    fn most_constrained(&self, placed: &[(usize, Vector)], open: &[(Vector, Vector)]) -> Option<Vec<(usize, Vector)>> {
        let mut best: Option<Vec<(usize, Vector)>> = None;
        for (v, d) in open {
            let c = self.candidates(placed, v, d);
            let n = c.len();
            if best.as_ref().map_or(true, |b| n < b.len()) {
                best = Some(c);
                if n <= 1 {
                    break;
                }
            }
        }
        best
    }

    fn overlaps(&self, a: (usize, &[Q]), b: (usize, &[Q])) -> bool {
        if dist2(a.1, b.1) >= int(4) * self.ts.rho2 {
            return false;
        }
        let key = (a.0, b.0, sub(b.1, a.1));
        if let Some(&x) = self.clash.borrow().get(&key) {
            return x;
        }
        let x = overlap(self.ts, a, b);
        self.clash.borrow_mut().insert(key, x);
        x
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(GeomError::FlcBudget { what: "search node", cap: self.budget.max_nodes });
        }
        Ok(())
    }

    fn candidates(&self, placed: &[(usize, Vector)], v: &[Q], probe: &[Q]) -> Vec<(usize, Vector)> {
        let mut out = Vec::new();
        for (t, tile) in self.ts.tiles.iter().enumerate() {
            for q in tile.shape.vertices() {
                let pos = sub(v, &q);
                if tile.shape.covers_direction(&pos, v, probe) && !placed.iter().any(|(u, p)| self.overlaps((t, &pos), (*u, p))) {
                    out.push((t, pos));
                }
            }
        }
        out
    }

    fn undo(&mut self, mark: usize) {
        for v in self.log.drain(mark..) {
            self.closed.remove(&v);
        }
    }

    fn patch(&self, placed: &[(usize, Vector)]) -> Patch {
        canonical(placed.iter().filter(|(t, p)| self.ts.tiles[*t].shape.dist2_from(p, &zero(2)) <= self.r2).cloned().collect())
    }

    /// Exhaustive while the patch is undetermined.
    fn run(&mut self, placed: &mut Vec<(usize, Vector)>) -> Result<()> {
        self.tick()?;
        let mark = self.log.len();
        let open = self.frontier(placed, self.settled2);
        if open.is_empty() {
            let patch = self.patch(placed);
            if !self.found.contains(&patch) && self.extends(placed)? {
                self.found.insert(patch);
                if self.found.len() > self.budget.max_patches {
                    return Err(GeomError::FlcBudget { what: "patch", cap: self.budget.max_patches });
                }
            }
        } else {
            for c in self.most_constrained(placed, &open).unwrap() {
                placed.push(c);
                self.run(placed)?;
                placed.pop();
            }
        }
        self.undo(mark);
        Ok(())
    }

    /// Whether some extension closes every frontier vertex within the reach.
    fn extends(&mut self, placed: &mut Vec<(usize, Vector)>) -> Result<bool> {
        self.tick()?;
        let mark = self.log.len();
        let open = self.frontier(placed, self.reach2);
        let mut ok = open.is_empty();
        if !ok {
            for c in self.most_constrained(placed, &open).unwrap() {
                placed.push(c);
                ok = self.extends(placed)?;
                placed.pop();
                if ok {
                    break;
                }
            }
        }
        self.undo(mark);
        Ok(ok)
    }
}

/// All patches T ⊓ B_R of punctured tilings T (a tile at the origin), R² = r2, in canonical order.
/// Placements are tried with a tile vertex on the frontier vertex being closed. Branching is
/// exhaustive until B_R is covered; a patch is then kept if one extension closes every frontier
/// vertex within R + 3ρ.
pub fn enumerate_patches(ts: &PuncturedTileSet, r2: Q, budget: PatchBudget) -> Result<Vec<Patch>> {
    if !ts.is_planar() {
        return Err(GeomError::Unsupported);
    }
    let mut search = Search {
        ts,
        r2,
        settled2: int(2) * r2 + int(8) * ts.rho2,
        reach2: int(2) * r2 + int(18) * ts.rho2,
        budget,
        nodes: 0,
        found: BTreeSet::new(),
        closed: HashSet::new(),
        log: Vec::new(),
        clash: RefCell::new(HashMap::new()),
    };
    for t in 0..ts.tiles.len() {
        let mut placed = vec![(t, zero(2))];
        search.run(&mut placed)?;
    }
    Ok(search.found.into_iter().collect())
}
