use std::collections::HashMap;
use std::fmt::Write;

use crate::error::{GeomError, Result};
use crate::rat::{add, cmp_vec, decimal, dist2, int, show_vector, sub, Vector, Q};
use crate::shape::Shape;
use crate::tileset::PuncturedTileSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placed {
    pub tile: usize,
    pub pos: Vector,
    pub color: Option<usize>,
}

/// Tiles with their positions, as a set: (pos, tile) in lexicographic order.
pub type Patch = Vec<(usize, Vector)>;

pub fn canonical(mut p: Patch) -> Patch {
    p.sort_by(|a, b| cmp_vec(&a.1, &b.1).then(a.0.cmp(&b.0)));
    p.dedup();
    p
}

/// A finite collection of translated tiles with pairwise disjoint interiors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialTiling {
    pub tiles: Vec<Placed>,
    at: HashMap<Vector, usize>,
}

pub fn overlap(ts: &PuncturedTileSet, a: (usize, &[Q]), b: (usize, &[Q])) -> bool {
    if dist2(a.1, b.1) >= int(4) * ts.rho2 {
        return false;
    }
    ts.tiles[a.0].shape.overlaps(a.1, &ts.tiles[b.0].shape, b.1)
}

impl PartialTiling {
    pub fn new(ts: &PuncturedTileSet, tiles: Vec<Placed>) -> Result<Self> {
        for i in 0..tiles.len() {
            for j in i + 1..tiles.len() {
                if overlap(ts, (tiles[i].tile, &tiles[i].pos), (tiles[j].tile, &tiles[j].pos)) {
                    return Err(GeomError::Overlap(i, j));
                }
            }
        }
        let at = tiles.iter().enumerate().map(|(i, t)| (t.pos.clone(), i)).collect();
        Ok(PartialTiling { tiles, at })
    }

    pub fn uncolored(ts: &PuncturedTileSet, patch: &[(usize, Vector)]) -> Result<Self> {
        Self::new(ts, patch.iter().map(|(t, p)| Placed { tile: *t, pos: p.clone(), color: None }).collect())
    }

    /// Tiles pick(i, j) at i·a + j·b for (i, j) in the given ranges.
    pub fn lattice(
        ts: &PuncturedTileSet,
        a: &[Q],
        b: &[Q],
        is: std::ops::RangeInclusive<i64>,
        js: std::ops::RangeInclusive<i64>,
        pick: impl Fn(i64, i64) -> usize,
    ) -> Result<Self> {
        let mut tiles = Vec::new();
        for i in is {
            for j in js.clone() {
                let pos = add(&a.iter().map(|x| x * int(i as i128)).collect::<Vec<_>>(), &b.iter().map(|x| x * int(j as i128)).collect::<Vec<_>>());
                tiles.push(Placed { tile: pick(i, j), pos, color: None });
            }
        }
        Self::new(ts, tiles)
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Index of the tile at a position.
    pub fn at(&self, pos: &[Q]) -> Option<usize> {
        self.at.get(pos).copied()
    }

    pub fn contains(&self, tile: usize, pos: &[Q]) -> bool {
        self.at(pos).is_some_and(|i| self.tiles[i].tile == tile)
    }

    /// (T − c) ⊓ B_R as a canonical patch, R² = r2.
    pub fn patch_at(&self, ts: &PuncturedTileSet, c: &[Q], r2: Q) -> Patch {
        let reach = int(2) * r2 + int(2) * ts.rho2;
        canonical(
            self.tiles
                .iter()
                .filter(|t| dist2(&t.pos, c) <= reach && ts.tiles[t.tile].shape.dist2_from(&t.pos, c) <= r2)
                .map(|t| (t.tile, sub(&t.pos, c)))
                .collect(),
        )
    }

    /// Tiles containing the point x, in order of distance of their positions to x.
    pub fn tiles_containing(&self, ts: &PuncturedTileSet, x: &[Q]) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.tiles.len())
            .filter(|&i| {
                let t = &self.tiles[i];
                dist2(&t.pos, x) <= ts.rho2 && ts.tiles[t.tile].shape.dist2_from(&t.pos, x) == Q::from_integer(0)
            })
            .collect();
        out.sort_by(|&i, &j| dist2(&self.tiles[i].pos, x).cmp(&dist2(&self.tiles[j].pos, x)).then(i.cmp(&j)));
        out
    }

    /// Every tile of self is a tile of other.
    pub fn is_subset_of(&self, other: &PartialTiling) -> bool {
        self.tiles.iter().all(|t| other.contains(t.tile, &t.pos))
    }

    pub fn to_text(&self, ts: &PuncturedTileSet) -> String {
        let mut out = String::new();
        for t in &self.tiles {
            let _ = write!(out, "{} {}", ts.tiles[t.tile].name, show_vector(&t.pos));
            if let Some(c) = t.color {
                let _ = write!(out, " #{c}");
            }
            out.push('\n');
        }
        out
    }

    /// SVG rendering with y pointing up; colors index a fixed palette.
    pub fn to_svg(&self, ts: &PuncturedTileSet, alphabet: &[String]) -> String {
        const PALETTE: [&str; 6] = ["#f4f1de", "#e07a5f", "#3d405b", "#81b29a", "#f2cc8f", "#9c89b8"];
        let scale = int(40);
        let mut out = String::new();
        let (mut lo, mut hi) = (vec![int(0), int(0)], vec![int(0), int(0)]);
        for t in &self.tiles {
            for v in ts.tiles[t.tile].shape.vertices() {
                let p = add(&v, &t.pos);
                for k in 0..2 {
                    lo[k] = lo[k].min(p[k]);
                    hi[k] = hi[k].max(p[k]);
                }
            }
        }
        let m = int(1);
        let (w, h) = ((hi[0] - lo[0] + m + m) * scale, (hi[1] - lo[1] + m + m) * scale);
        let _ = writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">", decimal(&w), decimal(&h));
        let px = |p: &[Q]| ((p[0] - lo[0] + m) * scale, (hi[1] - p[1] + m) * scale);
        for t in &self.tiles {
            let Shape::Polygon { vertices, .. } = &ts.tiles[t.tile].shape else { continue };
            let mut d = String::new();
            for (k, v) in vertices.iter().enumerate() {
                let (x, y) = px(&add(v, &t.pos));
                let _ = write!(d, "{}{} {} ", if k == 0 { "M" } else { "L" }, decimal(&x), decimal(&y));
            }
            d.push('Z');
            let fill = t.color.map_or("#ffffff", |c| PALETTE[c % PALETTE.len()]);
            let title = match t.color {
                Some(c) => format!("{} {}", ts.tiles[t.tile].name, alphabet.get(c).cloned().unwrap_or_else(|| c.to_string())),
                None => ts.tiles[t.tile].name.clone(),
            };
            let _ = writeln!(out, "  <path d=\"{d}\" fill=\"{fill}\" stroke=\"#222\" stroke-width=\"1\"><title>{title}</title></path>");
            let (x, y) = px(&t.pos);
            let _ = writeln!(out, "  <circle cx=\"{}\" cy=\"{}\" r=\"2\" fill=\"#222\"/>", decimal(&x), decimal(&y));
        }
        out.push_str("</svg>\n");
        out
    }
}
