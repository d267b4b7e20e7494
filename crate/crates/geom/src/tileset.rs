use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::rat::{int, parse_vector, show_vector, sub, Vector, Q};
use crate::shape::{is_simple, signed_area2, triangulate, Location, Shape};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    pub name: String,
    pub shape: Shape,
}

/// A finite set of punctured tiles: each contains the origin in its interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuncturedTileSet {
    pub dim: usize,
    pub tiles: Vec<Tile>,
    /// ρ² = max squared vertex norm.
    pub rho2: Q,
}

#[derive(Serialize, Deserialize)]
struct Doc {
    #[serde(default = "two")]
    dimension: usize,
    tiles: Vec<TileDoc>,
}

fn two() -> usize {
    2
}

#[derive(Serialize, Deserialize)]
struct TileDoc {
    name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lo: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hi: Option<String>,
    /// Coordinates of the puncture; the tile is translated so that it sits at the origin.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    puncture: Option<String>,
}

fn same_up_to_translation(a: &Shape, b: &Shape) -> bool {
    match (a, b) {
        (Shape::Polygon { vertices: va, .. }, Shape::Polygon { vertices: vb, .. }) => {
            if va.len() != vb.len() {
                return false;
            }
            let n = va.len();
            (0..n).any(|k| {
                let off = sub(&vb[k], &va[0]);
                (0..n).all(|i| sub(&vb[(k + i) % n], &va[i]) == off)
            })
        }
        (Shape::Box { lo: la, hi: ha }, Shape::Box { lo: lb, hi: hb }) => sub(ha, la) == sub(hb, lb),
        _ => false,
    }
}

pub fn polygon(name: &str, mut vertices: Vec<Vector>) -> Result<Shape> {
    if vertices.iter().any(|v| v.len() != 2) {
        return Err(GeomError::BadTile(name.into(), "polygon vertices need two coordinates".into()));
    }
    if !is_simple(&vertices) {
        return Err(GeomError::NotSimple(name.into()));
    }
    if signed_area2(&vertices) < Q::from_integer(0) {
        vertices.reverse();
    }
    let triangles = triangulate(&vertices).ok_or_else(|| GeomError::NotSimple(name.into()))?;
    Ok(Shape::Polygon { vertices, triangles })
}

impl PuncturedTileSet {
    pub fn new(dim: usize, tiles: Vec<Tile>) -> Result<Self> {
        if tiles.is_empty() {
            return Err(GeomError::Parse("no tiles".into()));
        }
        for t in &tiles {
            if t.shape.dim() != dim {
                return Err(GeomError::BadTile(t.name.clone(), format!("dimension differs from {dim}")));
            }
            if t.shape.locate(&vec![Q::from_integer(0); dim]) != Location::Inside {
                return Err(GeomError::Puncture(t.name.clone()));
            }
        }
        for i in 0..tiles.len() {
            for j in i + 1..tiles.len() {
                if same_up_to_translation(&tiles[i].shape, &tiles[j].shape) {
                    return Err(GeomError::DuplicateTile(tiles[i].name.clone(), tiles[j].name.clone()));
                }
            }
        }
        let rho2 = tiles.iter().map(|t| t.shape.radius2()).max().unwrap();
        Ok(PuncturedTileSet { dim, tiles, rho2 })
    }

    pub fn is_planar(&self) -> bool {
        self.dim == 2
    }

    pub fn tile_index(&self, name: &str) -> Option<usize> {
        self.tiles.iter().position(|t| t.name == name)
    }

    pub fn to_toml_string(&self) -> String {
        let tiles = self
            .tiles
            .iter()
            .map(|t| match &t.shape {
                Shape::Polygon { vertices, .. } => TileDoc {
                    name: t.name.clone(),
                    vertices: vertices.iter().map(|v| show_vector(v)).collect(),
                    lo: None,
                    hi: None,
                    puncture: None,
                },
                Shape::Box { lo, hi } => TileDoc {
                    name: t.name.clone(),
                    vertices: Vec::new(),
                    lo: Some(show_vector(lo)),
                    hi: Some(show_vector(hi)),
                    puncture: None,
                },
            })
            .collect();
        toml::to_string(&Doc { dimension: self.dim, tiles }).expect("tile set serializes")
    }
}

/// Parses a tile-set file. Boxes in the plane become polygons.
pub fn load_tileset(text: &str) -> Result<PuncturedTileSet> {
    let doc: Doc = toml::from_str(text).map_err(|e| GeomError::Parse(e.to_string()))?;
    let d = doc.dimension;
    let mut tiles = Vec::new();
    for t in doc.tiles {
        let punct = match &t.puncture {
            Some(p) => parse_vector(p)?,
            None => vec![int(0); d],
        };
        if punct.len() != d {
            return Err(GeomError::BadTile(t.name, "puncture dimension".into()));
        }
        let shape = match (t.vertices.is_empty(), &t.lo, &t.hi) {
            (false, None, None) => {
                if d != 2 {
                    return Err(GeomError::BadTile(t.name, "polygons need dimension 2".into()));
                }
                let vs = t.vertices.iter().map(|v| parse_vector(v).map(|v| sub(&v, &punct))).collect::<Result<Vec<_>>>()?;
                polygon(&t.name, vs)?
            }
            (true, Some(lo), Some(hi)) => {
                let (lo, hi) = (sub(&parse_vector(lo)?, &punct), sub(&parse_vector(hi)?, &punct));
                if lo.len() != d || hi.len() != d || lo.iter().zip(&hi).any(|(l, h)| l >= h) {
                    return Err(GeomError::BadTile(t.name, "box corners".into()));
                }
                if d == 2 {
                    let vs = vec![vec![lo[0], lo[1]], vec![hi[0], lo[1]], vec![hi[0], hi[1]], vec![lo[0], hi[1]]];
                    polygon(&t.name, vs)?
                } else {
                    Shape::Box { lo, hi }
                }
            }
            _ => return Err(GeomError::BadTile(t.name, "give either vertices or lo/hi".into())),
        };
        tiles.push(Tile { name: t.name, shape });
    }
    PuncturedTileSet::new(d, tiles)
}

pub fn keyed_square() -> PuncturedTileSet {
    load_tileset(include_str!("../../../data/keyed_square.tiles")).expect("built-in tile set")
}

pub fn ab_squares() -> PuncturedTileSet {
    load_tileset(include_str!("../../../data/ab.tiles")).expect("built-in tile set")
}
