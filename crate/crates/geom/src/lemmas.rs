use crate::error::{GeomError, Result};
use crate::rat::{add, ceil_ratio, dist2, int, scale, show_vector, sub, Q};
use crate::tiling::PartialTiling;
use crate::tileset::PuncturedTileSet;

/// Tiles t_0..t_n with x_k = x + (k/n)(y − x) ∈ t_k, n = ⌈‖y − x‖/ρ⌉.
/// Returns indices into the tiling; checks ‖pos(t_k) − x_k‖ ≤ ρ and moves ≤ 3ρ.
pub fn interpolate_path(ts: &PuncturedTileSet, t: &PartialTiling, x: &[Q], y: &[Q]) -> Result<Vec<usize>> {
    if x == y {
        return Err(GeomError::SamePoint);
    }
    let n = ceil_ratio(dist2(x, y), ts.rho2);
    let step = sub(y, x);
    let mut out: Vec<usize> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let xk = add(x, &scale(&step, Q::new(k as i128, n as i128)));
        let &i = t.tiles_containing(ts, &xk).first().ok_or_else(|| GeomError::LeavesSupport(show_vector(&xk)))?;
        if dist2(&t.tiles[i].pos, &xk) > ts.rho2 {
            return Err(GeomError::Bound(format!("tile {i} far from {}", show_vector(&xk))));
        }
        if let Some(&j) = out.last() {
            if dist2(&t.tiles[i].pos, &t.tiles[j].pos) > int(9) * ts.rho2 {
                return Err(GeomError::Bound(format!("move {j} → {i} longer than 3ρ")));
            }
        }
        out.push(i);
    }
    Ok(out)
}

/// A sequence from tile a to tile b, consecutive moves ≤ 3ρ, every tile within Kρ of x.
/// Requires x within Kρ of both positions, K ≥ 2.
pub fn visibility_path(ts: &PuncturedTileSet, t: &PartialTiling, a: usize, b: usize, x: &[Q], k: usize) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(GeomError::Precondition("K ≥ 2".into()));
    }
    let (p, q) = (&t.tiles[a].pos, &t.tiles[b].pos);
    let kr2 = int((k * k) as i128) * ts.rho2;
    if dist2(x, p) > kr2 || dist2(x, q) > kr2 {
        return Err(GeomError::Precondition(format!("{} is not within Kρ of both tiles", show_vector(x))));
    }
    if a == b {
        return Ok(vec![a]);
    }
    let mut out = if dist2(p, q) <= int(9) * ts.rho2 {
        vec![a, b]
    } else {
        let inv = Q::new(1, k as i128);
        let y1 = add(p, &scale(&sub(x, p), inv));
        let z1 = add(q, &scale(&sub(x, q), inv));
        let mut path = vec![a];
        path.extend(interpolate_path(ts, t, &y1, &z1)?);
        path.push(b);
        path
    };
    out.dedup();
    for w in out.windows(2) {
        if dist2(&t.tiles[w[0]].pos, &t.tiles[w[1]].pos) > int(9) * ts.rho2 {
            return Err(GeomError::Bound(format!("move {} → {} longer than 3ρ", w[0], w[1])));
        }
    }
    for &i in &out {
        if dist2(&t.tiles[i].pos, x) > kr2 {
            return Err(GeomError::Bound(format!("tile {i} is farther than Kρ from x")));
        }
    }
    let n = out.len() - 1;
    let bound = 2 + ceil_ratio(dist2(p, q), ts.rho2);
    if n > bound {
        return Err(GeomError::Bound(format!("{n} steps, bound {bound}")));
    }
    Ok(out)
}
