use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::rat::{add, cross, dist2, dot, norm2, scale, sub, Vector, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    /// On the boundary at vertex `i`.
    Vertex(usize),
    /// On the open edge from vertex `i` to vertex `i + 1`.
    Edge(usize),
    Outside,
}

/// A closed tile shape centred on its puncture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// Counterclockwise simple polygon with an exact triangulation.
    Polygon { vertices: Vec<Vector>, triangles: Vec<[Vector; 3]> },
    /// Axis-aligned box.
    Box { lo: Vector, hi: Vector },
}

fn on_segment(p: &[Q], a: &[Q], b: &[Q]) -> bool {
    cross(&sub(b, a), &sub(p, a)).is_zero() && dot(&sub(p, a), &sub(p, b)) <= Q::zero()
}

fn segments_meet(a: &[Q], b: &[Q], c: &[Q], d: &[Q]) -> bool {
    let o = |p: &[Q], q: &[Q], r: &[Q]| cross(&sub(q, p), &sub(r, p)).signum();
    let (o1, o2, o3, o4) = (o(a, b, c), o(a, b, d), o(c, d, a), o(c, d, b));
    if o1 * o2 < Q::zero() && o3 * o4 < Q::zero() {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

pub fn signed_area2(vs: &[Vector]) -> Q {
    let n = vs.len();
    (0..n).fold(Q::zero(), |acc, i| acc + cross(&vs[i], &vs[(i + 1) % n]))
}

/// Simple polygon test: no repeated vertices, nonadjacent edges disjoint, adjacent edges
/// meeting only at their shared vertex, nonzero area.
pub fn is_simple(vs: &[Vector]) -> bool {
    let n = vs.len();
    if n < 3 || signed_area2(vs).is_zero() {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if vs[i] == vs[j] {
                return false;
            }
        }
    }
    for i in 0..n {
        let (a, b) = (&vs[i], &vs[(i + 1) % n]);
        for j in i + 1..n {
            let (c, d) = (&vs[j], &vs[(j + 1) % n]);
            if j == i + 1 {
                // shared vertex b == c: edges may not fold back over each other
                if on_segment(d, a, b) || on_segment(a, c, d) {
                    return false;
                }
            } else if (j + 1) % n == i {
                if on_segment(c, a, b) || on_segment(b, c, d) {
                    return false;
                }
            } else if segments_meet(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn in_triangle_closed(p: &[Q], t: &[Vector; 3]) -> bool {
    (0..3).all(|k| cross(&sub(&t[(k + 1) % 3], &t[k]), &sub(p, &t[k])) >= Q::zero())
}

/// Ear clipping of a counterclockwise simple polygon.
pub fn triangulate(vs: &[Vector]) -> Option<Vec<[Vector; 3]>> {
    let mut poly: Vec<Vector> = Vec::new();
    let n = vs.len();
    for i in 0..n {
        let (p, c, nx) = (&vs[(i + n - 1) % n], &vs[i], &vs[(i + 1) % n]);
        if !cross(&sub(c, p), &sub(nx, c)).is_zero() {
            poly.push(c.clone());
        }
    }
    let mut out = Vec::new();
    while poly.len() > 3 {
        let m = poly.len();
        let ear = (0..m).find(|&i| {
            let (p, c, nx) = (&poly[(i + m - 1) % m], &poly[i], &poly[(i + 1) % m]);
            if cross(&sub(c, p), &sub(nx, c)) <= Q::zero() {
                return false;
            }
            let tri = [p.clone(), c.clone(), nx.clone()];
            (0..m).filter(|&k| k != i && k != (i + 1) % m && k != (i + m - 1) % m).all(|k| !in_triangle_closed(&poly[k], &tri))
        })?;
        let (p, c, nx) = (poly[(ear + m - 1) % m].clone(), poly[ear].clone(), poly[(ear + 1) % m].clone());
        out.push([p, c, nx]);
        poly.remove(ear);
        // a clipped ear can leave a straight vertex behind
        let m = poly.len();
        if let Some(i) = (0..m).find(|&i| cross(&sub(&poly[i], &poly[(i + m - 1) % m]), &sub(&poly[(i + 1) % m], &poly[i])).is_zero()) {
            if m > 3 {
                poly.remove(i);
            }
        }
    }
    if poly.len() == 3 {
        out.push([poly[0].clone(), poly[1].clone(), poly[2].clone()]);
    }
    Some(out)
}

/// Location of a point relative to a counterclockwise polygon.
pub fn locate_in_polygon(vs: &[Vector], p: &[Q]) -> Location {
    let n = vs.len();
    for i in 0..n {
        if vs[i].as_slice() == p {
            return Location::Vertex(i);
        }
    }
    for i in 0..n {
        if on_segment(p, &vs[i], &vs[(i + 1) % n]) {
            return Location::Edge(i);
        }
    }
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (&vs[i], &vs[(i + 1) % n]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            // x-coordinate of the crossing compared with p
            let t = (p[1] - a[1]) / (b[1] - a[1]);
            let x = a[0] + t * (b[0] - a[0]);
            if x > p[0] {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

pub fn closest_on_segment(c: &[Q], a: &[Q], b: &[Q]) -> Vector {
    let ab = sub(b, a);
    let l = norm2(&ab);
    if l.is_zero() {
        return a.to_vec();
    }
    let t = (dot(&sub(c, a), &ab) / l).max(Q::zero()).min(Q::from_integer(1));
    add(a, &scale(&ab, t))
}

fn closest_on_triangle(c: &[Q], t: &[Vector; 3]) -> Vector {
    if in_triangle_closed(c, t) {
        return c.to_vec();
    }
    (0..3)
        .map(|k| closest_on_segment(c, &t[k], &t[(k + 1) % 3]))
        .min_by(|x, y| dist2(x, c).cmp(&dist2(y, c)))
        .unwrap()
}

/// The part of a triangle on the line {x : x·n = h}, as a segment.
fn triangle_on_line(t: &[Vector; 3], n: &[Q], h: Q) -> Option<(Vector, Vector)> {
    let s: Vec<Q> = t.iter().map(|v| dot(v, n) - h).collect();
    let mut pts: Vec<Vector> = Vec::new();
    for k in 0..3 {
        let (a, b) = (&t[k], &t[(k + 1) % 3]);
        let (sa, sb) = (s[k], s[(k + 1) % 3]);
        if sa.is_zero() {
            pts.push(a.clone());
        }
        if (sa.is_positive() && sb.is_negative()) || (sa.is_negative() && sb.is_positive()) {
            let r = sa / (sa - sb);
            pts.push(add(a, &scale(&sub(b, a), r)));
        }
    }
    if pts.is_empty() {
        return None;
    }
    let dir = vec![-n[1], n[0]];
    let lo = pts.iter().min_by(|x, y| dot(x, &dir).cmp(&dot(y, &dir))).unwrap().clone();
    let hi = pts.iter().max_by(|x, y| dot(x, &dir).cmp(&dot(y, &dir))).unwrap().clone();
    Some((lo, hi))
}

/// min over the triangle of max(‖x−c1‖², ‖x−c2‖²).
fn lens_value(t: &[Vector; 3], c1: &[Q], c2: &[Q]) -> Q {
    let f1 = |x: &[Q]| dist2(x, c1);
    let f2 = |x: &[Q]| dist2(x, c2);
    let mut best: Option<Q> = None;
    let mut offer = |v: Q| best = Some(best.map_or(v, |b: Q| b.min(v)));
    let x1 = closest_on_triangle(c1, t);
    if f1(&x1) >= f2(&x1) {
        offer(f1(&x1));
    }
    let x2 = closest_on_triangle(c2, t);
    if f2(&x2) >= f1(&x2) {
        offer(f2(&x2));
    }
    let n = sub(c2, c1);
    let h = (norm2(c2) - norm2(c1)) / Q::from_integer(2);
    if let Some((a, b)) = triangle_on_line(t, &n, h) {
        let x3 = closest_on_segment(c1, &a, &b);
        offer(f1(&x3));
    }
    best.expect("a minimiser is always among the candidates")
}

fn project(t: &[Vector; 3], axis: &[Q]) -> (Q, Q) {
    let v: Vec<Q> = t.iter().map(|p| dot(p, axis)).collect();
    (*v.iter().min().unwrap(), *v.iter().max().unwrap())
}

fn triangles_overlap(a: &[Vector; 3], b: &[Vector; 3]) -> bool {
    for k in 0..2 {
        let lo = |t: &[Vector; 3]| t.iter().map(|v| v[k]).min().unwrap();
        let hi = |t: &[Vector; 3]| t.iter().map(|v| v[k]).max().unwrap();
        if hi(a) <= lo(b) || hi(b) <= lo(a) {
            return false;
        }
    }
    for t in [a, b] {
        for k in 0..3 {
            let e = sub(&t[(k + 1) % 3], &t[k]);
            let axis = vec![-e[1], e[0]];
            let (amin, amax) = project(a, &axis);
            let (bmin, bmax) = project(b, &axis);
            if amax <= bmin || bmax <= amin {
                return false;
            }
        }
    }
    true
}

fn shift_tri(t: &[Vector; 3], p: &[Q]) -> [Vector; 3] {
    [add(&t[0], p), add(&t[1], p), add(&t[2], p)]
}

impl Shape {
    pub fn dim(&self) -> usize {
        match self {
            Shape::Polygon { .. } => 2,
            Shape::Box { lo, .. } => lo.len(),
        }
    }

    pub fn vertices(&self) -> Vec<Vector> {
        match self {
            Shape::Polygon { vertices, .. } => vertices.clone(),
            Shape::Box { lo, hi } => {
                let d = lo.len();
                (0..1usize << d).map(|m| (0..d).map(|k| if m >> k & 1 == 1 { hi[k] } else { lo[k] }).collect()).collect()
            }
        }
    }

    /// max ‖vertex‖²; the tile lies in the closed ball of that radius.
    pub fn radius2(&self) -> Q {
        self.vertices().iter().map(|v| norm2(v)).max().unwrap_or_else(Q::zero)
    }

    /// Location of a point of the untranslated shape.
    pub fn locate(&self, p: &[Q]) -> Location {
        match self {
            Shape::Polygon { vertices, .. } => locate_in_polygon(vertices, p),
            Shape::Box { lo, hi } => {
                if p.iter().zip(lo.iter().zip(hi)).any(|(x, (l, h))| x < l || x > h) {
                    Location::Outside
                } else if p.iter().zip(lo.iter().zip(hi)).all(|(x, (l, h))| x > l && x < h) {
                    Location::Inside
                } else {
                    Location::Edge(0)
                }
            }
        }
    }

    /// Interiors of self + p and other + q meet.
    pub fn overlaps(&self, p: &[Q], other: &Shape, q: &[Q]) -> bool {
        match (self, other) {
            (Shape::Polygon { triangles: ta, .. }, Shape::Polygon { triangles: tb, .. }) => {
                let a: Vec<_> = ta.iter().map(|t| shift_tri(t, p)).collect();
                let b: Vec<_> = tb.iter().map(|t| shift_tri(t, q)).collect();
                a.iter().any(|x| b.iter().any(|y| triangles_overlap(x, y)))
            }
            (Shape::Box { lo: l1, hi: h1 }, Shape::Box { lo: l2, hi: h2 }) => (0..l1.len())
                .all(|k| l1[k] + p[k] < h2[k] + q[k] && l2[k] + q[k] < h1[k] + p[k]),
            _ => true,
        }
    }

    /// Squared distance from c to the closed shape translated by p.
    pub fn dist2_from(&self, p: &[Q], c: &[Q]) -> Q {
        let local = sub(c, p);
        match self {
            Shape::Polygon { triangles, .. } => {
                triangles.iter().map(|t| dist2(&closest_on_triangle(&local, t), &local)).min().unwrap()
            }
            Shape::Box { lo, hi } => {
                local.iter().zip(lo.iter().zip(hi)).fold(Q::zero(), |acc, (x, (l, h))| {
                    let d = if x < l { l - x } else if x > h { x - h } else { Q::zero() };
                    acc + d * d
                })
            }
        }
    }

    /// Does the closed shape at p meet B_R(c1) ∩ B_R(c2), R² = r2? Polygons only.
    pub fn meets_lens(&self, p: &[Q], c1: &[Q], c2: &[Q], r2: Q) -> bool {
        let (l1, l2) = (sub(c1, p), sub(c2, p));
        match self {
            Shape::Polygon { triangles, .. } => triangles.iter().any(|t| lens_value(t, &l1, &l2) <= r2),
            Shape::Box { .. } => self.dist2_from(p, c1) <= r2 && self.dist2_from(p, c2) <= r2,
        }
    }

    /// Does the shape at p cover the directions just past `v` along `d`? Polygons only.
    pub fn covers_direction(&self, p: &[Q], v: &[Q], d: &[Q]) -> bool {
        let Shape::Polygon { vertices, .. } = self else { return false };
        let local = sub(v, p);
        let n = vertices.len();
        match locate_in_polygon(vertices, &local) {
            Location::Inside => true,
            Location::Outside => false,
            Location::Edge(i) => cross(&sub(&vertices[(i + 1) % n], &vertices[i]), d).is_positive(),
            Location::Vertex(i) => {
                let out = sub(&vertices[(i + 1) % n], &vertices[i]);
                let inn = sub(&vertices[(i + n - 1) % n], &vertices[i]);
                let turn = cross(&out, &inn);
                match turn.cmp(&Q::zero()) {
                    Ordering::Greater => cross(&out, d).is_positive() && cross(d, &inn).is_positive(),
                    Ordering::Less => !(cross(&inn, d) >= Q::zero() && cross(d, &out) >= Q::zero()),
                    Ordering::Equal => cross(&out, d).is_positive(),
                }
            }
        }
    }

    /// Directions of the boundary leaving `v`, when v lies on the boundary of the shape at p.
    pub fn boundary_directions(&self, p: &[Q], v: &[Q]) -> Option<Vec<Vector>> {
        let Shape::Polygon { vertices, .. } = self else { return None };
        let local = sub(v, p);
        let n = vertices.len();
        match locate_in_polygon(vertices, &local) {
            Location::Vertex(i) => Some(vec![sub(&vertices[(i + 1) % n], &local), sub(&vertices[(i + n - 1) % n], &local)]),
            Location::Edge(i) => Some(vec![sub(&vertices[(i + 1) % n], &local), sub(&vertices[i], &local)]),
            Location::Inside => Some(Vec::new()),
            Location::Outside => None,
        }
    }
}
