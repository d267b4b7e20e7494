use blueprint_geom::rat::{add, int};
use blueprint_geom::*;
use proptest::prelude::*;
use std::sync::OnceLock;

const KEY_EIGHTHS: [(i128, i128); 16] = [
    (-4, -4), (-1, -4), (0, -3), (1, -4), (4, -4), (4, -1), (5, 0), (4, 1),
    (4, 4), (1, 4), (0, 5), (-1, 4), (-4, 4), (-4, 1), (-3, 0), (-4, -1),
];

fn square(name: &str, puncture: Option<&str>, shift: &str) -> String {
    let p = puncture.map(|p| format!("puncture = \"{p}\"\n")).unwrap_or_default();
    let s: Vec<i64> = shift.split(' ').map(|x| x.parse().unwrap()).collect();
    let vs: Vec<String> = [(-1, -1), (1, -1), (1, 1), (-1, 1)].iter().map(|(x, y)| format!("\"{} {}\"", x + s[0], y + s[1])).collect();
    format!("[[tiles]]\nname = \"{name}\"\nvertices = [{}]\n{p}", vs.join(", "))
}

#[test]
fn keyed_square_radius() {
    let ts = keyed_square();
    let oracle = KEY_EIGHTHS.iter().map(|(x, y)| x * x + y * y).max().unwrap();
    assert_eq!(ts.rho2, q(oracle, 64));
    assert_eq!(ts.rho2, q(1, 2));
    assert_eq!(ts.tiles.len(), 1);
    assert_eq!(ts.tiles[0].shape.vertices().len(), 16);
}

#[test]
fn load_rejects_bad_sets() {
    let at_vertex = format!("dimension = 2\n{}", square("a", Some("1 1"), "0 0"));
    assert!(matches!(load_tileset(&at_vertex), Err(GeomError::Puncture(_))));
    let outside = format!("dimension = 2\n{}", square("a", None, "3 0"));
    assert!(matches!(load_tileset(&outside), Err(GeomError::Puncture(_))));
    let twice = format!("dimension = 2\n{}{}", square("a", None, "0 0"), square("b", Some("1 0"), "1 0"));
    assert!(matches!(load_tileset(&twice), Err(GeomError::DuplicateTile(_, _))));
    let bowtie = "dimension = 2\n[[tiles]]\nname = \"x\"\nvertices = [\"-1 -1\", \"1 1\", \"1 -1\", \"-1 1\"]\n";
    assert!(matches!(load_tileset(bowtie), Err(GeomError::NotSimple(_))));
    assert!(matches!(load_tileset("dimension = 2\n"), Err(GeomError::Parse(_))));
}

#[test]
fn puncture_translates_tile() {
    let ts = load_tileset(&format!("dimension = 2\n{}", square("a", Some("1/2 0"), "0 0"))).unwrap();
    assert_eq!(ts.rho2, q(13, 4));
    let again = load_tileset(&ts.to_toml_string()).unwrap();
    assert_eq!(again.rho2, ts.rho2);
    assert_eq!(again.tiles[0].shape.vertices(), ts.tiles[0].shape.vertices());
}

#[test]
fn boxes_in_three_dimensions() {
    let text = "dimension = 3\n[[tiles]]\nname = \"cube\"\nlo = \"-1/2 -1/2 -1/2\"\nhi = \"1/2 1/2 1/2\"\n";
    let ts = load_tileset(text).unwrap();
    assert_eq!(ts.rho2, q(3, 4));
    assert!(matches!(enumerate_patches(&ts, q(1, 4), PatchBudget::default()), Err(GeomError::Unsupported)));
    let cube = &ts.tiles[0].shape;
    let p = vec![int(0); 3];
    assert!(!cube.overlaps(&p, cube, &[int(1), int(0), int(0)]));
    assert!(cube.overlaps(&p, cube, &[q(1, 2), q(1, 2), int(0)]));
}

#[test]
fn keyed_square_has_one_patch() {
    let ts = keyed_square();
    let ps = enumerate_patches(&ts, ts.rho2, PatchBudget::default()).unwrap();
    assert_eq!(ps.len(), 1);
    // the 3×3 block around the origin meets B_ρ
    let mut expect: Vec<Vector> = (-1..=1).flat_map(|x| (-1..=1).map(move |y| point(x, y))).collect();
    expect.sort();
    let mut got: Vec<Vector> = ps[0].iter().map(|(_, p)| p.clone()).collect();
    got.sort();
    assert_eq!(got, expect);
}

#[test]
fn small_radius_gives_single_tiles() {
    for ts in [keyed_square(), ab_squares()] {
        let ps = enumerate_patches(&ts, q(1, 16), PatchBudget::default()).unwrap();
        assert_eq!(ps.len(), ts.tiles.len());
        assert!(ps.iter().all(|p| p.len() == 1));
    }
}

/// Rows of an A/B tiling are constant and stack freely, so a patch is a choice of type per row
/// meeting B_R. Row j ≥ 1 comes closest at its dent corners, row j ≤ −1 at its bump tip.
fn ab_oracle(r2: Q) -> usize {
    let row_d2 = |j: i128| if j > 0 { q((8 * j - 4).pow(2) + 1, 64) } else { q((8 * -j - 5).pow(2), 64) };
    let rows = 1 + (-10..=10).filter(|&j| j != 0 && row_d2(j) <= r2).count();
    1 << rows
}

#[test]
fn ab_patch_counts_grow() {
    let ts = ab_squares();
    assert_eq!(ts.rho2, q(1, 2));
    let small = enumerate_patches(&ts, q(1, 2), PatchBudget::default()).unwrap();
    assert_eq!(small.len(), ab_oracle(q(1, 2)));
    assert_eq!(small.len(), 8);
    let large = enumerate_patches(&ts, int(2), PatchBudget::default()).unwrap();
    assert_eq!(large.len(), ab_oracle(int(2)));
    assert_eq!(large.len(), 16);
    let a = ts.tile_index("A").unwrap();
    for p in &small {
        // every row constant
        for (t, v) in p {
            for (u, w) in p {
                if v[1] == w[1] {
                    assert_eq!(t, u);
                }
            }
        }
        assert!(p.iter().any(|(t, v)| *v == point(0, 0) && (*t == a || *t == 1 - a)));
    }
}

#[test]
fn patch_cap_is_reported() {
    let ts = ab_squares();
    let budget = PatchBudget { max_nodes: 50, ..PatchBudget::default() };
    match enumerate_patches(&ts, q(1, 2), budget) {
        Err(GeomError::FlcBudget { cap, .. }) => assert_eq!(cap, 50),
        other => panic!("expected cap error, got {other:?}"),
    }
}

#[test]
fn lattice_rejects_overlap() {
    let ts = keyed_square();
    let bad = PartialTiling::new(
        &ts,
        vec![Placed { tile: 0, pos: point(0, 0), color: None }, Placed { tile: 0, pos: vec![q(1, 2), int(0)], color: None }],
    );
    assert!(matches!(bad, Err(GeomError::Overlap(0, 1))));
    let t = PartialTiling::lattice(&ts, &point(1, 0), &point(0, 1), -2..=2, -2..=2, |_, _| 0).unwrap();
    assert_eq!(t.len(), 25);
    assert_eq!(t.patch_at(&ts, &point(0, 0), ts.rho2).len(), 9);
    assert!(t.to_svg(&ts, &[]).starts_with("<svg"));
}

fn keyed_lattice() -> &'static PartialTiling {
    static T: OnceLock<PartialTiling> = OnceLock::new();
    T.get_or_init(|| PartialTiling::lattice(&keyed_square(), &point(1, 0), &point(0, 1), -6..=6, -6..=6, |_, _| 0).unwrap())
}

fn small_q() -> impl Strategy<Value = Q> {
    (-40i128..40, 1i128..9).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn overlap_is_symmetric_and_translation_invariant(
        ax in small_q(), ay in small_q(), bx in small_q(), by in small_q(), tx in small_q(), ty in small_q(),
    ) {
        let ts = ab_squares();
        let (a, b) = (vec![ax, ay], vec![bx, by]);
        let t = vec![tx, ty];
        for (i, j) in [(0, 0), (0, 1), (1, 1)] {
            let s = &ts.tiles[i].shape;
            let u = &ts.tiles[j].shape;
            let base = s.overlaps(&a, u, &b);
            prop_assert_eq!(base, u.overlaps(&b, s, &a));
            prop_assert_eq!(base, s.overlaps(&add(&a, &t), u, &add(&b, &t)));
        }
    }

    #[test]
    fn keyed_lattice_covers_points(x in small_q(), y in small_q()) {
        let ts = keyed_square();
        let t = keyed_lattice();
        let p = vec![x / int(8), y / int(8)];
        let hits = t.tiles_containing(&ts, &p);
        prop_assert!(!hits.is_empty());
        for &i in &hits {
            prop_assert!(rat::dist2(&t.tiles[i].pos, &p) <= ts.rho2);
        }
        // interior points lie in exactly one tile
        if hits.len() == 1 {
            let s = &ts.tiles[0].shape;
            prop_assert_ne!(s.locate(&rat::sub(&p, &t.tiles[hits[0]].pos)), Location::Outside);
        }
    }
}
