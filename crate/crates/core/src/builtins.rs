//! Blueprints used throughout the examples and tests. The sources live in `data/`.

use crate::blueprint::Blueprint;

pub const Z: &str = include_str!("../../../data/z.bp");
pub const Z2: &str = include_str!("../../../data/z2.bp");
pub const FREE1: &str = include_str!("../../../data/free1.bp");
pub const TREE12: &str = include_str!("../../../data/tree12.bp");
pub const TABLE3: &str = include_str!("../../../data/table3.bp");
pub const HYPERBOLIC: &str = include_str!("../../../data/hyperbolic.bp");

fn load(src: &str) -> Blueprint {
    Blueprint::parse(src).expect("built-in blueprint is valid")
}

pub fn z() -> Blueprint {
    load(Z)
}

pub fn z2() -> Blueprint {
    load(Z2)
}

pub fn free1() -> Blueprint {
    load(FREE1)
}

pub fn tree12() -> Blueprint {
    load(TREE12)
}

pub fn table3() -> Blueprint {
    load(TABLE3)
}

pub fn hyperbolic() -> Blueprint {
    load(HYPERBOLIC)
}

pub fn by_name(name: &str) -> Option<Blueprint> {
    Some(match name {
        "z" => z(),
        "z2" => z2(),
        "free1" => free1(),
        "tree12" => tree12(),
        "table3" => table3(),
        "hyperbolic" => hyperbolic(),
        _ => return None,
    })
}
