use std::cmp::Ordering;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{GeomError, Result};

pub type Q = Ratio<i128>;

/// A point or vector of ℚ^d.
pub type Vector = Vec<Q>;

pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

pub fn int(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || GeomError::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n.trim().parse().map_err(|_| bad())?, d))
        }
        None => Ok(int(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Whitespace-separated coordinates.
pub fn parse_vector(s: &str) -> Result<Vector> {
    s.split_whitespace().map(parse_q).collect()
}

pub fn show_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn show_vector(v: &[Q]) -> String {
    v.iter().map(show_q).collect::<Vec<_>>().join(" ")
}

/// Fixed-point decimal with six digits, for rendering only.
pub fn decimal(x: &Q) -> String {
    let scaled = (x * int(1_000_000)).round();
    let n = *scaled.numer();
    let sign = if n < 0 { "-" } else { "" };
    let n = n.abs();
    format!("{sign}{}.{:06}", n / 1_000_000, n % 1_000_000)
}

pub fn add(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], k: Q) -> Vector {
    a.iter().map(|x| x * k).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn norm2(a: &[Q]) -> Q {
    dot(a, a)
}

pub fn dist2(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + (x - y) * (x - y))
}

pub fn cross(a: &[Q], b: &[Q]) -> Q {
    a[0] * b[1] - a[1] * b[0]
}

pub fn zero(d: usize) -> Vector {
    vec![Q::zero(); d]
}

/// Lexicographic order on coordinates.
pub fn cmp_vec(a: &[Q], b: &[Q]) -> Ordering {
    a.iter().cmp(b.iter())
}

/// Angular order starting at the positive x-axis, counterclockwise.
pub fn cmp_angle(a: &[Q], b: &[Q]) -> Ordering {
    let half = |v: &[Q]| if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| Q::zero().cmp(&cross(a, b)))
}

/// Smallest n ≥ 1 with n²·r2 ≥ d2.
pub fn ceil_ratio(d2: Q, r2: Q) -> usize {
    let mut n = 1usize;
    while int((n * n) as i128) * r2 < d2 {
        n += 1;
    }
    n
}
