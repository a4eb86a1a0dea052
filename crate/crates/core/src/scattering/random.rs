//! Random initial diagrams for property testing.

use rand::Rng;

use super::{is_primitive, ScatteringDiagram, Vec2, Wall};
use crate::series::TruncatedSeries;
use crate::Rational;
use num_bigint::BigInt;

/// Random primitive vector with entries in `-r..=r`.
pub fn random_primitive<R: Rng>(rng: &mut R, r: i32) -> Vec2 {
    loop {
        let v = (rng.gen_range(-r..=r), rng.gen_range(-r..=r));
        if is_primitive(v) {
            return v;
        }
    }
}

/// `1 + Σ c t^k z^{j m}` with `1 ≤ j`, `1 ≤ k ≤ order` and small rational `c`.
pub fn random_wall_function<R: Rng>(
    rng: &mut R,
    m: Vec2,
    order: u32,
    max_terms: usize,
) -> TruncatedSeries {
    let mut f = TruncatedSeries::one(order);
    let n = rng.gen_range(1..=max_terms);
    for _ in 0..n {
        let k = rng.gen_range(1..=order.max(1));
        let j = rng.gen_range(1..=2);
        let num = rng.gen_range(-3i64..=3);
        let den = rng.gen_range(1i64..=3);
        let c = Rational::new(BigInt::from(num), BigInt::from(den));
        let term = TruncatedSeries::monomial(order, c, k, j * m.0, j * m.1);
        f = f.add(&term).expect("same order");
    }
    f
}

/// Up to `max_lines` lines with pairwise distinct supports.
pub fn random_diagram<R: Rng>(rng: &mut R, max_lines: usize, order: u32) -> ScatteringDiagram {
    let count = rng.gen_range(1..=max_lines);
    let mut dirs: Vec<Vec2> = Vec::new();
    while dirs.len() < count {
        let m = random_primitive(rng, 2);
        if dirs.iter().all(|d| super::cross(*d, m) != 0) {
            dirs.push(m);
        }
    }
    let walls = dirs
        .into_iter()
        .map(|m| {
            let f = random_wall_function(rng, m, order, 2);
            Wall::new(super::WallKind::Line, m, f).expect("well-formed by construction")
        })
        .collect();
    ScatteringDiagram::new(order, walls)
}
