//! Scattering diagrams in the plane and the tropical vertex group.

mod automorphism;
mod diagram;
pub(crate) mod doc;
mod gw;
pub mod random;

pub use automorphism::{crossing_automorphism, RingAutomorphism};
pub use diagram::{deviation_to_walls, Crossing, ScatteringDiagram};
pub use doc::{parse_diagram, write_diagram};
pub use gw::{extract_gw, GwRow, GwTable};

use num_integer::Integer;

use crate::series::TruncatedSeries;
use crate::{Error, Result};

pub type Vec2 = (i32, i32);

pub(crate) fn gcd2(v: Vec2) -> i32 {
    v.0.gcd(&v.1)
}

pub fn is_primitive(v: Vec2) -> bool {
    gcd2(v) == 1
}

/// Primitive vector on the ray through `v`; `None` for the origin.
pub fn primitive(v: Vec2) -> Option<Vec2> {
    let g = gcd2(v);
    (g != 0).then(|| (v.0 / g, v.1 / g))
}

pub(crate) fn cross(a: Vec2, b: Vec2) -> i64 {
    a.0 as i64 * b.1 as i64 - a.1 as i64 * b.0 as i64
}

pub(crate) fn dot(a: Vec2, b: Vec2) -> i64 {
    a.0 as i64 * b.0 as i64 + a.1 as i64 * b.1 as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WallKind {
    Ray,
    Line,
}

/// A ray `R_{≤0} m_prim` or a line `R m_prim` carrying a function
/// `f = 1 + Σ c t^k z^{j m_prim}` with `k ≥ 1`, `j ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Wall {
    pub kind: WallKind,
    pub m_prim: Vec2,
    pub f: TruncatedSeries,
    /// Set on rays produced by [`ScatteringDiagram::scatter`].
    pub added: bool,
}

impl Wall {
    pub fn new(kind: WallKind, m_prim: Vec2, f: TruncatedSeries) -> Result<Self> {
        if !is_primitive(m_prim) {
            return Err(Error::Geometry(format!("{m_prim:?} is not primitive")));
        }
        for (k, c) in f.terms() {
            if k.t == 0 {
                if (k.x, k.y) == (0, 0) && *c == crate::series::rat(1) {
                    continue;
                }
                return Err(Error::BadArgument(format!(
                    "wall function {f} is not 1 mod t"
                )));
            }
            let m = (k.x, k.y);
            let along = cross(m, m_prim) == 0 && dot(m, m_prim) > 0;
            if !along {
                return Err(Error::Geometry(format!(
                    "monomial x^{} y^{} of {f} is not a positive multiple of {m_prim:?}",
                    k.x, k.y
                )));
            }
        }
        if f.coeff(0, 0, 0) != crate::series::rat(1) {
            return Err(Error::BadArgument(format!(
                "wall function {f} is not 1 mod t"
            )));
        }
        Ok(Wall {
            kind,
            m_prim,
            f,
            added: false,
        })
    }

    /// Ray with support `R_{≥0} dir`, i.e. `m_prim = -dir`.
    pub fn ray(dir: Vec2, f: TruncatedSeries) -> Result<Self> {
        Wall::new(WallKind::Ray, (-dir.0, -dir.1), f)
    }

    /// Line `R dir`; `m_prim` takes the sign of the monomials of `f`.
    pub fn line(dir: Vec2, f: TruncatedSeries) -> Result<Self> {
        let sign = f
            .terms()
            .find(|(k, _)| k.t > 0)
            .map(|(k, _)| dot((k.x, k.y), dir).signum())
            .unwrap_or(-1);
        let m = if sign > 0 { dir } else { (-dir.0, -dir.1) };
        Wall::new(WallKind::Line, m, f)
    }

    /// Directions `d` such that the wall contains `R_{≥0} d`.
    pub fn support_directions(&self) -> Vec<Vec2> {
        let d = (-self.m_prim.0, -self.m_prim.1);
        match self.kind {
            WallKind::Ray => vec![d],
            WallKind::Line => vec![d, self.m_prim],
        }
    }

    /// Direction reported in documents: the ray direction for rays,
    /// `-m_prim` for lines.
    pub fn dir(&self) -> Vec2 {
        (-self.m_prim.0, -self.m_prim.1)
    }

    pub fn order(&self) -> u32 {
        self.f.order()
    }
}

#[cfg(test)]
mod tests;
