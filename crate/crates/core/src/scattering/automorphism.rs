use std::collections::BTreeMap;

use num_traits::One;

use super::{dot, is_primitive, Vec2, Wall};
use crate::series::{ExponentKey, TruncatedSeries};
use crate::{Error, Rational, Result};

/// The automorphism `x ↦ x·ux`, `y ↦ y·uy` of the truncated ring.
#[derive(Clone, Debug, PartialEq)]
pub struct RingAutomorphism {
    pub ux: TruncatedSeries,
    pub uy: TruncatedSeries,
}

/// Memoized integer powers of a unit.
pub(crate) struct PowCache {
    pos: Vec<TruncatedSeries>,
    neg: Vec<TruncatedSeries>,
}

impl PowCache {
    pub(crate) fn new(base: &TruncatedSeries) -> Self {
        PowCache {
            pos: vec![TruncatedSeries::one(base.order()), base.clone()],
            neg: Vec::new(),
        }
    }

    pub(crate) fn get(&mut self, e: i64) -> Result<&TruncatedSeries> {
        if e >= 0 {
            let e = e as usize;
            while self.pos.len() <= e {
                let next = self.pos[self.pos.len() - 1].mul_raw(&self.pos[1]);
                self.pos.push(next);
            }
            Ok(&self.pos[e])
        } else {
            let e = e.unsigned_abs() as usize;
            if self.neg.is_empty() {
                self.neg.push(self.pos[0].clone());
                self.neg.push(self.pos[1].inverse()?);
            }
            while self.neg.len() <= e {
                let next = self.neg[self.neg.len() - 1].mul_raw(&self.neg[1]);
                self.neg.push(next);
            }
            Ok(&self.neg[e])
        }
    }
}

/// Splits `s` into `Σ_p G_p` where `p = ⟨n, m⟩` for the exponent `m` of each term.
fn group_by_pairing(s: &TruncatedSeries, n: Vec2) -> BTreeMap<i64, TruncatedSeries> {
    let mut groups: BTreeMap<i64, TruncatedSeries> = BTreeMap::new();
    for (k, c) in s.terms() {
        let p = dot(n, (k.x, k.y));
        groups
            .entry(p)
            .or_insert_with(|| TruncatedSeries::zero(s.order()))
            .add_term(*k, c.clone());
    }
    groups
}

/// Applies `z^m ↦ z^m f^{⟨n,m⟩}` to `s`.
pub(crate) fn apply_wall(
    cache: &mut PowCache,
    n: Vec2,
    s: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::zero(s.order());
    for (p, g) in group_by_pairing(s, n) {
        let term = if p == 0 { g } else { g.mul_raw(cache.get(p)?) };
        out = out.add(&term)?;
    }
    Ok(out)
}

impl RingAutomorphism {
    pub fn new(ux: TruncatedSeries, uy: TruncatedSeries) -> Result<Self> {
        if ux.order() != uy.order() {
            return Err(Error::OrderMismatch(ux.order(), uy.order()));
        }
        for u in [&ux, &uy] {
            if u.degree_part(0) != vec![(0, 0, Rational::one())] {
                return Err(Error::BadArgument(format!("multiplier {u} is not 1 mod t")));
            }
        }
        Ok(RingAutomorphism { ux, uy })
    }

    pub fn identity(order: u32) -> Self {
        RingAutomorphism {
            ux: TruncatedSeries::one(order),
            uy: TruncatedSeries::one(order),
        }
    }

    pub fn order(&self) -> u32 {
        self.ux.order()
    }

    pub fn is_identity(&self) -> bool {
        self.ux.is_one() && self.uy.is_one()
    }

    pub fn truncate(&self, j: u32) -> Self {
        RingAutomorphism {
            ux: self.ux.truncate(j),
            uy: self.uy.truncate(j),
        }
    }

    /// Ring homomorphism `z^{(a,b)} ↦ x^a y^b ux^a uy^b`.
    pub fn apply(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        if s.order() != self.order() {
            return Err(Error::OrderMismatch(self.order(), s.order()));
        }
        let mut by_m: BTreeMap<(i32, i32), TruncatedSeries> = BTreeMap::new();
        for (k, c) in s.terms() {
            by_m.entry((k.x, k.y))
                .or_insert_with(|| TruncatedSeries::zero(s.order()))
                .add_term(ExponentKey::new(k.t, k.x, k.y), c.clone());
        }
        let mut px = PowCache::new(&self.ux);
        let mut py = PowCache::new(&self.uy);
        let mut out = TruncatedSeries::zero(s.order());
        for ((a, b), g) in by_m {
            let mult = px.get(a as i64)?.mul_raw(py.get(b as i64)?);
            out = out.add(&g.mul_raw(&mult))?;
        }
        Ok(out)
    }

    /// `outer ∘ inner`, so `inner` acts first on the generators.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if outer.order() != inner.order() {
            return Err(Error::OrderMismatch(outer.order(), inner.order()));
        }
        Ok(RingAutomorphism {
            ux: outer.ux.mul_raw(&outer.apply(&inner.ux)?),
            uy: outer.uy.mul_raw(&outer.apply(&inner.uy)?),
        })
    }

    /// Checks that `(dx/x)∧(dy/y)` is preserved, i.e. the Jacobian of
    /// `(log x + log ux, log y + log uy)` in `(log x, log y)` is 1.
    pub fn is_symplectic(&self) -> bool {
        let (Ok(l1), Ok(l2)) = (self.ux.log(), self.uy.log()) else {
            return false;
        };
        let one = TruncatedSeries::one(self.order());
        let a = one.add(&l1.euler_x()).expect("same order");
        let d = one.add(&l2.euler_y()).expect("same order");
        let det = a
            .mul_raw(&d)
            .sub(&l1.euler_y().mul_raw(&l2.euler_x()))
            .expect("same order");
        det.is_one()
    }
}

/// `θ(z^m) = z^m f^{⟨n,m⟩}` for the wall `w`.
pub fn crossing_automorphism(w: &Wall, n: Vec2) -> Result<RingAutomorphism> {
    if !is_primitive(n) || dot(n, w.m_prim) != 0 {
        return Err(Error::Geometry(format!(
            "normal {n:?} is not a primitive covector vanishing on {:?}",
            w.m_prim
        )));
    }
    Ok(RingAutomorphism {
        ux: w.f.pow_int(n.0 as i64)?,
        uy: w.f.pow_int(n.1 as i64)?,
    })
}
