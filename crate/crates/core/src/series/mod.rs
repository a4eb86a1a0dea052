//! Sparse truncated series in `Q[x^±1, y^±1][t] / (t^(k+1))`.

mod text;

pub use text::parse_series;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

/// Exponent of a monomial `t^t x^x y^y`. Orders lexicographically by `(t, x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentKey {
    pub t: u32,
    pub x: i32,
    pub y: i32,
}

impl ExponentKey {
    pub const fn new(t: u32, x: i32, y: i32) -> Self {
        ExponentKey { t, x, y }
    }

    /// The `M = Z^2` part of the exponent.
    pub fn m(&self) -> (i32, i32) {
        (self.x, self.y)
    }
}

/// Element of the truncated ring. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    order: u32,
    terms: BTreeMap<ExponentKey, Rational>,
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl TruncatedSeries {
    pub fn zero(order: u32) -> Self {
        TruncatedSeries {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::monomial(order, Rational::one(), 0, 0, 0)
    }

    /// `c * t^t * x^x * y^y`, or zero if `t > order`.
    pub fn monomial(order: u32, c: Rational, t: u32, x: i32, y: i32) -> Self {
        let mut s = Self::zero(order);
        if t <= order && !c.is_zero() {
            s.terms.insert(ExponentKey::new(t, x, y), c);
        }
        s
    }

    /// Builds a series from `(t, x, y, coefficient)` terms, summing repeats
    /// and dropping anything above `order`.
    pub fn from_terms<I>(order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, i32, i32, Rational)>,
    {
        let mut s = Self::zero(order);
        for (t, x, y, c) in terms {
            s.add_term(ExponentKey::new(t, x, y), c);
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ExponentKey::new(0, 0, 0))
                .is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentKey, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: u32, x: i32, y: i32) -> Rational {
        self.terms
            .get(&ExponentKey::new(t, x, y))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Lowest t-degree carrying a nonzero term.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().map(|k| k.t)
    }

    /// Terms of t-degree exactly `t`, as `(x, y, c)`.
    pub fn degree_part(&self, t: u32) -> Vec<(i32, i32, Rational)> {
        self.terms
            .range(
                ExponentKey::new(t, i32::MIN, i32::MIN)..=ExponentKey::new(t, i32::MAX, i32::MAX),
            )
            .map(|(k, c)| (k.x, k.y, c.clone()))
            .collect()
    }

    pub(crate) fn add_term(&mut self, key: ExponentKey, c: Rational) {
        if key.t > self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Drops every term above `j`; the result has order `min(j, self.order)`.
    pub fn truncate(&self, j: u32) -> Self {
        let order = j.min(self.order);
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.t <= order)
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        TruncatedSeries { order, terms }
    }

    /// Same terms, reinterpreted at a higher order (missing terms are zero).
    pub fn lift(&self, order: u32) -> Self {
        let mut s = self.truncate(order);
        s.order = order;
        s
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut s = self.clone();
        for (k, c) in &other.terms {
            s.add_term(*k, c.clone());
        }
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut s = self.clone();
        for (k, c) in &other.terms {
            s.add_term(*k, -c.clone());
        }
        Ok(s)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        TruncatedSeries {
            order: self.order,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `x^a y^b` (no t-shift).
    pub fn shift(&self, a: i32, b: i32) -> Self {
        TruncatedSeries {
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (ExponentKey::new(k.t, k.x + a, k.y + b), v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_raw(other))
    }

    pub(crate) fn mul_raw(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        let order = self.order;
        let mut out: BTreeMap<ExponentKey, Rational> = BTreeMap::new();
        // terms are sorted by t, so inner loops can stop early
        for (ka, ca) in &self.terms {
            if ka.t > order {
                break;
            }
            for (kb, cb) in &other.terms {
                let t = ka.t + kb.t;
                if t > order {
                    break;
                }
                let key = ExponentKey::new(t, ka.x + kb.x, ka.y + kb.y);
                let p = ca * cb;
                match out.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += p;
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        TruncatedSeries { order, terms: out }
    }

    /// The t⁰ part, if it is a single monomial `c x^a y^b`.
    fn unit_lead(&self) -> Option<(Rational, i32, i32)> {
        let lead = self.degree_part(0);
        match lead.as_slice() {
            [(a, b, c)] => Some((c.clone(), *a, *b)),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let (c, a, b) = self
            .unit_lead()
            .ok_or_else(|| Error::NonUnit(format!("t^0 part of {self} is not a monomial")))?;
        let cinv = c.recip();
        // self = c x^a y^b (1 + w) with w divisible by t
        let normalized = self.shift(-a, -b).scale(&cinv);
        let w = normalized.sub(&Self::one(self.order))?;
        let mut r = Self::one(self.order);
        for _ in 0..self.order {
            r = Self::one(self.order).sub(&w.mul_raw(&r))?;
        }
        Ok(r.scale(&cinv).shift(-a, -b))
    }

    fn require_t0(&self, want_one: bool, what: &str) -> Result<Self> {
        let lead = self.degree_part(0);
        let ok = if want_one {
            lead.len() == 1 && lead[0].0 == 0 && lead[0].1 == 0 && lead[0].2.is_one()
        } else {
            lead.is_empty()
        };
        if !ok {
            return Err(Error::BadArgument(format!(
                "{what}: bad constant term in {self}"
            )));
        }
        Ok(if want_one {
            self.sub(&Self::one(self.order))?
        } else {
            self.clone()
        })
    }

    /// Mercator series; requires `self ≡ 1 mod t`.
    pub fn log(&self) -> Result<Self> {
        let v = self.require_t0(true, "log")?;
        let mut acc = Self::zero(self.order);
        let mut p = v.clone();
        let mut d = 1i64;
        while !p.is_zero() {
            let c = Rational::new(
                BigInt::from(if d % 2 == 1 { 1 } else { -1 }),
                BigInt::from(d),
            );
            acc = acc.add(&p.scale(&c))?;
            p = p.mul_raw(&v);
            d += 1;
        }
        Ok(acc)
    }

    /// Exponential; requires `self ≡ 0 mod t`.
    pub fn exp(&self) -> Result<Self> {
        let v = self.require_t0(false, "exp")?;
        let mut acc = Self::one(self.order);
        let mut p = Self::one(self.order);
        let mut d = 1i64;
        loop {
            p = p
                .mul_raw(&v)
                .scale(&Rational::new(BigInt::one(), BigInt::from(d)));
            if p.is_zero() {
                break;
            }
            acc = acc.add(&p)?;
            d += 1;
        }
        Ok(acc)
    }

    /// Integer power by repeated squaring; negative powers go through [`inverse`](Self::inverse).
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut result = Self::one(self.order);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_raw(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul_raw(&sq);
            }
        }
        Ok(result)
    }

    /// Applies `x d/dx` (multiplies each coefficient by its x-exponent).
    pub fn euler_x(&self) -> Self {
        self.weighted(|k| k.x)
    }

    /// Applies `y d/dy`.
    pub fn euler_y(&self) -> Self {
        self.weighted(|k| k.y)
    }

    fn weighted(&self, w: impl Fn(&ExponentKey) -> i32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(k, c)| {
                let f = w(k);
                (f != 0).then(|| (*k, c * rat(f as i64)))
            })
            .collect();
        TruncatedSeries {
            order: self.order,
            terms,
        }
    }

    /// Largest absolute exponent appearing, useful for sizing memo tables.
    pub fn max_abs_exponent(&self) -> i32 {
        self.terms
            .keys()
            .map(|k| k.x.abs().max(k.y.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.terms.values().any(|c| c.is_negative())
    }
}

impl PartialEq for TruncatedSeries {
    /// Compares after truncating both sides to the smaller order.
    fn eq(&self, other: &Self) -> bool {
        let j = self.order.min(other.order);
        let a = self.terms.iter().filter(|(k, _)| k.t <= j);
        let b = other.terms.iter().filter(|(k, _)| k.t <= j);
        a.eq(b)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut vars = Vec::new();
            if k.t != 0 {
                vars.push(if k.t == 1 {
                    "t".to_string()
                } else {
                    format!("t^{}", k.t)
                });
            }
            for (name, e) in [("x", k.x), ("y", k.y)] {
                if e != 0 {
                    vars.push(if e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    });
                }
            }
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
