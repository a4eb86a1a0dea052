use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::lattice::IVec;
use crate::{Error, Rational, Result};

/// Min-plus polynomial `min_p (c_p + ⟨p, x⟩)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalPolynomial {
    nvars: usize,
    terms: BTreeMap<IVec, Rational>,
}

impl TropicalPolynomial {
    /// Repeated exponents keep the smaller coefficient, as tropical addition does.
    pub fn new(terms: impl IntoIterator<Item = (IVec, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<IVec, Rational> = BTreeMap::new();
        let mut nvars = None;
        for (p, c) in terms {
            if *nvars.get_or_insert(p.len()) != p.len() {
                return Err(Error::BadArgument("exponents of different lengths".into()));
            }
            match map.get_mut(&p) {
                Some(old) if *old <= c => {}
                Some(old) => *old = c,
                None => {
                    map.insert(p, c);
                }
            }
        }
        let Some(nvars) = nvars else {
            return Err(Error::BadArgument(
                "a tropical polynomial needs at least one term".into(),
            ));
        };
        Ok(TropicalPolynomial { nvars, terms: map })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<IVec, Rational> {
        &self.terms
    }

    /// `c_p ↦ c_p + ⟨p, v⟩ + shift`; the corner locus moves by `-v`.
    pub fn translated(&self, v: &[Rational], shift: &Rational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| {
                let dot: Rational = p
                    .iter()
                    .zip(v)
                    .map(|(a, b)| b * Rational::from_integer(BigInt::from(*a)))
                    .sum();
                (p.clone(), c + dot + shift)
            })
            .collect();
        TropicalPolynomial {
            nvars: self.nvars,
            terms,
        }
    }
}

/// `min_p (c_p + ⟨p, x⟩)`.
pub fn trop_eval(g: &TropicalPolynomial, x: &[Rational]) -> Rational {
    assert_eq!(x.len(), g.nvars, "point dimension");
    g.terms
        .iter()
        .map(|(p, c)| {
            let mut v = c.clone();
            for (a, xi) in p.iter().zip(x) {
                v += xi * Rational::from_integer(BigInt::from(*a));
            }
            v
        })
        .min()
        .expect("nonempty")
}

const VARS: [&str; 2] = ["X", "Y"];

fn var_name(i: usize) -> String {
    VARS.get(i)
        .map_or_else(|| format!("X{}", i + 1), |s| s.to_string())
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(|(p, c)| affine_text(p, c)).collect();
        write!(f, "min({})", terms.join(", "))
    }
}

fn affine_text(p: &[i64], c: &Rational) -> String {
    let mut pieces: Vec<(bool, String)> = Vec::new();
    if !c.is_zero() || p.iter().all(|&a| a == 0) {
        pieces.push((c < &Rational::zero(), c.abs().to_string()));
    }
    for (i, &a) in p.iter().enumerate() {
        if a != 0 {
            let mag = a.unsigned_abs();
            let coeff = if mag == 1 {
                String::new()
            } else {
                format!("{mag}*")
            };
            pieces.push((a < 0, format!("{coeff}{}", var_name(i))));
        }
    }
    let mut out = String::new();
    for (k, (neg, body)) in pieces.into_iter().enumerate() {
        match (k, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

/// Parses `min(c + a*X + b*Y, ...)`. A bare term without `min(...)` is also
/// accepted. Variables are `X`, `Y` (or `X1`, `X2`, …, case-insensitive).
pub fn parse_polynomial(src: &str) -> Result<TropicalPolynomial> {
    let mut p = Parser { text: src, pos: 0 };
    p.skip_ws();
    let wrapped = p.keyword("min");
    if wrapped {
        p.skip_ws();
        p.expect(b'(')?;
    }
    let mut terms = Vec::new();
    let mut nvars = 0;
    loop {
        let (coeffs, c) = p.term()?;
        nvars = nvars.max(coeffs.len());
        terms.push((coeffs, c));
        p.skip_ws();
        match p.peek() {
            Some(b',') if wrapped => p.pos += 1,
            Some(b')') if wrapped => {
                p.pos += 1;
                break;
            }
            None if !wrapped => break,
            None => return Err(p.err("missing ')'")),
            Some(_) => return Err(p.err("expected ',' or ')'")),
        }
    }
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    let nvars = nvars.max(2);
    TropicalPolynomial::new(terms.into_iter().map(|(mut e, c)| {
        e.resize(nvars, 0);
        (e, c)
    }))
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        let before = &self.text[..self.pos.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::parse(line, col, msg)
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let rest = &self.text[self.pos..];
        let hit = rest.len() >= kw.len()
            && rest[..kw.len()].eq_ignore_ascii_case(kw)
            && !rest[kw.len()..].starts_with(|c: char| c.is_ascii_alphanumeric());
        if hit {
            self.pos += kw.len();
        }
        hit
    }

    fn number(&mut self) -> Result<Rational> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        let int_end = self.pos;
        if int_end == start {
            return Err(self.err("expected a number"));
        }
        let whole: BigInt = self.text[start..int_end].parse().expect("digits");
        match self.peek() {
            Some(b'/') => {
                self.pos += 1;
                let at = self.pos;
                while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                if at == self.pos {
                    return Err(self.err("expected a denominator"));
                }
                let den: BigInt = self.text[at..self.pos].parse().expect("digits");
                if den.is_zero() {
                    self.pos = at;
                    return Err(self.err("zero denominator"));
                }
                Ok(Rational::new(whole, den))
            }
            Some(b'.') => {
                self.pos += 1;
                let at = self.pos;
                while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                let frac = &self.text[at..self.pos];
                let scale = BigInt::from(10).pow(frac.len() as u32);
                let num: BigInt = if frac.is_empty() {
                    BigInt::zero()
                } else {
                    frac.parse().expect("digits")
                };
                Ok(Rational::new(whole * &scale + num, scale))
            }
            _ => Ok(Rational::from_integer(whole)),
        }
    }

    fn variable(&mut self) -> Option<usize> {
        let rest = &self.text.as_bytes()[self.pos..];
        let first = *rest.first()?;
        let base = match first.to_ascii_uppercase() {
            b'X' => 0,
            b'Y' => 1,
            _ => return None,
        };
        let digits = rest[1..].iter().take_while(|b| b.is_ascii_digit()).count();
        if digits > 0 && base == 0 {
            let idx: usize = self.text[self.pos + 1..self.pos + 1 + digits]
                .parse()
                .ok()?;
            if idx == 0 {
                return None;
            }
            self.pos += 1 + digits;
            return Some(idx - 1);
        }
        if rest.get(1).is_some_and(|b| b.is_ascii_alphanumeric()) {
            return None;
        }
        self.pos += 1;
        Some(base)
    }

    /// One affine term `c + a*X + b*Y` in any order.
    fn term(&mut self) -> Result<(IVec, Rational)> {
        let mut exps: IVec = Vec::new();
        let mut c = Rational::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negative = false;
            match self.peek() {
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                _ if first => {}
                _ => break,
            }
            first = false;
            self.skip_ws();
            let at = self.pos;
            let (factor, var) = if let Some(v) = self.variable() {
                (Rational::one(), Some(v))
            } else {
                let q = self.number()?;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    match self.variable() {
                        Some(v) => (q, Some(v)),
                        None => return Err(self.err("expected a variable")),
                    }
                } else {
                    (q, None)
                }
            };
            let factor = if negative { -factor } else { factor };
            match var {
                None => c += factor,
                Some(v) => {
                    if !factor.is_integer() {
                        self.pos = at;
                        return Err(self.err("exponents must be integers"));
                    }
                    let a: i64 = factor.to_integer().try_into().map_err(|_| {
                        self.pos = at;
                        self.err("exponent out of range")
                    })?;
                    if exps.len() <= v {
                        exps.resize(v + 1, 0);
                    }
                    exps[v] += a;
                }
            }
        }
        if first {
            return Err(self.err("expected a term"));
        }
        Ok((exps, c))
    }
}
