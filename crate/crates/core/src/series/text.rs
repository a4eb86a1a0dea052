use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExponentKey, TruncatedSeries};
use crate::{Error, Rational, Result};

/// Parses the canonical text form, e.g. `1 + 3/2*t^2*x^-1*y^-1`.
///
/// Terms above `order` are dropped. Errors report 1-based line and column.
pub fn parse_series(src: &str, order: u32) -> Result<TruncatedSeries> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        text: src,
    };
    let mut out = TruncatedSeries::zero(order);
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty series"));
    }
    let mut first = true;
    loop {
        p.skip_ws();
        let mut sign = 1;
        match p.peek() {
            Some(b'+') => {
                p.pos += 1;
            }
            Some(b'-') => {
                p.pos += 1;
                sign = -1;
            }
            _ if first => {}
            Some(_) => return Err(p.err("expected '+' or '-'")),
            None => break,
        }
        first = false;
        let (key, c) = p.term()?;
        let c = if sign < 0 { -c } else { c };
        out.add_term(key, c);
        p.skip_ws();
        if p.at_end() {
            break;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
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

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(self.text[start..self.pos].parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let d = self.digits()?;
        let v: i64 = d.try_into().map_err(|_| {
            self.pos = at;
            self.err("exponent out of range")
        })?;
        Ok(if neg { -v } else { v })
    }

    fn term(&mut self) -> Result<(ExponentKey, Rational)> {
        let mut c = Rational::one();
        let (mut t, mut x, mut y) = (0i64, 0i64, 0i64);
        let mut factors = 0;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let n = self.digits()?;
                    self.skip_ws();
                    let mut q = Rational::from_integer(n);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        self.skip_ws();
                        let d = self.digits()?;
                        if d.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        q /= Rational::from_integer(d);
                    }
                    c *= q;
                }
                Some(v @ (b't' | b'x' | b'y')) => {
                    self.pos += 1;
                    let at = self.pos;
                    let e = self.exponent()?;
                    match v {
                        b't' if e < 0 => {
                            self.pos = at;
                            return Err(self.err("negative power of t"));
                        }
                        b't' => t += e,
                        b'x' => x += e,
                        _ => y += e,
                    }
                }
                _ if factors == 0 => return Err(self.err("expected a term")),
                _ => return Err(self.err("expected a factor after '*'")),
            }
            factors += 1;
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(b't' | b'x' | b'y' | b'0'..=b'9') => {}
                _ => break,
            }
        }
        let fit = |v: i64| i32::try_from(v).ok();
        match (u32::try_from(t).ok(), fit(x), fit(y)) {
            (Some(t), Some(x), Some(y)) => Ok((ExponentKey::new(t, x, y), c)),
            _ => Err(self.err("exponent out of range")),
        }
    }
}
