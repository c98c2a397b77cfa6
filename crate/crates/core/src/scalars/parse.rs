//! Scalar literal parser.
//!
//! ```text
//! sum  := ["-"] prod { ("+"|"-") prod }
//! prod := pow { ("*"|"/") pow }
//! pow  := atom [ "^" ["-"] integer ]
//! atom := integer | "t" | "(" sum ")"
//! ```
//!
//! `/` with a non-constant divisor is accepted only over Q(t). Positions in
//! errors are 1-based character offsets into the full input.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{RatFun, Rational, Ring, RingKind};
use crate::error::{Error, Result};

/// Cursor over a character buffer, shared with the word parser.
pub struct Cursor<'a> {
    chars: &'a [char],
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(chars: &'a [char]) -> Self {
        Cursor { chars, pos: 0 }
    }

    pub fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied().map(normalize)
    }

    /// The next character without skipping whitespace.
    pub fn raw(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// 1-based position of the next non-blank character.
    pub fn here(&mut self) -> usize {
        self.skip_ws();
        self.pos + 1
    }

    pub fn error(&mut self, msg: impl Into<String>) -> Error {
        let pos = self.here();
        let found = match self.peek() {
            Some(c) => format!(", found `{c}`"),
            None => ", found end of input".into(),
        };
        Error::Syntax { pos, msg: format!("{}{found}", msg.into()) }
    }

    pub fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    pub fn identifier(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        if !self.chars.get(start).is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        Some((start + 1, self.chars[start..self.pos].iter().collect()))
    }
}

/// Unicode minus is accepted as `-`.
fn normalize(c: char) -> char {
    if c == '\u{2212}' {
        '-'
    } else {
        c
    }
}

/// Parses a scalar expression into Q(t), recording the first position where
/// a non-constant divisor occurred.
pub struct ScalarParser<'c, 'a> {
    pub cur: &'c mut Cursor<'a>,
    pub nonconst_div: Option<usize>,
}

impl ScalarParser<'_, '_> {
    pub fn sum(&mut self) -> Result<RatFun> {
        let mut acc = if self.cur.eat('-') { -self.prod()? } else { self.prod()? };
        loop {
            if self.cur.eat('+') {
                acc = &acc + &self.prod()?;
            } else if self.cur.eat('-') {
                acc = &acc - &self.prod()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn prod(&mut self) -> Result<RatFun> {
        let mut acc = self.pow()?;
        loop {
            if self.cur.eat('*') {
                acc = &acc * &self.pow()?;
            } else if self.cur.peek() == Some('/') {
                let pos = self.cur.here();
                self.cur.bump();
                let d = self.pow()?;
                acc = self.divide(acc, d, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn divide(&mut self, a: RatFun, d: RatFun, pos: usize) -> Result<RatFun> {
        if d.is_zero() {
            return Err(Error::Syntax { pos, msg: "division by zero".into() });
        }
        if d.as_constant().is_none() {
            self.nonconst_div.get_or_insert(pos);
        }
        Ok(a.div(&d).expect("nonzero divisor"))
    }

    fn pow(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.cur.peek() != Some('^') {
            return Ok(base);
        }
        let pos = self.cur.here();
        self.cur.bump();
        let neg = self.cur.eat('-');
        let e = self.cur.integer()?;
        let e = e
            .to_u32()
            .filter(|&e| e <= 1000)
            .ok_or(Error::Syntax { pos, msg: "exponent too large".into() })?;
        let p = power(&base, e);
        if neg {
            self.divide(RatFun::one(), p, pos)
        } else {
            Ok(p)
        }
    }

    /// A single atom; the word parser uses this for bare exponents.
    pub fn atom(&mut self) -> Result<RatFun> {
        match self.cur.peek() {
            Some('(') => {
                self.cur.bump();
                let v = self.sum()?;
                self.cur.expect(')')?;
                Ok(v)
            }
            Some('t') => {
                self.cur.bump();
                Ok(RatFun::t())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.cur.integer()?;
                Ok(RatFun::constant(Rational::from_integer(n)))
            }
            _ => Err(self.cur.error("expected number, `t` or `(`")),
        }
    }

    /// `["-"] integer ["/" integer] | "t"`: the unparenthesized exponent form.
    pub fn bare_exponent(&mut self) -> Result<RatFun> {
        if self.cur.eat('t') {
            return Ok(RatFun::t());
        }
        let neg = self.cur.eat('-');
        let n = self.cur.integer()?;
        let mut q = Rational::from_integer(n);
        if self.cur.peek() == Some('/') {
            let pos = self.cur.here();
            self.cur.bump();
            let d = self.cur.integer()?;
            if Zero::is_zero(&d) {
                return Err(Error::Syntax { pos, msg: "division by zero".into() });
            }
            q /= Rational::from_integer(d);
        }
        if neg {
            q = -q;
        }
        Ok(RatFun::constant(q))
    }
}

fn power(base: &RatFun, e: u32) -> RatFun {
    let mut acc = RatFun::one();
    for _ in 0..e {
        acc = &acc * base;
    }
    acc
}

/// Checks that a parsed value lies in `ring`. `start` is the position of the
/// expression, used when no better position is known.
pub fn into_ring<R: Ring>(v: &RatFun, nonconst_div: Option<usize>, start: usize) -> Result<R> {
    let ring = R::KIND;
    if ring != RingKind::QtField {
        if let Some(pos) = nonconst_div {
            return Err(Error::ScalarNotInRing {
                pos,
                ring,
                msg: "division by a non-constant is only allowed in Q(t)".into(),
            });
        }
    }
    R::from_ratfun(v).ok_or_else(|| Error::ScalarNotInRing {
        pos: start,
        ring,
        msg: format!("{v} is not an element of {ring}"),
    })
}

pub fn parse_scalar<R: Ring>(input: &str) -> Result<R> {
    let chars: Vec<char> = input.chars().collect();
    let mut cur = Cursor::new(&chars);
    let start = cur.here();
    let mut p = ScalarParser { cur: &mut cur, nonconst_div: None };
    let v = p.sum()?;
    let nonconst = p.nonconst_div;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    if v.as_constant().is_none() && !R::KIND.has_t() {
        return Err(Error::ScalarNotInRing { pos: start, ring: R::KIND, msg: "`t` is not in this ring".into() });
    }
    into_ring(&v, nonconst, start)
}

/// Parses a literal as an element of Q(t) regardless of the active ring.
pub fn parse_ratfun(input: &str) -> Result<RatFun> {
    parse_scalar::<RatFun>(input)
}
