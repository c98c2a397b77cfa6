//! Group R-words: parsing, evaluation to normal form, printing.
//!
//! ```text
//! word     := factor { ["*"] factor }
//! factor   := atom [ "^" exponent ]
//! atom     := name | "1" | "(" word ")" | "[" word "," word "]"
//!           | "c(" word "," word ")_" exponent
//! exponent := "(" scalar ")" | "{" scalar "}" | ["-"] rational | "t"
//! ```
//!
//! Names are `x`, `y` for the rank-2 schema, and `u<i>`, `v<j>` for any
//! schema. Inverse is `^-1`.

use std::fmt;

use crate::ccalc::{c_binary, Strategy};
use crate::error::{Error, Result};
use crate::hall::{GroupSchema, HallElement};
use crate::scalars::parse::{into_ring, Cursor, ScalarParser};
use crate::scalars::Ring;
use crate::tensor::TensorElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenIndex {
    /// `u_i`, 0-based.
    Basis(usize),
    /// `v_j`, 0-based.
    Central(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RWord<R: Ring> {
    One,
    Gen(String, GenIndex),
    Mul(Vec<RWord<R>>),
    Inv(Box<RWord<R>>),
    Exp(Box<RWord<R>>, R),
    Comm(Box<RWord<R>>, Box<RWord<R>>),
    CComm(Box<RWord<R>>, Box<RWord<R>>, R),
}

impl<R: Ring> RWord<R> {
    pub fn gen(schema: &GroupSchema, idx: GenIndex) -> Self {
        let name = match idx {
            GenIndex::Basis(i) => schema.gen_names()[i].clone(),
            GenIndex::Central(j) => format!("v{}", j + 1),
        };
        RWord::Gen(name, idx)
    }

    pub fn mul(parts: Vec<RWord<R>>) -> Self {
        RWord::Mul(parts)
    }

    pub fn exp(self, s: R) -> Self {
        RWord::Exp(Box::new(self), s)
    }

    pub fn inv(self) -> Self {
        RWord::Inv(Box::new(self))
    }

    pub fn comm(a: Self, b: Self) -> Self {
        RWord::Comm(Box::new(a), Box::new(b))
    }

    pub fn ccomm(a: Self, b: Self, s: R) -> Self {
        RWord::CComm(Box::new(a), Box::new(b), s)
    }
}

/// Scalars are wrapped in braces unless they are a plain integer or `t`.
fn fmt_exponent<R: Ring>(s: &R) -> String {
    let text = s.to_string();
    if text == "t" || text.bytes().all(|b| b.is_ascii_digit()) {
        text
    } else {
        format!("{{{text}}}")
    }
}

impl<R: Ring> fmt::Display for RWord<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RWord::One => f.write_str("1"),
            RWord::Gen(name, _) => f.write_str(name),
            RWord::Mul(parts) if parts.is_empty() => f.write_str("1"),
            RWord::Mul(parts) => {
                let s: Vec<_> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "({})", s.join("*"))
            }
            RWord::Inv(w) => write!(f, "{}^-1", Atom(w)),
            RWord::Exp(w, s) => write!(f, "{}^{}", Atom(w), fmt_exponent(s)),
            RWord::Comm(a, b) => write!(f, "[{a},{b}]"),
            RWord::CComm(a, b, s) => write!(f, "c({a},{b})_{}", fmt_exponent(s)),
        }
    }
}

/// Prints a word so that a following `^` applies to all of it.
struct Atom<'a, R: Ring>(&'a RWord<R>);

impl<R: Ring> fmt::Display for Atom<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            RWord::Inv(_) | RWord::Exp(..) => write!(f, "({})", self.0),
            w => write!(f, "{w}"),
        }
    }
}

pub fn parse_word<R: Ring>(input: &str, schema: &GroupSchema) -> Result<RWord<R>> {
    let chars: Vec<char> = input.chars().collect();
    let mut p = WordParser { cur: Cursor::new(&chars), schema, _ring: std::marker::PhantomData::<R> };
    let w = p.word()?;
    if !p.cur.at_end() {
        return Err(p.cur.error("unexpected input"));
    }
    Ok(w)
}

struct WordParser<'a, 's, R> {
    cur: Cursor<'a>,
    schema: &'s GroupSchema,
    _ring: std::marker::PhantomData<R>,
}

impl<R: Ring> WordParser<'_, '_, R> {
    fn word(&mut self) -> Result<RWord<R>> {
        let mut parts = vec![self.factor()?];
        loop {
            if self.cur.eat('*') {
                parts.push(self.factor()?);
            } else if self.starts_atom() {
                parts.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { RWord::Mul(parts) })
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.cur.peek(), Some(c) if c.is_ascii_alphabetic() || c == '(' || c == '[' || c == '1')
    }

    fn factor(&mut self) -> Result<RWord<R>> {
        let a = self.atom()?;
        if !self.cur.eat('^') {
            return Ok(a);
        }
        let e = self.exponent()?;
        if self.cur.peek() == Some('^') {
            return Err(self.cur.error("repeated `^` needs parentheses"));
        }
        Ok(a.exp(e))
    }

    fn exponent(&mut self) -> Result<R> {
        let start = self.cur.here();
        let close = match self.cur.peek() {
            Some('(') => Some(')'),
            Some('{') => Some('}'),
            _ => None,
        };
        let mut sp = ScalarParser { cur: &mut self.cur, nonconst_div: None };
        let v = match close {
            Some(close) => {
                sp.cur.bump();
                let v = sp.sum()?;
                sp.cur.expect(close)?;
                v
            }
            None => sp.bare_exponent()?,
        };
        let nonconst = sp.nonconst_div;
        into_ring(&v, nonconst, start)
    }

    fn atom(&mut self) -> Result<RWord<R>> {
        match self.cur.peek() {
            Some('(') => {
                self.cur.bump();
                let w = self.word()?;
                self.cur.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.cur.bump();
                let a = self.word()?;
                self.cur.expect(',')?;
                let b = self.word()?;
                self.cur.expect(']')?;
                Ok(RWord::comm(a, b))
            }
            Some('1') => {
                let pos = self.cur.here();
                let n = self.cur.integer()?;
                if n != 1.into() {
                    return Err(Error::Syntax { pos, msg: "only the integer 1 is a word".into() });
                }
                Ok(RWord::One)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (pos, name) = self.name().expect("letter");
                if name == "c" && self.cur.peek() == Some('(') {
                    self.cur.bump();
                    let a = self.word()?;
                    self.cur.expect(',')?;
                    let b = self.word()?;
                    self.cur.expect(')')?;
                    self.cur.expect('_')?;
                    let s = self.exponent()?;
                    return Ok(RWord::ccomm(a, b, s));
                }
                let idx = self
                    .resolve(&name)
                    .ok_or_else(|| Error::UnknownGenerator { pos, name: name.clone() })?;
                Ok(RWord::Gen(name, idx))
            }
            _ => Err(self.cur.error("expected generator, `1`, `(` or `[`")),
        }
    }

    /// A letter followed by digits, so that `xy` reads as `x y`.
    fn name(&mut self) -> Option<(usize, String)> {
        let pos = self.cur.here();
        let c = self.cur.peek().filter(char::is_ascii_alphabetic)?;
        self.cur.pos += 1;
        let mut name = c.to_string();
        if matches!(c, 'u' | 'v') {
            while let Some(d) = self.cur.raw().filter(char::is_ascii_digit) {
                name.push(d);
                self.cur.pos += 1;
            }
        }
        Some((pos, name))
    }

    fn resolve(&self, name: &str) -> Option<GenIndex> {
        if let Some(i) = self.schema.gen_names().iter().position(|n| n == name) {
            return Some(GenIndex::Basis(i));
        }
        let (head, num) = name.split_at(1);
        let k: usize = num.parse().ok()?;
        match head {
            "u" if (1..=self.schema.m()).contains(&k) => Some(GenIndex::Basis(k - 1)),
            "v" if (1..=self.schema.n()).contains(&k) => Some(GenIndex::Central(k - 1)),
            _ => None,
        }
    }
}

/// Evaluates a word to its normal form.
pub fn eval<R: Ring>(w: &RWord<R>, strat: &Strategy) -> Result<TensorElement<R>> {
    let schema = strat.schema();
    Ok(match w {
        RWord::One => TensorElement::identity(schema),
        RWord::Gen(_, GenIndex::Basis(i)) => TensorElement::embed(HallElement::generator(schema, *i)),
        RWord::Gen(_, GenIndex::Central(j)) => TensorElement::embed(HallElement::central(schema, *j)),
        RWord::Mul(parts) => {
            let mut acc = TensorElement::identity(schema);
            for p in parts {
                acc = acc.mul(&eval(p, strat)?)?;
            }
            acc
        }
        RWord::Inv(w) => eval(w, strat)?.inv(),
        RWord::Exp(w, s) => eval(w, strat)?.exp(s, strat)?,
        RWord::Comm(a, b) => eval(a, strat)?.commutator(&eval(b, strat)?)?,
        RWord::CComm(a, b, s) => {
            let d = c_binary(strat, &eval(a, strat)?, &eval(b, strat)?, s)?;
            TensorElement::from_d(schema, d)
        }
    })
}

pub fn print_normal_form<R: Ring>(g: &TensorElement<R>) -> String {
    g.to_string()
}

/// Parses and evaluates in one step.
pub fn eval_str<R: Ring>(input: &str, strat: &Strategy) -> Result<TensorElement<R>> {
    eval(&parse_word(input, strat.schema())?, strat)
}
