use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q in the variable `t`.
///
/// `coeffs[i]` is the coefficient of `t^i`; the leading coefficient is
/// nonzero, and the zero polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv_lc = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor, by a primitive remainder sequence over Z.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(Error::BothZero),
            (true, false) => return Ok(other.monic()),
            (false, true) => return Ok(self.monic()),
            _ => {}
        }
        if self.is_constant() || other.is_constant() {
            return Ok(Poly::one());
        }
        let (_, mut a) = self.to_primitive();
        let (_, mut b) = other.to_primitive();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while b.len() > 1 {
            let r = primitive(pseudo_rem(a, &b));
            a = std::mem::replace(&mut b, r);
        }
        if b.is_empty() {
            Ok(Poly::from_bigints(&a).monic())
        } else {
            Ok(Poly::one())
        }
    }

    /// Returns `(g, s, u)` with `s*self + u*other = g`, `g` the monic gcd.
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut u0, mut u1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let u2 = &u0 - &(&q * &u1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            u0 = std::mem::replace(&mut u1, u2);
        }
        let inv = r0.lc().expect("nonzero gcd").recip();
        Ok((r0.scale(&inv), s0.scale(&inv), u0.scale(&inv)))
    }

    /// Inverse of `self` modulo `m`; requires `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.xgcd(m).ok()?;
        g.is_one().then(|| s.rem(m))
    }

    /// Splits `self = c * z` with `z` a primitive integer polynomial with
    /// positive leading coefficient. Returns `(c, z)`; zero maps to `(0, [])`.
    pub fn to_primitive(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let lcm_den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm_den.clone())).to_integer())
            .collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(Signed::is_negative) {
            content = -content;
        }
        let prim = ints.iter().map(|c| c / &content).collect();
        (Rational::new(content, lcm_den), prim)
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Poly {
        Poly::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// `lc(b)^k a mod b` over Z, coefficients low degree first; `b` nonconstant.
fn pseudo_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    while a.len() > db {
        let la = a.pop().expect("nonempty");
        let shift = a.len() - db;
        for c in a.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b[..db].iter().enumerate() {
            a[shift + j] -= &la * bc;
        }
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
    }
    a
}

/// Divides out the content; the empty vector stays empty.
fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in v.iter_mut() {
            *c /= &content;
        }
    }
    v
}


impl Ord for Poly {
    /// Degree first, then coefficients from the constant term upward.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().cmp(other.coeffs.iter()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::new(coeffs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Rational::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        Poly::new(coeffs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        // Convolve integer numerators over a common denominator, so that
        // only the final coefficients are normalized.
        let (l1, z1) = integer_numerators(&self.coeffs);
        let (l2, z2) = integer_numerators(&rhs.coeffs);
        let mut acc = vec![BigInt::zero(); z1.len() + z2.len() - 1];
        for (i, a) in z1.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in z2.iter().enumerate() {
                acc[i + j] += a * b;
            }
        }
        let den = l1 * l2;
        Poly::new(acc.into_iter().map(|z| Rational::new(z, den.clone())).collect())
    }
}

/// `(L, c * L)` with `L` the lcm of the denominators.
fn integer_numerators(coeffs: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) });
    let z = coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    (l, z)
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                $tr::$m(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty {
                $tr::$m(&self, rhs)
            }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(Poly, Add add, Sub sub, Mul mul);

fn fmt_integer_poly(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Poly {
    /// Prints in the scalar literal grammar: integer coefficients are written
    /// directly, otherwise a common denominator is pulled out, e.g. `(t^2-t)/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let body = fmt_integer_poly(&ints);
        if den.is_one() {
            f.write_str(&body)
        } else if self.term_count() == 1 {
            write!(f, "{body}/{den}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn product_of_conjugates() {
        let a = Poly::from_ints(&[1, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_examples() {
        let two_t = Poly::from_ints(&[0, 2]);
        let three_t = Poly::from_ints(&[0, 3]);
        assert_eq!(two_t.gcd(&three_t).unwrap(), Poly::t());
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        assert_eq!(Poly::one().gcd(&Poly::t()).unwrap(), Poly::one());
        assert_eq!(Poly::zero().gcd(&Poly::zero()), Err(Error::BothZero));
    }

    #[test]
    fn xgcd_bezout() {
        let a = Poly::from_ints(&[1, 0, 1]);
        let b = Poly::from_ints(&[2, 3, 0, 1]);
        let (g, s, u) = a.xgcd(&b).unwrap();
        assert_eq!(&(&s * &a) + &(&u * &b), g);
        assert!(g.is_one());
    }

    #[test]
    fn division_identity() {
        let a = Poly::new(vec![q(1, 2), q(-3, 1), q(0, 1), q(5, 7)]);
        let d = Poly::from_ints(&[1, 1]);
        let (quo, rem) = a.div_rem(&d);
        assert_eq!(&(&quo * &d) + &rem, a);
        assert!(rem.deg() < d.deg() || rem.is_zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Poly::from_ints(&[0, -1, 1]).to_string(), "t^2-t");
        assert_eq!(Poly::new(vec![q(0, 1), q(-1, 2), q(1, 2)]).to_string(), "(t^2-t)/2");
        assert_eq!(Poly::constant(q(5, 2)).to_string(), "5/2");
        assert_eq!(Poly::new(vec![q(0, 1), q(-3, 2)]).to_string(), "-3*t/2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::from_ints(&[-1]).to_string(), "-1");
    }

    #[test]
    fn primitive_part() {
        let p = Poly::new(vec![q(-1, 2), q(0, 1), q(-3, 4)]);
        let (c, z) = p.to_primitive();
        assert_eq!(z, vec![BigInt::from(2), BigInt::from(0), BigInt::from(3)]);
        assert_eq!(c, q(-1, 4));
    }
}
