//! The free module D on canonical c-commutator keys.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hall::fmt_factors;
use crate::scalars::{Poly, RatFun, Ring, SBasisElem};

/// `c(x^{t^k alpha0}, y^{t^k beta0})_t` over Q[t].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CKeyPoly {
    pub alpha0: Poly,
    pub beta0: Poly,
    pub k: usize,
}

impl CKeyPoly {
    pub fn new(alpha0: Poly, beta0: Poly, k: usize) -> Self {
        debug_assert!(alpha0.is_monic() && !beta0.is_zero());
        CKeyPoly { alpha0, beta0, k }
    }

    pub fn alpha(&self) -> Poly {
        self.alpha0.shift(self.k)
    }

    pub fn beta(&self) -> Poly {
        self.beta0.shift(self.k)
    }

    /// A key is canonical when `alpha0` is monic and coprime to `beta0`.
    pub fn is_canonical(&self) -> bool {
        self.alpha0.is_monic()
            && !self.beta0.is_zero()
            && self.alpha0.gcd(&self.beta0).is_ok_and(|g| g.is_one())
    }
}

impl Ord for CKeyPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k
            .cmp(&other.k)
            .then_with(|| self.alpha0.cmp(&other.alpha0))
            .then_with(|| self.beta0.cmp(&other.beta0))
    }
}

impl PartialOrd for CKeyPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `c(x^{s}, y^{betahat s})_t` over Q(t).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CKeyField {
    pub s: SBasisElem,
    pub betahat: RatFun,
}

impl CKeyField {
    pub fn alpha(&self) -> RatFun {
        self.s.value()
    }

    pub fn beta(&self) -> RatFun {
        &self.betahat * &self.s.value()
    }
}

/// Uninterpreted `c(u^g, u^h)_sub` for schemas without a certified basis.
#[derive(Clone, Debug)]
pub struct FormalCKey<R: Ring> {
    pub g: Vec<R>,
    pub h: Vec<R>,
    pub sub: R,
    names: Arc<[String]>,
}

impl<R: Ring> FormalCKey<R> {
    pub fn new(g: Vec<R>, h: Vec<R>, sub: R, names: Arc<[String]>) -> Self {
        FormalCKey { g, h, sub, names }
    }

    fn parts(&self) -> (&[R], &[R], &R) {
        (&self.g, &self.h, &self.sub)
    }
}

impl<R: Ring> PartialEq for FormalCKey<R> {
    fn eq(&self, other: &Self) -> bool {
        self.parts() == other.parts()
    }
}

impl<R: Ring> Eq for FormalCKey<R> {}

impl<R: Ring> Hash for FormalCKey<R> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parts().hash(state)
    }
}

impl<R: Ring> Ord for FormalCKey<R> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts().cmp(&other.parts())
    }
}

impl<R: Ring> PartialOrd for FormalCKey<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CKey<R: Ring> {
    Poly(CKeyPoly),
    Field(CKeyField),
    Formal(FormalCKey<R>),
}

/// Compares keys of the same variant.
pub fn key_order<R: Ring>(k1: &CKey<R>, k2: &CKey<R>) -> Result<Ordering> {
    match (k1, k2) {
        (CKey::Poly(a), CKey::Poly(b)) => Ok(a.cmp(b)),
        (CKey::Field(a), CKey::Field(b)) => Ok(a.cmp(b)),
        (CKey::Formal(a), CKey::Formal(b)) => Ok(a.cmp(b)),
        _ => Err(Error::MixedVariants),
    }
}

fn fmt_subscript<R: Ring>(sub: &R) -> String {
    let s = sub.to_string();
    if s == "t" {
        s
    } else {
        format!("{{{s}}}")
    }
}

fn fmt_coords<R: Ring>(names: &[String], v: &[R]) -> String {
    let f: Vec<_> = names
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| (n.clone(), c))
        .collect();
    if f.is_empty() {
        "1".into()
    } else {
        fmt_factors(&f)
    }
}

impl fmt::Display for CKeyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c(x^{{{}}}, y^{{{}}})_t", self.alpha(), self.beta())
    }
}

impl fmt::Display for CKeyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c(x^{{{}}}, y^{{{}}})_t", self.s, self.beta())
    }
}

impl<R: Ring> fmt::Display for FormalCKey<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "c({}, {})_{}",
            fmt_coords(&self.names, &self.g),
            fmt_coords(&self.names, &self.h),
            fmt_subscript(&self.sub)
        )
    }
}

impl<R: Ring> fmt::Display for CKey<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CKey::Poly(k) => k.fmt(f),
            CKey::Field(k) => k.fmt(f),
            CKey::Formal(k) => k.fmt(f),
        }
    }
}

/// Finite R-linear combination of keys; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DVector<R: Ring> {
    terms: BTreeMap<CKey<R>, R>,
}

impl<R: Ring> Default for DVector<R> {
    fn default() -> Self {
        DVector { terms: BTreeMap::new() }
    }
}

impl<R: Ring> DVector<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: CKey<R>, coeff: R) -> Self {
        let mut v = Self::zero();
        v.add_term(key, coeff);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &CKey<R>) -> Option<&R> {
        self.terms.get(key)
    }

    /// Terms in ascending key order.
    pub fn iter(&self) -> impl Iterator<Item = (&CKey<R>, &R)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CKey<R>> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: CKey<R>, coeff: R) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &R) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), c.clone() * v.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-R::one());
        out
    }

    pub fn neg(&self) -> Self {
        DVector { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Multiplies by a rational; `None` if the ring cannot absorb it.
    pub fn scale_rational(&self, q: &crate::scalars::Rational) -> Option<Self> {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.scale_rational(q)?);
        }
        Some(out)
    }
}

impl<R: Ring> FromIterator<(CKey<R>, R)> for DVector<R> {
    fn from_iter<I: IntoIterator<Item = (CKey<R>, R)>>(iter: I) -> Self {
        let mut v = Self::zero();
        for (k, c) in iter {
            v.add_term(k, c);
        }
        v
    }
}

impl<R: Ring> fmt::Display for DVector<R> {
    /// `key^{coeff}` terms joined by ` * `; empty for the zero vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.terms.iter().map(|(k, c)| format!("{k}^{{{c}}}")).collect();
        f.write_str(&parts.join(" * "))
    }
}

/// Splits a pair into `gamma * (alpha0, beta0)` with `alpha0` monic and
/// coprime to `beta0`.
pub fn canonical_pair_poly(alpha: &Poly, beta: &Poly) -> Result<(Poly, Poly, Poly)> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::ZeroInput);
    }
    let g = alpha.gcd(beta)?;
    let a = alpha.div_exact(&g).expect("gcd divides");
    let b = beta.div_exact(&g).expect("gcd divides");
    let lc = a.lc().expect("nonzero").clone();
    let inv = lc.recip();
    Ok((a.scale(&inv), b.scale(&inv), g.scale(&lc)))
}

/// Over a field every nonzero pair is `alpha * (1, beta/alpha)`.
pub fn canonical_pair_field(alpha: &RatFun, beta: &RatFun) -> Result<(RatFun, RatFun)> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok((beta.div(alpha)?, alpha.clone()))
}
