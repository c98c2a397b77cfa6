//! Exact scalar rings: Z, Q, Q[t] and Q(t).

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub mod factor;
pub mod parse;
pub mod partial;
mod poly;
mod ratfun;

pub use factor::{factor_bounded, Factorization, DEFAULT_FACTOR_DEGREE_BOUND};
pub use parse::parse_scalar;
pub use partial::{additive_decompose, partial_fractions, PartialFractions, SBasisElem};
pub use poly::Poly;
pub use ratfun::RatFun;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    Z,
    Q,
    QtPoly,
    QtField,
}

/// Which additive Q-basis describes the ring as a Q-vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdditiveBasisKind {
    /// Z and Q: constants only.
    Constants,
    /// Q[t]: monomials.
    Monomials,
    /// Q(t): monomials and simple fractions.
    PartialFractions,
}

impl RingKind {
    pub const ALL: [RingKind; 4] = [RingKind::Z, RingKind::Q, RingKind::QtPoly, RingKind::QtField];

    pub fn is_field(self) -> bool {
        matches!(self, RingKind::Q | RingKind::QtField)
    }

    pub fn has_gcd(self) -> bool {
        matches!(self, RingKind::Z | RingKind::QtPoly)
    }

    pub fn additive_basis_kind(self) -> AdditiveBasisKind {
        match self {
            RingKind::Z | RingKind::Q => AdditiveBasisKind::Constants,
            RingKind::QtPoly => AdditiveBasisKind::Monomials,
            RingKind::QtField => AdditiveBasisKind::PartialFractions,
        }
    }

    pub fn has_t(self) -> bool {
        matches!(self, RingKind::QtPoly | RingKind::QtField)
    }

    /// Accepts `Z`, `Q`, `Q[t]`, `Q(t)`.
    pub fn parse(s: &str) -> Option<RingKind> {
        match s.trim() {
            "Z" => Some(RingKind::Z),
            "Q" => Some(RingKind::Q),
            "Q[t]" => Some(RingKind::QtPoly),
            "Q(t)" => Some(RingKind::QtField),
            _ => None,
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::Z => "Z",
            RingKind::Q => "Q",
            RingKind::QtPoly => "Q[t]",
            RingKind::QtField => "Q(t)",
        })
    }
}

/// A binomial domain of characteristic zero embedded in Q(t).
pub trait Ring:
    Clone
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const KIND: RingKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: &Rational) -> Option<Self>;
    /// `Some(q)` iff `self` is a constant in Q.
    fn as_rational(&self) -> Option<Rational>;
    /// Multiplication by a rational, when the result stays in the ring.
    fn scale_rational(&self, q: &Rational) -> Option<Self>;
    fn to_ratfun(&self) -> RatFun;
    fn from_ratfun(f: &RatFun) -> Option<Self>;
    fn inv(&self) -> Result<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into())).expect("integers lie in every ring")
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// The indeterminate `t`, if the ring contains it.
    fn t() -> Option<Self> {
        Self::from_ratfun(&RatFun::t())
    }

    fn binomial(&self, k: u32) -> Self {
        let mut prod = Self::one();
        let mut fact: BigInt = One::one();
        for i in 0..k {
            prod = prod * (self.clone() - Self::from_i64(i as i64));
            fact *= BigInt::from(i + 1);
        }
        prod.scale_rational(&Rational::new(One::one(), fact))
            .expect("binomial coefficients stay in a binomial domain")
    }

    fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }
}

impl Ring for BigInt {
    const KIND: RingKind = RingKind::Z;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        q.is_integer().then(|| q.to_integer())
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(Rational::from_integer(self.clone()))
    }
    fn scale_rational(&self, q: &Rational) -> Option<Self> {
        let x = Rational::from_integer(self.clone()) * q;
        x.is_integer().then(|| x.to_integer())
    }
    fn to_ratfun(&self) -> RatFun {
        RatFun::constant(Rational::from_integer(self.clone()))
    }
    fn from_ratfun(f: &RatFun) -> Option<Self> {
        f.as_constant().and_then(|q| Self::from_rational(&q))
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        if self.magnitude().is_one() {
            Ok(self.clone())
        } else {
            Err(Error::NotInvertible(self.to_string(), RingKind::Z))
        }
    }
}

impl Ring for Rational {
    const KIND: RingKind = RingKind::Q;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn scale_rational(&self, q: &Rational) -> Option<Self> {
        Some(self * q)
    }
    fn to_ratfun(&self) -> RatFun {
        RatFun::constant(self.clone())
    }
    fn from_ratfun(f: &RatFun) -> Option<Self> {
        f.as_constant()
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

impl Ring for Poly {
    const KIND: RingKind = RingKind::QtPoly;

    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(Poly::constant(q.clone()))
    }
    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
    fn scale_rational(&self, q: &Rational) -> Option<Self> {
        Some(self.scale(q))
    }
    fn to_ratfun(&self) -> RatFun {
        RatFun::from_poly(self.clone())
    }
    fn from_ratfun(f: &RatFun) -> Option<Self> {
        f.as_poly().cloned()
    }
    fn inv(&self) -> Result<Self> {
        match self.as_constant() {
            Some(c) if Zero::is_zero(&c) => Err(Error::DivisionByZero),
            Some(c) => Ok(Poly::constant(c.recip())),
            None => Err(Error::NotInvertible(self.to_string(), RingKind::QtPoly)),
        }
    }
}

impl Ring for RatFun {
    const KIND: RingKind = RingKind::QtField;

    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(RatFun::constant(q.clone()))
    }
    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
    fn scale_rational(&self, q: &Rational) -> Option<Self> {
        Some(self.scale(q))
    }
    fn to_ratfun(&self) -> RatFun {
        self.clone()
    }
    fn from_ratfun(f: &RatFun) -> Option<Self> {
        Some(f.clone())
    }
    fn inv(&self) -> Result<Self> {
        RatFun::inv(self)
    }
}

/// Ring-tagged scalar for code that picks the ring at run time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    IntZ(BigInt),
    RatQ(Rational),
    PolyQt(Poly),
    FunQt(RatFun),
}

macro_rules! binop {
    ($name:ident, $op:tt) => {
        pub fn $name(&self, other: &Scalar) -> Result<Scalar> {
            use Scalar::*;
            Ok(match (self, other) {
                (IntZ(a), IntZ(b)) => IntZ(a $op b),
                (RatQ(a), RatQ(b)) => RatQ(a $op b),
                (PolyQt(a), PolyQt(b)) => PolyQt(a $op b),
                (FunQt(a), FunQt(b)) => FunQt(a $op b),
                _ => return Err(Error::MixedRings(self.kind(), other.kind())),
            })
        }
    };
}

impl Scalar {
    pub fn kind(&self) -> RingKind {
        match self {
            Scalar::IntZ(_) => RingKind::Z,
            Scalar::RatQ(_) => RingKind::Q,
            Scalar::PolyQt(_) => RingKind::QtPoly,
            Scalar::FunQt(_) => RingKind::QtField,
        }
    }

    /// Embeds a rational function into `kind`, if it belongs there.
    pub fn from_ratfun(kind: RingKind, f: &RatFun) -> Option<Scalar> {
        Some(match kind {
            RingKind::Z => Scalar::IntZ(BigInt::from_ratfun(f)?),
            RingKind::Q => Scalar::RatQ(Rational::from_ratfun(f)?),
            RingKind::QtPoly => Scalar::PolyQt(Poly::from_ratfun(f)?),
            RingKind::QtField => Scalar::FunQt(f.clone()),
        })
    }

    pub fn to_ratfun(&self) -> RatFun {
        match self {
            Scalar::IntZ(a) => a.to_ratfun(),
            Scalar::RatQ(a) => a.to_ratfun(),
            Scalar::PolyQt(a) => a.to_ratfun(),
            Scalar::FunQt(a) => a.clone(),
        }
    }

    binop!(add, +);
    binop!(sub, -);
    binop!(mul, *);

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::IntZ(a) => Scalar::IntZ(-a),
            Scalar::RatQ(a) => Scalar::RatQ(-a),
            Scalar::PolyQt(a) => Scalar::PolyQt(-a),
            Scalar::FunQt(a) => Scalar::FunQt(-a),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        Ok(match self {
            Scalar::IntZ(a) => Scalar::IntZ(Ring::inv(a)?),
            Scalar::RatQ(a) => Scalar::RatQ(Ring::inv(a)?),
            Scalar::PolyQt(a) => Scalar::PolyQt(Ring::inv(a)?),
            Scalar::FunQt(a) => Scalar::FunQt(Ring::inv(a)?),
        })
    }

    /// Exact quotient; fails when `other` is not invertible and does not divide.
    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        if self.kind() != other.kind() {
            return Err(Error::MixedRings(self.kind(), other.kind()));
        }
        let q = self.to_ratfun().div(&other.to_ratfun())?;
        Scalar::from_ratfun(self.kind(), &q)
            .ok_or_else(|| Error::NotInvertible(other.to_string(), other.kind()))
    }

    pub fn binomial(&self, k: u32) -> Scalar {
        match self {
            Scalar::IntZ(a) => Scalar::IntZ(a.binomial(k)),
            Scalar::RatQ(a) => Scalar::RatQ(a.binomial(k)),
            Scalar::PolyQt(a) => Scalar::PolyQt(a.binomial(k)),
            Scalar::FunQt(a) => Scalar::FunQt(a.binomial(k)),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::IntZ(a) => a.as_rational(),
            Scalar::RatQ(a) => a.as_rational(),
            Scalar::PolyQt(a) => a.as_rational(),
            Scalar::FunQt(a) => a.as_rational(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::IntZ(a) => write!(f, "{a}"),
            Scalar::RatQ(a) => write!(f, "{a}"),
            Scalar::PolyQt(a) => write!(f, "{a}"),
            Scalar::FunQt(a) => write!(f, "{a}"),
        }
    }
}

/// Integer binomial coefficient, used by oracles.
pub fn int_binomial(n: &BigInt, k: u32) -> BigInt {
    let mut num: BigInt = One::one();
    let mut den: BigInt = One::one();
    for i in 0..k {
        num *= n - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num.div_floor(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_rationals() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
    }

    #[test]
    fn binomial_examples() {
        let b = Poly::t().binomial(2);
        assert_eq!(b, Poly::new(vec![rat(0, 1), rat(-1, 2), rat(1, 2)]));
        assert!(Poly::t().binomial(0).is_one());
        assert_eq!(BigInt::from(5).binomial(2), BigInt::from(10));
        assert_eq!(BigInt::from(-3).binomial(2), BigInt::from(6));
        assert_eq!(int_binomial(&BigInt::from(-3), 2), BigInt::from(6));
    }

    #[test]
    fn inverses() {
        let f = RatFun::from_poly(Poly::from_ints(&[-1, 1]));
        assert_eq!(Ring::inv(&f).unwrap().to_string(), "1/(t-1)");
        assert!(matches!(Ring::inv(&Poly::t()), Err(Error::NotInvertible(_, RingKind::QtPoly))));
        assert_eq!(Ring::inv(&BigInt::from(-1)).unwrap(), BigInt::from(-1));
        assert!(Ring::inv(&BigInt::from(2)).is_err());
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = Scalar::RatQ(rat(1, 2));
        let b = Scalar::PolyQt(Poly::t());
        assert_eq!(a.add(&b), Err(Error::MixedRings(RingKind::Q, RingKind::QtPoly)));
    }

    #[test]
    fn as_rational_examples() {
        assert_eq!(Poly::constant(rat(5, 2)).as_rational(), Some(rat(5, 2)));
        assert_eq!(Poly::t().as_rational(), None);
        let f = RatFun::new(Poly::from_ints(&[0, 2]), Poly::from_ints(&[0, 4])).unwrap();
        assert_eq!(Ring::as_rational(&f), Some(rat(1, 2)));
    }

    #[test]
    fn scalar_division() {
        let a = Scalar::PolyQt(Poly::from_ints(&[-1, 0, 1]));
        let b = Scalar::PolyQt(Poly::from_ints(&[-1, 1]));
        assert_eq!(a.div(&b).unwrap(), Scalar::PolyQt(Poly::from_ints(&[1, 1])));
        assert!(b.div(&a).is_err());
    }
}
