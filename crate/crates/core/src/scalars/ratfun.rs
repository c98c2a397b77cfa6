use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::forward_owned;
use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Element of Q(t), kept reduced with a monic denominator so that equality
/// is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.lc().expect("nonzero").recip();
        Ok(RatFun { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn t() -> Self {
        RatFun::from_poly(Poly::t())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if num_traits::Zero::is_zero(c) {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `num / den` for coprime inputs: only the leading coefficient is fixed.
    fn unit_den(num: Poly, den: Poly) -> RatFun {
        if num.is_zero() {
            return RatFun::zero();
        }
        if den.is_monic() {
            return RatFun { num, den };
        }
        let lc = den.lc().expect("nonzero").recip();
        RatFun { num: num.scale(&lc), den: den.scale(&lc) }
    }
}

impl Ord for RatFun {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num.cmp(&other.num).then_with(|| self.den.cmp(&other.den))
    }
}

impl PartialOrd for RatFun {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &'a RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num + &rhs.num);
        }
        // With g = gcd(d1, d2), only g can share factors with the numerator.
        let g = self.den.gcd(&rhs.den).expect("denominators are nonzero");
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFun::unit_den(num, &self.den * &rhs.den);
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return RatFun::zero();
        }
        let g2 = num.gcd(&g).expect("nonzero");
        let num = num.div_exact(&g2).expect("gcd divides");
        let den = &(&d1 * &d2) * &g.div_exact(&g2).expect("gcd divides");
        RatFun::unit_den(num, den)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &'a RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &'a RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        // Both operands are reduced, so cross-cancelling suffices.
        let cancel = |n: &Poly, d: &Poly| {
            let g = n.gcd(d).expect("nonzero");
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
            }
        };
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        RatFun::unit_den(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

forward_owned!(RatFun, Add add, Sub sub, Mul mul);

impl fmt::Display for RatFun {
    /// Numerator and denominator are scaled to integer coefficients, e.g.
    /// `1/(4*t+2)`; polynomials print as in [`Poly`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let clear = self
            .num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .fold(num_bigint::BigInt::from(1), |acc, c| {
                num_integer::Integer::lcm(&acc, c.denom())
            });
        let clear = Rational::from_integer(clear);
        let (num, den) = (self.num.scale(&clear), self.den.scale(&clear));
        let num = if num.term_count() > 1 { format!("({num})") } else { num.to_string() };
        // `4*t` must be bracketed in a denominator, `t^2` and `4` need not be.
        let den = den.to_string();
        if den.chars().all(|c| c.is_ascii_alphanumeric() || c == '^') {
            write!(f, "{num}/{den}")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}
