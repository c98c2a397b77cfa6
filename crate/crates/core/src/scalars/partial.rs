//! Partial fractions and the additive Q-basis of Q(t).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use super::factor::factor_bounded;
use super::{Poly, RatFun, Rational, Ring};
use crate::error::Result;

/// Element of the additive Q-basis of Q(t): `t^k`, or `t^j / p^m` with `p`
/// monic irreducible and `j < deg p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SBasisElem {
    Monomial(usize),
    SimpleFraction { p: Poly, m: u32, j: usize },
}

impl SBasisElem {
    pub fn value(&self) -> RatFun {
        match self {
            SBasisElem::Monomial(k) => RatFun::from_poly(Poly::t().pow(*k as u32)),
            SBasisElem::SimpleFraction { p, m, j } => {
                RatFun::new(Poly::t().pow(*j as u32), p.pow(*m)).expect("p is nonzero")
            }
        }
    }

    pub fn is_one(&self) -> bool {
        *self == SBasisElem::Monomial(0)
    }
}

fn fmt_monomial(k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => "t".into(),
        _ => format!("t^{k}"),
    }
}

impl fmt::Display for SBasisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SBasisElem::Monomial(k) => f.write_str(&fmt_monomial(*k)),
            SBasisElem::SimpleFraction { p, m, j } => {
                let base = if p.term_count() == 1 && p.coeffs().iter().all(|c| c.is_integer()) {
                    p.to_string()
                } else {
                    format!("({p})")
                };
                let den = if *m == 1 { base } else { format!("{base}^{m}") };
                write!(f, "{}/{}", fmt_monomial(*j), den)
            }
        }
    }
}

/// `poly + sum(coeff * elem)` with every elem a simple fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub poly: Poly,
    pub terms: BTreeMap<SBasisElem, Rational>,
}

impl PartialFractions {
    pub fn recombine(&self) -> RatFun {
        self.terms.iter().fold(RatFun::from_poly(self.poly.clone()), |acc, (e, c)| {
            &acc + &e.value().scale(c)
        })
    }
}

struct PrimePowerPart {
    p: Poly,
    e: u32,
    pe: Poly,
    /// Inverse of `den / p^e` modulo `p^e`.
    cofactor_inv: Poly,
}

/// Caches the factorization work for each denominator it sees. Meant to live
/// for a single reduction call.
pub struct PartialFractionPlanner {
    max_deg: usize,
    plans: HashMap<Poly, Vec<PrimePowerPart>>,
}

impl PartialFractionPlanner {
    pub fn new(max_deg: usize) -> Self {
        PartialFractionPlanner { max_deg, plans: HashMap::new() }
    }

    fn plan(&mut self, den: &Poly) -> Result<&Vec<PrimePowerPart>> {
        if !self.plans.contains_key(den) {
            let fac = factor_bounded(den, self.max_deg)?;
            let parts = fac
                .factors
                .into_iter()
                .map(|(p, e)| {
                    let pe = p.pow(e);
                    let cof = den.div_exact(&pe).expect("factor divides");
                    let cofactor_inv = cof.inv_mod(&pe).expect("coprime parts");
                    PrimePowerPart { p, e, pe, cofactor_inv }
                })
                .collect();
            self.plans.insert(den.clone(), parts);
        }
        Ok(&self.plans[den])
    }

    pub fn decompose_fraction(&mut self, f: &RatFun) -> Result<PartialFractions> {
        let (poly, rem) = f.num().div_rem(f.den());
        let mut terms = BTreeMap::new();
        if !rem.is_zero() {
            for part in self.plan(f.den())? {
                let mut c = (&rem * &part.cofactor_inv).rem(&part.pe);
                // p-adic expansion: c = sum_l c_l p^l, giving c_l / p^(e-l)
                for l in 0..part.e {
                    let (q, r) = c.div_rem(&part.p);
                    for (j, coeff) in r.coeffs().iter().enumerate() {
                        if !Zero::is_zero(coeff) {
                            let key = SBasisElem::SimpleFraction { p: part.p.clone(), m: part.e - l, j };
                            terms.insert(key, coeff.clone());
                        }
                    }
                    c = q;
                }
            }
        }
        Ok(PartialFractions { poly, terms })
    }

    /// Coordinates of `a` in the standard additive basis.
    pub fn decompose<R: Ring>(&mut self, a: &R) -> Result<BTreeMap<SBasisElem, Rational>> {
        let pf = self.decompose_fraction(&a.to_ratfun())?;
        let mut out = pf.terms;
        for (k, c) in pf.poly.coeffs().iter().enumerate() {
            if !Zero::is_zero(c) {
                out.insert(SBasisElem::Monomial(k), c.clone());
            }
        }
        Ok(out)
    }
}

pub fn partial_fractions(f: &RatFun, max_deg: usize) -> Result<PartialFractions> {
    PartialFractionPlanner::new(max_deg).decompose_fraction(f)
}

pub fn additive_decompose<R: Ring>(a: &R, max_deg: usize) -> Result<BTreeMap<SBasisElem, Rational>> {
    PartialFractionPlanner::new(max_deg).decompose(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, DEFAULT_FACTOR_DEGREE_BOUND as B};

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    fn sf(p: &[i64], m: u32, j: usize) -> SBasisElem {
        SBasisElem::SimpleFraction { p: Poly::from_ints(p), m, j }
    }

    #[test]
    fn inverse_difference_of_squares() {
        let pf = partial_fractions(&rf(&[1], &[-1, 0, 1]), B).unwrap();
        assert!(pf.poly.is_zero());
        assert_eq!(pf.terms, BTreeMap::from([(sf(&[-1, 1], 1, 0), rat(1, 2)), (sf(&[1, 1], 1, 0), rat(-1, 2))]));
        assert_eq!(pf.recombine(), rf(&[1], &[-1, 0, 1]));
    }

    #[test]
    fn exact_division_has_no_fractions() {
        let pf = partial_fractions(&rf(&[0, 0, 0, 1], &[0, 1]), B).unwrap();
        assert_eq!(pf.poly, Poly::from_ints(&[0, 0, 1]));
        assert!(pf.terms.is_empty());
    }

    #[test]
    fn simple_fraction_already() {
        let pf = partial_fractions(&rf(&[1], &[0, 0, 1]), B).unwrap();
        assert_eq!(pf.terms, BTreeMap::from([(sf(&[0, 1], 2, 0), rat(1, 1))]));
    }

    #[test]
    fn decompose_examples() {
        let a = Poly::from_ints(&[3, 0, 2]);
        assert_eq!(
            additive_decompose(&a, B).unwrap(),
            BTreeMap::from([(SBasisElem::Monomial(0), rat(3, 1)), (SBasisElem::Monomial(2), rat(2, 1))])
        );
        let b = rf(&[1], &[-1, 1]);
        assert_eq!(additive_decompose(&b, B).unwrap(), BTreeMap::from([(sf(&[-1, 1], 1, 0), rat(1, 1))]));
        let c = rf(&[1, 0, 0, 1], &[0, 1]);
        assert_eq!(
            additive_decompose(&c, B).unwrap(),
            BTreeMap::from([(SBasisElem::Monomial(2), rat(1, 1)), (sf(&[0, 1], 1, 0), rat(1, 1))])
        );
    }

    #[test]
    fn repeated_quadratic_factor() {
        // (t^3 + 2) / ((t^2+1)^2 (t-3))
        let den = &Poly::from_ints(&[1, 0, 1]).pow(2) * &Poly::from_ints(&[-3, 1]);
        let f = RatFun::new(Poly::from_ints(&[2, 0, 0, 1]), den).unwrap();
        let pf = partial_fractions(&f, B).unwrap();
        assert_eq!(pf.recombine(), f);
        assert!(pf.terms.keys().all(|k| match k {
            SBasisElem::SimpleFraction { p, j, .. } => *j < p.deg(),
            _ => false,
        }));
    }

    #[test]
    fn display() {
        assert_eq!(sf(&[-1, 1], 1, 0).to_string(), "1/(t-1)");
        assert_eq!(sf(&[0, 1], 2, 0).to_string(), "1/t^2");
        assert_eq!(sf(&[1, 0, 1], 3, 1).to_string(), "t/(t^2+1)^3");
        assert_eq!(SBasisElem::Monomial(0).to_string(), "1");
    }
}
