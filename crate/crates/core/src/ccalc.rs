//! Reduction of c-commutators to normal forms in D.
//!
//! Every c-commutator `c(u^g, u^h)_lambda` is reduced in three steps:
//!
//! 1. It vanishes when `g` and `h` commute or `lambda` is rational.
//! 2. The subscript is brought down to `t`: a fraction `p/q` uses
//!    `c(g,h)_{p/q} = c(g^{1/q}, h^{1/q})_p - (p/q) c(g^{1/q}, h^{1/q})_q`,
//!    a polynomial is split into monomials with rational coefficients pulled
//!    out, and `t^i` is peeled one factor of `t` at a time.
//! 3. At subscript `t` the pair is replaced by a basis key (rank 2) or kept
//!    as an uninterpreted key (formal mode).

use std::collections::HashMap;
use std::sync::Arc;

use crate::dmodule::{canonical_pair_field, canonical_pair_poly, CKey, CKeyField, CKeyPoly, DVector, FormalCKey};
use crate::error::{Error, Result};
use crate::hall::{sigma, GroupSchema};
use crate::scalars::partial::PartialFractionPlanner;
use crate::scalars::{Poly, RatFun, Rational, Ring, RingKind, SBasisElem, DEFAULT_FACTOR_DEGREE_BOUND};
use crate::tensor::TensorElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyKind {
    PolyRank2,
    FieldRank2,
    FormalGeneric,
}

/// How `c(g,h)_{t^i}` is peeled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SplitOrder {
    /// `t^i = t * t^(i-1)`: `c(g^t, h^t)_{t^(i-1)} + t^(i-1) c(g,h)_t`.
    #[default]
    Left,
    /// `t^i = t^(i-1) * t`: `c(g^(t^(i-1)), h^(t^(i-1)))_t + t c(g,h)_{t^(i-1)}`.
    Right,
}

/// Additive basis of Q(t) used to label field keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SBasisKind {
    /// Monomials `t^k` (k >= 0) and simple fractions.
    #[default]
    Std,
    /// As `Std` but without the unit 1.
    Paper,
}

#[derive(Clone, Debug)]
pub struct Strategy {
    kind: StrategyKind,
    schema: Arc<GroupSchema>,
    names: Arc<[String]>,
    pub split: SplitOrder,
    pub s_basis: SBasisKind,
    pub max_deg: usize,
}

impl Strategy {
    pub fn new(kind: StrategyKind, schema: Arc<GroupSchema>) -> Result<Self> {
        if kind != StrategyKind::FormalGeneric && !schema.is_free_rank2() {
            return Err(Error::StrategyMismatch(format!("{kind:?} needs the rank-2 free schema")));
        }
        let names: Arc<[String]> = schema.gen_names().into();
        Ok(Strategy {
            kind,
            schema,
            names,
            split: SplitOrder::Left,
            s_basis: SBasisKind::Std,
            max_deg: DEFAULT_FACTOR_DEGREE_BOUND,
        })
    }

    pub fn poly_rank2() -> Self {
        Strategy::new(StrategyKind::PolyRank2, GroupSchema::rank2()).expect("rank 2")
    }

    pub fn field_rank2() -> Self {
        Strategy::new(StrategyKind::FieldRank2, GroupSchema::rank2()).expect("rank 2")
    }

    pub fn formal(schema: Arc<GroupSchema>) -> Self {
        Strategy::new(StrategyKind::FormalGeneric, schema).expect("formal accepts any schema")
    }

    /// The certified strategy for the rank-2 schema over Q[t] or Q(t), and
    /// formal mode otherwise.
    pub fn auto(ring: RingKind, schema: Arc<GroupSchema>) -> Self {
        let kind = match ring {
            RingKind::QtPoly if schema.is_free_rank2() => StrategyKind::PolyRank2,
            RingKind::QtField if schema.is_free_rank2() => StrategyKind::FieldRank2,
            _ => StrategyKind::FormalGeneric,
        };
        Strategy::new(kind, schema).expect("kind matches schema")
    }

    pub fn with_split(mut self, split: SplitOrder) -> Self {
        self.split = split;
        self
    }

    pub fn with_s_basis(mut self, s: SBasisKind) -> Self {
        self.s_basis = s;
        self
    }

    pub fn with_max_deg(mut self, d: usize) -> Self {
        self.max_deg = d;
        self
    }

    pub fn kind(&self) -> StrategyKind {
        self.kind
    }

    pub fn schema(&self) -> &Arc<GroupSchema> {
        &self.schema
    }

    /// Whether outputs are normal forms, so equality is meaningful.
    pub fn is_canonical(&self) -> bool {
        self.kind != StrategyKind::FormalGeneric
    }

    fn check_ring<R: Ring>(&self) -> Result<()> {
        let needed = match self.kind {
            StrategyKind::PolyRank2 => RingKind::QtPoly,
            StrategyKind::FieldRank2 => RingKind::QtField,
            StrategyKind::FormalGeneric => return Ok(()),
        };
        if R::KIND == needed {
            Ok(())
        } else {
            Err(Error::StrategyMismatch(format!("{:?} needs {needed}, got {}", self.kind, R::KIND)))
        }
    }

    fn ctx<R: Ring>(&self) -> Result<Ctx<'_, R>> {
        self.check_ring::<R>()?;
        Ok(Ctx {
            strat: self,
            planner: PartialFractionPlanner::new(self.max_deg),
            leaves: HashMap::new(),
            monomials: HashMap::new(),
        })
    }

    fn rank2_pair<R: Ring>(&self, alpha: &R, beta: &R) -> Result<(Vec<R>, Vec<R>)> {
        if !self.schema.is_free_rank2() {
            return Err(Error::StrategyMismatch("x/y coordinates need the rank-2 schema".into()));
        }
        Ok((vec![alpha.clone(), R::zero()], vec![R::zero(), beta.clone()]))
    }

    /// Normal form of `c(x^alpha, y^beta)_lambda` in D.
    pub fn ccoord<R: Ring>(&self, alpha: &R, beta: &R, lambda: &R) -> Result<DVector<R>> {
        let (g, h) = self.rank2_pair(alpha, beta)?;
        self.ctx()?.reduce(&g, &h, lambda)
    }

    /// `c(u^g, u^h)_lambda` with generic rewrites only: the result uses
    /// uninterpreted keys and is not a normal form.
    pub fn ccoord_formal<R: Ring>(&self, g: &[R], h: &[R], lambda: &R) -> Result<DVector<R>> {
        if self.kind != StrategyKind::FormalGeneric {
            return Err(Error::StrategyMismatch("formal reduction needs the formal strategy".into()));
        }
        self.ctx()?.reduce(g, h, lambda)
    }

    /// D-part picked up by raising an element with abelian coordinates `a`
    /// to the power `mu`: `sum_i c(u1^a1...ui^ai, u(i+1)^a(i+1))_mu`.
    pub fn exp_increment<R: Ring>(&self, a: &[R], mu: &R) -> Result<DVector<R>> {
        let mut ctx = self.ctx()?;
        ctx.exp_increment(a, mu)
    }

    /// `c(g, h)_lambda` for elements with abelian coordinates `g`, `h`.
    pub fn c_pair<R: Ring>(&self, g: &[R], h: &[R], lambda: &R) -> Result<DVector<R>> {
        let mut ctx = self.ctx()?;
        ctx.c_pair(g, h, lambda)
    }
}

type Pair<R> = (Vec<R>, Vec<R>);

struct Ctx<'s, R: Ring> {
    strat: &'s Strategy,
    planner: PartialFractionPlanner,
    leaves: HashMap<Pair<R>, DVector<R>>,
    monomials: HashMap<(Pair<R>, usize), DVector<R>>,
}

fn scale<R: Ring>(v: &[R], c: &R) -> Vec<R> {
    v.iter().map(|x| c.clone() * x.clone()).collect()
}

impl<R: Ring> Ctx<'_, R> {
    fn exp_increment(&mut self, a: &[R], mu: &R) -> Result<DVector<R>> {
        let m = a.len();
        let mut out = DVector::zero();
        let mut prefix = vec![R::zero(); m];
        for i in 0..m.saturating_sub(1) {
            prefix[i] = a[i].clone();
            let mut single = vec![R::zero(); m];
            single[i + 1] = a[i + 1].clone();
            out.add_assign(&self.reduce(&prefix, &single, mu)?);
        }
        Ok(out)
    }

    fn c_pair(&mut self, g: &[R], h: &[R], lambda: &R) -> Result<DVector<R>> {
        let gh: Vec<R> = g.iter().zip(h).map(|(x, y)| x.clone() + y.clone()).collect();
        let mut out = self.exp_increment(&gh, lambda)?;
        out = out.sub(&self.exp_increment(g, lambda)?);
        Ok(out.sub(&self.exp_increment(h, lambda)?))
    }

    fn commute(&self, g: &[R], h: &[R]) -> bool {
        let s = &self.strat.schema;
        sigma(g, h, s).expect("length m") == sigma(h, g, s).expect("length m")
    }

    fn reduce(&mut self, g: &[R], h: &[R], lambda: &R) -> Result<DVector<R>> {
        if lambda.as_rational().is_some() || self.commute(g, h) {
            return Ok(DVector::zero());
        }
        let lf = lambda.to_ratfun();
        if !lf.is_polynomial() {
            let q = RatFun::from_poly(lf.den().clone());
            let p = RatFun::from_poly(lf.num().clone());
            let q_inv = R::from_ratfun(&q.inv()?).expect("a fraction subscript implies a field");
            let (g1, h1) = (scale(g, &q_inv), scale(h, &q_inv));
            let (pr, qr) = (R::from_ratfun(&p).expect("poly"), R::from_ratfun(&q).expect("poly"));
            let mut out = self.reduce(&g1, &h1, &pr)?;
            let tail = self.reduce(&g1, &h1, &qr)?;
            out.add_scaled(&tail, &-(pr * q_inv));
            return Ok(out);
        }
        let mut out = DVector::zero();
        for (i, r) in lf.num().coeffs().iter().enumerate().skip(1) {
            if num_traits::Zero::is_zero(r) {
                continue;
            }
            let v = self.monomial(g, h, i)?;
            out.add_assign(&scale_q(&v, r));
        }
        Ok(out)
    }

    /// `c(g, h)_{t^i}` for `i >= 1`.
    fn monomial(&mut self, g: &[R], h: &[R], i: usize) -> Result<DVector<R>> {
        if i == 1 {
            return self.leaf(g, h);
        }
        let key = ((g.to_vec(), h.to_vec()), i);
        if let Some(v) = self.monomials.get(&key) {
            return Ok(v.clone());
        }
        let t = R::t().expect("a non-rational subscript implies t is in the ring");
        let ti1 = t.pow(i as u32 - 1);
        let out = match self.strat.split {
            SplitOrder::Left => {
                let mut out = self.monomial(&scale(g, &t), &scale(h, &t), i - 1)?;
                out.add_scaled(&self.leaf(g, h)?, &ti1);
                out
            }
            SplitOrder::Right => {
                let mut out = self.leaf(&scale(g, &ti1), &scale(h, &ti1))?;
                out.add_scaled(&self.monomial(g, h, i - 1)?, &t);
                out
            }
        };
        self.monomials.insert(key, out.clone());
        Ok(out)
    }

    /// `c(g, h)_t`.
    fn leaf(&mut self, g: &[R], h: &[R]) -> Result<DVector<R>> {
        let key = (g.to_vec(), h.to_vec());
        if let Some(v) = self.leaves.get(&key) {
            return Ok(v.clone());
        }
        let v = if self.commute(g, h) {
            DVector::zero()
        } else {
            match self.strat.kind {
                StrategyKind::PolyRank2 => self.leaf_poly(&g[0], &h[1])?,
                StrategyKind::FieldRank2 => self.leaf_field(&g[0], &h[1])?,
                StrategyKind::FormalGeneric => {
                    let t = R::t().expect("t in ring");
                    let k = FormalCKey::new(g.to_vec(), h.to_vec(), t, self.strat.names.clone());
                    DVector::single(CKey::Formal(k), R::one())
                }
            }
        };
        self.leaves.insert(key, v.clone());
        Ok(v)
    }

    fn leaf_poly(&mut self, alpha: &R, beta: &R) -> Result<DVector<R>> {
        let (a, b) = (as_poly(alpha), as_poly(beta));
        let (alpha0, beta0, gamma) = canonical_pair_poly(&a, &b)?;
        let mut out = DVector::zero();
        for (k, r) in gamma.coeffs().iter().enumerate() {
            if let Some(c) = R::from_rational(r) {
                out.add_term(CKey::Poly(CKeyPoly::new(alpha0.clone(), beta0.clone(), k)), c);
            }
        }
        Ok(out)
    }

    fn leaf_field(&mut self, alpha: &R, beta: &R) -> Result<DVector<R>> {
        let (betahat, gamma) = canonical_pair_field(&alpha.to_ratfun(), &beta.to_ratfun())?;
        let parts = self.planner.decompose(&gamma)?;
        let mut out = DVector::zero();
        for (s, c) in parts {
            if self.strat.s_basis == SBasisKind::Paper && s == SBasisElem::Monomial(0) {
                return Err(Error::BasisElementExcluded(s.to_string()));
            }
            let c = R::from_rational(&c).expect("rationals lie in every ring");
            out.add_term(CKey::Field(CKeyField { s, betahat: betahat.clone() }), c);
        }
        Ok(out)
    }
}

fn as_poly<R: Ring>(a: &R) -> Poly {
    a.to_ratfun().as_poly().expect("element of Q[t]").clone()
}

fn scale_q<R: Ring>(v: &DVector<R>, q: &Rational) -> DVector<R> {
    v.scale_rational(q).expect("D is a Q-vector space for rings containing t")
}

/// `c(g, h)_lambda` for tensor elements; only abelian coordinates matter.
pub fn c_binary<R: Ring>(
    strat: &Strategy,
    g: &TensorElement<R>,
    h: &TensorElement<R>,
    lambda: &R,
) -> Result<DVector<R>> {
    strat.c_pair(g.hall.a(), h.hall.a(), lambda)
}

/// `sum_{i=1}^{n-1} c(x_1...x_i, x_(i+1))_lambda`.
pub fn c_multi<R: Ring>(strat: &Strategy, xs: &[TensorElement<R>], lambda: &R) -> Result<DVector<R>> {
    let Some(first) = xs.first() else {
        return Ok(DVector::zero());
    };
    let mut ctx = strat.ctx::<R>()?;
    let mut prefix = first.clone();
    let mut out = DVector::zero();
    for x in &xs[1..] {
        out.add_assign(&ctx.c_pair(prefix.hall.a(), x.hall.a(), lambda)?);
        prefix = prefix.mul(x)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{parse_scalar, rat};

    fn p(s: &str) -> Poly {
        parse_scalar(s).unwrap()
    }

    fn f(s: &str) -> RatFun {
        parse_scalar(s).unwrap()
    }

    fn kp(a: &str, b: &str, k: usize) -> CKey<Poly> {
        CKey::Poly(CKeyPoly::new(p(a), p(b), k))
    }

    #[test]
    fn subscript_t() {
        let s = Strategy::poly_rank2();
        let v = s.ccoord(&p("1"), &p("1"), &p("t")).unwrap();
        assert_eq!(v, DVector::single(kp("1", "1", 0), p("1")));
    }

    #[test]
    fn rational_subscript_vanishes() {
        let s = Strategy::poly_rank2();
        assert!(s.ccoord(&p("t"), &p("t^2+1"), &p("3/4")).unwrap().is_zero());
        let s = Strategy::field_rank2();
        assert!(s.ccoord(&f("1/t"), &f("t"), &f("-2")).unwrap().is_zero());
    }

    #[test]
    fn subscript_t_squared() {
        let expect: DVector<Poly> = [(kp("1", "1", 1), p("1")), (kp("1", "1", 0), p("t"))].into_iter().collect();
        for split in [SplitOrder::Left, SplitOrder::Right] {
            let s = Strategy::poly_rank2().with_split(split);
            assert_eq!(s.ccoord(&p("1"), &p("1"), &p("t^2")).unwrap(), expect);
        }
    }

    #[test]
    fn gcd_extraction() {
        let s = Strategy::poly_rank2();
        let v = s.ccoord(&p("2*t"), &p("3*t"), &p("t")).unwrap();
        assert_eq!(v, DVector::single(kp("1", "3/2", 1), p("2")));
    }

    #[test]
    fn field_key() {
        let s = Strategy::field_rank2();
        let v = s.ccoord(&f("1/(t-1)"), &f("1"), &f("t")).unwrap();
        let key = CKeyField {
            s: SBasisElem::SimpleFraction { p: p("t-1"), m: 1, j: 0 },
            betahat: f("t-1"),
        };
        assert_eq!(v, DVector::single(CKey::Field(key), f("1")));
    }

    #[test]
    fn unit_free_basis_rejects_unit() {
        let s = Strategy::field_rank2().with_s_basis(SBasisKind::Paper);
        assert!(matches!(s.ccoord(&f("1"), &f("1"), &f("t")), Err(Error::BasisElementExcluded(_))));
        assert!(s.ccoord(&f("1/(t-1)"), &f("1"), &f("t")).is_ok());
    }

    #[test]
    fn strategy_ring_mismatch() {
        let s = Strategy::poly_rank2();
        assert!(matches!(s.ccoord(&f("1"), &f("1"), &f("t")), Err(Error::StrategyMismatch(_))));
    }

    #[test]
    fn q_linearity_and_rational_ring() {
        let s = Strategy::poly_rank2();
        let a = s.ccoord(&p("t+1"), &p("t^2"), &p("t^3-t")).unwrap();
        let b = s.ccoord(&p("(3*t+3)/7"), &p("3*t^2/7"), &p("t^3-t")).unwrap();
        assert_eq!(b, a.scale_rational(&rat(3, 7)).unwrap());
        let s = Strategy::formal(GroupSchema::rank2());
        assert!(s.ccoord(&rat(2, 1), &rat(1, 3), &rat(5, 1)).unwrap().is_zero());
    }

    #[test]
    fn formal_examples() {
        let s = Strategy::formal(GroupSchema::rank2());
        let (g, h) = (vec![p("1"), p("0")], vec![p("0"), p("1")]);
        assert!(s.ccoord_formal(&g, &h, &p("1")).unwrap().is_zero());
        let a = s.ccoord_formal(&g, &h, &p("t+1")).unwrap();
        assert_eq!(a, s.ccoord_formal(&g, &h, &p("t")).unwrap());
        assert_eq!(a.len(), 1);
        assert_eq!(a.to_string(), "c(x, y)_t^{1}");
        assert_eq!(s.ccoord_formal(&g, &h, &p("t^2")).unwrap().len(), 2);
    }
}
