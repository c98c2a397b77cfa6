//! The c-commutator reduction against a closed form.
//!
//! With `alpha = gamma alpha0`, `beta = gamma beta0`, the coordinates of
//! `c(x^alpha, y^beta)_lambda` are read off from the divided difference
//! `(lambda(s) - lambda(t)) / (s - t) * gamma(t)`: the variable `s` becomes
//! the coefficient and `t^k` (or its S-basis expansion) labels the key.

use std::collections::BTreeMap;

use nilten_core::ccalc::{SplitOrder, Strategy};
use nilten_core::dmodule::{CKey, CKeyField, CKeyPoly, DVector};
use nilten_core::gen::{case_rng, Sample};
use nilten_core::scalars::{additive_decompose, parse_scalar, Poly, RatFun, DEFAULT_FACTOR_DEGREE_BOUND};

/// `(p(s) q(t) - p(t) q(s)) / (s - t)` as coefficients of `s^i`, each a
/// polynomial in `t`.
fn divided_difference(p: &Poly, q: &Poly) -> Vec<Poly> {
    let n = p.coeffs().len().max(q.coeffs().len());
    let mut num: Vec<Poly> = (0..n)
        .map(|i| &q.scale(&p.coeff(i)) - &p.scale(&q.coeff(i)))
        .collect();
    // Synthetic division by (s - t), highest power of s first.
    let mut quot = vec![Poly::zero(); n.saturating_sub(1)];
    let mut carry = Poly::zero();
    for i in (1..n).rev() {
        carry = &num[i] + &carry.shift(1);
        quot[i - 1] = carry.clone();
    }
    num[0] = &num[0] + &carry.shift(1);
    assert!(num[0].is_zero(), "s - t divides the numerator");
    quot
}

fn poly_oracle(alpha: &Poly, beta: &Poly, lambda: &Poly) -> DVector<Poly> {
    if alpha.is_zero() || beta.is_zero() {
        return DVector::zero();
    }
    let g = alpha.gcd(beta).unwrap();
    let a0 = alpha.div_exact(&g).unwrap();
    let lc = a0.lc().unwrap().clone();
    let alpha0 = a0.monic();
    let beta0 = beta.div_exact(&g).unwrap().scale(&lc.recip());
    let gamma = g.scale(&lc);
    let mut out = DVector::zero();
    for (i, qi) in divided_difference(lambda, &Poly::one()).iter().enumerate() {
        let f = qi * &gamma;
        for (k, c) in f.coeffs().iter().enumerate() {
            let key = CKey::Poly(CKeyPoly::new(alpha0.clone(), beta0.clone(), k));
            out.add_term(key, Poly::monomial(c.clone(), i));
        }
    }
    out
}

fn field_oracle(alpha: &RatFun, beta: &RatFun, lambda: &RatFun) -> DVector<RatFun> {
    if alpha.is_zero() || beta.is_zero() {
        return DVector::zero();
    }
    let betahat = beta.div(alpha).unwrap();
    let (p, q) = (lambda.num(), lambda.den());
    let q_fn = RatFun::from_poly(q.clone());
    let mut out = DVector::zero();
    for (i, qi) in divided_difference(p, q).iter().enumerate() {
        let f = &(&RatFun::from_poly(qi.clone()) * alpha) * &q_fn.inv().unwrap();
        let coeff = RatFun::new(Poly::t().pow(i as u32), q.clone()).unwrap();
        let parts: BTreeMap<_, _> = additive_decompose(&f, DEFAULT_FACTOR_DEGREE_BOUND).unwrap();
        for (s, c) in parts {
            let key = CKey::Field(CKeyField { s, betahat: betahat.clone() });
            out.add_term(key, coeff.scale(&c));
        }
    }
    out
}

fn p(s: &str) -> Poly {
    parse_scalar(s).unwrap()
}

fn f(s: &str) -> RatFun {
    parse_scalar(s).unwrap()
}

#[test]
fn divided_difference_of_a_square() {
    // (s^2 - t^2) / (s - t) = s + t
    assert_eq!(divided_difference(&p("t^2"), &Poly::one()), vec![p("t"), p("1")]);
}

#[test]
fn poly_examples() {
    let st = Strategy::poly_rank2();
    for (a, b, l) in [("1", "1", "t^2"), ("t", "t", "t"), ("t^2-1", "t-1", "t^3+2*t"), ("2*t", "3*t", "t^2+1"), ("1", "1", "3/4")] {
        let (a, b, l) = (p(a), p(b), p(l));
        assert_eq!(st.ccoord(&a, &b, &l).unwrap(), poly_oracle(&a, &b, &l), "c(x^{a}, y^{b})_{l}");
    }
}

#[test]
fn field_examples() {
    let st = Strategy::field_rank2();
    for (a, b, l) in [("1/(t-1)", "1", "t"), ("t", "t^2", "1/t"), ("1", "1", "(t^2+1)/(t-2)"), ("t/(t^2+1)", "3", "t^2")] {
        let (a, b, l) = (f(a), f(b), f(l));
        assert_eq!(st.ccoord(&a, &b, &l).unwrap(), field_oracle(&a, &b, &l), "c(x^{a}, y^{b})_{l}");
    }
}

#[test]
fn random_poly_triples() {
    let left = Strategy::poly_rank2();
    let right = Strategy::poly_rank2().with_split(SplitOrder::Right);
    for i in 0..400 {
        let mut rng = case_rng(20, 1, i);
        let (a, b, l) = (Poly::sample(&mut rng, 4), Poly::sample(&mut rng, 4), Poly::sample(&mut rng, 4));
        let want = poly_oracle(&a, &b, &l);
        assert_eq!(left.ccoord(&a, &b, &l).unwrap(), want, "case {i}: c(x^{a}, y^{b})_{l}");
        assert_eq!(right.ccoord(&a, &b, &l).unwrap(), want, "case {i}: right split");
    }
}

#[test]
fn random_field_triples() {
    let st = Strategy::field_rank2();
    for i in 0..200 {
        let mut rng = case_rng(21, 1, i);
        let a = RatFun::sample(&mut rng, 3);
        let b = RatFun::sample(&mut rng, 3);
        let l = RatFun::sample(&mut rng, 3);
        assert_eq!(st.ccoord(&a, &b, &l).unwrap(), field_oracle(&a, &b, &l), "case {i}: c(x^{a}, y^{b})_{l}");
    }
}

#[test]
fn exp_increment_matches_closed_form() {
    let st = Strategy::poly_rank2();
    for i in 0..100 {
        let mut rng = case_rng(22, 1, i);
        let a = vec![Poly::sample(&mut rng, 3), Poly::sample(&mut rng, 3)];
        let mu = Poly::sample(&mut rng, 3);
        assert_eq!(st.exp_increment(&a, &mu).unwrap(), poly_oracle(&a[0], &a[1], &mu));
    }
}

#[test]
fn field_exp_increment_matches_closed_form() {
    let st = Strategy::field_rank2();
    for i in 0..60 {
        let mut rng = case_rng(23, 1, i);
        let a = vec![RatFun::sample(&mut rng, 2), RatFun::sample(&mut rng, 2)];
        let mu = RatFun::sample(&mut rng, 2);
        assert_eq!(st.exp_increment(&a, &mu).unwrap(), field_oracle(&a[0], &a[1], &mu));
    }
}
