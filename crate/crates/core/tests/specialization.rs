//! Evaluating `t` at integers 2..=6 maps the Hall completion over Q[t] onto
//! the one over Q; at integer points it must agree with repeated
//! multiplication.

use num_bigint::BigInt;
use rand::Rng;

use nilten_core::ccalc::Strategy;
use nilten_core::gen::{case_rng, word};
use nilten_core::hall::{GroupSchema, HallElement};
use nilten_core::oracle::int_exp_oracle;
use nilten_core::rword::{eval, eval_str, RWord};
use nilten_core::scalars::{parse_scalar, Poly, Rational, Ring};

fn at(p: &Poly, n: i64) -> Rational {
    p.eval(&Rational::from_integer(n.into()))
}

fn specialize(g: &HallElement<Poly>, n: i64) -> HallElement<Rational> {
    let a = g.a().iter().map(|c| at(c, n)).collect();
    let b = g.b().iter().map(|c| at(c, n)).collect();
    HallElement::new(g.schema(), a, b).unwrap()
}

fn specialize_word(w: &RWord<Poly>, n: i64) -> RWord<Rational> {
    let sub = |w: &RWord<Poly>| Box::new(specialize_word(w, n));
    match w {
        RWord::One => RWord::One,
        RWord::Gen(name, i) => RWord::Gen(name.clone(), *i),
        RWord::Mul(parts) => RWord::Mul(parts.iter().map(|p| specialize_word(p, n)).collect()),
        RWord::Inv(a) => RWord::Inv(sub(a)),
        RWord::Exp(a, s) => RWord::Exp(sub(a), at(s, n)),
        RWord::Comm(a, b) => RWord::Comm(sub(a), sub(b)),
        RWord::CComm(a, b, s) => RWord::CComm(sub(a), sub(b), at(s, n)),
    }
}

#[test]
fn powers_of_xy_match_repeated_products() {
    let st = Strategy::poly_rank2();
    let xy = HallElement::<Rational>::new(&GroupSchema::rank2(), vec![Ring::one(), Ring::one()], vec![Ring::zero()]).unwrap();
    for (expr, exponent) in [("(x*y)^t", (|n: i64| n) as fn(i64) -> i64), ("(x*y)^(t^2+1)", |n| n * n + 1), ("(x*y)^(1-t)", |n| 1 - n)] {
        let g = eval_str::<Poly>(expr, &st).unwrap();
        for n in 2..=6 {
            let want = int_exp_oracle(&xy, exponent(n)).unwrap();
            assert_eq!(specialize(&g.hall, n), want, "{expr} at t = {n}");
        }
    }
}

#[test]
fn integer_polynomial_powers() {
    let schema = GroupSchema::rank2();
    for i in 0..200 {
        let mut rng = case_rng(30, 2, i);
        let mut coeffs = |d: usize| Poly::from_ints(&(0..=d).map(|_| rng.gen_range(-3..=3)).collect::<Vec<i64>>());
        let g = HallElement::new(&schema, vec![coeffs(2), coeffs(2)], vec![coeffs(2)]).unwrap();
        let lambda = coeffs(1);
        for n in 2..=6 {
            let k = at(&lambda, n).to_integer();
            let k: i64 = i64::try_from(k).unwrap();
            let base: HallElement<BigInt> = {
                let to_int = |c: &Poly| at(c, n).to_integer();
                HallElement::new(&schema, g.a().iter().map(to_int).collect(), g.b().iter().map(to_int).collect()).unwrap()
            };
            let want = int_exp_oracle(&base, k).unwrap();
            let got = specialize(&g.exp(&lambda), n);
            let want_q = HallElement::new(
                &schema,
                want.a().iter().map(|c| Rational::from_integer(c.clone())).collect(),
                want.b().iter().map(|c| Rational::from_integer(c.clone())).collect(),
            )
            .unwrap();
            assert_eq!(got, want_q, "case {i}: ({g})^({lambda}) at t = {n}");
        }
    }
}

#[test]
fn random_words_commute_with_evaluation() {
    let st_t = Strategy::poly_rank2();
    let st_q = Strategy::auto(nilten_core::scalars::RingKind::Q, GroupSchema::rank2());
    for i in 0..300 {
        let mut rng = case_rng(31, 2, i);
        let w = word::<Poly, _>(&mut rng, &GroupSchema::rank2(), 3, 2);
        let g = eval(&w, &st_t).unwrap();
        for n in 2..=6 {
            let wn = specialize_word(&w, n);
            let gn = eval(&wn, &st_q).unwrap();
            assert!(gn.d.is_zero());
            assert_eq!(specialize(&g.hall, n), gn.hall, "case {i}: {w} at t = {n}");
        }
    }
}

#[test]
fn rational_subscripts_vanish() {
    let st = Strategy::poly_rank2();
    let g = eval_str::<Poly>("c(x^t, y^(t^2))_{3/4}", &st).unwrap();
    assert!(g.is_identity());
    let l: Poly = parse_scalar("3/4").unwrap();
    assert!(st.ccoord(&Poly::t(), &Poly::one(), &l).unwrap().is_zero());
}
