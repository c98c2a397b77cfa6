use proptest::prelude::*;

use nilten_core::ccalc::Strategy as Calc;
use nilten_core::checks::key_is_basis;
use nilten_core::hall::{GroupSchema, HallElement};
use nilten_core::scalars::{factor_bounded, parse_scalar, partial_fractions, Poly, RatFun, Rational, DEFAULT_FACTOR_DEGREE_BOUND};
use nilten_core::tensor::TensorElement;

fn rational() -> impl Strategy<Value = Rational> {
    (-10i64..=10, 1i64..=10).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(Poly::new)
}

fn monic(deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-5i64..=5, deg).prop_map(|mut c| {
        c.push(1);
        Poly::from_ints(&c)
    })
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(3), prop::collection::vec((1usize..=2).prop_flat_map(monic), 0..=2)).prop_map(|(n, fs)| {
        let d = fs.iter().fold(Poly::one(), |acc, f| &acc * f);
        RatFun::new(n, d).unwrap()
    })
}

fn hall_poly() -> impl Strategy<Value = HallElement<Poly>> {
    (poly(3), poly(3), poly(3)).prop_map(|(a1, a2, b)| HallElement::new(&GroupSchema::rank2(), vec![a1, a2], vec![b]).unwrap())
}

fn tensor_poly() -> impl Strategy<Value = TensorElement<Poly>> {
    (hall_poly(), poly(2), poly(2), poly(1)).prop_map(|(h, a, b, r)| {
        let d = Calc::poly_rank2().ccoord(&a, &b, &Poly::t()).unwrap().scale(&r);
        TensorElement::new(h, d)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfun_ops_agree_with_naive_reduction(a in ratfun(), b in ratfun()) {
        let naive_sum = RatFun::new(&(a.num() * b.den()) + &(b.num() * a.den()), a.den() * b.den()).unwrap();
        prop_assert_eq!(&a + &b, naive_sum);
        let naive_prod = RatFun::new(a.num() * b.num(), a.den() * b.den()).unwrap();
        prop_assert_eq!(&a * &b, naive_prod);
    }

    #[test]
    fn ratfun_field_laws(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(&a.div(&b).unwrap() * &b, a);
        }
    }

    #[test]
    fn gcd_divides_and_is_bezout(a in poly(4), b in poly(4)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(a.div_exact(&g).is_some());
        prop_assert!(b.div_exact(&g).is_some());
        let (g2, s, u) = a.xgcd(&b).unwrap();
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(&(&s * &a) + &(&u * &b), g);
    }

    #[test]
    fn factorization_expands_back(fs in prop::collection::vec((1usize..=2).prop_flat_map(monic), 1..=3), c in rational()) {
        prop_assume!(!num_traits::Zero::is_zero(&c));
        let f = fs.iter().fold(Poly::constant(c), |acc, p| &acc * p);
        let fact = factor_bounded(&f, DEFAULT_FACTOR_DEGREE_BOUND).unwrap();
        prop_assert_eq!(fact.expand(), f);
        for (p, _) in &fact.factors {
            prop_assert!(p.is_monic() && p.deg() >= 1);
        }
    }

    #[test]
    fn partial_fractions_recombine(f in ratfun()) {
        prop_assert_eq!(partial_fractions(&f, DEFAULT_FACTOR_DEGREE_BOUND).unwrap().recombine(), f);
    }

    #[test]
    fn scalar_printing_round_trips(p in poly(4), f in ratfun()) {
        prop_assert_eq!(parse_scalar::<Poly>(&p.to_string()).unwrap(), p);
        prop_assert_eq!(parse_scalar::<RatFun>(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn hall_group_laws(g in hall_poly(), h in hall_poly(), f in hall_poly()) {
        prop_assert_eq!(g.mul(&h).unwrap().mul(&f).unwrap(), g.mul(&h.mul(&f).unwrap()).unwrap());
        prop_assert!(g.mul(&g.inv()).unwrap().is_identity());
        prop_assert!(g.commutator(&h).unwrap().is_central());
    }

    #[test]
    fn hall_exp_is_additive(g in hall_poly(), a in poly(2), b in poly(2)) {
        prop_assert_eq!(g.exp(&(a.clone() + b.clone())), g.exp(&a).mul(&g.exp(&b)).unwrap());
        prop_assert_eq!(g.exp(&a).exp(&b), g.exp(&(a * b)));
    }

    #[test]
    fn tensor_axioms_2(g in tensor_poly(), a in poly(2), b in poly(2)) {
        let st = Calc::poly_rank2();
        let sum = g.exp(&(a.clone() + b.clone()), &st).unwrap();
        prop_assert_eq!(sum, g.exp(&a, &st).unwrap().mul(&g.exp(&b, &st).unwrap()).unwrap());
        let prod = g.exp(&(a.clone() * b.clone()), &st).unwrap();
        prop_assert_eq!(prod, g.exp(&a, &st).unwrap().exp(&b, &st).unwrap());
    }

    #[test]
    fn ccoord_is_additive_in_the_subscript(a in poly(3), b in poly(3), l1 in poly(3), l2 in poly(3)) {
        let st = Calc::poly_rank2();
        let sum = st.ccoord(&a, &b, &(l1.clone() + l2.clone())).unwrap();
        prop_assert_eq!(sum, st.ccoord(&a, &b, &l1).unwrap().add(&st.ccoord(&a, &b, &l2).unwrap()));
    }

    #[test]
    fn ccoord_keys_are_basis_keys(a in poly(4), b in poly(4), l in poly(4), fa in ratfun(), fb in ratfun(), fl in ratfun()) {
        let d = Calc::poly_rank2().ccoord(&a, &b, &l).unwrap();
        prop_assert!(d.keys().all(|k| key_is_basis(k, DEFAULT_FACTOR_DEGREE_BOUND)));
        let d = Calc::field_rank2().ccoord(&fa, &fb, &fl).unwrap();
        prop_assert!(d.keys().all(|k| key_is_basis(k, DEFAULT_FACTOR_DEGREE_BOUND)));
    }

    #[test]
    fn commuting_pairs_have_no_c_commutator(a in poly(3), s1 in poly(2), s2 in poly(2), l in poly(3)) {
        let st = Calc::poly_rank2();
        let base = [a.clone(), a * Poly::t() + Poly::one()];
        let g: Vec<Poly> = base.iter().map(|c| s1.clone() * c.clone()).collect();
        let h: Vec<Poly> = base.iter().map(|c| s2.clone() * c.clone()).collect();
        prop_assert!(st.c_pair(&g, &h, &l).unwrap().is_zero());
    }
}
