//! Seeded random scalars, elements and words for the check suites.
//!
//! Every case draws from its own ChaCha8 stream, so a case can be replayed
//! from `(seed, tag, index)` alone.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ccalc::Strategy;
use crate::dmodule::DVector;
use crate::error::Result;
use crate::hall::{GroupSchema, HallElement};
use crate::rword::{GenIndex, RWord};
use crate::scalars::{Poly, RatFun, Rational, Ring};
use crate::tensor::TensorElement;

/// Largest absolute numerator and denominator of generated rationals.
pub const COEFF_BOUND: i64 = 10;
/// Largest degree of generated polynomials and numerators.
pub const MAX_DEGREE: usize = 4;

pub fn case_rng(seed: u64, tag: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ tag.rotate_left(32));
    rng.set_stream(case);
    rng
}

pub fn rational<G: Rng + ?Sized>(rng: &mut G, bound: i64) -> Rational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    Rational::new(p.into(), q.into())
}

/// Polynomial of degree at most `deg` with about half its lower
/// coefficients zero.
pub fn poly<G: Rng + ?Sized>(rng: &mut G, deg: usize) -> Poly {
    let d = rng.gen_range(0..=deg);
    let mut c: Vec<Rational> = (0..d)
        .map(|_| if rng.gen_bool(0.5) { rational(rng, COEFF_BOUND) } else { Rational::from_integer(0.into()) })
        .collect();
    c.push(rational(rng, COEFF_BOUND));
    Poly::new(c)
}

/// Monic polynomial of degree 1 or 2 with small coefficients.
fn monic_factor<G: Rng + ?Sized>(rng: &mut G) -> Poly {
    let d = rng.gen_range(1..=2);
    let mut c: Vec<Rational> = (0..d).map(|_| rational(rng, 5)).collect();
    c.push(Rational::from_integer(1.into()));
    Poly::new(c)
}

/// Product of up to two monic factors of degree at most 2, each raised to
/// a power up to `max_mult`.
pub fn denominator<G: Rng + ?Sized>(rng: &mut G, max_mult: u32) -> Poly {
    let mut den = Poly::one();
    for _ in 0..rng.gen_range(0..=2) {
        den = &den * &monic_factor(rng).pow(rng.gen_range(1..=max_mult));
    }
    den
}

/// Rational function whose denominator factors have degree at most 2,
/// possibly repeated.
pub fn ratfun_with_powers<G: Rng + ?Sized>(rng: &mut G, deg: usize) -> RatFun {
    RatFun::new(poly(rng, deg), denominator(rng, 3)).expect("denominator is nonzero")
}

/// Random elements of a ring, with `deg` bounding the degree in `t`.
pub trait Sample: Ring {
    fn sample<G: Rng + ?Sized>(rng: &mut G, deg: usize) -> Self;

    fn sample_nonzero<G: Rng + ?Sized>(rng: &mut G, deg: usize) -> Self {
        loop {
            let x = Self::sample(rng, deg);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

impl Sample for BigInt {
    fn sample<G: Rng + ?Sized>(rng: &mut G, _deg: usize) -> Self {
        rng.gen_range(-COEFF_BOUND..=COEFF_BOUND).into()
    }
}

impl Sample for Rational {
    fn sample<G: Rng + ?Sized>(rng: &mut G, _deg: usize) -> Self {
        rational(rng, COEFF_BOUND)
    }
}

impl Sample for Poly {
    fn sample<G: Rng + ?Sized>(rng: &mut G, deg: usize) -> Self {
        poly(rng, deg)
    }
}

impl Sample for RatFun {
    fn sample<G: Rng + ?Sized>(rng: &mut G, deg: usize) -> Self {
        RatFun::new(poly(rng, deg), denominator(rng, 1)).expect("denominator is nonzero")
    }
}

pub fn hall<R: Sample, G: Rng + ?Sized>(rng: &mut G, schema: &std::sync::Arc<GroupSchema>, deg: usize) -> HallElement<R> {
    let a = (0..schema.m()).map(|_| R::sample(rng, deg)).collect();
    let b = (0..schema.n()).map(|_| R::sample(rng, deg)).collect();
    HallElement::new(schema, a, b).expect("lengths match the schema")
}

/// Hall element with integer coordinates in `-bound..=bound`.
pub fn integer_hall<R: Ring, G: Rng + ?Sized>(rng: &mut G, schema: &std::sync::Arc<GroupSchema>, bound: i64) -> HallElement<R> {
    let mut c = |_| R::from_i64(rng.gen_range(-bound..=bound));
    let a = (0..schema.m()).map(&mut c).collect();
    let b = (0..schema.n()).map(&mut c).collect();
    HallElement::new(schema, a, b).expect("lengths match the schema")
}

/// A D-vector `sum r_i c(x^alpha_i, y^beta_i)_t` with at most two terms;
/// zero when the strategy has no canonical D or the ring lacks `t`.
pub fn d_part<R: Sample, G: Rng + ?Sized>(rng: &mut G, strat: &Strategy) -> Result<DVector<R>> {
    let mut d = DVector::zero();
    let Some(t) = R::t() else {
        return Ok(d);
    };
    if !strat.is_canonical() {
        return Ok(d);
    }
    for _ in 0..rng.gen_range(0..=2) {
        let alpha = R::sample_nonzero(rng, 2);
        let beta = R::sample_nonzero(rng, 2);
        let r = R::sample(rng, 2);
        d.add_scaled(&strat.ccoord(&alpha, &beta, &t)?, &r);
    }
    Ok(d)
}

pub fn tensor<R: Sample, G: Rng + ?Sized>(rng: &mut G, strat: &Strategy, deg: usize) -> Result<TensorElement<R>> {
    let h = hall(rng, strat.schema(), deg);
    Ok(TensorElement::new(h, d_part(rng, strat)?))
}

/// Central tensor element: central Hall coordinates plus a D-part.
pub fn central<R: Sample, G: Rng + ?Sized>(rng: &mut G, strat: &Strategy, deg: usize) -> Result<TensorElement<R>> {
    let schema = strat.schema();
    let zero = vec![R::zero(); schema.m()];
    let b = (0..schema.n()).map(|_| R::sample(rng, deg)).collect();
    let h = HallElement::new(schema, zero, b).expect("lengths match the schema");
    Ok(TensorElement::new(h, d_part(rng, strat)?))
}

fn generator<R: Ring, G: Rng + ?Sized>(rng: &mut G, schema: &GroupSchema) -> RWord<R> {
    if schema.n() > 0 && rng.gen_bool(0.15) {
        RWord::gen(schema, GenIndex::Central(rng.gen_range(0..schema.n())))
    } else {
        RWord::gen(schema, GenIndex::Basis(rng.gen_range(0..schema.m())))
    }
}

/// Random R-word of nesting depth at most `depth` whose exponents have
/// degree at most `deg`.
pub fn word<R: Sample, G: Rng + ?Sized>(rng: &mut G, schema: &GroupSchema, depth: usize, deg: usize) -> RWord<R> {
    if depth == 0 || rng.gen_bool(0.2) {
        return generator(rng, schema);
    }
    let sub = |rng: &mut G| word::<R, G>(rng, schema, depth - 1, deg);
    match rng.gen_range(0..100) {
        0..=29 => {
            let n = rng.gen_range(2..=3);
            RWord::mul((0..n).map(|_| sub(rng)).collect())
        }
        30..=64 => sub(rng).exp(R::sample(rng, deg)),
        65..=74 => sub(rng).inv(),
        75..=89 => {
            let a = sub(rng);
            RWord::comm(a, sub(rng))
        }
        _ => {
            let a = sub(rng);
            let b = sub(rng);
            RWord::ccomm(a, b, R::sample(rng, deg))
        }
    }
}
