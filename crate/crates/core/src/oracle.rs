//! Brute-force ground truth for the rank-2 Hall group: repeated
//! multiplication and the unitriangular 3x3 matrix model.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hall::{GroupSchema, HallElement};
use crate::scalars::{Rational, Ring};

/// Default bound on `|k|` used by callers of [`int_exp_oracle`].
pub const DEFAULT_EXP_BOUND: i64 = 8;

fn integer_coord<R: Ring>(c: &R) -> Result<BigInt> {
    match c.as_rational() {
        Some(q) if q.is_integer() => Ok(q.to_integer()),
        _ => Err(Error::NonIntegerInput(c.to_string())),
    }
}

fn check_integral<R: Ring>(g: &HallElement<R>) -> Result<()> {
    for c in g.a().iter().chain(g.b()) {
        integer_coord(c)?;
    }
    Ok(())
}

/// `g^k` by `|k|`-fold multiplication of `g` or `g^-1`.
pub fn int_exp_oracle<R: Ring>(g: &HallElement<R>, k: i64) -> Result<HallElement<R>> {
    check_integral(g)?;
    let base = if k < 0 { g.inv() } else { g.clone() };
    let mut acc = HallElement::identity(g.schema());
    for _ in 0..k.unsigned_abs() {
        acc = acc.mul(&base)?;
    }
    Ok(acc)
}

/// Upper unitriangular integer matrix `[[1, a12, a13], [0, 1, a23], [0, 0, 1]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniMat3 {
    pub a12: BigInt,
    pub a13: BigInt,
    pub a23: BigInt,
}

impl UniMat3 {
    pub fn new(a12: impl Into<BigInt>, a13: impl Into<BigInt>, a23: impl Into<BigInt>) -> Self {
        UniMat3 { a12: a12.into(), a13: a13.into(), a23: a23.into() }
    }

    pub fn identity() -> Self {
        UniMat3::new(0, 0, 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        UniMat3 {
            a12: &self.a12 + &o.a12,
            a13: &self.a13 + &o.a13 + &self.a12 * &o.a23,
            a23: &self.a23 + &o.a23,
        }
    }

    pub fn inv(&self) -> Self {
        UniMat3 {
            a12: -&self.a12,
            a13: &self.a12 * &self.a23 - &self.a13,
            a23: -&self.a23,
        }
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.inv().mul(&o.inv()).mul(self).mul(o)
    }
}

/// Corner entry of the image of `[y,x]`, computed from the generator images.
pub fn corner_sign() -> &'static BigInt {
    static EPS: OnceLock<BigInt> = OnceLock::new();
    EPS.get_or_init(|| {
        let x = UniMat3::new(1, 0, 0);
        let y = UniMat3::new(0, 0, 1);
        let c = y.commutator(&x);
        assert!(Zero::is_zero(&c.a12) && Zero::is_zero(&c.a23), "commutator is central");
        assert!(c.a13.magnitude().is_one(), "commutator generates the centre");
        c.a13
    })
}

fn require_rank2(schema: &GroupSchema) -> Result<()> {
    if schema.is_free_rank2() {
        Ok(())
    } else {
        Err(Error::InvalidSchema("the matrix model needs the rank-2 free schema".into()))
    }
}

/// `x^a1 y^a2 [y,x]^b` as a matrix, with `x -> I + E12`, `y -> I + E23`.
pub fn matrix_model<R: Ring>(g: &HallElement<R>) -> Result<UniMat3> {
    require_rank2(g.schema())?;
    let a1 = integer_coord(&g.a()[0])?;
    let a2 = integer_coord(&g.a()[1])?;
    let b = integer_coord(&g.b()[0])?;
    let a13 = &a1 * &a2 + corner_sign() * b;
    Ok(UniMat3 { a12: a1, a13, a23: a2 })
}

/// Inverse of [`matrix_model`].
pub fn from_matrix<R: Ring>(schema: &Arc<GroupSchema>, m: &UniMat3) -> Result<HallElement<R>> {
    require_rank2(schema)?;
    // corner_sign() is a unit, so dividing by it is multiplying by it.
    let b = (&m.a13 - &m.a12 * &m.a23) * corner_sign();
    let conv = |n: &BigInt| R::from_rational(&Rational::from_integer(n.clone())).expect("integers lie in every ring");
    HallElement::new(schema, vec![conv(&m.a12), conv(&m.a23)], vec![conv(&b)])
}

/// Compares `hall_exp` with [`int_exp_oracle`] for every rank-2 element with
/// coordinates in `-range..=range` and every `|k| <= kmax`. Returns the
/// number of comparisons and the mismatches.
pub fn exhaustive_exp(range: i64, kmax: i64) -> Result<(usize, Vec<String>)> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for g in integer_cube(range)? {
        for k in -kmax..=kmax {
            checked += 1;
            let want = int_exp_oracle(&g, k)?;
            let got = g.exp(&BigInt::from(k));
            if got != want {
                bad.push(format!("({g})^{k}: closed form {got}, repeated product {want}"));
            }
        }
    }
    Ok((checked, bad))
}

/// Compares `hall_mul` with matrix multiplication on every pair of rank-2
/// elements with coordinates in `-range..=range`.
pub fn exhaustive_matrix(range: i64) -> Result<(usize, Vec<String>)> {
    let cube = integer_cube(range)?;
    let models = cube.iter().map(matrix_model).collect::<Result<Vec<_>>>()?;
    let mut checked = 0;
    let mut bad = Vec::new();
    for (g, mg) in cube.iter().zip(&models) {
        for (h, mh) in cube.iter().zip(&models) {
            checked += 1;
            if matrix_model(&g.mul(h)?)? != mg.mul(mh) {
                bad.push(format!("({g}) * ({h})"));
            }
        }
    }
    Ok((checked, bad))
}

fn integer_cube(range: i64) -> Result<Vec<HallElement<BigInt>>> {
    let schema = GroupSchema::rank2();
    let mut out = Vec::new();
    for a1 in -range..=range {
        for a2 in -range..=range {
            for b in -range..=range {
                out.push(HallElement::new(&schema, vec![a1.into(), a2.into()], vec![b.into()])?);
            }
        }
    }
    Ok(out)
}
