//! Factorization of univariate polynomials over Q.
//!
//! Squarefree parts come from Yun's algorithm. Each squarefree part is made
//! primitive over Z and split by the Berlekamp–Zassenhaus approach: factor
//! modulo a small prime (distinct-degree then equal-degree splitting), Hensel
//! lift past a Mignotte bound, and recombine lifted factors by trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Default bound on the degree of irreducible factors.
pub const DEFAULT_FACTOR_DEGREE_BOUND: usize = 6;

/// `unit * prod(p^e)` with every `p` monic and irreducible over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (p, e)| &acc * &p.pow(*e))
    }
}

/// Yun's squarefree decomposition of a nonzero polynomial: monic, pairwise
/// coprime squarefree parts with their multiplicities.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let f = f.monic();
    if f.deg() == 0 {
        return Vec::new();
    }
    let df = f.derivative();
    let a0 = f.gcd(&df).expect("f nonzero");
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d).expect("b nonzero");
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if a.deg() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Factors `f` into monic irreducibles. Fails with `FactorDegreeExceeded`
/// when an irreducible factor has degree above `max_deg`.
pub fn factor_bounded(f: &Poly, max_deg: usize) -> Result<Factorization> {
    let unit = f.lc().cloned().ok_or(Error::ZeroInput)?;
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        for p in factor_squarefree(&part) {
            if p.deg() > max_deg {
                return Err(Error::FactorDegreeExceeded { degree: p.deg(), bound: max_deg });
            }
            factors.push((p, mult));
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// Monic irreducible factors of a squarefree polynomial of positive degree.
pub fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    if f.deg() <= 1 {
        return vec![f.monic()];
    }
    let (_, z) = f.to_primitive();
    zassenhaus(&z)
        .into_iter()
        .map(|g| Poly::from_bigints(&g).monic())
        .collect()
}

type ZPoly = Vec<BigInt>;
type PPoly = Vec<u64>;

fn trim_z(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim_z(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

/// Symmetric residue in `(-m/2, m/2]`.
fn smod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn to_pp(a: &[BigInt], p: u64) -> PPoly {
    let pb = BigInt::from(p);
    trim_p(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_pp(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn trim_p(mut a: PPoly) -> PPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn padd(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    trim_p(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn psub(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    trim_p(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim_p(out)
}

fn pdivrem(a: &[u64], d: &[u64], p: u64) -> (PPoly, PPoly) {
    let dd = d.len() - 1;
    let inv = inv_mod(d[dd], p);
    let mut rem = a.to_vec();
    if rem.len() <= dd {
        return (Vec::new(), trim_p(rem));
    }
    let mut quot = vec![0u64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &dc) in d.iter().enumerate() {
            rem[i + j] = (rem[i + j] + p - c * dc % p) % p;
        }
        quot[i] = c;
    }
    rem.truncate(dd);
    (trim_p(quot), trim_p(rem))
}

fn pmonic(a: &[u64], p: u64) -> PPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = inv_mod(lc, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let (mut a, mut b) = (pmonic(a, p), pmonic(b, p));
    while !b.is_empty() {
        let r = pdivrem(&a, &b, p).1;
        a = b;
        b = pmonic(&r, p);
    }
    a
}

/// `(g, s, t)` with `s*a + t*b = g` monic, all modulo `p`.
fn pxgcd(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly, PPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    let sc = |v: &[u64]| trim_p(v.iter().map(|&c| c * inv % p).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

fn ppow_mod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> PPoly {
    let mut acc = vec![1u64];
    let base = pdivrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        acc = pdivrem(&pmul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = pdivrem(&pmul(&acc, &base, p), m, p).1;
        }
    }
    acc
}

/// Distinct-degree factorization of a monic squarefree polynomial mod `p`.
fn ddf(f: &[u64], p: u64) -> Vec<(PPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 0;
    while rest.len() - 1 >= 2 * (d + 1) {
        d += 1;
        h = ppow_mod(&h, &pb, &rest, p);
        let g = pgcd(&psub(&h, &x, p), &rest, p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            rest = pdivrem(&rest, &g, p).0;
            h = pdivrem(&h, &rest, p).1;
        }
    }
    if rest.len() > 1 {
        let deg = rest.len() - 1;
        out.push((rest, deg));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting for odd `p`.
fn edf(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<PPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: PPoly = trim_p((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = psub(&ppow_mod(&a, &e, f, p), &[1], p);
        let g = pgcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = pdivrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&pmonic(&h, p), d, p, rng));
            return out;
        }
    }
}

fn factor_mod_p(f: &[u64], p: u64) -> Vec<PPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let f = pmonic(f, p);
    ddf(&f, p)
        .into_iter()
        .flat_map(|(g, d)| edf(&g, d, p, &mut rng))
        .collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Lifts `target ≡ g0 * h0 (mod p)` with `g0` monic to a factorization modulo
/// `p^k`; `lc(h)` is pinned to `lc(target)`.
fn hensel_two(target: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, s, t) = pxgcd(g0, h0, p);
    let mut g = from_pp(g0);
    let mut h = from_pp(h0);
    *h.last_mut().unwrap() = target.last().unwrap().clone();
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = zsub(target, &zmul(&g, &h));
        if diff.is_empty() {
            break;
        }
        let e: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let ep = to_pp(&e, p);
        let (q, tau) = pdivrem(&pmul(&t, &ep, p), g0, p);
        let sigma = padd(&pmul(&s, &ep, p), &pmul(&q, h0, p), p);
        let bump = |x: &mut ZPoly, d: &[u64]| {
            if x.len() < d.len() {
                x.resize(d.len(), BigInt::zero());
            }
            for (xi, di) in x.iter_mut().zip(d) {
                *xi += &pj * BigInt::from(*di);
            }
        };
        bump(&mut g, &tau);
        bump(&mut h, &sigma);
        pj *= &pb;
    }
    (g, h)
}

/// Lifts monic modular factors of `target` (lc invertible mod p) to monic
/// factors modulo `p^k`.
fn hensel_multi(target: &[BigInt], facs: &[PPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let m = BigInt::from(p).pow(k);
    if facs.len() == 1 {
        let lc = target.last().unwrap();
        let inv = lc.modinv(&m).expect("lc invertible mod p");
        return vec![target.iter().map(|c| (c * &inv).mod_floor(&m)).collect()];
    }
    let (left, right) = facs.split_at(facs.len() / 2);
    let g0 = left.iter().fold(vec![1u64], |acc, f| pmul(&acc, f, p));
    let lc_p = target.last().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let h0 = right.iter().fold(vec![lc_p], |acc, f| pmul(&acc, f, p));
    let (g, h) = hensel_two(target, &g0, &h0, p, k);
    let g: ZPoly = g.iter().map(|c| c.mod_floor(&m)).collect();
    let h: ZPoly = h.iter().map(|c| c.mod_floor(&m)).collect();
    let mut out = hensel_multi(&g, left, p, k);
    out.extend(hensel_multi(&h, right, p, k));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn primitive_part(a: &[BigInt]) -> ZPoly {
    let mut c = a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if a.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// Exact quotient over Z, `None` when `d` does not divide `a`.
fn zdiv_exact(a: &[BigInt], d: &[BigInt]) -> Option<ZPoly> {
    let dd = d.len() - 1;
    let lc = &d[dd];
    let mut rem = a.to_vec();
    if rem.len() < d.len() {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let (c, r) = rem[i + dd].div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    rem.iter().all(Zero::is_zero).then(|| trim_z(quot))
}

/// Irreducible factors over Z of a squarefree primitive polynomial with
/// positive leading coefficient and degree at least 2.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    let lc = f[n].clone();
    let df: ZPoly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();

    let mut best: Option<(u64, Vec<PPoly>)> = None;
    let mut tried = 0;
    for p in (3u64..).filter(|&p| is_prime(p)) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_pp(f, p);
        if pgcd(&fp, &to_pp(&df, p), p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&fp, p);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, facs) = best.expect("some prime works for a squarefree polynomial");
    if facs.len() == 1 {
        return vec![f.to_vec()];
    }

    let max_coeff = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = lc.abs() * BigInt::from(2).pow(n as u32) * BigInt::from(n + 1) * max_coeff * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let mut lifted = hensel_multi(f, &facs, p, k);

    let mut remaining = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), size) {
            let l = remaining.last().unwrap().clone();
            let prod = subset
                .iter()
                .fold(vec![l], |acc, &i| zmul(&acc, &lifted[i]));
            let cand: ZPoly = trim_z(prod.iter().map(|c| smod(c, &pk)).collect());
            let cand = primitive_part(&cand);
            if let Some(q) = zdiv_exact(&remaining, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                remaining = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if remaining.len() > 1 {
        found.push(primitive_part(&remaining));
    }
    found
}
