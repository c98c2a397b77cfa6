//! Hall completions of torsion-free 2-nilpotent groups in Mal'tsev coordinates.
//!
//! An element is `u1^a1 ... um^am v1^b1 ... vn^bn` with the `v` central and
//! `[u_i, u_j] = v^k(i,j)` for `i > j`.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalars::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSchema {
    m: usize,
    n: usize,
    /// `k(i, j)` for `i > j` (0-based), at index `i*(i-1)/2 + j`.
    comm: Vec<Vec<i64>>,
    gen_names: Vec<String>,
    central_names: Vec<String>,
}

#[derive(Deserialize)]
struct SchemaFile {
    m: usize,
    n: usize,
    comm: Vec<CommEntry>,
}

#[derive(Deserialize)]
struct CommEntry {
    i: usize,
    j: usize,
    v: Vec<i64>,
}

fn pair_index(i: usize, j: usize) -> usize {
    i * (i - 1) / 2 + j
}

impl GroupSchema {
    /// Builds a schema from `k(i, j)` entries, 1-based with `i > j`.
    pub fn new(m: usize, n: usize, entries: &[((usize, usize), Vec<i64>)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSchema("m must be at least 1".into()));
        }
        let npairs = m * (m - 1) / 2;
        let mut comm: Vec<Option<Vec<i64>>> = vec![None; npairs];
        for ((i, j), v) in entries {
            let (i, j) = (*i, *j);
            if !(1 <= j && j < i && i <= m) {
                return Err(Error::InvalidSchema(format!("pair ({i},{j}) needs m >= i > j >= 1")));
            }
            if v.len() != n {
                return Err(Error::InvalidSchema(format!("pair ({i},{j}) has {} entries, expected {n}", v.len())));
            }
            let slot = &mut comm[pair_index(i - 1, j - 1)];
            if slot.is_some() {
                return Err(Error::InvalidSchema(format!("duplicate pair ({i},{j})")));
            }
            *slot = Some(v.clone());
        }
        let comm = comm
            .into_iter()
            .enumerate()
            .map(|(idx, v)| {
                v.ok_or_else(|| {
                    let (i, j) = unpair(idx);
                    Error::InvalidSchema(format!("missing pair ({},{})", i + 1, j + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut schema = GroupSchema {
            m,
            n,
            comm,
            gen_names: (1..=m).map(|i| format!("u{i}")).collect(),
            central_names: (1..=n).map(|j| format!("v{j}")).collect(),
        };
        if schema.is_free_rank2() {
            schema.gen_names = vec!["x".into(), "y".into()];
            schema.central_names = vec!["[y,x]".into()];
        }
        Ok(schema)
    }

    /// The free 2-nilpotent group of rank `r`: pairs (2,1), (3,1), (3,2), ...
    /// map to v1, v2, v3, ...
    pub fn free(r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::UnknownPreset(format!("free2:{r}")));
        }
        let n = r * (r - 1) / 2;
        let entries: Vec<_> = (2..=r)
            .flat_map(|i| (1..i).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut v = vec![0; n];
                v[pair_index(i - 1, j - 1)] = 1;
                ((i, j), v)
            })
            .collect();
        GroupSchema::new(r, n, &entries)
    }

    /// `free2nilpotent` with a rank, or the short form `free2:<rank>`.
    pub fn preset(name: &str, rank: usize) -> Result<Self> {
        match name {
            "free2nilpotent" => GroupSchema::free(rank),
            _ => Err(Error::UnknownPreset(name.into())),
        }
    }

    pub fn rank2() -> Arc<Self> {
        Arc::new(GroupSchema::free(2).expect("rank 2 is valid"))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: SchemaFile = serde_json::from_str(text).map_err(|e| Error::InvalidSchema(e.to_string()))?;
        let entries: Vec<_> = f.comm.into_iter().map(|c| ((c.i, c.j), c.v)).collect();
        GroupSchema::new(f.m, f.n, &entries)
    }

    /// Accepts `free2:<rank>` or a path to a JSON schema file.
    pub fn load(spec: &str) -> Result<Self> {
        if let Some(r) = spec.strip_prefix("free2:") {
            let r = r.parse().map_err(|_| Error::UnknownPreset(spec.into()))?;
            return GroupSchema::free(r);
        }
        if spec.starts_with("free2") || !Path::new(spec).exists() {
            return Err(Error::UnknownPreset(spec.into()));
        }
        let text = std::fs::read_to_string(spec).map_err(|e| Error::InvalidSchema(format!("{spec}: {e}")))?;
        GroupSchema::from_json(&text)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `k(i, j)` for 1-based `i > j`.
    pub fn k(&self, i: usize, j: usize) -> &[i64] {
        &self.comm[pair_index(i - 1, j - 1)]
    }

    pub fn is_free_rank2(&self) -> bool {
        self.m == 2 && self.n == 1 && self.comm[0] == [1]
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn central_names(&self) -> &[String] {
        &self.central_names
    }
}

fn unpair(idx: usize) -> (usize, usize) {
    let mut i = 1;
    while pair_index(i + 1, 0) <= idx {
        i += 1;
    }
    (i, idx - pair_index(i, 0))
}

/// `sum_{i>j} k(i,j) x_i y_j`.
pub fn sigma<R: Ring>(x: &[R], y: &[R], schema: &GroupSchema) -> Result<Vec<R>> {
    for v in [x, y] {
        if v.len() != schema.m {
            return Err(Error::LengthMismatch { expected: schema.m, got: v.len() });
        }
    }
    let mut out = vec![R::zero(); schema.n];
    for i in 1..schema.m {
        for j in 0..i {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let prod = x[i].clone() * y[j].clone();
            for (o, &k) in out.iter_mut().zip(&schema.comm[pair_index(i, j)]) {
                if k != 0 {
                    *o = o.clone() + prod.clone() * R::from_i64(k);
                }
            }
        }
    }
    Ok(out)
}

fn add_vec<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

fn scale_vec<R: Ring>(a: &[R], c: &R) -> Vec<R> {
    a.iter().map(|x| c.clone() * x.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HallElement<R: Ring> {
    a: Vec<R>,
    b: Vec<R>,
    schema: Arc<GroupSchema>,
}

impl<R: Ring> HallElement<R> {
    pub fn new(schema: &Arc<GroupSchema>, a: Vec<R>, b: Vec<R>) -> Result<Self> {
        if a.len() != schema.m {
            return Err(Error::LengthMismatch { expected: schema.m, got: a.len() });
        }
        if b.len() != schema.n {
            return Err(Error::LengthMismatch { expected: schema.n, got: b.len() });
        }
        Ok(HallElement { a, b, schema: schema.clone() })
    }

    pub fn identity(schema: &Arc<GroupSchema>) -> Self {
        HallElement { a: vec![R::zero(); schema.m], b: vec![R::zero(); schema.n], schema: schema.clone() }
    }

    /// The generator `u_i`, 0-based.
    pub fn generator(schema: &Arc<GroupSchema>, i: usize) -> Self {
        let mut g = HallElement::identity(schema);
        g.a[i] = R::one();
        g
    }

    /// The central generator `v_j`, 0-based.
    pub fn central(schema: &Arc<GroupSchema>, j: usize) -> Self {
        let mut g = HallElement::identity(schema);
        g.b[j] = R::one();
        g
    }

    pub fn a(&self) -> &[R] {
        &self.a
    }

    pub fn b(&self) -> &[R] {
        &self.b
    }

    pub fn schema(&self) -> &Arc<GroupSchema> {
        &self.schema
    }

    pub fn is_identity(&self) -> bool {
        self.a.iter().chain(&self.b).all(Ring::is_zero)
    }

    pub fn is_central(&self) -> bool {
        self.a.iter().all(Ring::is_zero)
    }

    fn check_schema(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.schema, &other.schema) || self.schema == other.schema {
            Ok(())
        } else {
            Err(Error::SchemaMismatch)
        }
    }

    fn sigma(&self, x: &[R], y: &[R]) -> Vec<R> {
        sigma(x, y, &self.schema).expect("lengths checked at construction")
    }

    pub fn mul(&self, h: &Self) -> Result<Self> {
        self.check_schema(h)?;
        let s = self.sigma(&self.a, &h.a);
        Ok(HallElement {
            a: add_vec(&self.a, &h.a),
            b: add_vec(&add_vec(&self.b, &h.b), &s),
            schema: self.schema.clone(),
        })
    }

    pub fn inv(&self) -> Self {
        let s = self.sigma(&self.a, &self.a);
        HallElement {
            a: self.a.iter().map(|x| -x.clone()).collect(),
            b: self.b.iter().zip(s).map(|(b, s)| s - b.clone()).collect(),
            schema: self.schema.clone(),
        }
    }

    /// Closed form `(mu a, mu b + C(mu,2) sigma(a,a))`.
    pub fn exp(&self, mu: &R) -> Self {
        let s = self.sigma(&self.a, &self.a);
        let c2 = mu.binomial(2);
        HallElement {
            a: scale_vec(&self.a, mu),
            b: add_vec(&scale_vec(&self.b, mu), &scale_vec(&s, &c2)),
            schema: self.schema.clone(),
        }
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(&self, h: &Self) -> Result<Self> {
        self.inv().mul(&h.inv())?.mul(self)?.mul(h)
    }

    /// Whether `self` and `h` commute, i.e. `sigma(a,a') = sigma(a',a)`.
    pub fn commutes_with(&self, h: &Self) -> bool {
        self.sigma(&self.a, &h.a) == self.sigma(&h.a, &self.a)
    }

    /// Exponent strings for each nonzero coordinate, in basis order.
    pub fn factors(&self) -> Vec<(String, &R)> {
        let names = self.schema.gen_names.iter().chain(&self.schema.central_names);
        names
            .zip(self.a.iter().chain(&self.b))
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (n.clone(), c))
            .collect()
    }
}

/// `prod_{i=1}^{n-1} [x_1...x_i, x_{i+1}]`.
pub fn tau2<R: Ring>(xs: &[HallElement<R>]) -> Result<HallElement<R>> {
    let first = xs.first().ok_or(Error::ZeroInput)?;
    let mut prefix = first.clone();
    let mut acc = HallElement::identity(&first.schema);
    for x in &xs[1..] {
        acc = acc.mul(&prefix.commutator(x)?)?;
        prefix = prefix.mul(x)?;
    }
    Ok(acc)
}

/// Writes `name^{e}` factors separated by spaces, dropping `^{1}`.
pub fn fmt_factors<R: Ring>(factors: &[(String, &R)]) -> String {
    factors
        .iter()
        .map(|(n, e)| if e.is_one() { n.clone() } else { format!("{n}^{{{e}}}") })
        .collect::<Vec<_>>()
        .join(" ")
}

impl<R: Ring> fmt::Display for HallElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        f.write_str(&fmt_factors(&self.factors()))
    }
}
