//! Randomized invariant suites with per-invariant pass/fail tallies.
//!
//! Each invariant runs `cases` independent cases. Case `i` of invariant
//! `name` draws from the stream `gen::case_rng(seed, tag(name), i)`, so the
//! report depends only on the configuration.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::ccalc::{c_binary, c_multi, SBasisKind, SplitOrder, Strategy};
use crate::dmodule::CKey;
use crate::error::Result;
use crate::gen::{self, Sample};
use crate::hall::{tau2, GroupSchema, HallElement};
use crate::oracle::{from_matrix, int_exp_oracle, matrix_model, DEFAULT_EXP_BOUND};
use crate::rword::{eval, parse_word, print_normal_form, RWord};
use crate::scalars::{factor_bounded, partial_fractions, Poly, RatFun, Rational, Ring, RingKind, SBasisElem};
use crate::tensor::TensorElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Facts,
    HallOracle,
    Confluence,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 4] = [Suite::Axioms, Suite::Facts, Suite::HallOracle, Suite::Confluence];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Facts => "facts",
            Suite::HallOracle => "hall-oracle",
            Suite::Confluence => "confluence",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::PARTS
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}` (expected axioms, facts, hall-oracle, confluence or all)"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub seed: u64,
    pub cases: usize,
    /// Degree bound for random scalars.
    pub degree: usize,
    pub factor_bound: usize,
    pub s_basis: SBasisKind,
    /// Use formal mode even where a certified strategy exists.
    pub formal: bool,
    /// Run only invariants with these names; empty runs everything.
    pub only: Vec<String>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            cases: 100,
            degree: gen::MAX_DEGREE,
            factor_bound: crate::scalars::DEFAULT_FACTOR_DEGREE_BOUND,
            s_basis: SBasisKind::Std,
            formal: false,
            only: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    pub suite: Suite,
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub ring: RingKind,
    pub seed: u64,
    pub cases: usize,
    pub tallies: Vec<Tally>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.tallies.iter().all(|t| t.failed == 0)
    }

    pub fn tally(&self, name: &str) -> Option<&Tally> {
        self.tallies.iter().find(|t| t.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {}, seed {}, {} cases per invariant", self.ring, self.seed, self.cases)?;
        let width = self.tallies.iter().map(|t| t.suite.name().len() + t.name.len() + 1).max().unwrap_or(0);
        for t in &self.tallies {
            let label = format!("{}/{}", t.suite, t.name);
            let status = if t.failed == 0 { "ok" } else { "FAIL" };
            writeln!(f, "  {label:<width$}  {:>6} passed  {:>6} failed  {status}", t.passed, t.failed)?;
            if let Some(c) = &t.counterexample {
                writeln!(f, "    counterexample: {c}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        let failed = self.tallies.iter().filter(|t| t.failed > 0).count();
        if failed == 0 {
            write!(f, "all {} invariants passed", self.tallies.len())
        } else {
            write!(f, "{failed} of {} invariants failed", self.tallies.len())
        }
    }
}

/// Runs a suite over the given ring and schema.
pub fn run(suite: Suite, ring: RingKind, schema: Arc<GroupSchema>, cfg: &CheckConfig) -> Result<Report> {
    match ring {
        RingKind::Z => run_in::<BigInt>(suite, schema, cfg),
        RingKind::Q => run_in::<Rational>(suite, schema, cfg),
        RingKind::QtPoly => run_in::<Poly>(suite, schema, cfg),
        RingKind::QtField => run_in::<RatFun>(suite, schema, cfg),
    }
}

pub fn run_in<R: Sample>(suite: Suite, schema: Arc<GroupSchema>, cfg: &CheckConfig) -> Result<Report> {
    let strat = if cfg.formal { Strategy::formal(schema) } else { Strategy::auto(R::KIND, schema) };
    let strat = strat
        .with_max_deg(cfg.factor_bound)
        .with_s_basis(cfg.s_basis);
    let mut r = Runner::<R> { strat, cfg, suite, tallies: Vec::new(), notes: Vec::new(), _ring: Default::default() };
    let parts: &[Suite] = if suite == Suite::All { &Suite::PARTS } else { std::slice::from_ref(&suite) };
    for &s in parts {
        r.suite = s;
        match s {
            Suite::Axioms => r.axioms(),
            Suite::Facts => r.facts(),
            Suite::HallOracle => r.hall_oracle(),
            Suite::Confluence => r.confluence(),
            Suite::All => unreachable!(),
        }
    }
    Ok(Report { ring: R::KIND, seed: cfg.seed, cases: cfg.cases, tallies: r.tallies, notes: r.notes })
}

/// Outcome of one case: whether the invariant held, and the inputs.
struct Verdict {
    holds: bool,
    witness: String,
}

fn verdict(holds: bool, witness: impl FnOnce() -> String) -> Verdict {
    Verdict { holds, witness: if holds { String::new() } else { witness() } }
}

fn tag(name: &str) -> u64 {
    // FNV-1a, so that streams do not depend on the order invariants run in.
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

fn nf<R: Ring>(g: &TensorElement<R>) -> String {
    print_normal_form(g)
}

struct Runner<'c, R: Sample> {
    strat: Strategy,
    cfg: &'c CheckConfig,
    suite: Suite,
    tallies: Vec<Tally>,
    notes: Vec<String>,
    _ring: std::marker::PhantomData<R>,
}

impl<R: Sample> Runner<'_, R> {
    fn wanted(&self, name: &str) -> bool {
        self.cfg.only.is_empty() || self.cfg.only.iter().any(|n| n == name)
    }

    fn invariant<F>(&mut self, name: &str, mut case: F)
    where
        F: FnMut(&mut ChaCha8Rng, &Strategy) -> Result<Verdict>,
    {
        if !self.wanted(name) {
            return;
        }
        let mut t = Tally { suite: self.suite, name: name.into(), passed: 0, failed: 0, counterexample: None };
        for i in 0..self.cfg.cases {
            let mut rng = gen::case_rng(self.cfg.seed, tag(name), i as u64);
            let (holds, witness) = match case(&mut rng, &self.strat) {
                Ok(v) => (v.holds, v.witness),
                Err(e) => (false, format!("case {i}: {e}")),
            };
            if holds {
                t.passed += 1;
            } else {
                t.failed += 1;
                t.counterexample.get_or_insert(witness);
            }
        }
        self.tallies.push(t);
    }

    fn deg(&self) -> usize {
        self.cfg.degree
    }

    /// Equality of D-parts is meaningful only for normal forms; in formal
    /// mode over rings with `t` only the Hall parts are compared.
    fn d_comparable(&self) -> bool {
        self.strat.is_canonical() || !R::KIND.has_t()
    }

    fn axioms(&mut self) {
        let deg = self.deg();
        let full = self.d_comparable();
        let same = move |g: &TensorElement<R>, h: &TensorElement<R>| if full { g == h } else { g.hall == h.hall };
        if !full {
            self.notes.push("formal strategy: axioms compare Hall parts only".into());
        }

        self.invariant("axiom-1", |rng, st| {
            let g = gen::tensor::<R, _>(rng, st, deg)?;
            let a = R::sample(rng, deg);
            let e = TensorElement::identity(st.schema());
            let holds = same(&g.exp(&R::one(), st)?, &g)
                && g.exp(&R::zero(), st)?.is_identity()
                && e.exp(&a, st)?.is_identity();
            Ok(verdict(holds, || format!("g = {}; alpha = {a}", nf(&g))))
        });

        self.invariant("axiom-2.1", |rng, st| {
            let g = gen::tensor::<R, _>(rng, st, deg)?;
            let (a, b) = (R::sample(rng, deg), R::sample(rng, deg));
            let lhs = g.exp(&(a.clone() + b.clone()), st)?;
            let rhs = g.exp(&a, st)?.mul(&g.exp(&b, st)?)?;
            Ok(verdict(same(&lhs, &rhs), || format!("g = {}; alpha = {a}; beta = {b}", nf(&g))))
        });

        self.invariant("axiom-2.2", |rng, st| {
            let g = gen::tensor::<R, _>(rng, st, deg)?;
            let (a, b) = (R::sample(rng, deg), R::sample(rng, deg));
            let lhs = g.exp(&a, st)?.exp(&b, st)?;
            let rhs = g.exp(&(a.clone() * b.clone()), st)?;
            Ok(verdict(same(&lhs, &rhs), || format!("g = {}; alpha = {a}; beta = {b}", nf(&g))))
        });

        self.invariant("axiom-3", |rng, st| {
            let g = gen::tensor::<R, _>(rng, st, deg)?;
            let h = gen::tensor::<R, _>(rng, st, deg)?;
            let a = R::sample(rng, deg);
            let hi = h.inv();
            let lhs = hi.mul(&g)?.mul(&h)?.exp(&a, st)?;
            let rhs = hi.mul(&g.exp(&a, st)?)?.mul(&h)?;
            Ok(verdict(same(&lhs, &rhs), || format!("g = {}; h = {}; alpha = {a}", nf(&g), nf(&h))))
        });

        self.invariant("axiom-4", |rng, st| {
            let base = gen::tensor::<R, _>(rng, st, deg)?;
            let (s1, s2) = (R::sample(rng, 2), R::sample(rng, 2));
            let g = base.exp(&s1, st)?.mul(&gen::central(rng, st, deg)?)?;
            let h = base.exp(&s2, st)?.mul(&gen::central(rng, st, deg)?)?;
            let a = R::sample(rng, deg);
            let commute = g.commutator(&h)?.is_identity();
            let lhs = g.mul(&h)?.exp(&a, st)?;
            let rhs = g.exp(&a, st)?.mul(&h.exp(&a, st)?)?;
            Ok(verdict(commute && same(&lhs, &rhs), || format!("g = {}; h = {}; alpha = {a}", nf(&g), nf(&h))))
        });

        if full {
            self.invariant("hall-comparison", |rng, st| {
                let g = gen::tensor::<R, _>(rng, st, deg)?;
                let a = R::sample(rng, deg);
                let inc = g.exp(&a, st)?.d.sub(&g.d.scale(&a));
                let schema = st.schema();
                let parts: Vec<_> = g
                    .hall
                    .a()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| TensorElement::embed(HallElement::generator(schema, i).exp(c)))
                    .collect();
                let expected = c_multi(st, &parts, &a)?;
                Ok(verdict(inc == expected, || format!("g = {}; alpha = {a}", nf(&g))))
            });
        }

        self.invariant("retraction", |rng, st| {
            let g = gen::tensor::<R, _>(rng, st, deg)?;
            let h = gen::tensor::<R, _>(rng, st, deg)?;
            let a = R::sample(rng, deg);
            let hom = *g.mul(&h)?.mu_retract() == g.mu_retract().mul(h.mu_retract())?;
            let rexp = *g.exp(&a, st)?.mu_retract() == g.mu_retract().exp(&a);
            let kernel = TensorElement::from_d(st.schema(), g.d.clone()).mu_retract().is_identity();
            let product = TensorElement::embed(g.hall.clone()).mul(&TensorElement::embed(h.hall.clone()))?
                == TensorElement::embed(g.hall.mul(&h.hall)?);
            Ok(verdict(hom && rexp && kernel && product, || format!("g = {}; h = {}; alpha = {a}", nf(&g), nf(&h))))
        });

        if !R::KIND.has_t() {
            self.invariant("rational-degeneracy", |rng, st| {
                let w = gen::word::<R, _>(rng, st.schema(), 3, 1);
                let g = eval(&w, st)?;
                let a = R::sample(rng, deg);
                let ga = g.exp(&a, st)?;
                Ok(verdict(g.d.is_zero() && ga.d.is_zero(), || format!("w = {w}; alpha = {a}")))
            });
        }
    }

    fn facts(&mut self) {
        if !self.d_comparable() {
            self.notes.push("formal strategy: c-commutator identities skipped (no normal form)".into());
            return;
        }
        let deg = self.deg();
        let c = |st: &Strategy, g: &TensorElement<R>, h: &TensorElement<R>, a: &R| c_binary(st, g, h, a);
        let pair = |rng: &mut ChaCha8Rng, st: &Strategy| -> Result<(TensorElement<R>, TensorElement<R>)> {
            Ok((gen::tensor::<R, _>(rng, st, deg)?, gen::tensor::<R, _>(rng, st, deg)?))
        };

        self.invariant("F7", |rng, st| {
            let (f, h) = pair(rng, st)?;
            let (a, b) = (R::sample(rng, 2), R::sample(rng, 2));
            let mut lhs = c(st, &f, &h, &a)?.scale(&b);
            lhs.add_assign(&c(st, &f.exp(&a, st)?, &h.exp(&a, st)?, &b)?);
            let mut rhs = c(st, &f, &h, &b)?.scale(&a);
            rhs.add_assign(&c(st, &f.exp(&b, st)?, &h.exp(&b, st)?, &a)?);
            Ok(verdict(lhs == rhs, || format!("f = {}; h = {}; alpha = {a}; beta = {b}", nf(&f), nf(&h))))
        });

        self.invariant("E8", |rng, st| {
            let (g, h) = pair(rng, st)?;
            let (a, b) = (R::sample(rng, deg), R::sample(rng, deg));
            let lhs = c(st, &g, &h, &(a.clone() + b.clone()))?;
            let rhs = c(st, &g, &h, &a)?.add(&c(st, &g, &h, &b)?);
            Ok(verdict(lhs == rhs, || format!("g = {}; h = {}; alpha = {a}; beta = {b}", nf(&g), nf(&h))))
        });

        self.invariant("E9", |rng, st| {
            let (g, h) = pair(rng, st)?;
            let (a, b) = (R::sample(rng, 2), R::sample(rng, 2));
            let lhs = c(st, &g, &h, &(a.clone() * b.clone()))?;
            let rhs = c(st, &g.exp(&a, st)?, &h.exp(&a, st)?, &b)?.add(&c(st, &g, &h, &a)?.scale(&b));
            Ok(verdict(lhs == rhs, || format!("g = {}; h = {}; alpha = {a}; beta = {b}", nf(&g), nf(&h))))
        });

        self.invariant("F12", |rng, st| {
            let (g, h) = pair(rng, st)?;
            let (a, ai) = loop {
                let a = R::sample_nonzero(rng, 2);
                if let Ok(ai) = a.inv() {
                    break (a, ai);
                }
            };
            let lhs = c(st, &g, &h, &ai)?;
            let rhs = c(st, &g.exp(&ai, st)?, &h.exp(&ai, st)?, &a)?.scale(&-ai.clone());
            Ok(verdict(lhs == rhs, || format!("g = {}; h = {}; alpha = {a}", nf(&g), nf(&h))))
        });

        self.invariant("F13", |rng, st| {
            let (g, h) = pair(rng, st)?;
            let a = R::sample(rng, deg);
            let holds = c(st, &g, &h, &a)? == c(st, &h, &g, &a)?;
            Ok(verdict(holds, || format!("g = {}; h = {}; alpha = {a}", nf(&g), nf(&h))))
        });

        self.invariant("F14", |rng, st| {
            let (g, h) = pair(rng, st)?;
            let f = gen::tensor::<R, _>(rng, st, deg)?;
            let a = R::sample(rng, deg);
            let lhs = c(st, &g.mul(&h)?, &f, &a)?.add(&c(st, &g, &h, &a)?);
            let rhs = c(st, &g, &h.mul(&f)?, &a)?.add(&c(st, &h, &f, &a)?);
            Ok(verdict(lhs == rhs, || format!("g = {}; h = {}; f = {}; alpha = {a}", nf(&g), nf(&h), nf(&f))))
        });

        self.invariant("F15", |rng, st| {
            let (g, h) = pair(rng, st)?;
            let a = R::sample(rng, deg);
            let hi = h.inv();
            let lhs = c(st, &hi.mul(&g)?, &h, &a)?;
            let rhs = c(st, &hi, &g, &a)?.neg();
            Ok(verdict(lhs == rhs, || format!("g = {}; h = {}; alpha = {a}", nf(&g), nf(&h))))
        });

        self.invariant("E10", |rng, st| {
            let base = gen::hall::<R, _>(rng, st.schema(), deg);
            let (s1, s2) = (R::sample(rng, 2), R::sample(rng, 2));
            let g = TensorElement::embed(base.exp(&s1));
            let h = TensorElement::embed(base.exp(&s2));
            let a = R::sample(rng, deg);
            let holds = c(st, &g, &h, &a)?.is_zero();
            Ok(verdict(holds, || format!("g = {}; h = {}; alpha = {a}", nf(&g), nf(&h))))
        });

        self.invariant("E10'", |rng, st| {
            let base = gen::hall::<R, _>(rng, st.schema(), deg);
            let (s1, s2) = (R::sample(rng, 2), R::sample(rng, 2));
            let a = R::sample(rng, deg);
            let scaled = |s: &R| -> Vec<R> { base.a().iter().map(|x| s.clone() * x.clone()).collect() };
            let (u, v) = (scaled(&s1), scaled(&s2));
            let sum: Vec<R> = u.iter().zip(&v).map(|(x, y)| x.clone() + y.clone()).collect();
            let lhs = st.exp_increment(&sum, &a)?;
            let rhs = st.exp_increment(&u, &a)?.add(&st.exp_increment(&v, &a)?);
            Ok(verdict(lhs == rhs, || format!("base = {base}; sigma1 = {s1}; sigma2 = {s2}; lambda = {a}")))
        });

        if self.strat.is_canonical() {
            self.invariant("basis-keys", |rng, st| {
                let (a, b) = (R::sample_nonzero(rng, deg), R::sample_nonzero(rng, deg));
                let l = R::sample(rng, deg);
                let d = st.ccoord(&a, &b, &l)?;
                let bad = d.keys().find(|k| !key_is_basis(k, st.max_deg));
                Ok(verdict(bad.is_none(), || format!("alpha = {a}; beta = {b}; lambda = {l}; key {}", bad.unwrap())))
            });
        }

        if R::KIND == RingKind::QtField {
            self.invariant("partial-fractions", |rng, st| {
                let f = gen::ratfun_with_powers(rng, deg);
                let pf = partial_fractions(&f, st.max_deg)?;
                let valid = pf.terms.keys().all(|s| s_elem_is_basis(s, st.max_deg));
                Ok(verdict(valid && pf.recombine() == f, || format!("f = {f}")))
            });
        }
    }

    fn hall_oracle(&mut self) {
        let deg = self.deg();
        let rank2 = self.strat.schema().is_free_rank2();

        self.invariant("hall-exp-oracle", |rng, st| {
            let g = gen::integer_hall::<R, _>(rng, st.schema(), 5);
            let k = rng.gen_range(-DEFAULT_EXP_BOUND..=DEFAULT_EXP_BOUND);
            let holds = g.exp(&R::from_i64(k)) == int_exp_oracle(&g, k)?;
            Ok(verdict(holds, || format!("g = {g}; k = {k}")))
        });

        if rank2 {
            self.invariant("matrix-model", |rng, st| {
                let g = gen::integer_hall::<R, _>(rng, st.schema(), 10);
                let h = gen::integer_hall::<R, _>(rng, st.schema(), 10);
                let (mg, mh) = (matrix_model(&g)?, matrix_model(&h)?);
                let hom = matrix_model(&g.mul(&h)?)? == mg.mul(&mh);
                let back = from_matrix::<R>(st.schema(), &mg)? == g;
                Ok(verdict(hom && back, || format!("g = {g}; h = {h}")))
            });
        } else {
            self.notes.push("matrix model needs the rank-2 schema; skipped".into());
        }

        self.invariant("hall-petresco", |rng, st| {
            let g = gen::hall::<R, _>(rng, st.schema(), deg);
            let h = gen::hall::<R, _>(rng, st.schema(), deg);
            let a = R::sample(rng, deg);
            let lhs = g.exp(&a).mul(&h.exp(&a))?;
            let rhs = g.mul(&h)?.exp(&a).mul(&tau2(&[g.clone(), h.clone()])?.exp(&a.binomial(2)))?;
            Ok(verdict(lhs == rhs, || format!("g = {g}; h = {h}; alpha = {a}")))
        });

        self.invariant("F3", |rng, st| {
            let g = gen::hall::<R, _>(rng, st.schema(), deg);
            let h = gen::hall::<R, _>(rng, st.schema(), deg);
            let (a, b) = (R::sample(rng, deg), R::sample(rng, deg));
            let lhs = g.exp(&a).commutator(&h.exp(&b))?;
            let rhs = g.commutator(&h)?.exp(&(a.clone() * b.clone()));
            Ok(verdict(lhs == rhs, || format!("g = {g}; h = {h}; alpha = {a}; beta = {b}")))
        });

        self.invariant("nilpotency-2", |rng, st| {
            let g = gen::hall::<R, _>(rng, st.schema(), deg);
            let h = gen::hall::<R, _>(rng, st.schema(), deg);
            let f = gen::hall::<R, _>(rng, st.schema(), deg);
            let holds = g.commutator(&h)?.commutator(&f)?.is_identity();
            Ok(verdict(holds, || format!("g = {g}; h = {h}; f = {f}")))
        });

        self.invariant("associativity", |rng, st| {
            let g = gen::hall::<R, _>(rng, st.schema(), deg);
            let h = gen::hall::<R, _>(rng, st.schema(), deg);
            let f = gen::hall::<R, _>(rng, st.schema(), deg);
            let holds = g.mul(&h)?.mul(&f)? == g.mul(&h.mul(&f)?)?;
            Ok(verdict(holds, || format!("g = {g}; h = {h}; f = {f}")))
        });
    }

    fn confluence(&mut self) {
        if !self.d_comparable() {
            self.notes.push("formal strategy: confluence probes skipped (no normal form)".into());
            return;
        }
        let right = self.strat.clone().with_split(SplitOrder::Right);

        self.invariant("split-order", |rng, st| {
            let w = gen::word::<R, _>(rng, st.schema(), 3, 2);
            let holds = eval(&w, st)? == eval(&w, &right)?;
            Ok(verdict(holds, || format!("w = {w}")))
        });

        self.invariant("bracketing", |rng, st| {
            let schema = st.schema();
            let [a, b, c] = [(); 3].map(|_| gen::word::<R, _>(rng, schema, 2, 2));
            let s = R::sample(rng, 2);
            let left = RWord::mul(vec![RWord::mul(vec![a.clone(), b.clone()]), c.clone()]).exp(s.clone());
            let right = RWord::mul(vec![a, RWord::mul(vec![b, c])]).exp(s);
            let holds = eval(&left, st)? == eval(&right, st)?;
            Ok(verdict(holds, || format!("{left} vs {right}")))
        });

        self.invariant("round-trip", |rng, st| {
            let w = gen::word::<R, _>(rng, st.schema(), 3, 2);
            let g = eval(&w, st)?;
            let printed = print_normal_form(&g);
            let again = eval(&parse_word::<R>(&printed, st.schema())?, st)?;
            let reparsed = eval(&parse_word::<R>(&w.to_string(), st.schema())?, st)?;
            Ok(verdict(again == g && reparsed == g, || format!("w = {w}; normal form {printed}")))
        });
    }
}

fn s_elem_is_basis(s: &SBasisElem, max_deg: usize) -> bool {
    match s {
        SBasisElem::Monomial(_) => true,
        SBasisElem::SimpleFraction { p, m, j } => {
            *m >= 1
                && p.deg() >= 1
                && *j < p.deg()
                && p.is_monic()
                && factor_bounded(p, max_deg).is_ok_and(|f| f.factors.len() == 1 && f.factors[0].1 == 1)
        }
    }
}

/// Whether a key is a basis label: a canonical pair over Q[t], or an
/// S-element with nonzero ratio over Q(t).
pub fn key_is_basis<R: Ring>(k: &CKey<R>, max_deg: usize) -> bool {
    match k {
        CKey::Poly(p) => p.is_canonical(),
        CKey::Field(f) => !f.betahat.is_zero() && s_elem_is_basis(&f.s, max_deg),
        CKey::Formal(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_on_a_few_cases() {
        let cfg = CheckConfig { seed: 3, cases: 8, ..CheckConfig::default() };
        for ring in RingKind::ALL {
            let report = run(Suite::All, ring, GroupSchema::rank2(), &cfg).unwrap();
            assert!(report.all_passed(), "{report}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = CheckConfig { seed: 11, cases: 5, ..CheckConfig::default() };
        let a = run(Suite::Facts, RingKind::QtPoly, GroupSchema::rank2(), &cfg).unwrap();
        let b = run(Suite::Facts, RingKind::QtPoly, GroupSchema::rank2(), &cfg).unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn formal_mode_compares_hall_parts() {
        let schema = Arc::new(GroupSchema::free(3).unwrap());
        let cfg = CheckConfig { seed: 1, cases: 4, ..CheckConfig::default() };
        let report = run(Suite::All, RingKind::QtPoly, schema, &cfg).unwrap();
        assert!(report.all_passed(), "{report}");
        assert!(!report.notes.is_empty());
        assert!(report.tally("F7").is_none());
    }

    #[test]
    fn suite_names() {
        assert_eq!("hall-oracle".parse::<Suite>(), Ok(Suite::HallOracle));
        assert!("nope".parse::<Suite>().is_err());
    }
}
