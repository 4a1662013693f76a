//! Built-in corpus and the property suites run by `qsing verify-paper`.
//!
//! Every suite is named and reports the properties that failed. The corpus
//! covers the even family for even `n`, the odd composite family and its
//! metacyclic building block for odd composite `n`, and for odd primes `p`
//! a set of cyclic fixed-point-free groups in `SL(p)` with random
//! conjugates, the refusal of the odd constructor and the metacyclic group
//! with `q = p`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::classify::{classify, Gorenstein, SingLocus, TheoremWitness};
use crate::construct::{
    anticirculant, construct_even, construct_odd_composite, conjugate_embed, diagonal_root_matrix,
    MetacyclicParams, OddCompositeParams,
};
use crate::format::{emit_spec, parse_spec, GroupSpec};
use crate::group::{element_order, FiniteMatrixGroup, DEFAULT_CAP};
use crate::number::{is_prime, pow_mod};
use crate::poly::Poly;
use crate::report::ReportDocument;
use crate::{CycGroup, CycMatrix, Cyclotomic, CyclotomicField, RatMatrix, Rational};

/// Dimensions covered by a default run.
pub const DEFAULT_N_LIST: [usize; 8] = [2, 3, 4, 5, 6, 7, 9, 15];

/// Random conjugates per odd prime in a default run.
pub const DEFAULT_CONJUGATIONS: usize = 10;

const SEED: u64 = 0x5eed_0f_c0de;

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Collects named property checks.
#[derive(Default)]
struct Checks {
    count: usize,
    failures: Vec<String>,
}

impl Checks {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.count += 1;
        if !ok {
            self.failures.push(name.into());
        }
    }

    fn fail(&mut self, name: impl Into<String>) {
        self.check(name, false);
    }
}

fn run(name: String, body: impl FnOnce(&mut Checks)) -> SuiteOutcome {
    let start = Instant::now();
    let mut checks = Checks::default();
    body(&mut checks);
    SuiteOutcome { name, checks: checks.count, failures: checks.failures, elapsed: start.elapsed() }
}

/// `mult_eigen_one` by rank agrees with the multiplicity of the root 1 of
/// the characteristic polynomial, for every element.
fn eigen_cross_check(c: &mut Checks, label: &str, group: &CycGroup) {
    let one = Cyclotomic::one(group.ctx().order());
    let bad: Vec<usize> = (0..group.order())
        .into_par_iter()
        .filter(|&x| {
            let g = group.element(x);
            g.mult_eigen_one() != g.char_poly().root_multiplicity(&one)
        })
        .collect();
    c.check(format!("{label}: rank and char-poly eigenvalue-1 multiplicities agree"), bad.is_empty());
}

fn spec_round_trip(c: &mut Checks, label: &str, group: &CycGroup) {
    match GroupSpec::from_generators(&group.generators()) {
        Ok(spec) => {
            let text = emit_spec(&spec);
            c.check(format!("{label}: spec round-trip"), parse_spec(&text).as_ref() == Ok(&spec));
        }
        Err(e) => c.fail(format!("{label}: spec from generators ({e})")),
    }
}

/// The metacyclic group `⟨A, B⟩ ⊂ GL(q)`: determinants, the conjugation
/// relation, generator orders, the group order, absence of eigenvalue 1
/// away from the identity and the characteristic polynomial of `A^r B^s`.
pub fn metacyclic_suite(p: MetacyclicParams) -> SuiteOutcome {
    let name = format!("metacyclic q={} l={} alpha={}", p.q, p.l, p.alpha);
    run(name, |c| {
        let (q, l) = (p.q, p.l);
        let (a, b) = p.generators();
        let x = p.x();
        c.check("det A = x", a.determinant() == x);
        c.check("det B = 1", b.determinant().is_one());
        let geometric = (0..q).map(|i| pow_mod(p.alpha, i, l)).sum::<u64>() % l;
        c.check("1 + alpha + ... + alpha^(q-1) = 0 mod l", geometric == 0);
        c.check("AB != BA", a.mul(&b) != b.mul(&a));
        match a.inverse() {
            Some(ai) => c.check("A^-1 B A = B^alpha", ai.mul(&b).mul(&a) == b.pow(p.alpha)),
            None => c.fail("A invertible"),
        }
        c.check("ord A = q^2", element_order(&a, DEFAULT_CAP).ok() == Some((q * q) as usize));
        c.check("ord B = l", element_order(&b, DEFAULT_CAP).ok() == Some(l as usize));
        match FiniteMatrixGroup::closure(&[a.clone(), b.clone()], DEFAULT_CAP) {
            Ok(g) => c.check("|<A, B>| = q^2 l", g.order() == (q * q * l) as usize),
            Err(e) => c.fail(format!("closure of <A, B> ({e})")),
        }

        // Enumerate A^r B^s directly, independent of the closure.
        let a_pows: Vec<CycMatrix> = std::iter::successors(Some(CycMatrix::identity(q as usize, a.ctx())), |g| {
            Some(g.mul(&a))
        })
        .take((q * q) as usize)
        .collect();
        let b_pows: Vec<CycMatrix> = std::iter::successors(Some(CycMatrix::identity(q as usize, b.ctx())), |g| {
            Some(g.mul(&b))
        })
        .take(l as usize)
        .collect();
        let pairs: Vec<(usize, usize)> =
            (0..a_pows.len()).flat_map(|r| (0..b_pows.len()).map(move |s| (r, s))).collect();
        let results: Vec<(bool, bool)> = pairs
            .par_iter()
            .map(|&(r, s)| {
                let g = a_pows[r].mul(&b_pows[s]);
                let eigen_ok = (r, s) == (0, 0) || g.mult_eigen_one() == 0;
                let v = r as u64 % q;
                let poly_ok = if v != 0 {
                    let xv = x.pow(v as i64).expect("x is a unit");
                    g.char_poly() == Poly::binomial(q as usize, xv.neg())
                } else {
                    g.is_diagonal()
                        && ((r, s) == (0, 0)
                            || (0..q as usize).all(|i| !g.get(i, i).is_one()))
                };
                (eigen_ok, poly_ok)
            })
            .collect();
        c.check("mult_eigen_one(A^r B^s) = 0 for (r, s) != (0, 0)", results.iter().all(|r| r.0));
        c.check("char_poly(A^r B^s) = t^q - x^v, or diagonal without 1 when v = 0", results.iter().all(|r| r.1));
    })
}

fn family_report_checks(c: &mut Checks, label: &str, group: &CycGroup, expected_order: usize) {
    let r = classify(group);
    c.check(format!("{label}: order {expected_order}"), r.group_order == expected_order);
    c.check(format!("{label}: in SL(n)"), r.in_sl);
    c.check(format!("{label}: Gorenstein"), r.gorenstein == Gorenstein::True);
    c.check(format!("{label}: fixed-point-free"), r.fixed_point_free);
    c.check(format!("{label}: no pseudo-reflections"), !r.has_pseudo_reflections);
    c.check(format!("{label}: isolated"), r.isolated && r.sing_locus_dim == SingLocus::Dim(0));
    c.check(format!("{label}: not cyclic"), !r.cyclic);
    c.check(format!("{label}: not abelian"), !r.abelian);
    c.check(format!("{label}: no violation"), r.theorem_witness != TheoremWitness::Violation);
    eigen_cross_check(c, label, group);
    spec_round_trip(c, label, group);
}

pub fn even_family_suite(n: usize) -> SuiteOutcome {
    run(format!("even family n={n}"), |c| match construct_even(n) {
        Ok(g) => family_report_checks(c, "group", &g, 8),
        Err(e) => c.fail(format!("construction ({e})")),
    })
}

pub fn odd_composite_suite(n: usize) -> SuiteOutcome {
    let params = OddCompositeParams::new(n, None);
    let name = match &params {
        Ok(p) => format!("odd-composite family n={n} (q={}, l={})", p.metacyclic.q, p.metacyclic.l),
        Err(_) => format!("odd-composite family n={n}"),
    };
    run(name, |c| {
        let p = match params {
            Ok(p) => p,
            Err(e) => return c.fail(format!("parameters ({e})")),
        };
        let (a, b) = p.metacyclic.generators();
        let (fa, fb) = match (conjugate_embed(&a, p.n_prime), conjugate_embed(&b, p.n_prime)) {
            (Ok(fa), Ok(fb)) => (fa, fb),
            _ => return c.fail("embedding"),
        };
        c.check("det f(A) = 1", fa.determinant().is_one());
        c.check("det f(B) = 1", fb.determinant().is_one());
        c.check("f(A) f(B) != f(B) f(A)", fa.mul(&fb) != fb.mul(&fa));
        c.check("f(AB) = f(A) f(B)", conjugate_embed(&a.mul(&b), p.n_prime).ok() == Some(fa.mul(&fb)));
        let q = p.metacyclic.q as usize;
        match construct_odd_composite(n, None) {
            Ok(g) => family_report_checks(c, "group", &g, q * q * p.metacyclic.l as usize),
            Err(e) => c.fail(format!("construction ({e})")),
        }
    })
}

/// Cyclic fixed-point-free subgroups of `SL(p)`, as `(m, exponents)` with
/// `⟨diag(ζ_m^{e_i})⟩`. Every exponent is prime to `m` and they sum to a
/// multiple of `m`.
pub fn cyclic_examples(p: usize) -> Vec<(u64, Vec<i64>)> {
    let mut out = vec![(p as u64, vec![1; p])];
    match p {
        3 => out.extend([(7, vec![1, 2, 4]), (9, vec![1, 4, 4]), (5, vec![1, 1, 3])]),
        5 => out.extend([(11, vec![1, 3, 4, 5, 9]), (7, vec![1, 1, 1, 2, 2])]),
        7 => out.extend([(9, vec![1, 1, 1, 1, 1, 2, 2]), (29, vec![1, 7, 20, 24, 23, 16, 25])]),
        _ => {}
    }
    out
}

/// `c⁻¹ g c` for each generator, with `c` a random integer matrix with
/// entries in `[-2, 2]` that is invertible over `Q`.
pub fn random_conjugate<R: Rng>(generators: &[CycMatrix], rng: &mut R) -> Vec<CycMatrix> {
    let first = &generators[0];
    let (n, m) = (first.dim(), first.ambient_order());
    let c = loop {
        let cand = RatMatrix::from_fn(n, (), |_, _| Rational::from_integer(rng.gen_range(-2i64..=2).into()));
        if !cand.determinant().is_zero() {
            break cand;
        }
    };
    let c_inv = c.inverse().expect("nonzero determinant");
    let field = CyclotomicField::get(m);
    let lift = |r: &RatMatrix| r.map(field, |v| Cyclotomic::from_rational(m, v));
    let (c, c_inv) = (lift(&c), lift(&c_inv));
    generators.iter().map(|g| c_inv.mul(g).mul(&c)).collect()
}

/// Groups of [`cyclic_examples`] followed by `conjugations` random
/// conjugates, cycling through the examples whose field has a cheap
/// inverse.
pub fn cyclic_corpus(p: usize, conjugations: usize, seed: u64) -> Vec<(String, Vec<CycMatrix>)> {
    let examples = cyclic_examples(p);
    let mut out: Vec<(String, Vec<CycMatrix>)> = examples
        .iter()
        .map(|(m, e)| (format!("diag zeta_{m}^{e:?}"), vec![diagonal_root_matrix(*m, e)]))
        .collect();
    let small: Vec<&(u64, Vec<i64>)> = examples.iter().filter(|(m, _)| *m <= 13).collect();
    let mut rng = StdRng::seed_from_u64(seed ^ p as u64);
    for k in 0..conjugations {
        let (m, e) = small[k % small.len()];
        let gens = random_conjugate(&[diagonal_root_matrix(*m, e)], &mut rng);
        out.push((format!("conjugate #{k} of diag zeta_{m}^{e:?}"), gens));
    }
    out
}

pub fn cyclic_suite(p: usize, conjugations: usize) -> SuiteOutcome {
    run(format!("cyclic examples n={p} ({conjugations} random conjugates)"), |c| {
        for (label, gens) in cyclic_corpus(p, conjugations, SEED) {
            let g = match FiniteMatrixGroup::generate(&gens) {
                Ok(g) => g,
                Err(e) => {
                    c.fail(format!("{label}: closure ({e})"));
                    continue;
                }
            };
            let r = classify(&g);
            c.check(format!("{label}: cyclic, isolated, Gorenstein"), r.cyclic && r.isolated && r.in_sl);
            c.check(format!("{label}: fixed-point-free"), r.fixed_point_free);
            c.check(format!("{label}: witness holds"), r.theorem_witness == TheoremWitness::Holds);
            eigen_cross_check(c, &label, &g);
        }
    })
}

pub fn refusal_suite(p: usize) -> SuiteOutcome {
    run(format!("odd-composite refusal n={p}"), |c| {
        c.check("construct_odd_composite refuses", construct_odd_composite(p, None).is_err());
    })
}

/// Random anti-circulant matrices with root-of-unity entries and
/// determinant 1 have characteristic polynomial `t^n + (−1)^n`.
pub fn anticirculant_suite(n: usize, samples: usize) -> SuiteOutcome {
    run(format!("anti-circulant char poly n={n}"), |c| {
        let mut rng = StdRng::seed_from_u64(SEED ^ ((n as u64) << 8));
        for k in 0..samples {
            let b = random_anticirculant(n, &mut rng);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let expected = Poly::binomial(n, Cyclotomic::from_i64(b.ambient_order(), sign));
            c.check(format!("sample {k}: det = 1"), b.determinant().is_one());
            c.check(format!("sample {k}: char poly t^n + (-1)^n"), b.char_poly() == expected);
        }
    })
}

/// Anti-circulant matrix with entries `ζ_m^{k_i}`, `m ∈ {3, …, 12}` random,
/// whose determinant `(−1)^{n−1} Π ζ_m^{k_i}` equals 1.
pub fn random_anticirculant<R: Rng>(n: usize, rng: &mut R) -> CycMatrix {
    let m: u64 = rng.gen_range(3..=12);
    let mut ks: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..m as i64)).collect();
    let sum: i64 = ks.iter().sum();
    let last = Cyclotomic::zeta_pow(m, -sum);
    let mut entries: Vec<Cyclotomic> = ks.drain(..).map(|k| Cyclotomic::zeta_pow(m, k)).collect();
    // (−1)^{n−1} is absorbed into the last entry.
    entries.push(if n % 2 == 0 { last.neg() } else { last });
    anticirculant(&entries)
}

/// `⟨diag(−1, −1, 1)⟩` has a one-dimensional singular locus and
/// `⟨diag(−1, 1)⟩` is a reflection group with smooth quotient.
pub fn chain_suite(n: usize) -> SuiteOutcome {
    run(format!("singular-locus chain n={n}"), |c| {
        let diag = |v: &[i64]| CycMatrix::diagonal(v.iter().map(|&x| Cyclotomic::from_i64(1, x)).collect());
        let (gen, expected) = match n {
            2 => (diag(&[-1, 1]), SingLocus::Smooth),
            _ => (diag(&[-1, -1, 1]), SingLocus::Dim(1)),
        };
        match FiniteMatrixGroup::generate(&[gen]) {
            Ok(g) => c.check(format!("sing_locus_dim = {expected}"), classify(&g).sing_locus_dim == expected),
            Err(e) => c.fail(format!("closure ({e})")),
        }
    })
}

/// Suites for one dimension, by name.
pub fn suites_for(n: usize, conjugations: usize) -> Vec<Box<dyn FnOnce() -> SuiteOutcome + Send>> {
    let mut out: Vec<Box<dyn FnOnce() -> SuiteOutcome + Send>> = Vec::new();
    if n >= 2 && n % 2 == 0 {
        out.push(Box::new(move || even_family_suite(n)));
        if n == 2 {
            out.push(Box::new(|| chain_suite(2)));
        }
    } else if n >= 3 && is_prime(n as u64) {
        out.push(Box::new(move || cyclic_suite(n, conjugations)));
        out.push(Box::new(move || refusal_suite(n)));
        out.push(Box::new(move || anticirculant_suite(n, 5)));
        if let Ok(p) = MetacyclicParams::smallest(n as u64) {
            out.push(Box::new(move || metacyclic_suite(p)));
        }
        if n == 3 {
            out.push(Box::new(|| chain_suite(3)));
        }
    } else if n >= 9 {
        out.push(Box::new(move || odd_composite_suite(n)));
        if let Ok(p) = OddCompositeParams::new(n, None) {
            out.push(Box::new(move || metacyclic_suite(p.metacyclic)));
        }
        out.push(Box::new(move || anticirculant_suite(n, 5)));
    }
    out
}

/// Runs every suite for the listed dimensions, skipping repeated names.
/// Dimensions without any suite produce a failing placeholder.
pub fn run_corpus(n_list: &[usize], conjugations: usize, mut on_done: impl FnMut(&SuiteOutcome)) -> Vec<SuiteOutcome> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &n in n_list {
        let suites = suites_for(n, conjugations);
        if suites.is_empty() {
            let outcome = SuiteOutcome {
                name: format!("n={n}"),
                checks: 1,
                failures: vec![format!("no built-in suite covers n = {n}")],
                elapsed: Duration::ZERO,
            };
            on_done(&outcome);
            out.push(outcome);
        }
        for suite in suites {
            let outcome = suite();
            if seen.insert(outcome.name.clone()) {
                on_done(&outcome);
                out.push(outcome);
            }
        }
    }
    out
}

/// Every group of the built-in corpus with a label: the families, the
/// metacyclic groups, the cyclic examples with `conjugations` random
/// conjugates per odd prime and the chain examples.
pub fn corpus_groups(n_list: &[usize], conjugations: usize) -> Vec<(String, Vec<CycMatrix>)> {
    let mut out = Vec::new();
    let mut seen_q = BTreeSet::new();
    for &n in n_list {
        if n >= 2 && n % 2 == 0 {
            if let Ok(gens) = crate::construct::even_family_generators(n) {
                out.push((format!("even family n={n}"), gens));
            }
        } else if n >= 3 && is_prime(n as u64) {
            for (label, gens) in cyclic_corpus(n, conjugations, SEED) {
                out.push((format!("n={n} {label}"), gens));
            }
            if let Ok(p) = MetacyclicParams::smallest(n as u64) {
                if seen_q.insert(p.q) {
                    let (a, b) = p.generators();
                    out.push((format!("metacyclic q={}", p.q), vec![a, b]));
                }
            }
        } else if let Ok(p) = OddCompositeParams::new(n, None) {
            if let Ok(gens) = p.generators() {
                out.push((format!("odd-composite family n={n}"), gens));
            }
            if seen_q.insert(p.metacyclic.q) {
                let (a, b) = p.metacyclic.generators();
                out.push((format!("metacyclic q={}", p.metacyclic.q), vec![a, b]));
            }
        }
    }
    out
}

/// Report document for a group, with the ambient order of its field.
pub fn document(group: &CycGroup) -> ReportDocument {
    ReportDocument::new(&classify(group), group.ctx().order())
}
