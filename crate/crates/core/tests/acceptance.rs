//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use qsing_core::classify::{classify, Gorenstein, SingLocus, TheoremWitness};
use qsing_core::construct::{
    construct_even, construct_odd_composite, diagonal_root_matrix, even_family_generators,
    odd_composite_generators, MetacyclicParams,
};
use qsing_core::format::{emit_spec, parse_spec, GroupSpec};
use qsing_core::group::FiniteMatrixGroup;
use qsing_core::suites::{corpus_groups, cyclic_corpus, random_anticirculant, DEFAULT_N_LIST};
use qsing_core::{CycGroup, CycMatrix, Cyclotomic, Poly};

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// `det(t·I − g)` at an integer point, by Gaussian elimination.
fn det_at(g: &CycMatrix, t: i64) -> Cyclotomic {
    let m = g.ambient_order();
    CycMatrix::scalar(g.dim(), &Cyclotomic::from_i64(m, t)).sub(g).determinant()
}

/// Smallest `k ≥ 1` with `g^k = I` by repeated multiplication.
fn naive_order(g: &CycMatrix, cap: usize) -> Option<usize> {
    let mut p = g.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul(g);
    }
    None
}

fn metacyclic_case(q: u64, l: u64, alpha: u64) -> Result<(), String> {
    let p = MetacyclicParams::new(q, l, alpha).map_err(|e| e.to_string())?;
    let (a, b) = p.generators();
    let x = p.x();
    let qq = (q * q) as usize;
    ensure(a.determinant() == x, || format!("({q},{l},{alpha}): det A != x"))?;
    ensure(a.determinant_from_char_poly() == x, || "det A via char poly".into())?;
    ensure(b.determinant().is_one(), || format!("({q},{l},{alpha}): det B != 1"))?;
    // A^{-1} as A^{q²−1}, avoiding the elimination routine.
    let a_inv = a.pow(q * q - 1);
    ensure(a_inv.mul(&a).is_identity(), || "A^(q^2) != I".into())?;
    ensure(a_inv.mul(&b).mul(&a) == b.pow(alpha), || "A^-1 B A != B^alpha".into())?;
    ensure(naive_order(&a, qq + 1) == Some(qq), || "ord A != q^2".into())?;
    ensure(naive_order(&b, l as usize + 1) == Some(l as usize), || "ord B != l".into())?;

    let g = FiniteMatrixGroup::closure(&[a.clone(), b.clone()], 100_000).map_err(|e| e.to_string())?;
    ensure(g.order() == qq * l as usize, || format!("|<A,B>| = {}", g.order()))?;
    // Every A^r B^s lies in the closure, and there are q²l distinct ones.
    let a_pows: Vec<CycMatrix> = (0..qq as u64).map(|r| a.pow(r)).collect();
    let b_pows: Vec<CycMatrix> = (0..l).map(|s| b.pow(s)).collect();
    let mut seen = std::collections::HashSet::new();
    for ar in &a_pows {
        for bs in &b_pows {
            let e = ar.mul(bs);
            ensure(g.contains(&e), || "A^r B^s outside the closure".into())?;
            seen.insert(e);
        }
    }
    ensure(seen.len() == g.order(), || "A^r B^s not distinct".into())?;

    let one = Cyclotomic::one(p.field_order());
    let bad = (0..g.order()).into_par_iter().find_any(|&i| {
        let e = g.element(i);
        if e.is_identity() {
            return false;
        }
        // Rank route, and det(I − g) ≠ 0 as an independent check.
        e.mult_eigen_one() != 0 || det_at(e, 1).is_zero() || e.char_poly().eval(&one).is_zero()
    });
    ensure(bad.is_none(), || format!("({q},{l},{alpha}): an element other than e fixes a vector"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (q, l, alpha) in [(3, 7, 2), (5, 11, 3), (7, 29, 7)] {
        metacyclic_case(q, l, alpha)?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1}s"))?;
    Ok(format!("(3,7,2), (5,11,3), (7,29,7) in {secs:.1}s"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut samples = 0;
    for n in [3usize, 5, 7, 9] {
        for _ in 0..20 {
            let b = random_anticirculant(n, &mut rng);
            let m = b.ambient_order();
            ensure(b.determinant().is_one(), || format!("n={n}: det b != 1"))?;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let expected = Poly::binomial(n, Cyclotomic::from_i64(m, sign));
            ensure(b.char_poly() == expected, || format!("n={n}: char poly {}", b.char_poly()))?;
            let t: i64 = rng.gen_range(-3..=3);
            ensure(det_at(&b, t) == expected.eval(&Cyclotomic::from_i64(m, t)), || format!("n={n}: det(tI-b) at {t}"))?;
            samples += 1;
        }
    }
    for (q, l, alpha) in [(3, 7, 2), (5, 11, 3), (7, 29, 7)] {
        let p = MetacyclicParams::new(q, l, alpha).map_err(|e| e.to_string())?;
        let (a, b) = p.generators();
        let x = p.x();
        let a_pows: Vec<CycMatrix> = (0..q * q).map(|r| a.pow(r)).collect();
        let b_pows: Vec<CycMatrix> = (0..l).map(|s| b.pow(s)).collect();
        let pairs: Vec<(u64, u64)> = (0..q * q).filter(|r| r % q != 0).flat_map(|r| (0..l).map(move |s| (r, s))).collect();
        let bad = pairs.par_iter().find_any(|&&(r, s)| {
            let g = a_pows[r as usize].mul(&b_pows[s as usize]);
            let xv = x.pow((r % q) as i64).unwrap();
            let expected = Poly::binomial(q as usize, xv.neg());
            // det(0·I − g) by elimination checks the constant term.
            g.char_poly() != expected || det_at(&g, 0) != expected.coeff(0)
        });
        ensure(bad.is_none(), || format!("({q},{l},{alpha}): char_poly(A^r B^s) at {bad:?}"))?;
        samples += pairs.len();
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{samples} characteristic polynomials in {secs:.1}s"))
}

/// Direct checks of a family group against its report.
fn family_check(label: &str, g: &CycGroup) -> Result<(), String> {
    let r = classify(g);
    ensure(r.in_sl && r.gorenstein == Gorenstein::True, || format!("{label}: not Gorenstein in SL"))?;
    ensure(r.isolated && r.fixed_point_free, || format!("{label}: not isolated/fixed-point-free"))?;
    ensure(!r.cyclic, || format!("{label}: reported cyclic"))?;
    ensure(r.sing_locus_dim == SingLocus::Dim(0), || format!("{label}: singular locus {}", r.sing_locus_dim))?;
    // Oracles: every element has determinant 1, no non-identity element
    // has eigenvalue 1, and no element has order |G|.
    for e in g.elements() {
        ensure(e.determinant().is_one(), || format!("{label}: element with det != 1"))?;
        ensure(e.is_identity() || !det_at(e, 1).is_zero(), || format!("{label}: eigenvalue 1"))?;
        ensure(naive_order(e, g.order()) != Some(g.order()), || format!("{label}: generator of G"))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for n in [2, 4, 6, 8] {
        family_check(&format!("even n={n}"), &construct_even(n).map_err(|e| e.to_string())?)?;
    }
    for n in [9, 15] {
        family_check(&format!("odd n={n}"), &construct_odd_composite(n, None).map_err(|e| e.to_string())?)?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("even n=2,4,6,8 and odd n=9,15 in {secs:.1}s"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut classified = 0;
    for (label, gens) in corpus_groups(&[2, 3, 4, 5, 6, 7, 8, 9, 15], 0) {
        let g = FiniteMatrixGroup::generate(&gens).map_err(|e| format!("{label}: {e}"))?;
        ensure(classify(&g).theorem_witness != TheoremWitness::Violation, || format!("{label}: VIOLATION"))?;
        classified += 1;
    }
    let mut conjugates = 0;
    for (p, count) in [(3, 34), (5, 33), (7, 33)] {
        let corpus = cyclic_corpus(p, count, 0xacce_97);
        let base = corpus.len() - count;
        let results: Vec<Result<(), String>> = corpus[base..]
            .par_iter()
            .map(|(label, gens)| {
                let g = FiniteMatrixGroup::generate(gens).map_err(|e| format!("{label}: {e}"))?;
                let r = classify(&g);
                ensure(r.theorem_witness == TheoremWitness::Holds, || format!("n={p} {label}: {}", r.theorem_witness))
            })
            .collect();
        for r in results {
            r?;
            conjugates += 1;
        }
    }
    for n in [3, 5, 7] {
        ensure(construct_odd_composite(n, None).is_err(), || format!("n={n} was not refused"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{classified} corpus groups and {conjugates} random conjugates, no violation, in {secs:.1}s"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut elements = 0;
    let mut n_list = DEFAULT_N_LIST.to_vec();
    n_list.push(8);
    for (label, gens) in corpus_groups(&n_list, 5) {
        let g = FiniteMatrixGroup::generate(&gens).map_err(|e| format!("{label}: {e}"))?;
        let one = Cyclotomic::one(g.ctx().order());
        let bad = (0..g.order())
            .into_par_iter()
            .find_any(|&i| {
                let e = g.element(i);
                e.mult_eigen_one() != e.char_poly().root_multiplicity(&one)
            });
        ensure(bad.is_none(), || format!("{label}: element {bad:?}"))?;
        elements += g.order();
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{elements} elements in {secs:.1}s"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let diag = |v: &[i64]| CycMatrix::diagonal(v.iter().map(|&x| Cyclotomic::from_i64(1, x)).collect());
    let line = FiniteMatrixGroup::generate(&[diag(&[-1, -1, 1])]).map_err(|e| e.to_string())?;
    ensure(classify(&line).sing_locus_dim == SingLocus::Dim(1), || "diag(-1,-1,1)".into())?;
    let refl = FiniteMatrixGroup::generate(&[diag(&[-1, 1])]).map_err(|e| e.to_string())?;
    ensure(classify(&refl).sing_locus_dim == SingLocus::Smooth, || "diag(-1,1)".into())?;
    for n in [2, 4, 6, 8] {
        let g = construct_even(n).map_err(|e| e.to_string())?;
        ensure(classify(&g).sing_locus_dim == SingLocus::Dim(0), || format!("even n={n}"))?;
    }
    for n in [9, 15] {
        let g = construct_odd_composite(n, None).map_err(|e| e.to_string())?;
        ensure(classify(&g).sing_locus_dim == SingLocus::Dim(0), || format!("odd n={n}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.1}s"))?;
    Ok(format!("1, smooth, and 0 for both families in {secs:.1}s"))
}

const BASE_SPEC: &str =
    "cyclotomic_order 4\ndimension 2\ngenerator\nz, 0\n0, z^3\nend\ngenerator\n0, z\nz, 0\nend\n";

/// Corrupted variants of [`BASE_SPEC`], with the line the diagnostic must
/// point at when it is determined by the corruption.
fn mutations() -> Vec<(String, Option<usize>)> {
    let lines: Vec<&str> = BASE_SPEC.lines().collect();
    let with_line = |k: usize, s: &str| {
        let mut v: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
        v[k - 1] = s.to_string();
        (v.join("\n") + "\n", Some(k))
    };
    let without = |ks: &[usize]| {
        let v: Vec<&str> = lines.iter().enumerate().filter(|(i, _)| !ks.contains(&(i + 1))).map(|(_, l)| *l).collect();
        (v.join("\n") + "\n", None)
    };
    let mut out = vec![
        without(&[1]),
        without(&[2]),
        without(&[3, 4, 5, 6, 7, 8, 9, 10]),
        without(&[6]),
        without(&[10]),
        without(&[5]),
        with_line(1, "cyclotomic_order 0"),
        with_line(1, "cyclotomic_order -4"),
        with_line(1, "cyclotomic_order four"),
        with_line(1, "cyclotomic_order"),
        with_line(1, "cyclotomic_order 4 4"),
        with_line(1, "cyclotomic_order 99999999999999999999999"),
        with_line(1, "Cyclotomic_order 4"),
        with_line(2, "dimension 0"),
        with_line(2, "dimension 2.5"),
        with_line(2, "Dimension 2"),
        with_line(3, "generators"),
        with_line(6, "END"),
        with_line(6, "0, 1"),
        with_line(7, "foo"),
        with_line(5, "end"),
        with_line(4, "z, 0, 1"),
        with_line(4, "z"),
        with_line(4, "z, 0,"),
        with_line(4, ", 0"),
        with_line(4, "z; 0"),
    ];
    for bad in [
        "z^", "z^-1", "2**z", "1/0", "-z", "z z", "x", "z^3^2", "1/", "/2", "3*", "*z", "+1", "1 +", "1 --",
        "(z)", "z^2.5", "1.5", "\u{3b6}", "1/-2", "--1", "z^ 1 2",
    ] {
        out.push(with_line(4, &format!("{bad}, 0")));
    }
    // Swapped headers and a file cut off in the middle of a row.
    let mut swapped: Vec<&str> = lines.clone();
    swapped.swap(0, 1);
    out.push((swapped.join("\n") + "\n", Some(1)));
    out.push((BASE_SPEC[..BASE_SPEC.find("z^3").unwrap() + 2].to_string(), Some(5)));
    out
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut specs = Vec::new();
    for n in [2, 4, 6, 8] {
        specs.push(even_family_generators(n).map_err(|e| e.to_string())?);
    }
    for (n, q) in [(9, None), (15, None), (25, Some(5)), (21, Some(3))] {
        specs.push(odd_composite_generators(n, q).map_err(|e| e.to_string())?);
    }
    for p in [3, 5, 7] {
        specs.extend(cyclic_corpus(p, 2, 7).into_iter().map(|(_, g)| g));
    }
    specs.push(vec![diagonal_root_matrix(1, &[1])]);
    for gens in &specs {
        let spec = GroupSpec::from_generators(gens).map_err(|e| e.to_string())?;
        let text = emit_spec(&spec);
        ensure(parse_spec(&text).as_ref() == Ok(&spec), || format!("round trip failed:\n{text}"))?;
        ensure(emit_spec(&parse_spec(&text).unwrap()) == text, || "emission not canonical".into())?;
    }

    let corpus = mutations();
    ensure(corpus.len() == 50, || format!("{} mutations", corpus.len()))?;
    for (i, (text, line)) in corpus.iter().enumerate() {
        let result = catch_unwind(|| parse_spec(text)).map_err(|_| format!("mutation {i} panicked"))?;
        let err = match result {
            Ok(_) => return Err(format!("mutation {i} accepted:\n{text}")),
            Err(e) => e,
        };
        let total = text.split('\n').count();
        ensure(err.line >= 1 && err.line <= total && err.column >= 1, || format!("mutation {i}: bad position {err:?}"))?;
        if let Some(l) = line {
            ensure(err.line == *l, || format!("mutation {i}: expected line {l}, got {err}"))?;
        }
        ensure(err.to_string().contains(&format!("line {}", err.line)), || format!("mutation {i}: {err}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} round trips, {} mutations rejected in {secs:.1}s", specs.len(), corpus.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("metacyclic relations and fixed-point-freeness", criterion_1),
        ("characteristic polynomial identities", criterion_2),
        ("families are Gorenstein, isolated, non-cyclic", criterion_3),
        ("no violation in odd prime dimension", criterion_4),
        ("eigenvalue-1 multiplicity by rank and by division", criterion_5),
        ("singular-locus chain", criterion_6),
        ("spec round trip and corrupted inputs", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
