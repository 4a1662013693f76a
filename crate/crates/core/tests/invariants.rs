//! Structural invariants over a pool of small groups, as property tests.

use std::sync::OnceLock;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use qsing_core::classify::{classify, classify_with_chain, TheoremWitness};
use qsing_core::construct::{conjugate_embed, construct_even, diagonal_root_matrix, MetacyclicParams};
use qsing_core::format::{emit_spec, parse_spec, GroupSpec};
use qsing_core::group::FiniteMatrixGroup;
use qsing_core::suites::random_anticirculant;
use qsing_core::{eigen_multiset, CycGroup, CycMatrix, Cyclotomic};

fn group(gens: Vec<CycMatrix>) -> CycGroup {
    FiniteMatrixGroup::generate(&gens).unwrap()
}

fn permutation(m: u64, images: &[usize]) -> CycMatrix {
    let n = images.len();
    let ctx = qsing_core::CyclotomicField::get(m);
    CycMatrix::from_fn(n, ctx, |i, j| Cyclotomic::from_i64(m, (images[j] == i) as i64))
}

/// Fixed-point-free, reflection, and mixed groups in dimensions 2 to 4.
fn pool() -> &'static [CycGroup] {
    static POOL: OnceLock<Vec<CycGroup>> = OnceLock::new();
    POOL.get_or_init(|| {
        let (a, b) = MetacyclicParams::new(3, 7, 2).unwrap().generators();
        vec![
            construct_even(2).unwrap(),
            construct_even(4).unwrap(),
            group(vec![a, b]),
            group(vec![diagonal_root_matrix(7, &[1, 2, 4])]),
            group(vec![diagonal_root_matrix(2, &[1, 1, 0])]),
            group(vec![diagonal_root_matrix(2, &[1, 0])]),
            group(vec![permutation(1, &[1, 0, 2]), permutation(1, &[1, 2, 0])]),
            group(vec![diagonal_root_matrix(6, &[1, 0, 3]), permutation(6, &[2, 0, 1])]),
        ]
    })
}

fn arb_member() -> impl Strategy<Value = (usize, usize, usize)> {
    (0..pool().len()).prop_flat_map(|k| {
        let order = pool()[k].order();
        (Just(k), 0..order, 0..order)
    })
}

/// Matrix with entries in {0, ±1, ζ_m} picked by `picks`.
fn small_matrix(n: usize, m: u64, picks: &[u8]) -> CycMatrix {
    let ctx = qsing_core::CyclotomicField::get(m);
    CycMatrix::from_fn(n, ctx, |i, j| match picks[i * n + j] % 4 {
        0 => Cyclotomic::zero(m),
        1 => Cyclotomic::one(m),
        2 => Cyclotomic::from_i64(m, -1),
        _ => Cyclotomic::zeta(m),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn closure_lagrange_and_determinants((k, x, y) in arb_member()) {
        let g = &pool()[k];
        let (a, b) = (g.element(x), g.element(y));
        let ab = a.mul(b);
        prop_assert!(g.contains(&ab));
        let ord = g.element_order_at(x);
        prop_assert_eq!(g.order() % ord, 0);
        prop_assert!(g.contains(&a.pow(ord as u64 - 1)));
        prop_assert!(a.pow(ord as u64 - 1).mul(a).is_identity());
        prop_assert_eq!(ab.determinant(), a.determinant().mul(&b.determinant()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn eigenvalue_invariants((k, x, _) in arb_member()) {
        let g = &pool()[k];
        let e = g.element(x);
        let p = e.char_poly();
        let one = Cyclotomic::one(e.ambient_order());
        prop_assert_eq!(p.root_multiplicity(&one), e.mult_eigen_one());
        let spectrum = eigen_multiset(e, g.element_order_at(x) as u64).unwrap();
        prop_assert_eq!(spectrum.total(), e.dim());
        let lifted = e.lift(spectrum.order()).char_poly();
        for (_, value, _) in spectrum.entries() {
            prop_assert!(lifted.eval(value).is_zero());
        }
    }

    #[test]
    fn char_poly_is_conjugation_invariant(
        (k, x, _) in arb_member(),
        picks in prop::collection::vec(any::<u8>(), 16),
    ) {
        let e = pool()[k].element(x);
        let c = small_matrix(e.dim(), e.ambient_order(), &picks);
        prop_assume!(!c.determinant().is_zero());
        let ci = c.inverse().unwrap();
        prop_assert_eq!(ci.mul(e).mul(&c).char_poly(), e.char_poly());
    }

    #[test]
    fn anticirculant_with_unit_determinant_fixes_a_line(n in prop::sample::select(vec![3usize, 5, 7]), seed in any::<u64>()) {
        let b = random_anticirculant(n, &mut StdRng::seed_from_u64(seed));
        prop_assert!(b.determinant().is_one());
        prop_assert!(b.char_poly().eval(&Cyclotomic::one(b.ambient_order())).is_zero());
        prop_assert!(!classify(&group(vec![b])).fixed_point_free);
    }

    #[test]
    fn spec_round_trip((k, x, y) in arb_member()) {
        let g = &pool()[k];
        let spec = GroupSpec::from_generators(&[g.element(x).clone(), g.element(y).clone()]).unwrap();
        prop_assert_eq!(parse_spec(&emit_spec(&spec)).unwrap(), spec);
    }

    #[test]
    fn parser_never_panics(text in "(cyclotomic_order|dimension|generator|end|z|\\^|[-+*/,#0-9 \n]){0,40}") {
        let _ = parse_spec(&text);
    }

    #[test]
    fn parser_never_panics_on_arbitrary_text(text in any::<String>()) {
        let _ = parse_spec(&text);
    }
}

fn metacyclic_group() -> &'static CycGroup {
    &pool()[2]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embedding_is_an_injective_homomorphism(
        x in 0..63usize,
        y in 0..63usize,
        n_prime in prop::sample::select(vec![3usize, 5, 7]),
    ) {
        let g = metacyclic_group();
        let (c, d) = (g.element(x), g.element(y));
        let f = |m: &CycMatrix| conjugate_embed(m, n_prime).unwrap();
        prop_assert_eq!(f(&c.mul(d)), f(c).mul(&f(d)));
        prop_assert_eq!(f(c).is_identity(), c.is_identity());
    }
}

#[test]
fn chain_nesting_and_isolation() {
    for g in pool() {
        let (report, chain) = classify_with_chain(g);
        let n = g.dim();
        for i in 1..=n {
            let (outer, inner) = (chain.sigma(i - 1), chain.sigma(i));
            assert!(inner.iter().all(|x| outer.contains(x)));
            let (outer, inner) = (chain.h(i - 1), chain.h(i));
            assert!(inner.iter().all(|x| outer.contains(x)));
        }
        assert!(chain.sigma_is_trivial(n));
        if chain.sigma_is_trivial(n - 1) {
            // Chain rule against a direct eigenvalue scan.
            let direct = g.order() > 1 && (0..g.order()).all(|x| x == g.identity_index() || g.element(x).mult_eigen_one() == 0);
            assert_eq!(report.isolated, direct);
        }
        assert_ne!(report.theorem_witness, TheoremWitness::Violation);
        if g.is_abelian() {
            assert_eq!(g.is_cyclic(), g.exponent() == g.order());
        }
    }
}
