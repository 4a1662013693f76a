//! Constructors for non-cyclic fixed-point-free groups in `SL(n)`.
//!
//! Two families are built. In even dimension the quaternion group of order 8
//! acts through `n/2` equal 2×2 blocks over `Q(i)`. In odd composite
//! dimension `n = q·n'` a metacyclic group of order `q²·l` in `GL(q)` is
//! embedded into `SL(n)` by stacking copies of each matrix and of its
//! complex conjugate. Odd prime dimension admits no such group, and the
//! odd constructor refuses it.

use crate::error::{Error, Result};
use crate::group::FiniteMatrixGroup;
use crate::number::{is_prime, multiplicative_order, pow_mod, smallest_prime_factor};
use crate::{CycMatrix, Cyclotomic, CyclotomicField};

/// Upper bound on the search for a prime `l ≡ 1 (mod 2q)`.
pub const DIRICHLET_SEARCH_CAP: u64 = 1_000_000;

fn construction(msg: impl Into<String>) -> Error {
    Error::Construction(msg.into())
}

/// `A = diag(i, −i)` and `B = [[0, i], [i, 0]]` over `Q(ζ_4)`.
pub fn even_generators() -> (CycMatrix, CycMatrix) {
    let z = |k| Cyclotomic::zeta_pow(4, k);
    let a = CycMatrix::diagonal(vec![z(1), z(3)]);
    let b = CycMatrix::from_rows(vec![vec![Cyclotomic::zero(4), z(1)], vec![z(1), Cyclotomic::zero(4)]])
        .expect("square");
    (a, b)
}

/// Generators of the even family in dimension `n`: each 2×2 generator
/// repeated in `n/2` diagonal blocks.
pub fn even_family_generators(n: usize) -> Result<Vec<CycMatrix>> {
    if n == 0 || n % 2 != 0 {
        return Err(construction(format!("even construction requires even n (got n = {n})")));
    }
    let (a, b) = even_generators();
    Ok([a, b].iter().map(|g| repeat_block(g, n / 2)).collect())
}

pub fn construct_even(n: usize) -> Result<FiniteMatrixGroup<Cyclotomic>> {
    FiniteMatrixGroup::generate(&even_family_generators(n)?)
}

fn repeat_block(block: &CycMatrix, copies: usize) -> CycMatrix {
    let blocks: Vec<&CycMatrix> = std::iter::repeat(block).take(copies).collect();
    CycMatrix::block_diagonal(&blocks)
}

/// Smallest prime of the form `2qk + 1` with `k ≥ 1`.
pub fn dirichlet_prime(q: u64) -> Result<u64> {
    if q < 3 || !is_prime(q) {
        return Err(construction(format!("q = {q} is not an odd prime")));
    }
    let step = 2 * q;
    let mut l = step + 1;
    while l <= DIRICHLET_SEARCH_CAP {
        if is_prime(l) {
            return Ok(l);
        }
        l += step;
    }
    Err(construction(format!("no prime l ≡ 1 (mod {step}) below {DIRICHLET_SEARCH_CAP}")))
}

/// Smallest `α` in `[2, l−1]` of multiplicative order exactly `q` mod `l`.
pub fn order_q_unit(l: u64, q: u64) -> Result<u64> {
    if l < 2 || q == 0 || (l - 1) % q != 0 {
        return Err(construction(format!("q = {q} does not divide l - 1 = {}", l.saturating_sub(1))));
    }
    (2..l)
        .find(|&a| pow_mod(a, q, l) == 1 && multiplicative_order(a, l) == Some(q))
        .ok_or_else(|| construction(format!("no unit of order {q} modulo {l}")))
}

/// Parameters `(q, l, α)` of the metacyclic group in `GL(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MetacyclicParams {
    pub q: u64,
    pub l: u64,
    pub alpha: u64,
}

impl MetacyclicParams {
    /// Checks that `q` is an odd prime, `l` a prime `≡ 1 (mod 2q)` and `α`
    /// a unit of order `q` modulo `l`.
    pub fn new(q: u64, l: u64, alpha: u64) -> Result<Self> {
        if q < 3 || !is_prime(q) {
            return Err(construction(format!("q = {q} is not an odd prime")));
        }
        if !is_prime(l) || l % (2 * q) != 1 {
            return Err(construction(format!("l = {l} is not a prime congruent to 1 mod {}", 2 * q)));
        }
        if multiplicative_order(alpha % l, l) != Some(q) {
            return Err(construction(format!("alpha = {alpha} does not have order {q} modulo {l}")));
        }
        Ok(MetacyclicParams { q, l, alpha })
    }

    /// Smallest `l` and smallest `α` for the prime `q`.
    pub fn smallest(q: u64) -> Result<Self> {
        let l = dirichlet_prime(q)?;
        let alpha = order_q_unit(l, q)?;
        Self::new(q, l, alpha)
    }

    /// Ambient cyclotomic order `q·l`.
    pub fn field_order(&self) -> u64 {
        self.q * self.l
    }

    /// `x = ζ_q`, the corner entry of `A`.
    pub fn x(&self) -> Cyclotomic {
        Cyclotomic::zeta_pow(self.field_order(), self.l as i64)
    }

    /// `z = ζ_l`.
    pub fn z(&self) -> Cyclotomic {
        Cyclotomic::zeta_pow(self.field_order(), self.q as i64)
    }

    /// `A` sends `e_j` to `e_{j+1}` and `e_{q−1}` to `x·e_0`;
    /// `B = diag(z, z^α, …, z^{α^{q−1}})`.
    pub fn generators(&self) -> (CycMatrix, CycMatrix) {
        let q = self.q as usize;
        let m = self.field_order();
        let x = self.x();
        let a = CycMatrix::from_fn(q, CyclotomicField::get(m), |i, j| {
            if i == j + 1 {
                Cyclotomic::one(m)
            } else if i == 0 && j == q - 1 {
                x.clone()
            } else {
                Cyclotomic::zero(m)
            }
        });
        let diag = (0..self.q)
            .map(|i| {
                let e = pow_mod(self.alpha, i, self.l) * self.q;
                Cyclotomic::zeta_pow(m, e as i64)
            })
            .collect();
        (a, CycMatrix::diagonal(diag))
    }
}

/// Block-diagonal `f(C)`: `(q+n')/2` copies of `C` followed by `(n'−q)/2`
/// copies of its complex conjugate.
pub fn conjugate_embed(c: &CycMatrix, n_prime: usize) -> Result<CycMatrix> {
    let q = c.dim();
    if q % 2 == 0 || n_prime % 2 == 0 || n_prime < q {
        return Err(construction(format!(
            "embedding needs odd q <= n' with n' odd (got q = {q}, n' = {n_prime})"
        )));
    }
    let conj = c.conjugate();
    let mut blocks: Vec<&CycMatrix> = Vec::with_capacity(n_prime);
    blocks.extend(std::iter::repeat(c).take((q + n_prime) / 2));
    blocks.extend(std::iter::repeat(&conj).take((n_prime - q) / 2));
    Ok(CycMatrix::block_diagonal(&blocks))
}

/// Parameters of the odd composite family in dimension `n = q·n'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OddCompositeParams {
    pub n: usize,
    pub n_prime: usize,
    pub metacyclic: MetacyclicParams,
}

impl OddCompositeParams {
    /// `q` defaults to the smallest prime factor of `n`.
    pub fn new(n: usize, q: Option<u64>) -> Result<Self> {
        let n64 = n as u64;
        if n % 2 == 0 {
            return Err(construction(format!("odd-composite construction requires odd n (got n = {n})")));
        }
        if n < 9 {
            if n64 >= 3 && is_prime(n64) {
                return Err(prime_refusal(n));
            }
            return Err(construction(format!("n = {n} is not an odd composite number")));
        }
        if is_prime(n64) {
            return Err(prime_refusal(n));
        }
        let q = match q {
            Some(q) => q,
            None => smallest_prime_factor(n64).expect("n > 1"),
        };
        if q < 3 || !is_prime(q) || n64 % q != 0 {
            return Err(construction(format!("q = {q} is not an odd prime factor of n = {n}")));
        }
        let n_prime = n64 / q;
        if q > n_prime {
            return Err(construction(format!("q = {q} exceeds n/q = {n_prime}")));
        }
        Ok(OddCompositeParams { n, n_prime: n_prime as usize, metacyclic: MetacyclicParams::smallest(q)? })
    }

    pub fn generators(&self) -> Result<Vec<CycMatrix>> {
        let (a, b) = self.metacyclic.generators();
        Ok(vec![conjugate_embed(&a, self.n_prime)?, conjugate_embed(&b, self.n_prime)?])
    }
}

fn prime_refusal(n: usize) -> Error {
    construction(format!(
        "n = {n} is an odd prime; every Gorenstein isolated quotient singularity in odd prime \
         dimension is cyclic, so no non-cyclic fixed-point-free family exists"
    ))
}

pub fn odd_composite_generators(n: usize, q: Option<u64>) -> Result<Vec<CycMatrix>> {
    OddCompositeParams::new(n, q)?.generators()
}

pub fn construct_odd_composite(n: usize, q: Option<u64>) -> Result<FiniteMatrixGroup<Cyclotomic>> {
    FiniteMatrixGroup::generate(&odd_composite_generators(n, q)?)
}

/// `diag(ζ_m^{e_1}, …, ζ_m^{e_n})`. It generates a cyclic fixed-point-free
/// subgroup of `SL(n)` when every `e_i` is prime to `m` and the exponents
/// sum to a multiple of `m`.
pub fn diagonal_root_matrix(m: u64, exponents: &[i64]) -> CycMatrix {
    CycMatrix::diagonal(exponents.iter().map(|&e| Cyclotomic::zeta_pow(m, e)).collect())
}

/// Anti-circulant shape: `entries[0]` in the top-right corner and
/// `entries[i]` at position `(i, i−1)`. For odd `n` and entries whose
/// product is 1 the characteristic polynomial is `t^n − 1`.
pub fn anticirculant(entries: &[Cyclotomic]) -> CycMatrix {
    let n = entries.len();
    assert!(n > 0, "anticirculant needs at least one entry");
    let m = entries[0].order();
    CycMatrix::from_fn(n, CyclotomicField::get(m), |i, j| {
        if (i == 0 && j == n - 1) || (i > 0 && j + 1 == i) {
            entries[i].clone()
        } else {
            Cyclotomic::zero(m)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, Gorenstein, SingLocus};

    #[test]
    fn dirichlet_primes_and_units() {
        assert_eq!(dirichlet_prime(3).unwrap(), 7);
        assert_eq!(dirichlet_prime(5).unwrap(), 11);
        assert_eq!(dirichlet_prime(7).unwrap(), 29);
        assert_eq!(dirichlet_prime(11).unwrap(), 23);
        assert!(dirichlet_prime(4).is_err());
        assert!(dirichlet_prime(2).is_err());

        assert_eq!(order_q_unit(7, 3).unwrap(), 2);
        assert_eq!(order_q_unit(11, 5).unwrap(), 3);
        assert_eq!(order_q_unit(29, 7).unwrap(), 7);
        assert!(order_q_unit(11, 3).is_err());
    }

    #[test]
    fn units_by_exhaustive_scan() {
        // Independent oracle: repeated multiplication instead of pow_mod.
        for (l, q) in [(7u64, 3u64), (11, 5), (29, 7), (43, 7), (31, 5)] {
            let expect = (2..l)
                .find(|&a| {
                    let mut p = 1;
                    for _ in 0..q {
                        p = p * a % l;
                    }
                    p == 1
                })
                .unwrap();
            assert_eq!(order_q_unit(l, q).unwrap(), expect);
        }
    }

    #[test]
    fn params_validation() {
        assert!(MetacyclicParams::new(3, 7, 2).is_ok());
        assert!(MetacyclicParams::new(3, 7, 1).is_err());
        assert!(MetacyclicParams::new(3, 13, 2).is_err());
        assert!(MetacyclicParams::new(3, 11, 2).is_err());
        assert!(MetacyclicParams::new(9, 19, 7).is_err());

        let p = OddCompositeParams::new(15, None).unwrap();
        assert_eq!((p.n_prime, p.metacyclic.q, p.metacyclic.l, p.metacyclic.alpha), (5, 3, 7, 2));
        assert!(OddCompositeParams::new(15, Some(5)).is_err());
        assert!(OddCompositeParams::new(15, Some(7)).is_err());
        assert!(OddCompositeParams::new(25, Some(5)).is_ok());
        for bad in [1, 3, 5, 7, 8, 11, 13] {
            assert!(OddCompositeParams::new(bad, None).is_err(), "n = {bad}");
        }
        let msg = OddCompositeParams::new(7, None).unwrap_err().to_string();
        assert!(msg.contains("odd prime"), "{msg}");
    }

    #[test]
    fn even_family() {
        let g = construct_even(2).unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        let g4 = construct_even(4).unwrap();
        assert_eq!(g4.order(), 8);
        for x in 1..g4.order() {
            assert_eq!(g4.element(x).mult_eigen_one(), 0);
        }
        let err = construct_even(3).unwrap_err().to_string();
        assert!(err.contains("even construction requires even n"), "{err}");
    }

    #[test]
    fn metacyclic_relations() {
        let p = MetacyclicParams::new(3, 7, 2).unwrap();
        let (a, b) = p.generators();
        assert_eq!(a.determinant(), p.x());
        assert!(b.determinant().is_one());
        let a_inv = a.inverse().unwrap();
        assert_eq!(a_inv.mul(&b).mul(&a), b.pow(2));
        assert!(a.pow(9).is_identity());
        assert!(!a.pow(3).is_identity());
        assert!(b.pow(7).is_identity());
        assert_ne!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let p = MetacyclicParams::new(3, 7, 2).unwrap();
        let (a, b) = p.generators();
        let fa = conjugate_embed(&a, 5).unwrap();
        let fb = conjugate_embed(&b, 5).unwrap();
        assert_eq!(fa.dim(), 15);
        assert!(fa.determinant().is_one());
        assert!(fb.determinant().is_one());
        assert_eq!(conjugate_embed(&a.mul(&b), 5).unwrap(), fa.mul(&fb));
        assert_ne!(fa.mul(&fb), fb.mul(&fa));
        let id = CycMatrix::identity(3, CyclotomicField::get(21));
        assert!(conjugate_embed(&id, 3).unwrap().is_identity());
        assert!(conjugate_embed(&a, 4).is_err());
        assert!(conjugate_embed(&a, 1).is_err());
    }

    #[test]
    fn odd_composite_nine() {
        let g = construct_odd_composite(9, None).unwrap();
        assert_eq!(g.order(), 63);
        assert_eq!(g.ctx().order(), 21);
        let r = classify(&g);
        assert!(r.in_sl && r.fixed_point_free && r.isolated && !r.cyclic && !r.abelian);
        assert_eq!(r.gorenstein, Gorenstein::True);
        assert_eq!(r.sing_locus_dim, SingLocus::Dim(0));
    }

    #[test]
    fn anticirculant_shape() {
        let m = 7;
        let e = [1i64, 2, 4].map(|k| Cyclotomic::zeta_pow(m, k));
        let b = anticirculant(&e);
        assert_eq!(b.get(0, 2), &e[0]);
        assert_eq!(b.get(1, 0), &e[1]);
        assert_eq!(b.get(2, 1), &e[2]);
        assert!(b.determinant().is_one());
    }
}
