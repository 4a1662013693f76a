//! Dense univariate polynomials with integer coefficients and the
//! cyclotomic polynomials built from them.

use std::collections::BTreeMap;
use std::fmt;

use crate::number::divisors;
use crate::scalar::Integer;

/// Integer polynomial, coefficients in ascending degree. The leading
/// coefficient is nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerPoly<I> {
    coeffs: Vec<I>,
}

impl<I: Integer> IntegerPoly<I> {
    pub fn new(mut coeffs: Vec<I>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntegerPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| I::from_i64(c).unwrap()).collect())
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![I::zero(); n + 1];
        coeffs[0] = -I::one();
        coeffs[n] = I::one();
        Self::new(coeffs)
    }

    pub fn one() -> Self {
        Self::new(vec![I::one()])
    }

    pub fn coeffs(&self) -> &[I] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&I> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![I::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let mut t = a.clone();
                t *= b;
                out[i + j] += t;
            }
        }
        Self::new(out)
    }

    /// Exact division by a monic divisor. Returns `None` when the division
    /// leaves a remainder.
    pub fn div_exact_monic(&self, divisor: &Self) -> Option<Self> {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().unwrap();
        let Some(nd) = self.degree() else {
            return Some(self.clone());
        };
        if nd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![I::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let mut t = c.clone();
                t *= d;
                rem[k + j] -= t;
            }
            quot[k] = c;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::new(quot))
        } else {
            None
        }
    }
}

impl<I: Integer> fmt::Display for IntegerPoly<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match k {
                0 => write!(f, "{abs}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{abs}x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{abs}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Cyclotomic polynomials `Φ_d` for every divisor `d` of `m`, computed by
/// dividing `x^d - 1` by the already-known `Φ_e` for proper divisors `e | d`.
pub fn cyclotomic_polynomials<I: Integer>(m: u64) -> BTreeMap<u64, IntegerPoly<I>> {
    assert!(m >= 1, "cyclotomic order must be positive");
    let mut table: BTreeMap<u64, IntegerPoly<I>> = BTreeMap::new();
    for d in divisors(m) {
        let mut p = IntegerPoly::x_pow_minus_one(d as usize);
        for e in divisors(d) {
            if e == d {
                continue;
            }
            p = p
                .div_exact_monic(&table[&e])
                .expect("cyclotomic factor divides x^d - 1");
        }
        table.insert(d, p);
    }
    table
}

/// The `m`-th cyclotomic polynomial `Φ_m`.
pub fn cyclotomic_polynomial<I: Integer>(m: u64) -> IntegerPoly<I> {
    cyclotomic_polynomials(m).remove(&m).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::totient;
    use num_bigint::BigInt;

    type P = IntegerPoly<BigInt>;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial::<BigInt>(1), P::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial::<BigInt>(2), P::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_polynomial::<BigInt>(4), P::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial::<BigInt>(7), P::from_i64(&[1; 7]));
        assert_eq!(cyclotomic_polynomial::<BigInt>(6), P::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        let p = cyclotomic_polynomial::<BigInt>(105);
        assert_eq!(p.degree(), Some(48));
        assert!(p.coeffs().contains(&BigInt::from(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_pow_minus_one() {
        for m in 1..=60u64 {
            let table = cyclotomic_polynomials::<BigInt>(m);
            let product = table.values().fold(P::one(), |acc, p| acc.mul(p));
            assert_eq!(product, P::x_pow_minus_one(m as usize), "m = {m}");
            let phi = &table[&m];
            assert!(phi.is_monic());
            assert_eq!(phi.degree(), Some(totient(m) as usize));
        }
    }

    #[test]
    fn inexact_division_is_detected() {
        let p = P::from_i64(&[1, 0, 1]);
        let d = P::from_i64(&[-1, 1]);
        assert!(p.div_exact_monic(&d).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(P::from_i64(&[1, -1, 1]).to_string(), "x^2 - x + 1");
        assert_eq!(P::from_i64(&[-1, 1]).to_string(), "x - 1");
        assert_eq!(P::from_i64(&[]).to_string(), "0");
    }
}
