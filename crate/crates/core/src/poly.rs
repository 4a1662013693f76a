//! Univariate polynomials over a [`Scalar`] field.

use std::fmt;

use crate::scalar::Scalar;

/// Polynomial with coefficients in ascending degree. Trailing zeros are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<S: Scalar> {
    ctx: S::Ctx,
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(ctx: S::Ctx, mut coeffs: Vec<S>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.ctx() == ctx));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { ctx, coeffs }
    }

    pub fn zero(ctx: S::Ctx) -> Self {
        Poly { ctx, coeffs: Vec::new() }
    }

    /// `t^n + c` for a constant `c`.
    pub fn binomial(n: usize, constant: S) -> Self {
        let ctx = constant.ctx();
        let mut coeffs = vec![S::zero(ctx); n + 1];
        coeffs[n] = S::one(ctx);
        coeffs[0] = coeffs[0].add(&constant);
        Self::new(ctx, coeffs)
    }

    /// `t - root`.
    pub fn linear(root: &S) -> Self {
        let ctx = root.ctx();
        Self::new(ctx, vec![root.neg(), S::one(ctx)])
    }

    pub fn ctx(&self) -> S::Ctx {
        self.ctx
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(|| S::zero(self.ctx))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero(self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ctx);
        }
        let mut out = vec![S::zero(self.ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j].add_product(a, b);
            }
        }
        Self::new(self.ctx, out)
    }

    /// Synthetic division by `t - root`: quotient and remainder `p(root)`.
    pub fn div_linear(&self, root: &S) -> (Self, S) {
        if self.is_zero() {
            return (Self::zero(self.ctx), S::zero(self.ctx));
        }
        let n = self.coeffs.len();
        let mut quot = vec![S::zero(self.ctx); n - 1];
        let mut carry = S::zero(self.ctx);
        for k in (0..n).rev() {
            let v = self.coeffs[k].add(&carry.mul(root));
            if k == 0 {
                return (Self::new(self.ctx, quot), v);
            }
            quot[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// How many times `t - root` divides the polynomial, found by repeated
    /// exact division. The zero polynomial reports `usize::MAX`.
    pub fn root_multiplicity(&self, root: &S) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut p = self.clone();
        let mut count = 0;
        loop {
            let (q, r) = p.div_linear(root);
            if !r.is_zero() {
                return count;
            }
            count += 1;
            p = q;
        }
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "({c})")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "({c})*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;

    fn q(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::new((), cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn evaluation_and_multiplication() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        assert_eq!(p(&[1, 2, 3]).eval(&q(2)), q(17));
        assert_eq!(Poly::binomial(3, q(-1)), p(&[-1, 0, 0, 1]));
    }

    #[test]
    fn root_multiplicity_by_division() {
        // (t-1)^3 (t+2)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        assert_eq!(f.root_multiplicity(&q(1)), 3);
        assert_eq!(f.root_multiplicity(&q(-2)), 1);
        assert_eq!(f.root_multiplicity(&q(0)), 0);
        let (quot, rem) = f.div_linear(&q(-2));
        assert_eq!(rem, q(0));
        assert_eq!(quot.degree(), Some(3));
    }
}
