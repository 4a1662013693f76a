//! Exact dense linear algebra over a [`Scalar`] field.
//!
//! Matrices are small (dimension at most a few dozen) and frequently
//! monomial, so products skip zero entries and eliminations avoid field
//! inversions that are expensive to compute.

use std::fmt;

use num_integer::Integer as _;

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::number::divisors;
use crate::poly::Poly;
use crate::scalar::{Integer, Scalar};

/// Square `n × n` matrix, row-major, all entries in one field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S: Scalar> {
    dim: usize,
    ctx: S::Ctx,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    /// Build from rows; every row must have `rows.len()` entries from the
    /// same field.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("matrix must have at least one row".into()));
        }
        let ctx = rows[0][0].ctx();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for x in row {
                if x.ctx() != ctx {
                    return Err(Error::DimensionMismatch(format!(
                        "entries from different fields: {:?} and {:?}",
                        ctx,
                        x.ctx()
                    )));
                }
                entries.push(x);
            }
        }
        Ok(Matrix { dim: n, ctx, entries })
    }

    pub fn from_fn(dim: usize, ctx: S::Ctx, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let x = f(i, j);
                debug_assert!(x.ctx() == ctx);
                entries.push(x);
            }
        }
        Matrix { dim, ctx, entries }
    }

    pub fn zero(dim: usize, ctx: S::Ctx) -> Self {
        Matrix { dim, ctx, entries: vec![S::zero(ctx); dim * dim] }
    }

    pub fn identity(dim: usize, ctx: S::Ctx) -> Self {
        Self::scalar(dim, &S::one(ctx))
    }

    /// `c · I`.
    pub fn scalar(dim: usize, c: &S) -> Self {
        let ctx = c.ctx();
        Self::from_fn(dim, ctx, |i, j| if i == j { c.clone() } else { S::zero(ctx) })
    }

    pub fn diagonal(diag: Vec<S>) -> Self {
        let ctx = diag[0].ctx();
        let n = diag.len();
        Self::from_fn(n, ctx, |i, j| if i == j { diag[i].clone() } else { S::zero(ctx) })
    }

    /// Block-diagonal matrix; blocks must share a field.
    pub fn block_diagonal(blocks: &[&Matrix<S>]) -> Self {
        let ctx = blocks[0].ctx;
        let dim = blocks.iter().map(|b| b.dim).sum();
        let mut out = Self::zero(dim, ctx);
        let mut offset = 0;
        for b in blocks {
            assert!(b.ctx == ctx, "blocks must share a field");
            for i in 0..b.dim {
                for j in 0..b.dim {
                    out.entries[(offset + i) * dim + offset + j] = b.get(i, j).clone();
                }
            }
            offset += b.dim;
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ctx(&self) -> S::Ctx {
        self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        assert!(value.ctx() == self.ctx, "entry from a different field");
        self.entries[i * self.dim + j] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.entries.chunks(self.dim)
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn map<T: Scalar>(&self, ctx: T::Ctx, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { dim: self.dim, ctx, entries: self.entries.iter().map(f).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.ctx != other.ctx {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} over {:?} vs {}x{} over {:?}",
                self.dim, self.dim, self.ctx, other.dim, other.dim, other.ctx
            )));
        }
        Ok(())
    }

    /// Matrix product; fails on a dimension or field mismatch.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = vec![S::zero(self.ctx); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    out[i * n + j].add_product(a, b);
                }
            }
        }
        Matrix { dim: n, ctx: self.ctx, entries: out }
    }

    /// Panics on mismatch; see [`Matrix::checked_mul`].
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("matrix product of incompatible operands")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other).expect("matrix sum of incompatible operands");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Matrix { dim: self.dim, ctx: self.ctx, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_compatible(other).expect("matrix difference of incompatible operands");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect();
        Matrix { dim: self.dim, ctx: self.ctx, entries }
    }

    pub fn scale(&self, c: &S) -> Self {
        let entries = self.entries.iter().map(|a| a.mul(c)).collect();
        Matrix { dim: self.dim, ctx: self.ctx, entries }
    }

    /// `self - c·I`.
    pub fn sub_scalar(&self, c: &S) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            let v = out.get(i, i).sub(c);
            out.entries[i * self.dim + i] = v;
        }
        out
    }

    /// `self^k` by repeated squaring; `k = 0` gives the identity.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::identity(self.dim, self.ctx);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> S {
        let mut t = S::zero(self.ctx);
        for i in 0..self.dim {
            t = t.add(self.get(i, i));
        }
        t
    }

    fn row_vectors(&self) -> Vec<Vec<S>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// Determinant by Gaussian elimination with field inversion. The pivot
    /// in each column is the first nonzero entry whose inverse is cheap, or
    /// else the first nonzero entry. When a pivot's inverse would be costly
    /// the determinant is read off the characteristic polynomial instead,
    /// which needs no field inversion at all.
    pub fn determinant(&self) -> S {
        let n = self.dim;
        let mut rows = self.row_vectors();
        let mut det = S::one(self.ctx);
        for col in 0..n {
            let Some(p) = pick_pivot(&rows, col, col) else {
                return S::zero(self.ctx);
            };
            if p != col {
                rows.swap(p, col);
                det = det.neg();
            }
            let pivot = rows[col][col].clone();
            det = det.mul(&pivot);
            let (upper, lower) = rows.split_at_mut(col + 1);
            let prow = &upper[col];
            if lower.iter().all(|r| r[col].is_zero()) {
                continue;
            }
            let Some(inv) = pivot.cheap_inv() else {
                return self.determinant_from_char_poly();
            };
            for row in lower.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let factor = row[col].mul(&inv);
                for j in col + 1..n {
                    if !prow[j].is_zero() {
                        row[j] = row[j].sub(&factor.mul(&prow[j]));
                    }
                }
                row[col] = S::zero(self.ctx);
            }
        }
        det
    }

    /// `det A = (−1)^n · χ_A(0)`.
    pub fn determinant_from_char_poly(&self) -> S {
        let c0 = self.char_poly().coeff(0);
        if self.dim % 2 == 0 {
            c0
        } else {
            c0.neg()
        }
    }

    /// Rank by row reduction. Pivots with a cheap inverse are preferred;
    /// other pivots use the division-free update
    /// `row ← pivot·row − row[col]·pivot_row`, which preserves rank.
    pub fn rank(&self) -> usize {
        let n = self.dim;
        let mut rows = self.row_vectors();
        let mut rank = 0;
        for col in 0..n {
            if rank == n {
                break;
            }
            let Some(p) = pick_pivot(&rows, rank, col) else {
                continue;
            };
            rows.swap(p, rank);
            let (upper, lower) = rows.split_at_mut(rank + 1);
            let prow = &upper[rank];
            if lower.iter().any(|r| !r[col].is_zero()) {
                let pivot = &prow[col];
                let inv = pivot.cheap_inv();
                for row in lower.iter_mut() {
                    if row[col].is_zero() {
                        continue;
                    }
                    match &inv {
                        Some(inv) => {
                            let factor = row[col].mul(inv);
                            for j in col + 1..n {
                                if !prow[j].is_zero() {
                                    row[j] = row[j].sub(&factor.mul(&prow[j]));
                                }
                            }
                        }
                        None => {
                            let a = row[col].clone();
                            for j in col + 1..n {
                                let scaled = if row[j].is_zero() { S::zero(self.ctx) } else { row[j].mul(pivot) };
                                row[j] = if prow[j].is_zero() { scaled } else { scaled.sub(&a.mul(&prow[j])) };
                            }
                            S::normalize_row(&mut row[col + 1..]);
                        }
                    }
                    row[col] = S::zero(self.ctx);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse by Gauss–Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let mut rows = self.row_vectors();
        let mut inv = Self::identity(n, self.ctx).row_vectors();
        for col in 0..n {
            let p = pick_pivot(&rows, col, col)?;
            rows.swap(p, col);
            inv.swap(p, col);
            let pinv = rows[col][col].try_inv()?;
            for j in 0..n {
                rows[col][j] = rows[col][j].mul(&pinv);
                inv[col][j] = inv[col][j].mul(&pinv);
            }
            for r in 0..n {
                if r == col || rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].clone();
                for j in 0..n {
                    if !rows[col][j].is_zero() {
                        let t = factor.mul(&rows[col][j]);
                        rows[r][j] = rows[r][j].sub(&t);
                    }
                    if !inv[col][j].is_zero() {
                        let t = factor.mul(&inv[col][j]);
                        inv[r][j] = inv[r][j].sub(&t);
                    }
                }
            }
        }
        Some(Matrix { dim: n, ctx: self.ctx, entries: inv.into_iter().flatten().collect() })
    }

    /// Characteristic polynomial `det(tI − A)` by the Faddeev–LeVerrier
    /// recursion `M_k = A·M_{k−1} + c_{n−k+1}·I`, `c_{n−k} = −tr(A·M_k)/k`.
    /// The division by `k` is exact in characteristic zero.
    pub fn char_poly(&self) -> Poly<S> {
        let n = self.dim;
        let mut coeffs = vec![S::zero(self.ctx); n + 1];
        coeffs[n] = S::one(self.ctx);
        // `am` holds A·M_k; M_1 = I.
        let mut am = self.clone();
        for k in 1..=n {
            let c = am.trace().neg().div_int(k as i64);
            if k < n {
                let m = if c.is_zero() { am } else { am.sub_scalar(&c.neg()) };
                am = if k + 1 < n { self.mul_unchecked(&m) } else { self.diagonal_of_product(&m) };
            }
            coeffs[n - k] = c;
        }
        Poly::new(self.ctx, coeffs)
    }

    /// `A·B` with only the diagonal computed; enough for a trace.
    fn diagonal_of_product(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zero(n, self.ctx);
        for i in 0..n {
            let mut acc = S::zero(self.ctx);
            for k in 0..n {
                let (a, b) = (&self.entries[i * n + k], &other.entries[k * n + i]);
                if !a.is_zero() && !b.is_zero() {
                    acc.add_product(a, b);
                }
            }
            out.entries[i * n + i] = acc;
        }
        out
    }

    /// Multiplicity of the eigenvalue 1, computed as `n − rank(A − I)`.
    /// For matrices of finite order (hence diagonalizable) this equals the
    /// algebraic multiplicity.
    pub fn mult_eigen_one(&self) -> usize {
        self.dim - self.sub_scalar(&S::one(self.ctx)).rank()
    }
}

fn pick_pivot<S: Scalar>(rows: &[Vec<S>], start: usize, col: usize) -> Option<usize> {
    let mut first = None;
    for (r, row) in rows.iter().enumerate().skip(start) {
        let x = &row[col];
        if x.is_zero() {
            continue;
        }
        if x.cheap_inv().is_some() {
            return Some(r);
        }
        first.get_or_insert(r);
    }
    first
}

impl<S: Scalar + fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl<I: Integer> Matrix<CyclotomicNumber<I>> {
    pub fn ambient_order(&self) -> u64 {
        self.ctx.order()
    }

    /// The same matrix over `Q(ζ_M)` for a multiple `M` of the order.
    pub fn lift(&self, target: u64) -> Self {
        let field = crate::cyclotomic::CyclotomicField::get(target);
        self.map(field, |x| x.lift(target))
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> Self {
        self.map(self.ctx, |x| x.conjugate())
    }
}

/// Eigenvalues of a finite-order matrix with multiplicities. Each
/// eigenvalue is a root of unity `ζ_M^k`, recorded by its exponent over
/// the common order `M` of the entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenMultiset<I: Integer> {
    order: u64,
    entries: Vec<(u64, CyclotomicNumber<I>, usize)>,
}

impl<I: Integer> EigenMultiset<I> {
    /// The order `M` of the field the eigenvalues live in.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `(exponent k, ζ_M^k, multiplicity)` in ascending exponent.
    pub fn entries(&self) -> &[(u64, CyclotomicNumber<I>, usize)] {
        &self.entries
    }

    /// Multiplicity of `ζ_M^k` with the exponent taken modulo `M`.
    pub fn multiplicity_of_exponent(&self, k: u64) -> usize {
        let k = k % self.order;
        self.entries.iter().find(|(e, _, _)| *e == k).map_or(0, |(_, _, m)| *m)
    }

    pub fn multiplicity(&self, value: &CyclotomicNumber<I>) -> usize {
        let v = value.lift(num_integer::lcm(value.order(), self.order));
        let order = v.order();
        self.entries
            .iter()
            .find(|(_, x, _)| x.lift(order) == v)
            .map_or(0, |(_, _, m)| *m)
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, _, m)| m).sum()
    }

    /// Exponents repeated by multiplicity.
    pub fn exponents(&self) -> Vec<u64> {
        self.entries
            .iter()
            .flat_map(|(e, _, m)| std::iter::repeat(*e).take(*m))
            .collect()
    }
}

/// Eigenvalue multiset of `g`, given `ord` with `g^ord = I`.
///
/// Every eigenvalue is an `ord`-th root of unity; each candidate `ζ` gets
/// multiplicity `n − rank(g − ζI)`. The matrix is first lifted to
/// `Q(ζ_M)` with `M = lcm(m, ord)` so that all candidates are available.
pub fn eigen_multiset<I: Integer>(
    g: &Matrix<CyclotomicNumber<I>>,
    ord: u64,
) -> Result<EigenMultiset<I>> {
    if ord == 0 || !g.pow(ord).is_identity() {
        return Err(Error::OrderContract { ord });
    }
    let order = g.ambient_order().lcm(&ord);
    let lifted = g.lift(order);
    let n = g.dim();
    let step = order / ord;
    let mut entries = Vec::new();
    let mut found = 0;
    for d in divisors(ord) {
        for j in 0..d {
            if num_integer::gcd(j, d) != 1 {
                continue;
            }
            // ζ_d^j = ζ_M^{j·M/d}
            let k = j * (order / d);
            debug_assert_eq!(k % step, 0);
            let root = CyclotomicNumber::zeta_pow(order, k as i64);
            let mult = n - lifted.sub_scalar(&root).rank();
            if mult > 0 {
                entries.push((k, root, mult));
                found += mult;
            }
        }
        if found == n {
            break;
        }
    }
    entries.sort_by_key(|(k, _, _)| *k);
    Ok(EigenMultiset { order, entries })
}
