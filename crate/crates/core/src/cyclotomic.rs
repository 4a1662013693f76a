//! Exact arithmetic in the cyclotomic field `Q(ζ_m)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(m)-1}` as integer
//! numerators over one common positive denominator, kept in lowest terms,
//! so equality and hashing reduce to comparing coefficient vectors.
//! Arithmetic never changes the order `m` of an element; mixing orders is a
//! caller error and must go through [`CyclotomicNumber::lift`] or
//! [`lift_common`] first.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::intpoly::cyclotomic_polynomial;
use crate::number::totient;
use crate::scalar::{Integer, Scalar};

/// Above this degree a general inverse is considered too expensive for
/// pivoting and elimination switches to division-free updates.
const CHEAP_INVERSE_MAX_DEGREE: usize = 24;

/// Largest degree for which inverses use the extended Euclidean
/// algorithm over `Q`; its rational coefficients grow too fast beyond it.
const EUCLID_MAX_DEGREE: usize = 48;

/// The field `Q(ζ_m)`: its order, degree and reduction modulus.
pub struct CyclotomicField {
    order: u64,
    degree: usize,
    /// Nonzero terms `(e, c)` of `Φ_m - x^φ(m)`.
    tail: Vec<(usize, i64)>,
}

impl CyclotomicField {
    /// The shared description of `Q(ζ_m)`. Fields are created once per
    /// order and live for the rest of the process.
    pub fn get(order: u64) -> &'static CyclotomicField {
        assert!(order >= 1, "cyclotomic order must be positive");
        static FIELDS: OnceLock<RwLock<HashMap<u64, &'static CyclotomicField>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(field) = fields.read().unwrap().get(&order) {
            return field;
        }
        let mut fields = fields.write().unwrap();
        fields
            .entry(order)
            .or_insert_with(|| Box::leak(Box::new(CyclotomicField::build(order))))
    }

    fn build(order: u64) -> Self {
        let phi = cyclotomic_polynomial::<BigInt>(order);
        let degree = totient(order) as usize;
        debug_assert_eq!(phi.degree(), Some(degree));
        let tail = phi.coeffs()[..degree]
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(e, c)| (e, c.to_i64().expect("cyclotomic coefficient fits in i64")))
            .collect();
        CyclotomicField { order, degree, tail }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `φ(m)`, the dimension of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Reduce numerators indexed by exponent (any length) modulo
    /// `x^m - 1` and then modulo `Φ_m`, returning exactly `φ(m)` entries.
    fn reduce<I: Integer>(&self, raw: Vec<I>) -> Vec<I> {
        let m = self.order as usize;
        let mut acc = if raw.len() <= m {
            let mut v = raw;
            v.resize(m, I::zero());
            v
        } else {
            let mut v = vec![I::zero(); m];
            for (k, c) in raw.into_iter().enumerate() {
                if !c.is_zero() {
                    v[k % m] += c;
                }
            }
            v
        };
        self.reduce_folded(&mut acc);
        acc.truncate(self.degree);
        acc
    }

    /// Multiply by `ζ^k`: numerators move to `(i + k) mod m`, then reduce.
    fn rotate_reduce<I: Integer>(&self, num: &[I], k: usize) -> Vec<I> {
        let m = self.order as usize;
        let k = k % m;
        let words: Option<Vec<i128>> = num.iter().map(|c| c.to_i64().map(i128::from)).collect();
        if let Some(words) = words {
            let mut acc = vec![0i128; m];
            for (i, x) in words.into_iter().enumerate() {
                acc[(i + k) % m] = x;
            }
            if let Some(out) = self.reduce_words(acc) {
                return out;
            }
        }
        let mut acc = vec![I::zero(); m];
        for (i, c) in num.iter().enumerate() {
            acc[(i + k) % m] = c.clone();
        }
        self.reduce_folded(&mut acc);
        acc.truncate(self.degree);
        acc
    }

    /// `reduce_folded` in machine words; `None` on overflow.
    fn reduce_words<I: Integer>(&self, mut acc: Vec<i128>) -> Option<Vec<I>> {
        let d = self.degree;
        for k in (d..acc.len()).rev() {
            let c = std::mem::take(&mut acc[k]);
            if c == 0 {
                continue;
            }
            for &(e, t) in &self.tail {
                let s = c.checked_mul(t as i128)?;
                acc[k - d + e] = acc[k - d + e].checked_sub(s)?;
            }
        }
        acc.truncate(d);
        acc.into_iter().map(I::from_i128).collect()
    }

    /// Long division of an `m`-length vector by the monic `Φ_m`.
    fn reduce_folded<I: Integer>(&self, acc: &mut [I]) {
        let d = self.degree;
        for k in (d..acc.len()).rev() {
            if acc[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut acc[k], I::zero());
            for &(e, t) in &self.tail {
                let mut s = c.clone();
                s *= I::from_i64(t).unwrap();
                acc[k - d + e] -= s;
            }
        }
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CyclotomicField {}

impl Hash for CyclotomicField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

/// An element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct CyclotomicNumber<I> {
    field: &'static CyclotomicField,
    num: Vec<I>,
    den: I,
    /// `Some((k, c))` when the value is known to be `c·ζ^k`. Roots of unity
    /// are dense in the power basis once `k ≥ φ(m)`; the hint lets products
    /// and inverses of such values skip the general algorithms. It is not
    /// part of the value: equality and hashing ignore it.
    mono: Option<(usize, Ratio<I>)>,
}

impl<I: Integer> CyclotomicNumber<I> {
    fn from_parts(field: &'static CyclotomicField, num: Vec<I>, den: I) -> Self {
        debug_assert_eq!(num.len(), field.degree);
        let mut out = CyclotomicNumber { field, num, den, mono: None };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        if self.den.is_one() {
            return;
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = I::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(order: u64) -> Self {
        let field = CyclotomicField::get(order);
        Self::zero_in(field)
    }

    fn zero_in(field: &'static CyclotomicField) -> Self {
        CyclotomicNumber { field, num: vec![I::zero(); field.degree], den: I::one(), mono: None }
    }

    /// `c·ζ^k` with its hint.
    fn monomial(field: &'static CyclotomicField, k: usize, c: Ratio<I>) -> Self {
        if c.is_zero() {
            return Self::zero_in(field);
        }
        let mut unit = vec![I::zero(); field.degree];
        unit[0] = I::one();
        let mut num = field.rotate_reduce(&unit, k);
        for x in &mut num {
            if !x.is_zero() {
                *x *= c.numer();
            }
        }
        let mut out = Self::from_parts(field, num, c.denom().clone());
        out.mono = Some((k, c));
        out
    }

    pub fn one(order: u64) -> Self {
        Self::from_integer(order, I::one())
    }

    pub fn from_integer(order: u64, value: I) -> Self {
        let field = CyclotomicField::get(order);
        let mut num = vec![I::zero(); field.degree];
        let mono = (!value.is_zero()).then(|| (0, Ratio::from_integer(value.clone())));
        num[0] = value;
        CyclotomicNumber { field, num, den: I::one(), mono }
    }

    pub fn from_i64(order: u64, value: i64) -> Self {
        Self::from_integer(order, I::from_i64(value).unwrap())
    }

    pub fn from_rational(order: u64, value: &Ratio<I>) -> Self {
        let field = CyclotomicField::get(order);
        let mut num = vec![I::zero(); field.degree];
        num[0] = value.numer().clone();
        let mut out = Self::from_parts(field, num, value.denom().clone());
        if !value.is_zero() {
            out.mono = Some((0, value.clone()));
        }
        out
    }

    /// `ζ_m^k`; negative exponents are allowed.
    pub fn zeta_pow(order: u64, k: i64) -> Self {
        let field = CyclotomicField::get(order);
        let e = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![I::zero(); e + 1];
        raw[e] = I::one();
        CyclotomicNumber {
            field,
            num: field.reduce(raw),
            den: I::one(),
            mono: Some((e, Ratio::from_integer(I::one()))),
        }
    }

    /// The generator `ζ_m`.
    pub fn zeta(order: u64) -> Self {
        Self::zeta_pow(order, 1)
    }

    /// Canonical element for `Σ raw[k] ζ_m^k`: exponents are folded modulo
    /// `m` and the result is reduced modulo `Φ_m`.
    pub fn reduce(raw: &[Ratio<I>], order: u64) -> Self {
        let field = CyclotomicField::get(order);
        let mut den = I::one();
        for c in raw {
            den = den.lcm(c.denom());
        }
        let nums: Vec<I> = raw
            .iter()
            .map(|c| {
                let mut t = den.clone();
                t /= c.denom();
                t *= c.numer();
                t
            })
            .collect();
        Self::from_parts(field, field.reduce(nums), den)
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    /// Rational coefficients in the power basis, exactly `φ(m)` of them.
    pub fn coeffs(&self) -> Vec<Ratio<I>> {
        self.num.iter().map(|c| Ratio::new(c.clone(), self.den.clone())).collect()
    }

    pub fn coeff(&self, k: usize) -> Ratio<I> {
        Ratio::new(self.num[k].clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn to_rational(&self) -> Option<Ratio<I>> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    fn single_term(&self) -> Option<usize> {
        let mut found = None;
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some(k);
            }
        }
        found
    }

    fn check_same_field(&self, other: &Self) {
        assert!(
            self.field.order == other.field.order,
            "cyclotomic order mismatch: {} vs {} (lift to a common order first)",
            self.field.order,
            other.field.order
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_field(other);
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_field(other);
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { other.neg() } else { other.clone() };
        }
        let mut out = self.combine_parts(other, subtract);
        if let (Some((j, a)), Some((k, b))) = (&self.mono, &other.mono) {
            if j == k && !out.is_zero() {
                let c = if subtract { a.clone() - b.clone() } else { a.clone() + b.clone() };
                out.mono = Some((*j, c));
            }
        }
        out
    }

    fn combine_parts(&self, other: &Self, subtract: bool) -> Self {
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let mut x = a.clone();
                    if subtract {
                        x -= b;
                    } else {
                        x += b;
                    }
                    x
                })
                .collect();
            return Self::from_parts(self.field, num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let mut x = a.clone();
                x *= &other.den;
                let mut y = b.clone();
                y *= &self.den;
                if subtract {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        let mut den = self.den.clone();
        den *= &other.den;
        Self::from_parts(self.field, num, den)
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            field: self.field,
            num: self.num.iter().map(|c| -c.clone()).collect(),
            den: self.den.clone(),
            mono: self.mono.as_ref().map(|(k, c)| (*k, -c.clone())),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let field = self.field;
        match (&self.mono, &other.mono) {
            (Some((j, a)), Some((k, b))) => {
                return Self::monomial(field, (j + k) % field.order as usize, a.clone() * b.clone())
            }
            (Some((k, c)), None) => return other.shifted(*k, c),
            (None, Some((k, c))) => return self.shifted(*k, c),
            (None, None) => {}
        }
        let mut den = self.den.clone();
        den *= &other.den;
        if let Some(num) = self.mul_word(other) {
            return Self::from_parts(field, num, den);
        }
        let m = field.order as usize;
        let mut acc = vec![I::zero(); m];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = if i + j >= m { i + j - m } else { i + j };
                let mut t = a.clone();
                t *= b;
                acc[k] += t;
            }
        }
        field.reduce_folded(&mut acc);
        acc.truncate(field.degree);
        Self::from_parts(field, acc, den)
    }

    /// `self · c·ζ^k`: a cyclic shift of the numerators and one reduction.
    fn shifted(&self, k: usize, c: &Ratio<I>) -> Self {
        let field = self.field;
        if self.is_zero() || c.is_zero() {
            return Self::zero_in(field);
        }
        let mut num = field.rotate_reduce(&self.num, k);
        if !c.numer().is_one() {
            for x in &mut num {
                if !x.is_zero() {
                    *x *= c.numer();
                }
            }
        }
        let mut den = self.den.clone();
        den *= c.denom();
        let mut out = Self::from_parts(field, num, den);
        if let Some((j, a)) = &self.mono {
            out.mono = Some(((j + k) % field.order as usize, a.clone() * c.clone()));
        }
        out
    }

    /// Numerator product in machine words when every coefficient fits in
    /// `i64`; `None` if an input or an intermediate value does not fit.
    fn mul_word(&self, other: &Self) -> Option<Vec<I>> {
        let small = |v: &[I]| -> Option<Vec<(usize, i128)>> {
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| c.to_i64().map(|x| (k, x as i128)))
                .collect()
        };
        let a = small(&self.num)?;
        let b = small(&other.num)?;
        let field = self.field;
        let m = field.order as usize;
        let mut acc = vec![0i128; m];
        for &(i, x) in &a {
            for &(j, y) in &b {
                let k = if i + j >= m { i + j - m } else { i + j };
                acc[k] = acc[k].checked_add(x * y)?;
            }
        }
        field.reduce_words(acc)
    }

    pub fn scale(&self, factor: &Ratio<I>) -> Self {
        let num = self
            .num
            .iter()
            .map(|c| {
                let mut t = c.clone();
                t *= factor.numer();
                t
            })
            .collect();
        let mut den = self.den.clone();
        den *= factor.denom();
        let mut out = Self::from_parts(self.field, num, den);
        if let Some((k, c)) = &self.mono {
            if !factor.is_zero() {
                out.mono = Some((*k, c.clone() * factor.clone()));
            }
        }
        out
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn try_inv(&self) -> Option<Self> {
        if let Some((k, c)) = &self.mono {
            let m = self.field.order as usize;
            return Some(Self::monomial(self.field, (m - k) % m, c.recip()));
        }
        if let Some(k) = self.single_term() {
            // (c ζ^k)^{-1} = c^{-1} ζ^{-k}
            let c = self.coeff(k);
            return Some(Self::zeta_pow(self.order(), -(k as i64)).scale(&c.recip()));
        }
        if self.is_zero() {
            return None;
        }
        if self.field.degree <= EUCLID_MAX_DEGREE {
            Some(self.inverse_by_euclid())
        } else {
            Some(self.inverse_by_norm())
        }
    }

    /// Multiplicative inverse; fails with "division by zero in cyclotomic field".
    pub fn inv(&self) -> Result<Self> {
        self.try_inv().ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Extended Euclid of the representing polynomial against `Φ_m` over `Q`.
    pub(crate) fn inverse_by_euclid(&self) -> Self {
        let field = self.field;
        let d = field.degree;
        let mut modulus: Vec<Ratio<I>> = vec![Ratio::from_integer(I::zero()); d + 1];
        for &(e, c) in &field.tail {
            modulus[e] = Ratio::from_integer(I::from_i64(c).unwrap());
        }
        modulus[d] = Ratio::from_integer(I::one());

        let mut r0 = modulus;
        let mut r1 = trim(self.num.iter().map(|c| Ratio::from_integer(c.clone())).collect());
        let mut s0: Vec<Ratio<I>> = Vec::new();
        let mut s1: Vec<Ratio<I>> = vec![Ratio::from_integer(I::one())];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Φ_m is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let g = r0[0].clone();
        // s0 * (num) ≡ g, so (num/den)^{-1} = s0 * den / g.
        let factor = Ratio::from_integer(self.den.clone()) / g;
        let coeffs: Vec<Ratio<I>> = s0.into_iter().map(|c| c * &factor).collect();
        Self::reduce(&coeffs, field.order)
    }

    /// Inverse as `Π_{σ≠1} σ(a) / N(a)`: the product of all nontrivial
    /// Galois conjugates times `a` is the norm, a rational number. Only
    /// integer arithmetic is involved.
    pub(crate) fn inverse_by_norm(&self) -> Self {
        let m = self.order();
        let integral = CyclotomicNumber { field: self.field, num: self.num.clone(), den: I::one(), mono: None };
        let mut product = Self::one(m);
        for j in 2..m.max(2) {
            if num_integer::gcd(j, m) == 1 {
                product = product.mul(&integral.galois(j));
            }
        }
        let norm = integral.mul(&product);
        let norm = norm.to_rational().expect("the norm is rational");
        // (num/den)^{-1} = den · product / norm
        product.scale(&(Ratio::from_integer(self.den.clone()) / norm))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let mut base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// The Galois automorphism `ζ ↦ ζ^j`; `j` must be coprime to the order.
    pub fn galois(&self, j: u64) -> Self {
        let m = self.order();
        assert!(m == 1 || num_integer::gcd(j % m, m) == 1, "exponent must be a unit mod m");
        let field = self.field;
        let mut raw = vec![I::zero(); m as usize];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                raw[(k as u64 * j % m) as usize] += c;
            }
        }
        let mut out = Self::from_parts(field, field.reduce(raw), self.den.clone());
        if let Some((k, c)) = &self.mono {
            out.mono = Some(((*k as u64 * j % m) as usize, c.clone()));
        }
        out
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        let m = self.order();
        if m <= 2 {
            return self.clone();
        }
        self.galois(m - 1)
    }

    /// The same value in `Q(ζ_M)` for a multiple `M` of the order, via
    /// `ζ_m = ζ_M^{M/m}`.
    pub fn lift(&self, target: u64) -> Self {
        let m = self.order();
        assert!(target % m == 0, "cannot lift order {m} to {target}");
        if target == m {
            return self.clone();
        }
        let step = (target / m) as usize;
        let field = CyclotomicField::get(target);
        let mut raw = vec![I::zero(); target as usize];
        for (k, c) in self.num.iter().enumerate() {
            raw[k * step] = c.clone();
        }
        let mut out = Self::from_parts(field, field.reduce(raw), self.den.clone());
        out.mono = self.mono.as_ref().map(|(k, c)| (k * step, c.clone()));
        out
    }

    /// Multiply every coefficient by `L / g` where `L` is the common
    /// denominator of the row and `g` the gcd of all numerators. The row
    /// then has integral, jointly primitive-ish entries.
    fn clear_row_content(row: &mut [Self]) {
        let mut g = I::zero();
        let mut l = I::one();
        for x in row.iter() {
            if x.is_zero() {
                continue;
            }
            l = l.lcm(&x.den);
            for c in &x.num {
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
        }
        if g.is_zero() || (g.is_one() && l.is_one()) {
            return;
        }
        for x in row.iter_mut() {
            if x.is_zero() {
                continue;
            }
            let mut factor = l.clone();
            factor /= &x.den;
            for c in &mut x.num {
                *c *= &factor;
                *c /= &g;
            }
            x.den = I::one();
            x.normalize();
            if let Some((_, c)) = &mut x.mono {
                *c *= Ratio::new(l.clone(), g.clone());
            }
        }
    }
}

/// Rewrite both values over `Q(ζ_M)` with `M = lcm` of their orders.
pub fn lift_common<I: Integer>(
    a: &CyclotomicNumber<I>,
    b: &CyclotomicNumber<I>,
) -> (CyclotomicNumber<I>, CyclotomicNumber<I>) {
    let target = num_integer::lcm(a.order(), b.order());
    (a.lift(target), b.lift(target))
}

fn trim<T: num_traits::Zero>(mut v: Vec<T>) -> Vec<T> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul<I: Integer>(a: &[Ratio<I>], b: &[Ratio<I>]) -> Vec<Ratio<I>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Ratio::from_integer(I::zero()); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if num_traits::Zero::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub<I: Integer>(a: &[Ratio<I>], b: &[Ratio<I>]) -> Vec<Ratio<I>> {
    let n = a.len().max(b.len());
    let zero = Ratio::from_integer(I::zero());
    let out = (0..n)
        .map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))
        .collect();
    trim(out)
}

fn poly_divmod<I: Integer>(a: &[Ratio<I>], b: &[Ratio<I>]) -> (Vec<Ratio<I>>, Vec<Ratio<I>>) {
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b.last().unwrap().recip();
    let mut quot = vec![Ratio::from_integer(I::zero()); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] * &lead_inv;
        if num_traits::Zero::is_zero(&c) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

impl<I: Integer> PartialEq for CyclotomicNumber<I> {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.num == other.num
    }
}

impl<I: Integer> Eq for CyclotomicNumber<I> {}

impl<I: Integer> Hash for CyclotomicNumber<I> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

/// Entry-expression syntax: `3/2 - z + 2*z^5`, terms in ascending exponent.
impl<I: Integer> fmt::Display for CyclotomicNumber<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in 0..self.num.len() {
            if self.num[k].is_zero() {
                continue;
            }
            let c = self.coeff(k);
            let neg = c.is_negative();
            let abs = c.abs();
            let unit = abs.is_one();
            if first {
                if neg {
                    // A leading minus belongs to the coefficient, which must
                    // then be written out.
                    match k {
                        0 => write!(f, "-{abs}")?,
                        1 => write!(f, "-{abs}*z")?,
                        _ => write!(f, "-{abs}*z^{k}")?,
                    }
                    first = false;
                    continue;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                1 if unit => write!(f, "z")?,
                1 => write!(f, "{abs}*z")?,
                _ if unit => write!(f, "z^{k}")?,
                _ => write!(f, "{abs}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<I: Integer> fmt::Debug for CyclotomicNumber<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self, self.order())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<I: Integer> std::ops::$tr<&CyclotomicNumber<I>> for &CyclotomicNumber<I> {
            type Output = CyclotomicNumber<I>;
            fn $method(self, rhs: &CyclotomicNumber<I>) -> CyclotomicNumber<I> {
                CyclotomicNumber::$method(self, rhs)
            }
        }

        impl<I: Integer> std::ops::$tr for CyclotomicNumber<I> {
            type Output = CyclotomicNumber<I>;
            fn $method(self, rhs: CyclotomicNumber<I>) -> CyclotomicNumber<I> {
                CyclotomicNumber::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<I: Integer> std::ops::Neg for &CyclotomicNumber<I> {
    type Output = CyclotomicNumber<I>;
    fn neg(self) -> CyclotomicNumber<I> {
        CyclotomicNumber::neg(self)
    }
}

impl<I: Integer> std::ops::Neg for CyclotomicNumber<I> {
    type Output = CyclotomicNumber<I>;
    fn neg(self) -> CyclotomicNumber<I> {
        CyclotomicNumber::neg(&self)
    }
}

impl<I: Integer> Scalar for CyclotomicNumber<I> {
    type Ctx = &'static CyclotomicField;

    fn ctx(&self) -> Self::Ctx {
        self.field
    }

    fn zero(ctx: Self::Ctx) -> Self {
        Self::zero_in(ctx)
    }

    fn one(ctx: Self::Ctx) -> Self {
        Self::from_integer(ctx.order, I::one())
    }

    fn from_i64(value: i64, ctx: Self::Ctx) -> Self {
        Self::from_integer(ctx.order, I::from_i64(value).unwrap())
    }

    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }

    fn is_one(&self) -> bool {
        CyclotomicNumber::is_one(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        CyclotomicNumber::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        CyclotomicNumber::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        CyclotomicNumber::mul(self, rhs)
    }

    fn neg(&self) -> Self {
        CyclotomicNumber::neg(self)
    }

    fn try_inv(&self) -> Option<Self> {
        CyclotomicNumber::try_inv(self)
    }

    fn cheap_inv(&self) -> Option<Self> {
        if self.mono.is_some() || self.single_term().is_some() || self.field.degree <= CHEAP_INVERSE_MAX_DEGREE {
            self.try_inv()
        } else {
            None
        }
    }

    fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        let mut den = self.den.clone();
        den *= I::from_i64(k).unwrap();
        Self::from_parts(self.field, self.num.clone(), den)
    }

    fn normalize_row(row: &mut [Self]) {
        Self::clear_row_content(row);
    }
}
