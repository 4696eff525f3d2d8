//! Power series in `q` truncated modulo `q^(N+1)`, and q-Pochhammer products.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;
use crate::Error;

/// Coefficients `c_0..=c_N` of a power series known modulo `q^(N+1)`.
///
/// Binary operations between series of different orders truncate to the
/// smaller order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> TruncatedSeries<C> {
    /// Wraps a coefficient vector; its length fixes the order.
    ///
    /// # Panics
    /// If `coeffs` is empty: every truncation keeps at least the constant term.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        Self { coeffs }
    }

    pub fn zero(order: usize, ctx: &C::Ctx) -> Self {
        Self::new(vec![C::zero(ctx); order + 1])
    }

    pub fn one(order: usize, ctx: &C::Ctx) -> Self {
        Self::monomial(C::one(ctx), 0, order)
    }

    /// `c q^exp`, which is zero when `exp > order`.
    pub fn monomial(c: C, exp: usize, order: usize) -> Self {
        let ctx = c.ctx();
        let mut s = Self::zero(order, &ctx);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// `Σ_{n≥0} q^n`
    pub fn geometric(order: usize, ctx: &C::Ctx) -> Self {
        Self::new(vec![C::one(ctx); order + 1])
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [C] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn ctx(&self) -> C::Ctx {
        self.coeffs[0].ctx()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self::new(self.coeffs[..=n].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |i| {
            let mut c = self.coeffs[i].clone();
            c.add_assign(&other.coeffs[i]);
            c
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |i| {
            let mut c = self.coeffs[i].clone();
            c.sub_assign(&other.coeffs[i]);
            c
        })
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(C::neg_assign);
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    /// Multiplication by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let ctx = self.ctx();
        Self::from_fn(self.order(), |i| {
            if i >= k {
                self.coeffs[i - k].clone()
            } else {
                C::zero(&ctx)
            }
        })
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = Self::zero(n, &self.ctx());
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out.coeffs[i + j].mul_add_assign(a, b);
            }
        }
        out
    }

    /// Product with a sparse integer series given as `(exponent, coefficient)`.
    pub fn mul_sparse(&self, terms: &[(usize, i64)]) -> Self {
        let ctx = self.ctx();
        let n = self.order();
        let mut out = Self::zero(n, &ctx);
        for &(e, c) in terms {
            if e > n {
                continue;
            }
            match c {
                1 => {
                    for i in 0..=n - e {
                        out.coeffs[i + e].add_assign(&self.coeffs[i]);
                    }
                }
                -1 => {
                    for i in 0..=n - e {
                        out.coeffs[i + e].sub_assign(&self.coeffs[i]);
                    }
                }
                _ => {
                    let k = C::from_i64(c, &ctx);
                    for i in 0..=n - e {
                        out.coeffs[i + e].mul_add_assign(&k, &self.coeffs[i]);
                    }
                }
            }
        }
        out
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self, Error> {
        let inv0 = self.coeffs[0].recip().ok_or(Error::NotInvertible)?;
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for m in 1..=n {
            let mut acc = C::zero(&inv0.ctx());
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc.mul_add_assign(&self.coeffs[k], &out[m - k]);
                }
            }
            acc.neg_assign();
            out.push(acc.mul(&inv0));
        }
        Ok(Self::new(out))
    }

    /// `S(q^k)` at the same order.
    pub fn substitute_power(&self, k: usize) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::ZeroSubstitution);
        }
        let ctx = self.ctx();
        let n = self.order();
        let mut out = Self::zero(n, &ctx);
        for m in 0..=n / k {
            out.coeffs[m * k] = self.coeffs[m].clone();
        }
        Ok(out)
    }

    /// In place: `self *= (1 - q^k)`, touching only degrees `<= upto`.
    pub fn mul_one_minus_q_pow(&mut self, k: usize, upto: usize) {
        let top = upto.min(self.order());
        if k == 0 {
            self.coeffs.iter_mut().for_each(|c| *c = C::zero(&c.ctx()));
            return;
        }
        if k > top {
            return;
        }
        for i in (k..=top).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0].sub_assign(&lo[i - k]);
        }
    }

    /// In place: `self /= (1 - q^k)` for `k >= 1`, touching only degrees `<= upto`.
    pub fn div_one_minus_q_pow(&mut self, k: usize, upto: usize) {
        assert!(k >= 1, "1 - q^0 is not invertible");
        let top = upto.min(self.order());
        for i in k..=top {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0].add_assign(&lo[i - k]);
        }
    }

    /// In place: `self += scale * q^shift * src`, with `src` read from degree 0.
    pub fn add_shifted(&mut self, src: &[C], shift: usize, scale: Option<&C>) {
        let n = self.order();
        if shift > n {
            return;
        }
        let len = (n - shift + 1).min(src.len());
        for (dst, s) in self.coeffs[shift..shift + len].iter_mut().zip(&src[..len]) {
            match scale {
                Some(k) => dst.mul_add_assign(k, s),
                None => dst.add_assign(s),
            }
        }
    }

    /// First exponent at which two series differ, up to the smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    /// Coefficients converted to `f64`.
    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coeffs.iter().map(C::to_f64).collect()
    }
}

impl<C: Scalar> Add for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn add(self, rhs: Self) -> TruncatedSeries<C> {
        TruncatedSeries::add(self, rhs)
    }
}

impl<C: Scalar> Sub for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn sub(self, rhs: Self) -> TruncatedSeries<C> {
        TruncatedSeries::sub(self, rhs)
    }
}

impl<C: Scalar> Mul for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn mul(self, rhs: Self) -> TruncatedSeries<C> {
        TruncatedSeries::mul(self, rhs)
    }
}

impl<C: Scalar> Neg for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn neg(self) -> TruncatedSeries<C> {
        TruncatedSeries::neg(self)
    }
}

/// `(q;q)_n = ∏_{k=1..n} (1 - q^k)` truncated at `order`.
pub fn poch_q<C: Scalar>(n: usize, order: usize, ctx: &C::Ctx) -> TruncatedSeries<C> {
    let mut s = TruncatedSeries::one(order, ctx);
    for k in 1..=n.min(order) {
        s.mul_one_minus_q_pow(k, order);
    }
    s
}

/// `(q^a;q)_∞ = ∏_{k≥a} (1 - q^k)` truncated at `order`, by direct product.
pub fn poch_inf<C: Scalar>(a: usize, order: usize, ctx: &C::Ctx) -> Result<TruncatedSeries<C>, Error> {
    if a == 0 {
        return Err(Error::ZeroPochhammerBase);
    }
    let mut s = TruncatedSeries::one(order, ctx);
    for k in a..=order {
        s.mul_one_minus_q_pow(k, order);
    }
    Ok(s)
}

/// Nonzero terms of `(q;q)_∞` up to `order` from the pentagonal number
/// theorem: `(-1)^j` at `j(3j∓1)/2`. Sorted by exponent.
pub fn pentagonal_terms(order: usize) -> Vec<(usize, i64)> {
    let mut out = vec![(0usize, 1i64)];
    for j in 1usize.. {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let a = j * (3 * j - 1) / 2;
        if a > order {
            break;
        }
        out.push((a, sign));
        let b = j * (3 * j + 1) / 2;
        if b <= order {
            out.push((b, sign));
        }
    }
    out
}
