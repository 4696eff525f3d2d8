//! Coefficient types for truncated series.
//!
//! Exact verification runs over [`Rational`]; numeric work runs over `f64` or
//! any wider binary float supplied by a downstream crate. The `Ctx` carries
//! whatever a value needs to be created from nothing (for example a mantissa
//! width); it is `()` for the built-in types.

use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync {
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn from_i64(v: i64, ctx: &Self::Ctx) -> Self;
    fn from_rational(v: &Rational, ctx: &Self::Ctx) -> Self;

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_i64(1, ctx)
    }

    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, rhs: &Self);
    fn sub_assign(&mut self, rhs: &Self);
    fn neg_assign(&mut self);
    fn mul(&self, rhs: &Self) -> Self;

    /// `self += a * b`
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        let p = a.mul(b);
        self.add_assign(&p);
    }

    fn recip(&self) -> Option<Self>;
    fn to_f64(&self) -> f64;

    /// Magnitude used by heuristics; need not be exact.
    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Scalar for Rational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        <Rational as Zero>::zero()
    }

    fn from_i64(v: i64, _: &()) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(v: &Rational, _: &()) -> Self {
        v.clone()
    }

    fn one(_: &()) -> Self {
        <Rational as One>::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_assign(&mut self, rhs: &Self) {
        *self -= rhs;
    }

    fn neg_assign(&mut self) {
        *self = -core::mem::take(self);
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn recip(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| Rational::recip(self))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs_f64(&self) -> f64 {
        ToPrimitive::to_f64(&Signed::abs(self)).unwrap_or(f64::INFINITY)
    }
}

impl Scalar for f64 {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        0.0
    }

    fn from_i64(v: i64, _: &()) -> Self {
        v as f64
    }

    fn from_rational(v: &Rational, _: &()) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_assign(&mut self, rhs: &Self) {
        *self -= rhs;
    }

    fn neg_assign(&mut self) {
        *self = -*self;
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn recip(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / *self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Shorthand for an integer rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl Scalar for num_complex::Complex64 {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        Self::new(0.0, 0.0)
    }

    fn from_i64(v: i64, _: &()) -> Self {
        Self::new(v as f64, 0.0)
    }

    fn from_rational(v: &Rational, _: &()) -> Self {
        Self::new(ToPrimitive::to_f64(v).unwrap_or(f64::NAN), 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_assign(&mut self, rhs: &Self) {
        *self -= rhs;
    }

    fn neg_assign(&mut self) {
        *self = -*self;
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn recip(&self) -> Option<Self> {
        (!Scalar::is_zero(self)).then(|| self.inv())
    }

    fn to_f64(&self) -> f64 {
        self.re
    }

    fn abs_f64(&self) -> f64 {
        self.norm()
    }
}
