//! Multiprecision binary float backend.

use std::fmt;

use num_bigint::BigInt;
use qabel_core::{Rational, Scalar};
use rug::Float;

/// An MPFR float; the context is the mantissa width in bits.
#[derive(Clone, Debug, PartialEq)]
pub struct MpFloat(pub Float);

/// Mantissa bits sufficient for closed-form builds at `order`: a margin of
/// 96 bits over `log2 p(order)`, estimated by `π √(2N/3) / ln 2`.
pub fn auto_precision(order: usize) -> u32 {
    let growth = std::f64::consts::PI * (2.0 * order as f64 / 3.0).sqrt() / std::f64::consts::LN_2;
    96 + growth.ceil() as u32
}

fn to_rug(v: &BigInt) -> rug::Integer {
    let (sign, digits) = v.to_bytes_le();
    let mut i = rug::Integer::from_digits(&digits, rug::integer::Order::Lsf);
    if sign == num_bigint::Sign::Minus {
        i = -i;
    }
    i
}

impl MpFloat {
    pub fn from_f64(v: f64, prec: u32) -> Self {
        Self(Float::with_val(prec.max(53), v))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Scalar for MpFloat {
    type Ctx = u32;

    fn ctx(&self) -> u32 {
        self.0.prec()
    }

    fn zero(prec: &u32) -> Self {
        Self(Float::new(*prec))
    }

    fn from_i64(v: i64, prec: &u32) -> Self {
        Self(Float::with_val(*prec, v))
    }

    fn from_rational(v: &Rational, prec: &u32) -> Self {
        let r = rug::Rational::from((to_rug(v.numer()), to_rug(v.denom())));
        Self(Float::with_val(*prec, &r))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add_assign(&mut self, rhs: &Self) {
        self.0 += &rhs.0;
    }

    fn sub_assign(&mut self, rhs: &Self) {
        self.0 -= &rhs.0;
    }

    fn neg_assign(&mut self) {
        rug::ops::NegAssign::neg_assign(&mut self.0);
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self(Float::with_val(self.0.prec(), &self.0 * &rhs.0))
    }

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        self.0 += &a.0 * &b.0;
    }

    fn recip(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Self(self.0.clone().recip()))
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qabel_core::scalar::ratio;

    #[test]
    fn rational_conversion_is_exact() {
        let third = MpFloat::from_rational(&ratio(1, 3), &200);
        let three = MpFloat::from_i64(3, &200);
        let one = third.mul(&three);
        assert!((one.0 - 1.0f64).abs() < 1e-59);
        let big = Rational::from_integer(BigInt::from(10).pow(40) + 1);
        let m = MpFloat::from_rational(&big, &200);
        assert_eq!(m.0.to_integer().unwrap().to_string(), "10000000000000000000000000000000000000001");
    }

    #[test]
    fn negative_rationals() {
        assert_eq!(MpFloat::from_rational(&ratio(-7, 2), &64).to_f64(), -3.5);
    }

    #[test]
    fn precision_grows_with_order() {
        assert!(auto_precision(19_200) > 600);
        assert!(auto_precision(19_200) < 620);
        assert_eq!(MpFloat::zero(&auto_precision(10)).prec(), auto_precision(10));
    }

    #[test]
    fn fused_multiply_add() {
        let mut acc = MpFloat::from_i64(1, &100);
        acc.mul_add_assign(&MpFloat::from_i64(2, &100), &MpFloat::from_i64(3, &100));
        assert_eq!(acc.to_f64(), 7.0);
        assert!(MpFloat::zero(&100).recip().is_none());
    }
}
