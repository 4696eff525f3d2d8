//! Arithmetic functions `f: ℕ → ℚ` with `f(0) = 0`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::scalar::{rat, ratio, Rational, Scalar};
use crate::series::TruncatedSeries;
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub enum ArithmeticFunction {
    /// `f(n) = 1`
    One,
    /// Indicator of `n ≡ r (mod m)`.
    Residue { r: u64, m: u64 },
    /// Indicator of the single value `k`.
    Point(u64),
    /// Euler's φ(n)/n.
    PhiRatio,
    Mobius,
    Liouville,
    /// `f(n) = n`
    Identity,
    /// Table of `f(0..=len)`; entry 0 is always zero.
    Tabulated { name: String, values: Vec<Rational> },
}

/// Names accepted by [`ArithmeticFunction::from_name`].
pub const BUILTIN_FUNCTION_NAMES: &[&str] = &[
    "one",
    "even_indicator",
    "odd_indicator",
    "indicator:R:M",
    "point:K",
    "phi_ratio",
    "mobius",
    "liouville",
    "identity",
];

impl ArithmeticFunction {
    pub fn residue(r: u64, m: u64) -> Self {
        assert!(m > 0, "modulus must be positive");
        Self::Residue { r: r % m, m }
    }

    /// Tabulated function from `f(1), f(2), ...`.
    pub fn tabulated(name: impl Into<String>, from_one: Vec<Rational>) -> Self {
        let mut values = Vec::with_capacity(from_one.len() + 1);
        values.push(<Rational as Zero>::zero());
        values.extend(from_one);
        Self::Tabulated {
            name: name.into(),
            values,
        }
    }

    pub fn from_name(name: &str) -> Result<Self, Error> {
        let unknown = || Error::Unknown {
            kind: "function",
            name: name.to_string(),
            valid: BUILTIN_FUNCTION_NAMES.join(", "),
        };
        Ok(match name {
            "one" => Self::One,
            "even_indicator" => Self::residue(0, 2),
            "odd_indicator" => Self::residue(1, 2),
            "phi_ratio" => Self::PhiRatio,
            "mobius" => Self::Mobius,
            "liouville" => Self::Liouville,
            "identity" => Self::Identity,
            _ => {
                let mut it = name.split(':');
                match (it.next(), it.next(), it.next(), it.next()) {
                    (Some("indicator"), Some(r), Some(m), None) => {
                        let r: u64 = r.parse().map_err(|_| unknown())?;
                        let m: u64 = m.parse().map_err(|_| unknown())?;
                        if m == 0 {
                            return Err(unknown());
                        }
                        Self::residue(r, m)
                    }
                    (Some("point"), Some(k), None, None) => Self::Point(k.parse().map_err(|_| unknown())?),
                    _ => return Err(unknown()),
                }
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            Self::One => "one".into(),
            Self::Residue { r: 0, m: 2 } => "even_indicator".into(),
            Self::Residue { r: 1, m: 2 } => "odd_indicator".into(),
            Self::Residue { r, m } => format!("indicator:{r}:{m}"),
            Self::Point(k) => format!("point:{k}"),
            Self::PhiRatio => "phi_ratio".into(),
            Self::Mobius => "mobius".into(),
            Self::Liouville => "liouville".into(),
            Self::Identity => "identity".into(),
            Self::Tabulated { name, .. } => name.clone(),
        }
    }

    /// Largest `n` for which the function is defined, `None` if unbounded.
    pub fn coverage(&self) -> Option<usize> {
        match self {
            Self::Tabulated { values, .. } => Some(values.len() - 1),
            _ => None,
        }
    }

    pub fn ensure_covers(&self, order: usize) -> Result<(), Error> {
        match self.coverage() {
            Some(available) if available < order => Err(Error::TabulationGap {
                name: self.name(),
                available,
                requested: order,
            }),
            _ => Ok(()),
        }
    }

    /// `f(n)`; zero at `n = 0` and beyond the end of a table.
    pub fn value(&self, n: u64) -> Rational {
        if n == 0 {
            return <Rational as Zero>::zero();
        }
        match self {
            Self::One => rat(1),
            Self::Residue { r, m } => rat(i64::from(n % m == *r)),
            Self::Point(k) => rat(i64::from(n == *k)),
            Self::PhiRatio => {
                let phi = factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1));
                ratio(phi as i64, n as i64)
            }
            Self::Mobius => {
                let f = factorize(n);
                if f.iter().any(|&(_, e)| e > 1) {
                    rat(0)
                } else if f.len().is_multiple_of(2) {
                    rat(1)
                } else {
                    rat(-1)
                }
            }
            Self::Liouville => {
                let omega: u32 = factorize(n).iter().map(|&(_, e)| e).sum();
                rat(if omega.is_multiple_of(2) { 1 } else { -1 })
            }
            Self::Identity => rat(n as i64),
            Self::Tabulated { values, .. } => values.get(n as usize).cloned().unwrap_or_else(<Rational as Zero>::zero),
        }
    }

    /// `[f(0), f(1), ..., f(order)]` after checking coverage.
    pub fn values_up_to(&self, order: usize) -> Result<Vec<Rational>, Error> {
        self.ensure_covers(order)?;
        Ok((0..=order as u64).map(|n| self.value(n)).collect())
    }

    /// Same as [`values_up_to`](Self::values_up_to), converted to `C`.
    pub fn scalars_up_to<C: Scalar>(&self, order: usize, ctx: &C::Ctx) -> Result<Vec<C>, Error> {
        Ok(self
            .values_up_to(order)?
            .iter()
            .map(|v| C::from_rational(v, ctx))
            .collect())
    }
}

/// Prime factorization by trial division, as `(p, e)` pairs.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Σ_{n≥1} f(n) q^n / (1 - q^n)`: the coefficient of `q^m` is `Σ_{d|m} f(d)`.
pub fn lambert_series<C: Scalar>(
    f: &ArithmeticFunction,
    order: usize,
    ctx: &C::Ctx,
) -> Result<TruncatedSeries<C>, Error> {
    let values = f.scalars_up_to::<C>(order, ctx)?;
    let mut out = TruncatedSeries::<C>::zero(order, ctx);
    for (d, v) in values.iter().enumerate().skip(1) {
        if v.is_zero() {
            continue;
        }
        for m in (d..=order).step_by(d) {
            out.coeffs_mut()[m].add_assign(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn divisor_sum_oracle(f: &ArithmeticFunction, m: u64) -> Rational {
        (1..=m).filter(|d| m.is_multiple_of(*d)).map(|d| f.value(d)).sum()
    }

    #[test]
    fn f_of_zero_is_zero() {
        for f in [ArithmeticFunction::One, ArithmeticFunction::PhiRatio, ArithmeticFunction::Liouville] {
            assert_eq!(f.value(0), rat(0));
        }
    }

    #[test]
    fn builtin_values() {
        let phi: Vec<_> = (1..=6).map(|n| ArithmeticFunction::PhiRatio.value(n)).collect();
        assert_eq!(phi, vec![rat(1), ratio(1, 2), ratio(2, 3), ratio(1, 2), ratio(4, 5), ratio(1, 3)]);
        let mu: Vec<_> = (1..=10).map(|n| ArithmeticFunction::Mobius.value(n)).collect();
        assert_eq!(mu, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1].map(rat).to_vec());
        let lambda: Vec<_> = (1..=8).map(|n| ArithmeticFunction::Liouville.value(n)).collect();
        assert_eq!(lambda, [1, -1, -1, 1, -1, 1, -1, -1].map(rat).to_vec());
        assert_eq!(ArithmeticFunction::residue(1, 3).value(7), rat(1));
        assert_eq!(ArithmeticFunction::residue(1, 3).value(9), rat(0));
    }

    #[test]
    fn names_round_trip() {
        for name in ["one", "even_indicator", "odd_indicator", "indicator:1:3", "point:1", "phi_ratio", "mobius"] {
            assert_eq!(ArithmeticFunction::from_name(name).unwrap().name(), name);
        }
        assert!(matches!(ArithmeticFunction::from_name("nosuch"), Err(Error::Unknown { .. })));
        assert!(ArithmeticFunction::from_name("indicator:1:0").is_err());
    }

    #[test]
    fn tabulated_coverage() {
        let f = ArithmeticFunction::tabulated("t", vec![rat(1), rat(0), rat(1)]);
        assert_eq!(f.value(2), rat(0));
        assert_eq!(f.value(0), rat(0));
        assert!(f.values_up_to(3).is_ok());
        assert!(matches!(f.values_up_to(4), Err(Error::TabulationGap { available: 3, requested: 4, .. })));
    }

    #[test]
    fn lambert_of_one_counts_divisors() {
        let s = lambert_series::<Rational>(&ArithmeticFunction::One, 6, &()).unwrap();
        assert_eq!(s.coeffs()[1..], [1, 2, 2, 3, 2, 4].map(rat));
    }

    #[test]
    fn lambert_of_point_one_is_geometric() {
        let s = lambert_series::<Rational>(&ArithmeticFunction::Point(1), 10, &()).unwrap();
        let expected = TruncatedSeries::<Rational>::geometric(10, &()).sub(&TruncatedSeries::one(10, &()));
        assert_eq!(s, expected);
    }

    #[test]
    fn lambert_of_mobius_is_q() {
        let s = lambert_series::<Rational>(&ArithmeticFunction::Mobius, 50, &()).unwrap();
        for m in 1..=50u64 {
            assert_eq!(s.coeff(m as usize), &divisor_sum_oracle(&ArithmeticFunction::Mobius, m));
        }
        assert_eq!(s, TruncatedSeries::monomial(rat(1), 1, 50));
    }

    #[test]
    fn lambert_matches_divisor_sums() {
        for f in [ArithmeticFunction::PhiRatio, ArithmeticFunction::residue(1, 3), ArithmeticFunction::Liouville] {
            let s = lambert_series::<Rational>(&f, 40, &()).unwrap();
            for m in 1..=40u64 {
                assert_eq!(s.coeff(m as usize), &divisor_sum_oracle(&f, m));
            }
        }
    }
}
