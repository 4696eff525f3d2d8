//! Estimating `lim_{q→1}` of a series along a Stolz path.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::accel::{accelerate, AccelMethod};
use crate::arith::ArithmeticFunction;
use crate::forms::{build, FormId};
use crate::numeric::{eval_at, PointValue};
use crate::scalar::Scalar;
use crate::stolz::StolzPath;
use crate::Error;

/// Threshold below which a Lambert denominator is treated as vanishing.
pub const MIN_DENOMINATOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct LimitSettings {
    pub path: StolzPath,
    /// Truncation order; the smallest adequate order when `None`.
    pub order: Option<usize>,
    pub accel: AccelMethod,
    /// A warning is attached when the error heuristic exceeds this.
    pub tolerance: f64,
}

impl Default for LimitSettings {
    fn default() -> Self {
        Self {
            path: StolzPath::default_radial(),
            order: None,
            accel: AccelMethod::Wynn,
            tolerance: 1e-6,
        }
    }
}

impl LimitSettings {
    pub fn resolve_order(&self) -> Result<usize, Error> {
        match self.order {
            Some(n) => {
                self.path.check_adequacy(n)?;
                Ok(n)
            }
            None => self.path.auto_order(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitEstimate {
    pub label: String,
    pub order: usize,
    pub method: AccelMethod,
    pub points: Vec<Complex64>,
    pub raw_values: Vec<Complex64>,
    pub accelerated_values: Vec<Complex64>,
    pub tail_bounds: Vec<f64>,
    pub value: Complex64,
    /// Last-two difference of the accelerated values plus the final tail bound.
    pub error: f64,
    pub warning: Option<String>,
}

impl LimitEstimate {
    /// Assembles an estimate from per-point values; acceleration uses only `raw`.
    pub fn from_points(
        label: impl Into<String>,
        order: usize,
        settings: &LimitSettings,
        raw: Vec<Complex64>,
        tails: Vec<f64>,
    ) -> Result<Self, Error> {
        let path = &settings.path;
        if raw.is_empty() {
            return Err(Error::EmptyPath);
        }
        assert_eq!(raw.len(), path.len());
        let acc = accelerate(settings.accel, &raw, path.deltas());
        let value = *acc.last().expect("nonempty");
        let last_tail = *tails.last().expect("nonempty");
        let step = match acc.len() {
            1 => 0.0,
            n => (acc[n - 1] - acc[n - 2]).norm(),
        };
        let error = step + last_tail;
        let warning = (!(error <= settings.tolerance)).then(|| {
            format!(
                "error heuristic {error:.3e} exceeds tolerance {:.1e}; the sequence may not have converged",
                settings.tolerance
            )
        });
        Ok(Self {
            label: label.into(),
            order,
            method: settings.accel,
            points: path.points().to_vec(),
            raw_values: raw,
            accelerated_values: acc,
            tail_bounds: tails,
            value,
            error,
            warning,
        })
    }
}

/// Evaluates `coeffs` at every path point.
pub fn evaluate_on_path(coeffs: &[f64], path: &StolzPath) -> Result<Vec<PointValue>, Error> {
    path.points()
        .iter()
        .enumerate()
        .map(|(index, &q)| {
            eval_at(coeffs, q).map_err(|e| match e {
                Error::OutsideDisk { modulus, .. } => Error::OutsideDisk { index, modulus },
                other => other,
            })
        })
        .collect()
}

/// Builds `form` over `C` at the resolved order and estimates its limit.
pub fn estimate_limit<C: Scalar>(
    form: FormId,
    f: &ArithmeticFunction,
    settings: &LimitSettings,
    ctx: &C::Ctx,
) -> Result<LimitEstimate, Error> {
    let order = settings.resolve_order()?;
    let series = build::<C>(form, f, order, ctx)?;
    estimate_series_limit(form.tag(), &series.to_f64_vec(), order, settings)
}

/// Estimates the limit of a series given by its `f64` coefficients.
pub fn estimate_series_limit(
    label: &str,
    coeffs: &[f64],
    order: usize,
    settings: &LimitSettings,
) -> Result<LimitEstimate, Error> {
    let vals = evaluate_on_path(coeffs, &settings.path)?;
    LimitEstimate::from_points(
        label,
        order,
        settings,
        vals.iter().map(|v| v.value).collect(),
        vals.iter().map(|v| v.tail).collect(),
    )
}

/// Limit of `Σ f(n) q^n/(1-q^n) / Σ q^n/(1-q^n)`.
pub fn lambert_ratio_limit<C: Scalar>(
    f: &ArithmeticFunction,
    settings: &LimitSettings,
    ctx: &C::Ctx,
) -> Result<LimitEstimate, Error> {
    let order = settings.resolve_order()?;
    let num = build::<C>(FormId::LambertNum, f, order, ctx)?.to_f64_vec();
    let den = build::<C>(FormId::LambertDen, f, order, ctx)?.to_f64_vec();
    let num = evaluate_on_path(&num, &settings.path)?;
    let den = evaluate_on_path(&den, &settings.path)?;
    let mut raw = Vec::with_capacity(num.len());
    let mut tails = Vec::with_capacity(num.len());
    for (index, (n, d)) in num.iter().zip(&den).enumerate() {
        let magnitude = d.value.norm();
        if !(magnitude >= MIN_DENOMINATOR) {
            return Err(Error::SmallDenominator { index, magnitude });
        }
        let r = n.value / d.value;
        raw.push(r);
        tails.push((n.tail + r.norm() * d.tail) / magnitude);
    }
    LimitEstimate::from_points("lambert", order, settings, raw, tails)
}

/// `(1/N) Σ_{k≤N} f(k)` for `N = 1..=depth`.
pub fn cesaro_average(f: &ArithmeticFunction, depth: usize) -> Result<Vec<f64>, Error> {
    f.ensure_covers(depth)?;
    let mut sum = 0.0;
    Ok((1..=depth)
        .map(|n| {
            sum += f.value(n as u64).to_f64();
            sum / n as f64
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stolz::StolzPath;

    fn short_path() -> LimitSettings {
        LimitSettings {
            path: StolzPath::new(1.0, 0.0, 4, 0.2, 0.5).unwrap(),
            ..LimitSettings::default()
        }
    }

    #[test]
    fn frobenius_of_one_is_q() {
        let s = short_path();
        let est = estimate_limit::<f64>(FormId::Frobenius, &ArithmeticFunction::One, &s, &()).unwrap();
        for (v, q) in est.raw_values.iter().zip(s.path.points()) {
            assert!((v - q).norm() < 1e-12);
        }
        assert!((est.value.re - 1.0).abs() < 1e-6);
    }

    #[test]
    fn richardson_beats_raw_on_frobenius_of_one() {
        let mut s = short_path();
        s.accel = AccelMethod::Richardson;
        let est = estimate_limit::<f64>(FormId::Frobenius, &ArithmeticFunction::One, &s, &()).unwrap();
        let raw_err = (est.raw_values.last().unwrap().re - 1.0).abs();
        let acc_err = (est.value.re - 1.0).abs();
        assert!(acc_err < raw_err);
    }

    #[test]
    fn inadequate_order_is_reported() {
        let mut s = short_path();
        s.order = Some(200);
        let err = estimate_limit::<f64>(FormId::Frobenius, &ArithmeticFunction::One, &s, &()).unwrap_err();
        let Error::InadequateOrder { index: 1, needed, .. } = err else {
            panic!("{err:?}");
        };
        assert!((300..=301).contains(&needed));
        assert!(s.path.check_adequacy(needed).is_err());
        let at_needed = LimitSettings { order: Some(s.path.auto_order().unwrap()), ..s };
        assert!(at_needed.resolve_order().is_ok());
    }

    #[test]
    fn lambert_ratio_of_one_is_one() {
        let est = lambert_ratio_limit::<f64>(&ArithmeticFunction::One, &short_path(), &()).unwrap();
        assert!(est.raw_values.iter().all(|v| (v.re - 1.0).abs() < 1e-14));
    }

    #[test]
    fn warning_when_error_exceeds_tolerance() {
        let mut s = short_path();
        s.accel = AccelMethod::None;
        let est = estimate_limit::<f64>(FormId::Frobenius, &ArithmeticFunction::One, &s, &()).unwrap();
        assert!(est.warning.is_some());
    }

    #[test]
    fn cesaro_examples() {
        assert!(cesaro_average(&ArithmeticFunction::One, 50).unwrap().iter().all(|&v| v == 1.0));
        let ev = cesaro_average(&ArithmeticFunction::residue(0, 2), 1000).unwrap();
        for n in (2..=1000).step_by(2) {
            assert_eq!(ev[n - 1], 0.5);
        }
        let phi = cesaro_average(&ArithmeticFunction::PhiRatio, 10_000).unwrap();
        assert!((phi[9_999] - 0.60794).abs() < 5e-5);
    }
}
