//! Sequence acceleration for path-value sequences.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use num_traits::Float;

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AccelMethod {
    None,
    /// Polynomial extrapolation to `δ = 0` through the path points.
    Richardson,
    /// Wynn's epsilon algorithm.
    Wynn,
    /// Polynomial extrapolation in `u = 1 / ln(1/δ)`, for sequences whose
    /// error decays like a power of `1 / ln(1/δ)`.
    LogRichardson,
}

impl AccelMethod {
    pub const ALL: [AccelMethod; 4] = [
        AccelMethod::None,
        AccelMethod::Richardson,
        AccelMethod::Wynn,
        AccelMethod::LogRichardson,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            AccelMethod::None => "none",
            AccelMethod::Richardson => "richardson",
            AccelMethod::Wynn => "wynn",
            AccelMethod::LogRichardson => "log-richardson",
        }
    }
}

impl fmt::Display for AccelMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for AccelMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        AccelMethod::ALL.into_iter().find(|m| m.tag() == s).ok_or_else(|| Error::Unknown {
            kind: "acceleration method",
            name: s.to_string(),
            valid: AccelMethod::ALL.map(AccelMethod::tag).join(", "),
        })
    }
}

/// Accelerated value after each prefix of `values`; entry `i` depends only
/// on `values[..=i]` (and the matching `deltas`).
pub fn accelerate(method: AccelMethod, values: &[Complex64], deltas: &[f64]) -> Vec<Complex64> {
    assert_eq!(values.len(), deltas.len(), "one step size per value");
    (1..=values.len())
        .map(|m| match method {
            AccelMethod::None => values[m - 1],
            AccelMethod::Wynn => wynn_epsilon(&values[..m]),
            AccelMethod::Richardson => neville_at_zero(&deltas[..m], &values[..m]),
            AccelMethod::LogRichardson => {
                let u: Vec<f64> = deltas[..m].iter().map(|d| 1.0 / Float::ln(1.0 / d)).collect();
                neville_at_zero(&u, &values[..m])
            }
        })
        .collect()
}

const BREAKDOWN: f64 = 8.0 * f64::EPSILON;

/// Highest even column of the epsilon table that uses the last element.
/// Stops at the first column that breaks down: a difference lost in
/// rounding makes every later column noise.
pub fn wynn_epsilon(s: &[Complex64]) -> Complex64 {
    let m = s.len();
    assert!(m > 0, "empty sequence");
    let mut best = s[m - 1];
    let mut prev: Vec<Complex64> = alloc::vec![Complex64::new(0.0, 0.0); m + 1];
    let mut cur: Vec<Complex64> = s.to_vec();
    for k in 1..m {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            let scale = cur[i].norm().max(cur[i + 1].norm());
            let e = if diff.norm() <= BREAKDOWN * scale {
                Complex64::new(f64::INFINITY, 0.0)
            } else {
                prev[i + 1] + diff.inv()
            };
            next.push(e);
        }
        let last = *next.last().expect("nonempty column");
        if k % 2 == 0 {
            if last.re.is_finite() && last.im.is_finite() {
                best = last;
            } else {
                break;
            }
        }
        prev = cur;
        cur = next;
    }
    best
}

/// Value at `x = 0` of the interpolating polynomial through `(x_i, y_i)`.
pub fn neville_at_zero(x: &[f64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len());
    assert!(!x.is_empty(), "no nodes");
    let mut p = y.to_vec();
    let m = x.len();
    for j in 1..m {
        for i in (j..m).rev() {
            p[i] = (p[i - 1] * x[i] - p[i] * x[i - j]) / (x[i] - x[i - j]);
        }
    }
    p[m - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn tags_round_trip() {
        for m in AccelMethod::ALL {
            assert_eq!(m.tag().parse::<AccelMethod>().unwrap(), m);
        }
    }

    #[test]
    fn wynn_sums_alternating_harmonic_series() {
        let mut partial = Vec::new();
        let mut s = 0.0;
        for k in 1..=12 {
            s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            partial.push(s);
        }
        let acc = wynn_epsilon(&re(&partial));
        let ln2 = core::f64::consts::LN_2;
        assert!((acc.re - ln2).abs() < 1e-8, "{}", acc.re);
        assert!((partial[11] - ln2).abs() > 1e-2);
    }

    #[test]
    fn wynn_is_exact_on_geometric_sequences() {
        let s: Vec<f64> = (0..5).map(|k| 3.0 + 0.5f64.powi(k)).collect();
        assert!((wynn_epsilon(&re(&s)).re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn wynn_ignores_rounding_noise_past_convergence() {
        // 1 - δ on a halving grid; differences in the third column are pure rounding
        for len in 3..=9 {
            let s: Vec<f64> = (0..len).map(|j| 1.0 - 0.2 * 0.5f64.powi(j)).collect();
            assert!((wynn_epsilon(&re(&s)).re - 1.0).abs() < 1e-12, "len {len}");
        }
    }

    #[test]
    fn wynn_tolerates_constant_sequence() {
        let acc = wynn_epsilon(&re(&[2.0; 6]));
        assert_eq!(acc.re, 2.0);
    }

    #[test]
    fn richardson_recovers_polynomials() {
        let d: Vec<f64> = (0..6).map(|j| 0.2 * 0.5f64.powi(j)).collect();
        let v: Vec<f64> = d.iter().map(|x| 1.0 - 2.0 * x + 5.0 * x * x).collect();
        let acc = accelerate(AccelMethod::Richardson, &re(&v), &d);
        assert!((acc[5].re - 1.0).abs() < 1e-12);
        assert!((acc[2].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_richardson_recovers_inverse_log_error() {
        let d: Vec<f64> = (0..8).map(|j| 0.2 * 0.5f64.powi(j)).collect();
        let v: Vec<f64> = d.iter().map(|x| 0.5 + 0.3 / Float::ln(1.0 / x)).collect();
        let acc = accelerate(AccelMethod::LogRichardson, &re(&v), &d);
        assert!((acc[7].re - 0.5).abs() < 1e-10);
    }

    #[test]
    fn accelerated_prefix_property() {
        let d: Vec<f64> = (0..7).map(|j| 0.2 * 0.5f64.powi(j)).collect();
        let v = re(&[0.9, 0.95, 0.97, 0.985, 0.99, 0.995, 0.997]);
        for method in AccelMethod::ALL {
            let full = accelerate(method, &v, &d);
            let head = accelerate(method, &v[..4], &d[..4]);
            assert_eq!(&full[..4], &head[..]);
        }
    }
}
