//! Pointwise evaluation of truncated series and infinite q-products at a
//! complex `q` inside the unit disk.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::Error;

/// Horner value of a truncated series together with the tail heuristic
/// `|c_N| |q|^(N+1) / (1 - |q|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointValue {
    pub value: Complex64,
    pub tail: f64,
}

pub fn eval_at(coeffs: &[f64], q: Complex64) -> Result<PointValue, Error> {
    let r = q.norm();
    if !(r < 1.0) {
        return Err(Error::OutsideDisk { index: 0, modulus: r });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * q + c;
    }
    let n = coeffs.len();
    let last = coeffs.last().copied().unwrap_or(0.0).abs();
    let tail = last * r.powi(n as i32) / (1.0 - r);
    Ok(PointValue { value: acc, tail })
}

/// Logarithms of `(q^a;q)_∞` for every `a >= 1` up to a cutoff beyond which
/// `|q|^a` is below `1e-18`.
#[derive(Clone, Debug)]
pub struct LogPochhammer {
    q: Complex64,
    suffix: Vec<Complex64>,
}

impl LogPochhammer {
    /// Upper bound on the number of stored factors.
    pub const MAX_FACTORS: usize = 50_000_000;

    pub fn new(q: Complex64) -> Result<Self, Error> {
        let r = q.norm();
        if !(r < 1.0) {
            return Err(Error::OutsideDisk { index: 0, modulus: r });
        }
        let cutoff = if r == 0.0 {
            1
        } else {
            ((18.0 * core::f64::consts::LN_10 / -Float::ln(r)).ceil() as usize).clamp(1, Self::MAX_FACTORS)
        };
        let one = Complex64::new(1.0, 0.0);
        let mut pows = Vec::with_capacity(cutoff + 1);
        let mut p = one;
        pows.push(p);
        for _ in 0..cutoff {
            p *= q;
            pows.push(p);
        }
        // Σ_{k > cutoff} ln(1 - q^k) ≈ -q^{cutoff+1} / (1 - q)
        let mut suffix = alloc::vec![Complex64::new(0.0, 0.0); cutoff + 2];
        suffix[cutoff + 1] = -(pows[cutoff] * q) / (one - q);
        for k in (1..=cutoff).rev() {
            suffix[k] = suffix[k + 1] + (one - pows[k]).ln();
        }
        Ok(Self { q, suffix })
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// Index past which every factor is treated as `1 - q^k ≈ exp(-q^k)`.
    pub fn cutoff(&self) -> usize {
        self.suffix.len() - 2
    }

    /// `ln (q^a;q)_∞` for `a >= 1`.
    pub fn ln_inf(&self, a: usize) -> Complex64 {
        assert!(a >= 1);
        if a < self.suffix.len() {
            self.suffix[a]
        } else {
            // beyond the cutoff the product is 1 to double precision
            Complex64::new(0.0, 0.0)
        }
    }

    /// `ln (q;q)_n`.
    pub fn ln_finite(&self, n: usize) -> Complex64 {
        self.ln_inf(1) - self.ln_inf(n + 1)
    }

    /// `(q^a;q)_∞`.
    pub fn inf(&self, a: usize) -> Complex64 {
        self.ln_inf(a).exp()
    }
}

/// `ln q^n` chosen on the principal branch of `ln q`.
pub fn ln_pow(q: Complex64, n: usize) -> Complex64 {
    q.ln() * n as f64
}
