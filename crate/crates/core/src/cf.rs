//! Euler's continued fraction for a sum of terms.
//!
//! For `s = t_0 + t_1 + t_2 + ...` with ratios `r_k = t_k / t_{k-1}`,
//!
//! ```text
//! s = t_0 + t_1 / (1 - r_2 / (1 + r_2 - r_3 / (1 + r_3 - ...)))
//! ```
//!
//! i.e. `b_0 = t_0`, `(a_1, b_1) = (t_1, 1)` and `(a_k, b_k) = (-r_k, 1 + r_k)`
//! for `k >= 2`. Convergent `m` equals the partial sum `t_0 + ... + t_m`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::arith::ArithmeticFunction;
use crate::forms::FormId;
use crate::numeric::LogPochhammer;
use crate::scalar::Scalar;
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct EulerCf<C> {
    pub b0: C,
    /// `(a_k, b_k)` for `k = 1..=depth`.
    pub partials: Vec<(C, C)>,
    /// Set when a zero term stopped the transform before the input ran out.
    pub truncated: bool,
}

impl<C: Scalar> EulerCf<C> {
    pub fn depth(&self) -> usize {
        self.partials.len()
    }
}

/// # Panics
/// If `terms` is empty.
pub fn euler_cf_transform<C: Scalar>(terms: &[C]) -> EulerCf<C> {
    let t0 = terms.first().expect("at least one term").clone();
    let ctx = t0.ctx();
    let mut partials = Vec::with_capacity(terms.len().saturating_sub(1));
    let mut truncated = false;
    for k in 1..terms.len() {
        if k == 1 {
            partials.push((terms[1].clone(), C::one(&ctx)));
            continue;
        }
        let Some(inv) = terms[k - 1].recip() else {
            truncated = true;
            break;
        };
        let r = terms[k].mul(&inv);
        let mut a = r.clone();
        a.neg_assign();
        let mut b = C::one(&ctx);
        b.add_assign(&r);
        partials.push((a, b));
    }
    EulerCf { b0: t0, partials, truncated }
}

/// Convergents `0..=min(count, depth)` by the forward series (Steed)
/// algorithm: `D_k = 1/(b_k + a_k D_{k-1})`, `H_k = (b_k D_k - 1) H_{k-1}`,
/// `f_k = f_{k-1} + H_k`. Unlike the three-term recurrence it does not
/// amplify rounding when the partial denominators exceed 1.
pub fn evaluate_convergents<C: Scalar>(cf: &EulerCf<C>, count: usize) -> Vec<C> {
    let ctx = cf.b0.ctx();
    let one = C::one(&ctx);
    let mut out = Vec::with_capacity(count.min(cf.depth()) + 1);
    let mut f = cf.b0.clone();
    out.push(f.clone());
    let mut d = C::zero(&ctx);
    let mut h = C::zero(&ctx);
    for (k, (a_k, b_k)) in cf.partials.iter().take(count).enumerate() {
        if k == 0 {
            d = b_k.recip().expect("nonzero first partial denominator");
            h = a_k.mul(&d);
        } else {
            let mut den = b_k.clone();
            den.mul_add_assign(a_k, &d);
            d = den.recip().expect("nonzero convergent denominator");
            let mut g = b_k.mul(&d);
            g.sub_assign(&one);
            h = g.mul(&h);
        }
        f.add_assign(&h);
        out.push(f.clone());
    }
    out
}

/// Outer-sum terms `t_0, t_1, ...` (indexed from `n = 1`) of a single-sum
/// form evaluated at a real `q` in `(-1, 1)`.
pub fn single_sum_terms(form: FormId, f: &ArithmeticFunction, q: f64, count: usize) -> Result<Vec<f64>, Error> {
    f.ensure_covers(count)?;
    let qc = Complex64::new(q, 0.0);
    let lp = LogPochhammer::new(qc)?;
    let one = Complex64::new(1.0, 0.0);
    let mut out = Vec::with_capacity(count);
    let mut qn = one;
    for n in 1..=count {
        qn *= qc;
        let fv = Complex64::new(f.value(n as u64).to_f64(), 0.0);
        let t = match form {
            FormId::Frobenius => (one - qc) * fv * qn,
            // (q;q)_∞ / (q;q)_n = (q^{n+1};q)_∞
            FormId::Thm1Closed | FormId::Cor1Closed => fv * qn * lp.inf(n + 1),
            // (q;q)_∞ / (q^n;q)_∞ = (q;q)_{n-1}
            FormId::Thm2Closed | FormId::Cor2_5Single => fv * qn * lp.ln_finite(n - 1).exp(),
            FormId::LambertNum => fv * qn / (one - qn),
            FormId::LambertDen => qn / (one - qn),
            other => return Err(Error::NotSingleSum(other.tag())),
        };
        out.push(t.re);
    }
    Ok(out)
}
