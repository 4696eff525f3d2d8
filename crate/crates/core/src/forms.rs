//! Builders for every q-series whose `q → 1` limit recovers the mean value
//! `L` of an arithmetic function, each available as a partition sum
//! (by enumeration) and as closed-form n-sums.
//!
//! Closed forms are assembled with in-place `(1 - q^k)` multiplications and
//! divisions so each costs `O(N²)` coefficient operations. Their intermediate
//! coefficients grow roughly like the partition numbers `p(N)`, so float
//! builds at large order need a scalar with enough mantissa bits to absorb
//! that cancellation.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::{lambert_series, ArithmeticFunction};
use crate::partition::{mu_p, partitions_up_to, Partition};
use crate::scalar::{Rational, Scalar};
use crate::series::{pentagonal_terms, TruncatedSeries};
use crate::Error;

/// Largest order at which partition-sum forms are enumerated.
pub const ENUMERATION_GUARD: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormId {
    /// `(1 - q) Σ f(n) q^n`
    Frobenius,
    /// `(q;q)_∞ Σ_λ f(lg λ) q^|λ|`
    Thm1Partition,
    /// `(q;q)_∞ Σ f(n) q^n / (q;q)_n`
    Thm1Closed,
    /// `-Σ_λ μ_P(λ) f(sm λ) q^|λ|`
    Cor1Partition,
    /// `Σ f(n) q^n (q^{n+1};q)_∞`
    Cor1Closed,
    /// `-Σ_{n,k≥1} (-1)^k f(n) q^{nk + k(k-1)/2} / (q;q)_{k-1}`
    Cor1_5Double,
    /// `(q;q)_∞ Σ_λ f(sm λ) q^|λ|`
    Thm2Partition,
    /// `(q;q)_∞ Σ f(n) q^n / (q^n;q)_∞`
    Thm2Closed,
    /// `-Σ_λ μ_P(λ) f(lg λ) q^|λ|`
    Cor2Partition,
    /// `Σ f(n) q^n (q;q)_{n-1}`
    Cor2_5Single,
    /// `(q;q)_∞ Σ_{n,k≥1} f(n) q^{nk} / (q;q)_{k-1}`
    Cor2_5Double,
    /// `Σ f(n) q^n / (1 - q^n)`
    LambertNum,
    /// `Σ q^n / (1 - q^n)`
    LambertDen,
}

impl FormId {
    pub const ALL: [FormId; 13] = [
        FormId::Frobenius,
        FormId::Thm1Partition,
        FormId::Thm1Closed,
        FormId::Cor1Partition,
        FormId::Cor1Closed,
        FormId::Cor1_5Double,
        FormId::Thm2Partition,
        FormId::Thm2Closed,
        FormId::Cor2Partition,
        FormId::Cor2_5Single,
        FormId::Cor2_5Double,
        FormId::LambertNum,
        FormId::LambertDen,
    ];

    /// Forms whose `q → 1` limit is asserted to be `L`, excluding the
    /// Lambert pair (whose ratio is the limit form).
    pub const LIMIT_FORMS: [FormId; 11] = [
        FormId::Frobenius,
        FormId::Thm1Partition,
        FormId::Thm1Closed,
        FormId::Cor1Partition,
        FormId::Cor1Closed,
        FormId::Cor1_5Double,
        FormId::Thm2Partition,
        FormId::Thm2Closed,
        FormId::Cor2Partition,
        FormId::Cor2_5Single,
        FormId::Cor2_5Double,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FormId::Frobenius => "frobenius",
            FormId::Thm1Partition => "thm1_partition",
            FormId::Thm1Closed => "thm1_closed",
            FormId::Cor1Partition => "cor1_partition",
            FormId::Cor1Closed => "cor1_closed",
            FormId::Cor1_5Double => "cor1_5_double",
            FormId::Thm2Partition => "thm2_partition",
            FormId::Thm2Closed => "thm2_closed",
            FormId::Cor2Partition => "cor2_partition",
            FormId::Cor2_5Single => "cor2_5_single",
            FormId::Cor2_5Double => "cor2_5_double",
            FormId::LambertNum => "lambert_num",
            FormId::LambertDen => "lambert_den",
        }
    }

    pub fn is_partition_sum(self) -> bool {
        matches!(
            self,
            FormId::Thm1Partition | FormId::Cor1Partition | FormId::Thm2Partition | FormId::Cor2Partition
        )
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        FormId::ALL.into_iter().find(|f| f.tag() == s).ok_or_else(|| Error::Unknown {
            kind: "form",
            name: s.to_string(),
            valid: FormId::ALL.map(FormId::tag).join(", "),
        })
    }
}

/// Builds the truncation at `order` of the series named by `form`.
pub fn build<C: Scalar>(
    form: FormId,
    f: &ArithmeticFunction,
    order: usize,
    ctx: &C::Ctx,
) -> Result<TruncatedSeries<C>, Error> {
    if form.is_partition_sum() && order > ENUMERATION_GUARD {
        return Err(Error::EnumerationGuard {
            form: form.tag(),
            guard: ENUMERATION_GUARD,
            requested: order,
        });
    }
    if form == FormId::LambertDen {
        return lambert_series(&ArithmeticFunction::One, order, ctx);
    }
    let values = f.scalars_up_to::<C>(order, ctx)?;
    Ok(match form {
        FormId::Frobenius => frobenius(&values, ctx),
        FormId::Thm1Closed => thm1_closed(&values, ctx),
        FormId::Cor1Closed => cor1_closed(&values, ctx),
        FormId::Cor1_5Double => cor1_5_double(&values, ctx),
        FormId::Thm2Closed => thm2_closed(&values, ctx),
        FormId::Cor2_5Single => cor2_5_single(&values, ctx),
        FormId::Cor2_5Double => cor2_5_double(&values, ctx),
        FormId::LambertNum => return lambert_series(f, order, ctx),
        FormId::LambertDen => unreachable!(),
        FormId::Thm1Partition | FormId::Cor1Partition | FormId::Thm2Partition | FormId::Cor2Partition => {
            partition_form(form, f, order, ctx)
        }
    })
}

/// `Σ f(n) q^n`, the series that is asymptotic to `L q / (1 - q)`.
pub fn qasymp_reference<C: Scalar>(
    f: &ArithmeticFunction,
    order: usize,
    ctx: &C::Ctx,
) -> Result<TruncatedSeries<C>, Error> {
    let mut values = f.scalars_up_to::<C>(order, ctx)?;
    values[0] = C::zero(ctx);
    Ok(TruncatedSeries::new(values))
}

fn frobenius<C: Scalar>(values: &[C], ctx: &C::Ctx) -> TruncatedSeries<C> {
    let order = values.len() - 1;
    TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            return C::zero(ctx);
        }
        let mut c = values[n].clone();
        c.sub_assign(&values[n - 1]);
        c
    })
}

fn times_euler<C: Scalar>(s: &TruncatedSeries<C>) -> TruncatedSeries<C> {
    s.mul_sparse(&pentagonal_terms(s.order()))
}

fn thm1_closed<C: Scalar>(values: &[C], ctx: &C::Ctx) -> TruncatedSeries<C> {
    let order = values.len() - 1;
    let mut acc = TruncatedSeries::zero(order, ctx);
    // u = 1/(q;q)_n, needed only to degree order - n
    let mut u = TruncatedSeries::one(order, ctx);
    for n in 1..=order {
        let need = order - n;
        u.div_one_minus_q_pow(n, need);
        let v = &values[n];
        if !v.is_zero() {
            acc.add_shifted(&u.coeffs()[..=need], n, Some(v));
        }
    }
    times_euler(&acc)
}

fn cor1_closed<C: Scalar>(values: &[C], ctx: &C::Ctx) -> TruncatedSeries<C> {
    let order = values.len() - 1;
    let mut acc = TruncatedSeries::zero(order, ctx);
    // r = (q^{n+1};q)_∞, starting from n = order where it is 1; each factor
    // must be applied to full order since later n read higher degrees
    let mut r = TruncatedSeries::one(order, ctx);
    for n in (1..=order).rev() {
        let need = order - n;
        let v = &values[n];
        if !v.is_zero() {
            acc.add_shifted(&r.coeffs()[..=need], n, Some(v));
        }
        r.mul_one_minus_q_pow(n, order);
    }
    acc
}

fn cor1_5_double<C: Scalar>(values: &[C], ctx: &C::Ctx) -> TruncatedSeries<C> {
    let order = values.len() - 1;
    // k runs while the minimal exponent k + k(k-1)/2 stays within the order
    let k_max = (1..).take_while(|k| k * (k + 1) / 2 <= order).last().unwrap_or(0);
    // Horner in k: S_k = G_k - S_{k+1} / (1 - q^k), result S_1, where
    // G_k = Σ_n f(n) q^{nk + k(k-1)/2}
    let mut s = TruncatedSeries::zero(order, ctx);
    for k in (1..=k_max).rev() {
        s.div_one_minus_q_pow(k, order);
        s.coeffs_mut().iter_mut().for_each(C::neg_assign);
        let base = k * (k - 1) / 2;
        for n in 1.. {
            let e = n * k + base;
            if e > order {
                break;
            }
            s.coeffs_mut()[e].add_assign(&values[n]);
        }
    }
    s
}

fn thm2_closed<C: Scalar>(values: &[C], ctx: &C::Ctx) -> TruncatedSeries<C> {
    let order = values.len() - 1;
    let mut acc = TruncatedSeries::zero(order, ctx);
    // w = 1/(q^n;q)_∞, built downward from n = order + 1 where it is 1
    let mut w = TruncatedSeries::one(order, ctx);
    for n in (1..=order).rev() {
        let need = order - n;
        w.div_one_minus_q_pow(n, order);
        let v = &values[n];
        if !v.is_zero() {
            acc.add_shifted(&w.coeffs()[..=need], n, Some(v));
        }
    }
    times_euler(&acc)
}

fn cor2_5_single<C: Scalar>(values: &[C], ctx: &C::Ctx) -> TruncatedSeries<C> {
    let order = values.len() - 1;
    let mut acc = TruncatedSeries::zero(order, ctx);
    // p = (q;q)_{n-1}
    let mut p = TruncatedSeries::one(order, ctx);
    for n in 1..=order {
        let need = order - n;
        let v = &values[n];
        if !v.is_zero() {
            acc.add_shifted(&p.coeffs()[..=need], n, Some(v));
        }
        p.mul_one_minus_q_pow(n, need);
    }
    acc
}

fn cor2_5_double<C: Scalar>(values: &[C], ctx: &C::Ctx) -> TruncatedSeries<C> {
    let order = values.len() - 1;
    // Horner in k: T_k = F(q^k) + T_{k+1} / (1 - q^k), result T_1, where
    // F(q^k) = Σ_n f(n) q^{nk}; k ≤ order because nk ≤ order.
    let mut t = TruncatedSeries::<C>::zero(order, ctx);
    for k in (1..=order).rev() {
        t.div_one_minus_q_pow(k, order);
        for n in 1..=order / k {
            t.coeffs_mut()[n * k].add_assign(&values[n]);
        }
    }
    times_euler(&t)
}

/// Signed partition counts keyed by `(size, statistic)`.
struct Tally {
    cells: Vec<Vec<i64>>,
}

impl Tally {
    fn collect(order: usize, stat: impl Fn(&Partition) -> u32, weight: impl Fn(&Partition) -> i64) -> Self {
        let mut cells = vec![vec![0i64; order + 1]; order + 1];
        for lambda in partitions_up_to(order as u32) {
            let w = weight(&lambda);
            if w != 0 {
                cells[lambda.size() as usize][stat(&lambda) as usize] += w;
            }
        }
        Self { cells }
    }

    fn series(&self, values: &[Rational], sign: i64) -> TruncatedSeries<Rational> {
        TruncatedSeries::from_fn(self.cells.len() - 1, |n| {
            let mut c = Rational::from_integer(0.into());
            for (s, &count) in self.cells[n].iter().enumerate() {
                if count != 0 {
                    c += &values[s] * Rational::from_integer((sign * count).into());
                }
            }
            c
        })
    }
}

fn partition_form<C: Scalar>(
    form: FormId,
    f: &ArithmeticFunction,
    order: usize,
    ctx: &C::Ctx,
) -> TruncatedSeries<C> {
    let values = f.values_up_to(order).expect("coverage checked by caller");
    let exact = match form {
        FormId::Thm1Partition => {
            let t = Tally::collect(order, Partition::largest, |_| 1);
            times_euler(&t.series(&values, 1))
        }
        FormId::Thm2Partition => {
            let t = Tally::collect(order, Partition::smallest, |_| 1);
            times_euler(&t.series(&values, 1))
        }
        FormId::Cor1Partition => {
            let t = Tally::collect(order, Partition::smallest, |l| i64::from(mu_p(l)));
            t.series(&values, -1)
        }
        FormId::Cor2Partition => {
            let t = Tally::collect(order, Partition::largest, |l| i64::from(mu_p(l)));
            t.series(&values, -1)
        }
        _ => unreachable!("not a partition-sum form"),
    };
    TruncatedSeries::new(exact.coeffs().iter().map(|c| C::from_rational(c, ctx)).collect())
}

/// The `cor1_partition` sum assembled before conjugation: partitions γ
/// in which every natural number below lg(γ) occurs, weighted by
/// `-(-1)^{lg γ} f(m_lg(γ))` with `m_lg` the multiplicity of the largest part.
pub fn cor1_via_staircase(f: &ArithmeticFunction, order: usize) -> Result<TruncatedSeries<Rational>, Error> {
    if order > ENUMERATION_GUARD {
        return Err(Error::EnumerationGuard {
            form: "cor1_via_staircase",
            guard: ENUMERATION_GUARD,
            requested: order,
        });
    }
    let values = f.values_up_to(order)?;
    let mut out = TruncatedSeries::<Rational>::zero(order, &());
    for gamma in partitions_up_to(order as u32) {
        if !contains_every_smaller_part(&gamma) {
            continue;
        }
        let sign = if gamma.largest() % 2 == 0 { -1 } else { 1 };
        let mut term = values[gamma.multiplicity_of_largest()].clone();
        if sign < 0 {
            term = -term;
        }
        out.coeffs_mut()[gamma.size() as usize] += term;
    }
    Ok(out)
}

/// True when every integer in `1..lg(γ)` is a part of γ.
pub fn contains_every_smaller_part(gamma: &Partition) -> bool {
    let distinct = gamma.multiplicities();
    distinct.len() == gamma.largest() as usize
}
