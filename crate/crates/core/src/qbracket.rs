//! The Bloch–Okounkov q-bracket `⟨a⟩_q = (q;q)_∞ Σ_λ a(λ) q^|λ|` and the
//! statistics `A_n(q)` whose average recovers its `q → 1` limit.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::arith::ArithmeticFunction;
use crate::forms::ENUMERATION_GUARD;
use crate::identity::IdentityReport;
use crate::limit::{LimitEstimate, LimitSettings};
use crate::numeric::LogPochhammer;
use crate::partition::{mu_p, partitions_up_to, Partition};
use crate::scalar::{rat, Rational, Scalar};
use crate::series::{pentagonal_terms, TruncatedSeries};
use crate::Error;

pub type Eval = Arc<dyn Fn(&Partition) -> Rational + Send + Sync>;

/// Largest size at which the vanishing-on-repeats flag is validated.
pub const VALIDATION_SIZE: u32 = 15;

pub const REGISTERED_NAMES: [&str; 7] = ["one", "length", "size", "smallest", "largest", "mu_p", "distinct_parts"];

/// Builtin statistics; `Custom` functions have no closed-form evaluator.
#[derive(Clone, Debug, PartialEq)]
pub enum Statistic {
    One,
    Length,
    Size,
    Smallest,
    Largest,
    MuP,
    DistinctParts,
    /// `a(λ) = f(lg λ)`
    LargestWeighted(ArithmeticFunction),
    Custom,
}

#[derive(Clone)]
pub struct PartitionFunction {
    name: String,
    eval: Eval,
    vanishes_on_repeats: bool,
    statistic: Statistic,
}

impl fmt::Debug for PartitionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartitionFunction")
            .field("name", &self.name)
            .field("vanishes_on_repeats", &self.vanishes_on_repeats)
            .field("statistic", &self.statistic)
            .finish()
    }
}

impl PartitionFunction {
    pub fn builtin(statistic: Statistic) -> Self {
        let (name, flag, eval): (String, bool, Eval) = match &statistic {
            Statistic::One => ("one".into(), false, Arc::new(|_| rat(1))),
            Statistic::Length => ("length".into(), false, Arc::new(|l| rat(l.len() as i64))),
            Statistic::Size => ("size".into(), false, Arc::new(|l| rat(l.size() as i64))),
            Statistic::Smallest => ("smallest".into(), false, Arc::new(|l| rat(i64::from(l.smallest())))),
            Statistic::Largest => ("largest".into(), false, Arc::new(|l| rat(i64::from(l.largest())))),
            Statistic::MuP => ("mu_p".into(), true, Arc::new(|l| rat(i64::from(mu_p(l))))),
            Statistic::DistinctParts => {
                ("distinct_parts".into(), false, Arc::new(|l| rat(l.distinct_part_count() as i64)))
            }
            Statistic::LargestWeighted(f) => {
                let g = f.clone();
                (
                    format!("largest_weighted:{}", f.name()),
                    false,
                    Arc::new(move |l| g.value(u64::from(l.largest()))),
                )
            }
            Statistic::Custom => panic!("custom statistics are registered through PartitionFunction::custom"),
        };
        Self {
            name,
            eval,
            vanishes_on_repeats: flag,
            statistic,
        }
    }

    /// Registers a user-supplied function. A declared vanishing flag is
    /// checked on every partition of size at most [`VALIDATION_SIZE`].
    pub fn custom(name: impl Into<String>, eval: Eval, vanishes_on_repeats: bool) -> Result<Self, Error> {
        let name = name.into();
        if vanishes_on_repeats {
            for lambda in partitions_up_to(VALIDATION_SIZE).filter(Partition::has_repeated_part) {
                let v = eval(&lambda);
                if v != rat(0) {
                    return Err(Error::FlagViolation {
                        name,
                        partition: lambda.to_string(),
                        value: v.to_string(),
                    });
                }
            }
        }
        Ok(Self {
            name,
            eval,
            vanishes_on_repeats,
            statistic: Statistic::Custom,
        })
    }

    /// Registered names, plus `largest_weighted:F` for an arithmetic function name `F`.
    pub fn from_name(name: &str) -> Result<Self, Error> {
        let stat = match name {
            "one" => Statistic::One,
            "length" => Statistic::Length,
            "size" => Statistic::Size,
            "smallest" => Statistic::Smallest,
            "largest" => Statistic::Largest,
            "mu_p" => Statistic::MuP,
            "distinct_parts" => Statistic::DistinctParts,
            _ => match name.strip_prefix("largest_weighted:") {
                Some(f) => Statistic::LargestWeighted(ArithmeticFunction::from_name(f)?),
                None => {
                    return Err(Error::Unknown {
                        kind: "partition function",
                        name: name.to_string(),
                        valid: format!("{}, largest_weighted:<function>", REGISTERED_NAMES.join(", ")),
                    })
                }
            },
        };
        Ok(Self::builtin(stat))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vanishes_on_repeats(&self) -> bool {
        self.vanishes_on_repeats
    }

    pub fn statistic(&self) -> &Statistic {
        &self.statistic
    }

    pub fn eval(&self, lambda: &Partition) -> Rational {
        (self.eval)(lambda)
    }

    /// The comparison selected by the vanishing flag.
    pub fn comparison(&self) -> Comparison {
        if self.vanishes_on_repeats {
            Comparison::Greater
        } else {
            Comparison::AtLeast
        }
    }
}

/// The seven registered builtins.
pub fn registry() -> Vec<PartitionFunction> {
    REGISTERED_NAMES
        .iter()
        .map(|n| PartitionFunction::from_name(n).expect("registered"))
        .collect()
}

/// How `sm(λ)` is compared with `n` in `A_n(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// `sm(λ) >= n`
    AtLeast,
    /// `sm(λ) > n`
    Greater,
}

impl Comparison {
    fn admits(self, smallest: u32, n: usize) -> bool {
        let s = smallest as usize;
        match self {
            Comparison::AtLeast => s >= n,
            Comparison::Greater => s > n,
        }
    }
}

fn guard(what: &'static str, order: usize) -> Result<(), Error> {
    if order > ENUMERATION_GUARD {
        return Err(Error::EnumerationGuard {
            form: what,
            guard: ENUMERATION_GUARD,
            requested: order,
        });
    }
    Ok(())
}

/// `A_n(q)` with the comparison chosen by the function's flag.
pub fn a_n_series(a: &PartitionFunction, n: usize, order: usize) -> Result<TruncatedSeries<Rational>, Error> {
    a_n_series_with(a, n, order, a.comparison())
}

/// `A_0 = a(∅)`; for `n >= 1`,
/// `A_n = a((n)) + Σ_{λ ≠ ∅, sm(λ) cmp n} [a(λ ∪ (n)) - a(λ)] q^|λ|`.
pub fn a_n_series_with(
    a: &PartitionFunction,
    n: usize,
    order: usize,
    cmp: Comparison,
) -> Result<TruncatedSeries<Rational>, Error> {
    guard("a_n", order)?;
    let mut out = TruncatedSeries::zero(order, &());
    if n == 0 {
        out.coeffs_mut()[0] = a.eval(&Partition::empty());
        return Ok(out);
    }
    let part = n as u32;
    out.coeffs_mut()[0] = a.eval(&Partition::from_sorted(alloc::vec![part]));
    for lambda in partitions_up_to(order as u32).skip(1) {
        if cmp.admits(lambda.smallest(), n) {
            let d = a.eval(&lambda.adjoin(part)?) - a.eval(&lambda);
            out.coeffs_mut()[lambda.size() as usize] += d;
        }
    }
    Ok(out)
}

/// `A_0, ..., A_order`, with `A_n` truncated at `order - n`, from a single
/// enumeration.
pub fn a_n_all(a: &PartitionFunction, order: usize, cmp: Comparison) -> Result<Vec<TruncatedSeries<Rational>>, Error> {
    guard("a_n", order)?;
    let mut out: Vec<TruncatedSeries<Rational>> = (0..=order).map(|n| TruncatedSeries::zero(order - n, &())).collect();
    out[0].coeffs_mut()[0] = a.eval(&Partition::empty());
    for (n, s) in out.iter_mut().enumerate().skip(1) {
        s.coeffs_mut()[0] = a.eval(&Partition::from_sorted(alloc::vec![n as u32]));
    }
    for lambda in partitions_up_to(order as u32).skip(1) {
        let size = lambda.size() as usize;
        let base = a.eval(&lambda);
        for n in 1..=order - size {
            if !cmp.admits(lambda.smallest(), n) {
                continue;
            }
            let d = a.eval(&lambda.adjoin(n as u32)?) - &base;
            out[n].coeffs_mut()[size] += d;
        }
    }
    Ok(out)
}

/// `Σ_λ a(λ) q^|λ|`
pub fn generating_series(a: &PartitionFunction, order: usize) -> Result<TruncatedSeries<Rational>, Error> {
    guard("qbracket", order)?;
    let mut out = TruncatedSeries::zero(order, &());
    for lambda in partitions_up_to(order as u32) {
        out.coeffs_mut()[lambda.size() as usize] += a.eval(&lambda);
    }
    Ok(out)
}

/// `⟨a⟩_q` as `(q;q)_∞` times the generating series.
pub fn qbracket_series(a: &PartitionFunction, order: usize) -> Result<TruncatedSeries<Rational>, Error> {
    Ok(generating_series(a, order)?.mul_sparse(&pentagonal_terms(order)))
}

/// `⟨a⟩_q` as the generating series divided by the partition generating
/// function, the latter counted by enumeration.
pub fn qbracket_series_ratio(a: &PartitionFunction, order: usize) -> Result<TruncatedSeries<Rational>, Error> {
    let num = generating_series(a, order)?;
    let count = generating_series(&PartitionFunction::builtin(Statistic::One), order)?;
    Ok(num.mul(&count.invert()?))
}

/// `(q;q)_∞ Σ_{n=0}^{N} A_n(q) q^n / (q;q)_n` for the given comparison.
pub fn thm3_rhs(a: &PartitionFunction, order: usize, cmp: Comparison) -> Result<TruncatedSeries<Rational>, Error> {
    let an = a_n_all(a, order, cmp)?;
    let mut acc = TruncatedSeries::zero(order, &());
    let mut u = TruncatedSeries::one(order, &());
    for (n, a_n) in an.iter().enumerate() {
        let need = order - n;
        if n > 0 {
            u.div_one_minus_q_pow(n, need);
        }
        let term = a_n.mul(&TruncatedSeries::new(u.coeffs()[..=need].to_vec()));
        acc.add_shifted(term.coeffs(), n, None);
    }
    Ok(acc.mul_sparse(&pentagonal_terms(order)))
}

/// `⟨a⟩_q = (q;q)_∞ Σ A_n(q) q^n/(q;q)_n` with `sm(λ) >= n` in every `A_n`,
/// the form in which the identity holds for all `a`.
pub fn verify_thm3_identity(a: &PartitionFunction, order: usize) -> Result<IdentityReport, Error> {
    let lhs = qbracket_series(a, order)?;
    let rhs = thm3_rhs(a, order, Comparison::AtLeast)?;
    Ok(IdentityReport::compare(format!("thm3:{}", a.name()), &lhs, &rhs))
}

/// The same identity with the comparison taken from the vanishing flag.
/// For `μ_P` this fails from `q^2` on.
pub fn verify_thm3_literal(a: &PartitionFunction, order: usize) -> Result<IdentityReport, Error> {
    let lhs = qbracket_series(a, order)?;
    let rhs = thm3_rhs(a, order, a.comparison())?;
    Ok(IdentityReport::compare(format!("thm3_literal:{}", a.name()), &lhs, &rhs))
}

/// For `a` vanishing on repeated parts:
/// `Σ_λ a(λ) q^|λ| = a(∅) + Σ_{n≥1} A_n(q) q^n (-q;q)_{n-1}` with `sm(λ) > n`.
pub fn verify_thm3_distinct(a: &PartitionFunction, order: usize) -> Result<IdentityReport, Error> {
    if !a.vanishes_on_repeats() {
        return Err(Error::RequiresVanishing(a.name().to_string()));
    }
    let lhs = generating_series(a, order)?;
    let an = a_n_all(a, order, Comparison::Greater)?;
    let mut rhs = TruncatedSeries::zero(order, &());
    rhs.coeffs_mut()[0] = an[0].coeffs()[0].clone();
    // k = (-q;q)_{n-1}
    let mut k = TruncatedSeries::one(order, &());
    for (n, a_n) in an.iter().enumerate().skip(1) {
        let need = order - n;
        if n >= 2 {
            let shifted = k.shift(n - 1);
            k = k.add(&shifted);
        }
        let term = a_n.mul(&TruncatedSeries::new(k.coeffs()[..=need].to_vec()));
        rhs.add_shifted(term.coeffs(), n, None);
    }
    Ok(IdentityReport::compare(format!("thm3_distinct:{}", a.name()), &lhs, &rhs))
}

/// `A_n(q)` evaluated at `q` from closed forms.
pub fn a_n_at(a: &PartitionFunction, n: usize, cmp: Comparison, lp: &LogPochhammer) -> Result<Complex64, Error> {
    let q = lp.q();
    let one = Complex64::new(1.0, 0.0);
    let nf = n as f64;
    // P_m = 1 / (q^m;q)_∞ and its cousin with sm(λ) > n folded in
    let p = |m: usize| (-lp.ln_inf(m)).exp();
    let m = match cmp {
        Comparison::AtLeast => n,
        Comparison::Greater => n + 1,
    };
    if n == 0 {
        return Ok(match &a.statistic {
            Statistic::Custom => return Err(Error::NoClosedForm(a.name.clone())),
            _ => Complex64::new(a.eval(&Partition::empty()).to_f64(), 0.0),
        });
    }
    Ok(match &a.statistic {
        Statistic::One => one,
        Statistic::Length => p(m),
        Statistic::Size => p(m) * nf,
        Statistic::Largest => Complex64::new(nf, 0.0),
        Statistic::LargestWeighted(f) => Complex64::new(f.value(n as u64).to_f64(), 0.0),
        Statistic::DistinctParts => p(n + 1),
        Statistic::Smallest => {
            let ln_q = q.ln();
            let mut s = Complex64::new(0.0, 0.0);
            for j in n + 1..=lp.cutoff() {
                let t = ((ln_q * j as f64) - lp.ln_inf(j)).exp() * (j - n) as f64;
                s += t;
            }
            Complex64::new(nf, 0.0) - s
        }
        Statistic::MuP => {
            let r = lp.inf(n + 1);
            match cmp {
                Comparison::Greater => one - r * 2.0,
                Comparison::AtLeast => one - r * 2.0 + q.powu(n as u32) * r,
            }
        }
        Statistic::Custom => return Err(Error::NoClosedForm(a.name.clone())),
    })
}

/// `⟨a⟩_q` evaluated at `q` from closed forms.
pub fn bracket_at(a: &PartitionFunction, lp: &LogPochhammer) -> Result<Complex64, Error> {
    let q = lp.q();
    let one = Complex64::new(1.0, 0.0);
    let ln_q = q.ln();
    let cutoff = lp.cutoff();
    let qj = |j: usize| (ln_q * j as f64).exp();
    let sum = |g: &dyn Fn(usize) -> Complex64| (1..=cutoff).map(g).fold(Complex64::new(0.0, 0.0), |s, t| s + t);
    Ok(match &a.statistic {
        Statistic::One => one,
        Statistic::Length => sum(&|k| qj(k) / (one - qj(k))),
        Statistic::Size => sum(&|k| qj(k) * k as f64 / (one - qj(k))),
        Statistic::Smallest => sum(&|j| ((ln_q * j as f64) + lp.ln_finite(j - 1)).exp() * j as f64),
        Statistic::Largest => sum(&|j| ((ln_q * j as f64) + lp.ln_inf(j + 1)).exp() * j as f64),
        Statistic::LargestWeighted(f) => {
            f.ensure_covers(cutoff)?;
            sum(&|j| ((ln_q * j as f64) + lp.ln_inf(j + 1)).exp() * f.value(j as u64).to_f64())
        }
        Statistic::MuP => (lp.ln_inf(1) * 2.0).exp(),
        Statistic::DistinctParts => q / (one - q),
        Statistic::Custom => return Err(Error::NoClosedForm(a.name.clone())),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct QBracketLimit {
    pub name: String,
    /// Estimates of `A_k = lim A_k(q)` for `k = 1..=depth`.
    pub a_k: Vec<LimitEstimate>,
    /// `(1/K) Σ_{k≤K} A_k` for `K = 1..=depth`.
    pub cesaro: Vec<Complex64>,
    /// Final Cesàro average, the estimate of `A`.
    pub via_a: Complex64,
    /// Direct path estimate of `lim ⟨a⟩_q`.
    pub direct: LimitEstimate,
    /// `|direct - via_a|`
    pub disagreement: f64,
}

/// Estimates both `lim ⟨a⟩_q` and the average `A` of the limits `A_k`.
pub fn qbracket_limit(a: &PartitionFunction, settings: &LimitSettings, depth: usize) -> Result<QBracketLimit, Error> {
    let path = &settings.path;
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    if depth == 0 {
        return Err(Error::InvalidPath("Cesàro depth must be at least 1".into()));
    }
    let pochs: Vec<LogPochhammer> = path
        .points()
        .iter()
        .enumerate()
        .map(|(index, &q)| {
            LogPochhammer::new(q).map_err(|e| match e {
                Error::OutsideDisk { modulus, .. } => Error::OutsideDisk { index, modulus },
                other => other,
            })
        })
        .collect::<Result<_, _>>()?;
    let order = pochs.iter().map(LogPochhammer::cutoff).max().unwrap_or(0);
    let zeros = alloc::vec![0.0; path.len()];
    let raw: Vec<Complex64> = pochs.iter().map(|lp| bracket_at(a, lp)).collect::<Result<_, _>>()?;
    let direct = LimitEstimate::from_points(format!("qbracket:{}", a.name()), order, settings, raw, zeros.clone())?;
    let cmp = a.comparison();
    let mut a_k = Vec::with_capacity(depth);
    let mut cesaro = Vec::with_capacity(depth);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=depth {
        let raw: Vec<Complex64> = pochs.iter().map(|lp| a_n_at(a, k, cmp, lp)).collect::<Result<_, _>>()?;
        let est = LimitEstimate::from_points(format!("A_{k}:{}", a.name()), order, settings, raw, zeros.clone())?;
        sum += est.value;
        cesaro.push(sum / k as f64);
        a_k.push(est);
    }
    let via_a = *cesaro.last().expect("depth >= 1");
    let disagreement = (direct.value - via_a).norm();
    Ok(QBracketLimit {
        name: a.name().to_string(),
        a_k,
        cesaro,
        via_a,
        direct,
        disagreement,
    })
}
