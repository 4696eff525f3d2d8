//! Coefficientwise identity checks with first-mismatch reporting.
//!
//! Everything here runs over exact rationals; a check with a tolerance would
//! be a weaker statement.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::ArithmeticFunction;
use crate::forms::{build, FormId};
use crate::qbracket::{self, PartitionFunction};
use crate::scalar::Rational;
use crate::series::{poch_inf, TruncatedSeries};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: usize,
    pub lhs: String,
    pub rhs: String,
    /// The two forms compared, for chain checks.
    pub between: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: String,
    pub order: usize,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    /// Wall time in milliseconds, filled in by callers that measure it.
    pub ms: u64,
}

impl IdentityReport {
    pub fn compare(identity: impl Into<String>, lhs: &TruncatedSeries<Rational>, rhs: &TruncatedSeries<Rational>) -> Self {
        let order = lhs.order().min(rhs.order());
        let first_mismatch = lhs.first_mismatch(rhs).map(|e| Mismatch {
            exponent: e,
            lhs: lhs.coeff(e).to_string(),
            rhs: rhs.coeff(e).to_string(),
            between: None,
        });
        Self {
            identity: identity.into(),
            order,
            status: if first_mismatch.is_some() { Status::Fail } else { Status::Pass },
            first_mismatch,
            ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// `Σ_{k≥1} (-1)^k q^{k(k+1)/2} / (q;q)_k`, optionally without the term `k = skip`.
pub fn euler_lhs(order: usize, skip: Option<usize>) -> TruncatedSeries<Rational> {
    let mut acc = TruncatedSeries::zero(order, &());
    let mut u = TruncatedSeries::one(order, &());
    for k in 1.. {
        let e = k * (k + 1) / 2;
        if e > order {
            break;
        }
        u.div_one_minus_q_pow(k, order - e);
        if skip == Some(k) {
            continue;
        }
        let sign = Rational::from_integer(if k % 2 == 0 { 1 } else { -1 }.into());
        acc.add_shifted(&u.coeffs()[..=order - e], e, Some(&sign));
    }
    acc
}

fn euler_rhs(order: usize) -> TruncatedSeries<Rational> {
    let p = poch_inf::<Rational>(1, order, &()).expect("a = 1");
    p.sub(&TruncatedSeries::one(order, &()))
}

/// `Σ_{k≥1} (-1)^k q^{k(k+1)/2}/(q;q)_k = (q;q)_∞ - 1`.
pub fn verify_euler_identity(order: usize) -> IdentityReport {
    IdentityReport::compare("euler", &euler_lhs(order, None), &euler_rhs(order))
}

/// The Euler check with the `k = drop` term removed from the left side; it
/// exists to show that the comparator can fail.
pub fn verify_euler_identity_perturbed(order: usize, drop: usize) -> IdentityReport {
    IdentityReport::compare(format!("euler_drop_k{drop}"), &euler_lhs(order, Some(drop)), &euler_rhs(order))
}

/// `Σ_{k≥0} q^{nk}/(q;q)_k = 1/(q^n;q)_∞`.
pub fn verify_qbinomial(n: usize, order: usize) -> Result<IdentityReport, Error> {
    let rhs = poch_inf::<Rational>(n, order, &())?.invert()?;
    let mut lhs = TruncatedSeries::one(order, &());
    let mut u = TruncatedSeries::one(order, &());
    for k in 1.. {
        let e = n * k;
        if e > order {
            break;
        }
        u.div_one_minus_q_pow(k, order - e);
        lhs.add_shifted(&u.coeffs()[..=order - e], e, None);
    }
    Ok(IdentityReport::compare(format!("qbinomial:n={n}"), &lhs, &rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chain {
    /// `cor1_5_double`, `cor1_partition`, `cor1_closed`, `thm1_closed`, `thm1_partition`.
    Eq5,
    /// `thm2_partition`, `thm2_closed`, `cor2_5_single`, `cor2_partition`.
    Eq8,
    /// `cor2_5_single` and `cor2_5_double`.
    Cor2_5,
}

impl Chain {
    pub const ALL: [Chain; 3] = [Chain::Eq5, Chain::Eq8, Chain::Cor2_5];

    pub fn tag(self) -> &'static str {
        match self {
            Chain::Eq5 => "eq5",
            Chain::Eq8 => "eq8",
            Chain::Cor2_5 => "cor2_5",
        }
    }

    pub fn forms(self) -> &'static [FormId] {
        match self {
            Chain::Eq5 => &[
                FormId::Cor1_5Double,
                FormId::Cor1Partition,
                FormId::Cor1Closed,
                FormId::Thm1Closed,
                FormId::Thm1Partition,
            ],
            Chain::Eq8 => &[
                FormId::Thm2Partition,
                FormId::Thm2Closed,
                FormId::Cor2_5Single,
                FormId::Cor2Partition,
            ],
            Chain::Cor2_5 => &[FormId::Cor2_5Single, FormId::Cor2_5Double],
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Chain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Chain::ALL.into_iter().find(|c| c.tag() == s).ok_or_else(|| Error::Unknown {
            kind: "chain",
            name: s.to_string(),
            valid: Chain::ALL.map(Chain::tag).join(", "),
        })
    }
}

/// Compares every form of the chain against the first one.
pub fn verify_chain(chain: Chain, f: &ArithmeticFunction, order: usize) -> Result<IdentityReport, Error> {
    verify_forms(format!("{}:{}", chain.tag(), f.name()), chain.forms(), f, order)
}

/// Compares `forms[1..]` against `forms[0]`, stopping at the first disagreement.
pub fn verify_forms(
    name: String,
    forms: &[FormId],
    f: &ArithmeticFunction,
    order: usize,
) -> Result<IdentityReport, Error> {
    let first = build::<Rational>(forms[0], f, order, &())?;
    for &other in &forms[1..] {
        let series = build::<Rational>(other, f, order, &())?;
        let mut report = IdentityReport::compare(name.clone(), &first, &series);
        if let Some(m) = report.first_mismatch.as_mut() {
            m.between = Some((forms[0].tag().into(), other.tag().into()));
            return Ok(report);
        }
    }
    Ok(IdentityReport::compare(name, &first, &first))
}

/// Which checks [`verify_all`] runs.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub order: usize,
    pub functions: Vec<ArithmeticFunction>,
    pub partition_functions: Vec<PartitionFunction>,
    /// `n` values for the q-binomial check.
    pub qbinomial: Vec<usize>,
}

impl SuiteConfig {
    /// Builtin arithmetic functions and partition functions at `order`.
    pub fn default_at(order: usize) -> Self {
        Self {
            order,
            functions: default_functions(),
            partition_functions: qbracket::registry(),
            qbinomial: (1..=5).collect(),
        }
    }
}

/// Constant 1, the residue indicators `0 mod 2`, `1 mod 2`, `1 mod 3`,
/// Möbius, and φ(n)/n.
pub fn default_functions() -> Vec<ArithmeticFunction> {
    alloc::vec![
        ArithmeticFunction::One,
        ArithmeticFunction::residue(0, 2),
        ArithmeticFunction::residue(1, 2),
        ArithmeticFunction::residue(1, 3),
        ArithmeticFunction::Mobius,
        ArithmeticFunction::PhiRatio,
    ]
}

/// Runs every check and returns the reports sorted by identity name.
pub fn verify_all(config: &SuiteConfig) -> Result<Vec<IdentityReport>, Error> {
    verify_all_timed(config, &|| 0)
}

/// As [`verify_all`], recording `now()` differences (in milliseconds) in
/// each report.
pub fn verify_all_timed(config: &SuiteConfig, now: &dyn Fn() -> u64) -> Result<Vec<IdentityReport>, Error> {
    let n = config.order;
    let timed = |check: &dyn Fn() -> Result<IdentityReport, Error>| -> Result<IdentityReport, Error> {
        let start = now();
        let mut r = check()?;
        r.ms = now().saturating_sub(start);
        Ok(r)
    };
    let mut out = alloc::vec![timed(&|| Ok(verify_euler_identity(n)))?];
    for &k in &config.qbinomial {
        out.push(timed(&|| verify_qbinomial(k, n))?);
    }
    for f in &config.functions {
        for chain in Chain::ALL {
            out.push(timed(&|| verify_chain(chain, f, n))?);
        }
    }
    for a in &config.partition_functions {
        out.push(timed(&|| qbracket::verify_thm3_identity(a, n))?);
    }
    out.sort_by(|a, b| a.identity.cmp(&b.identity));
    Ok(out)
}
