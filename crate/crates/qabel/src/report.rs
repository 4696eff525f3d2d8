//! JSON shapes and a formatter that prints every float with 17 significant
//! digits, so identical runs produce identical bytes.

use std::io;

use num_complex::Complex64;
use qabel_core::identity::IdentityReport;
use qabel_core::limit::LimitEstimate;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MismatchJson {
    pub exponent: usize,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub between: Option<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityJson {
    pub identity: String,
    pub order: usize,
    pub status: &'static str,
    pub first_mismatch: Option<MismatchJson>,
    pub ms: u64,
}

impl From<&IdentityReport> for IdentityJson {
    fn from(r: &IdentityReport) -> Self {
        Self {
            identity: r.identity.clone(),
            order: r.order,
            status: r.status.as_str(),
            first_mismatch: r.first_mismatch.as_ref().map(|m| MismatchJson {
                exponent: m.exponent,
                lhs: m.lhs.clone(),
                rhs: m.rhs.clone(),
                between: m.between.clone().map(|(a, b)| [a, b]),
            }),
            ms: r.ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathJson {
    pub m: f64,
    pub theta: f64,
    pub delta0: f64,
    pub ratio: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SettingsJson {
    pub form: String,
    pub function: String,
    pub order: usize,
    pub accel: &'static str,
    pub backend: &'static str,
    pub precision: Option<u32>,
    pub path: PathJson,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitJson {
    pub value: ComplexJson,
    pub error: f64,
    pub warning: Option<String>,
    pub q: Vec<ComplexJson>,
    pub raw_values: Vec<ComplexJson>,
    pub accelerated_values: Vec<ComplexJson>,
    pub tail_bounds: Vec<f64>,
    pub cesaro_reference: Option<f64>,
    pub settings: SettingsJson,
    pub ms: u64,
}

impl LimitJson {
    pub fn new(est: &LimitEstimate, settings: SettingsJson, cesaro_reference: Option<f64>) -> Self {
        Self {
            value: est.value.into(),
            error: est.error,
            warning: est.warning.clone(),
            q: est.points.iter().map(|&c| c.into()).collect(),
            raw_values: est.raw_values.iter().map(|&c| c.into()).collect(),
            accelerated_values: est.accelerated_values.iter().map(|&c| c.into()).collect(),
            tail_bounds: est.tail_bounds.clone(),
            cesaro_reference,
            settings,
            ms: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateJson {
    pub value: ComplexJson,
    pub error: f64,
    pub warning: Option<String>,
    pub raw_values: Vec<ComplexJson>,
    pub accelerated_values: Vec<ComplexJson>,
}

impl From<&LimitEstimate> for EstimateJson {
    fn from(est: &LimitEstimate) -> Self {
        Self {
            value: est.value.into(),
            error: est.error,
            warning: est.warning.clone(),
            raw_values: est.raw_values.iter().map(|&c| c.into()).collect(),
            accelerated_values: est.accelerated_values.iter().map(|&c| c.into()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QBracketLimitJson {
    pub direct: EstimateJson,
    pub via_a: ComplexJson,
    pub disagreement: f64,
    pub a_k: Vec<ComplexJson>,
    pub cesaro: Vec<ComplexJson>,
    pub accel: &'static str,
    pub path: PathJson,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QBracketJson {
    pub a: String,
    pub vanishes_on_repeats: bool,
    pub order: usize,
    pub coefficients: Vec<String>,
    pub thm3: IdentityJson,
    pub thm3_literal: IdentityJson,
    pub limit: Option<QBracketLimitJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CfJson {
    pub form: String,
    pub function: String,
    pub q: f64,
    pub depth: usize,
    pub backend: &'static str,
    pub precision: Option<u32>,
    pub truncated: bool,
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    pub convergents: Vec<f64>,
    pub exact_match: Option<bool>,
    pub max_relative_deviation: f64,
}

/// Pretty JSON with floats written as `{:.16e}`.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Fixed17(PrettyFormatter::with_indent(b"  ")));
    value.serialize(&mut ser).expect("serializable");
    out.push(b'\n');
    String::from_utf8(out).expect("utf-8")
}

struct Fixed17<'a>(PrettyFormatter<'a>);

impl Formatter for Fixed17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}
