//! Arithmetic functions tabulated in CSV files with header `n,value`.

use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use qabel_core::{ArithmeticFunction, Rational};

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line 1: expected header `n,value`, found `{0}`")]
    Header(String),
    #[error("line {line}: {reason}")]
    Malformed { line: u64, reason: String },
    #[error("line {line}: expected n = {expected}, found n = {found}")]
    Gap { line: u64, expected: u64, found: u64 },
    #[error("line {line}: cannot parse value `{value}` (expected a decimal or p/q)")]
    Value { line: u64, value: String },
    #[error("table has no rows")]
    Empty,
}

pub fn load_function_table(path: &Path) -> Result<ArithmeticFunction, TableError> {
    let file = std::fs::File::open(path).map_err(|source| TableError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "table".into());
    parse_function_table(file, &name)
}

pub fn parse_function_table(input: impl Read, name: &str) -> Result<ArithmeticFunction, TableError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let header = reader.headers().map_err(|e| TableError::Malformed {
        line: 1,
        reason: e.to_string(),
    })?;
    if header.len() != 2 || &header[0] != "n" || &header[1] != "value" {
        return Err(TableError::Header(header.iter().collect::<Vec<_>>().join(",")));
    }
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| TableError::Malformed {
            line: e.position().map_or(0, |p| p.line()),
            reason: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(TableError::Malformed {
                line,
                reason: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let n: u64 = record[0].parse().map_err(|_| TableError::Malformed {
            line,
            reason: format!("`{}` is not a positive integer", &record[0]),
        })?;
        let expected = values.len() as u64 + 1;
        if n != expected {
            return Err(TableError::Gap { line, expected, found: n });
        }
        let v = parse_value(&record[1]).ok_or_else(|| TableError::Value {
            line,
            value: record[1].to_string(),
        })?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(TableError::Empty);
    }
    Ok(ArithmeticFunction::tabulated(name, values))
}

/// Parses `-?\d+(\.\d+)?` or `-?\d+/\d+` exactly.
pub fn parse_value(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let v = if let Some((p, q)) = body.split_once('/') {
        if !digits(p) || !digits(q) {
            return None;
        }
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Rational::new(p.parse().ok()?, q)
    } else if let Some((i, f)) = body.split_once('.') {
        if !digits(i) || !digits(f) {
            return None;
        }
        let num: BigInt = format!("{i}{f}").parse().ok()?;
        Rational::new(num, BigInt::from(10).pow(f.len() as u32))
    } else {
        if !digits(body) {
            return None;
        }
        Rational::from_integer(body.parse().ok()?)
    };
    Some(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qabel_core::scalar::{rat, ratio};

    fn parse(s: &str) -> Result<ArithmeticFunction, TableError> {
        parse_function_table(s.as_bytes(), "t")
    }

    #[test]
    fn indicator_like_table() {
        let f = parse("n,value\n1,1\n2,0\n3,1\n").unwrap();
        assert_eq!(f.value(2), rat(0));
        assert_eq!(f.value(3), rat(1));
        assert_eq!(f.value(0), rat(0));
        assert_eq!(f.coverage(), Some(3));
    }

    #[test]
    fn rational_and_decimal_values() {
        let f = parse("n,value\n1,2/3\n2,-0.25\n3,-4/6\n").unwrap();
        assert_eq!(f.value(1), ratio(2, 3));
        assert_eq!(f.value(2), ratio(-1, 4));
        assert_eq!(f.value(3), ratio(-2, 3));
    }

    #[test]
    fn gap_is_reported_with_line() {
        let err = parse("n,value\n1,1\n3,1\n").unwrap_err();
        assert!(matches!(err, TableError::Gap { line: 3, expected: 2, found: 3 }), "{err}");
        assert!(err.to_string().starts_with("line 3:"));
    }

    #[test]
    fn bad_values_and_rows() {
        assert!(matches!(parse("n,value\n1,abc\n"), Err(TableError::Value { line: 2, .. })));
        assert!(matches!(parse("n,value\n1,1/0\n"), Err(TableError::Value { line: 2, .. })));
        assert!(matches!(parse("n,value\n1,1e3\n"), Err(TableError::Value { .. })));
        assert!(matches!(parse("n,value\n1,1,2\n"), Err(TableError::Malformed { line: 2, .. })));
        assert!(matches!(parse("n,value\nx,1\n"), Err(TableError::Malformed { line: 2, .. })));
        assert!(matches!(parse("k,v\n1,1\n"), Err(TableError::Header(_))));
        assert!(matches!(parse("n,value\n"), Err(TableError::Empty)));
    }

    #[test]
    fn parse_value_forms() {
        assert_eq!(parse_value("12"), Some(rat(12)));
        assert_eq!(parse_value("-0.5"), Some(ratio(-1, 2)));
        assert_eq!(parse_value("1."), None);
        assert_eq!(parse_value("+1"), None);
        assert_eq!(parse_value("--1"), None);
    }
}
