//! Matrix and polynomial text formats.
//!
//! Matrices are read either as JSON, `{"rows": r, "cols": c, "data": [[[re, im], ...], ...]}`,
//! or as shorthand text such as `1+2i 0 / -i 3.5`, with entries separated by
//! whitespace and rows by `/` or newlines.

use kronrad::{CMatrix, CPoly, C64};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("input is empty")]
    Empty,

    #[error("JSON syntax error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },

    #[error("field {field:?}: {message}")]
    Field { field: &'static str, message: String },

    #[error("header declares {declared} rows but data has {found}")]
    RowCount { declared: usize, found: usize },

    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },

    #[error("entry ({row}, {col}): expected a number or an [re, im] pair, got {found}")]
    Entry { row: usize, col: usize, found: String },

    #[error("non-numeric token {token:?} at row {row}, column {col} (byte {offset})")]
    Token {
        token: String,
        row: usize,
        col: usize,
        offset: usize,
    },

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("leading coefficient must be exactly 1, got {0}")]
    NotMonic(String),

    #[error(transparent)]
    Core(#[from] kronrad::Error),
}

/// On-disk JSON shape of a matrix.
#[derive(Debug, Serialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl From<&CMatrix> for MatrixFile {
    fn from(m: &CMatrix) -> Self {
        let data = (0..m.rows())
            .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }
}

/// JSON text that [`parse_matrix`] reads back bit for bit.
pub fn emit_matrix(m: &CMatrix) -> String {
    serde_json::to_string(&MatrixFile::from(m)).expect("finite matrices always serialise")
}

/// Parses JSON (input starting with `{`) or shorthand text.
pub fn parse_matrix(text: &str) -> Result<CMatrix, ParseError> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() {
        return Err(ParseError::Empty);
    }
    let rows = if trimmed.starts_with('{') {
        json_rows(text)?
    } else {
        shorthand_rows(text)?
    };
    build(rows)
}

fn build(rows: Vec<Vec<C64>>) -> Result<CMatrix, ParseError> {
    let expected = rows.first().map_or(0, Vec::len);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != expected {
            return Err(ParseError::RowLength {
                row: i,
                expected,
                found: row.len(),
            });
        }
        if let Some(j) = row.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(ParseError::NonFinite { row: i, col: j });
        }
    }
    Ok(CMatrix::from_rows(&rows)?)
}

fn json_value(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn json_scalar(v: &Value, row: usize, col: usize) -> Result<C64, ParseError> {
    let bad = || ParseError::Entry {
        row,
        col,
        found: v.to_string(),
    };
    match v {
        Value::Number(x) => Ok(C64::new(x.as_f64().ok_or_else(bad)?, 0.0)),
        Value::Array(pair) if pair.len() == 2 => {
            let re = pair[0].as_f64().ok_or_else(bad)?;
            let im = pair[1].as_f64().ok_or_else(bad)?;
            Ok(C64::new(re, im))
        }
        _ => Err(bad()),
    }
}

fn json_count(obj: &serde_json::Map<String, Value>, field: &'static str) -> Result<usize, ParseError> {
    let v = obj.get(field).ok_or(ParseError::Field {
        field,
        message: "missing".into(),
    })?;
    v.as_u64().map(|x| x as usize).ok_or(ParseError::Field {
        field,
        message: format!("expected a nonnegative integer, got {v}"),
    })
}

fn json_rows(text: &str) -> Result<Vec<Vec<C64>>, ParseError> {
    let value = json_value(text)?;
    let obj = value.as_object().ok_or(ParseError::Field {
        field: "data",
        message: "top level must be an object".into(),
    })?;
    let (rows, cols) = (json_count(obj, "rows")?, json_count(obj, "cols")?);
    let data = obj.get("data").and_then(Value::as_array).ok_or(ParseError::Field {
        field: "data",
        message: "missing or not an array of rows".into(),
    })?;
    if data.len() != rows {
        return Err(ParseError::RowCount {
            declared: rows,
            found: data.len(),
        });
    }
    data.iter()
        .enumerate()
        .map(|(i, row)| {
            let entries = row.as_array().ok_or(ParseError::Field {
                field: "data",
                message: format!("row {i} is not an array"),
            })?;
            if entries.len() != cols {
                return Err(ParseError::RowLength {
                    row: i,
                    expected: cols,
                    found: entries.len(),
                });
            }
            entries.iter().enumerate().map(|(j, v)| json_scalar(v, i, j)).collect()
        })
        .collect()
}

/// Parses one shorthand scalar: `3`, `-2.5e-1`, `2i`, `-i`, `1+2i`, `1.5e-3-4j`.
pub fn parse_scalar(token: &str) -> Option<C64> {
    let number = |s: &str| -> Option<f64> {
        match s {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ if s.starts_with(|ch: char| ch.is_ascii_digit() || ch == '.' || ch == '+' || ch == '-') => {
                s.parse().ok()
            }
            _ => None,
        }
    };
    let Some(body) = token.strip_suffix(['i', 'j']) else {
        let re: f64 = token.parse().ok()?;
        return token.starts_with(|ch: char| !ch.is_alphabetic()).then_some(C64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re: f64 = body[..k].parse().ok()?;
            Some(C64::new(re, number(&body[k..])?))
        }
        None => Some(C64::new(0.0, number(body)?)),
    }
}

fn shorthand_rows(text: &str) -> Result<Vec<Vec<C64>>, ParseError> {
    let mut rows = Vec::new();
    let mut current = Vec::new();
    let mut offset = 0;
    let flush = |rows: &mut Vec<Vec<C64>>, current: &mut Vec<C64>| {
        if !current.is_empty() {
            rows.push(std::mem::take(current));
        }
    };
    for piece in text.split_inclusive(|ch: char| ch.is_whitespace() || ch == '/') {
        let sep = piece.chars().last().filter(|ch| ch.is_whitespace() || *ch == '/');
        let token = match sep {
            Some(s) => &piece[..piece.len() - s.len_utf8()],
            None => piece,
        };
        if !token.is_empty() {
            let z = parse_scalar(token).ok_or_else(|| ParseError::Token {
                token: token.into(),
                row: rows.len(),
                col: current.len(),
                offset,
            })?;
            current.push(z);
        }
        if matches!(sep, Some('/') | Some('\n')) {
            flush(&mut rows, &mut current);
        }
        offset += piece.len();
    }
    flush(&mut rows, &mut current);
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(rows)
}

/// Reads a monic polynomial from its coefficients in descending order, the
/// leading 1 included: `1 0 -2` is `z^2 - 2`. Accepts shorthand scalars or
/// JSON, either a bare array or `{"coeffs": [...]}`, of numbers or
/// `[re, im]` pairs.
pub fn parse_poly(text: &str) -> Result<CPoly, ParseError> {
    let trimmed = text.trim_start();
    let descending: Vec<C64> = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let value = json_value(text)?;
        let list = match &value {
            Value::Array(items) => items,
            Value::Object(obj) => obj.get("coeffs").and_then(Value::as_array).ok_or(ParseError::Field {
                field: "coeffs",
                message: "missing or not an array".into(),
            })?,
            _ => {
                return Err(ParseError::Field {
                    field: "coeffs",
                    message: "expected an array".into(),
                })
            }
        };
        list.iter()
            .enumerate()
            .map(|(j, v)| json_scalar(v, 0, j))
            .collect::<Result<_, _>>()?
    } else {
        shorthand_rows(text)?.concat()
    };
    if let Some(j) = descending.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(ParseError::NonFinite { row: 0, col: j });
    }
    match descending.first() {
        None => Err(ParseError::Empty),
        Some(lead) if *lead != C64::new(1.0, 0.0) => Err(ParseError::NotMonic(lead.to_string())),
        Some(_) => Ok(CPoly::new(descending[1..].iter().rev().copied().collect())?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn json_single_entry() {
        let m = parse_matrix(r#"{"rows":1,"cols":1,"data":[[[1,0]]]}"#).unwrap();
        assert_eq!(m, CMatrix::from_rows(&[vec![cx(1.0, 0.0)]]).unwrap());
    }

    #[test]
    fn shorthand_nilpotent() {
        let m = parse_matrix("0+0i 1+0i / 0+0i 0+0i").unwrap();
        let want = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(m, want);
        assert_eq!(parse_matrix("0 1\n0 0\n").unwrap(), want);
    }

    #[test]
    fn scalar_forms() {
        let cases = [
            ("3", cx(3.0, 0.0)),
            ("-2.5e-1", cx(-0.25, 0.0)),
            ("2i", cx(0.0, 2.0)),
            ("-i", cx(0.0, -1.0)),
            ("i", cx(0.0, 1.0)),
            ("1+2i", cx(1.0, 2.0)),
            ("1.5e-3-4j", cx(1.5e-3, -4.0)),
            ("1e+2+1e-2i", cx(100.0, 0.01)),
            ("-1-i", cx(-1.0, -1.0)),
        ];
        for (s, z) in cases {
            assert_eq!(parse_scalar(s), Some(z), "{s}");
        }
        for bad in ["x", "1+", "1+2k", "nan", "inf", "--1", "1i2"] {
            assert_eq!(parse_scalar(bad), None, "{bad}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_matrix("1 2 / 3 x4") {
            Err(ParseError::Token { row, col, offset, .. }) => assert_eq!((row, col, offset), (1, 1, 8)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_matrix("1 2 / 3"),
            Err(ParseError::RowLength { row: 1, expected: 2, found: 1 })
        ));
        match parse_matrix("{\"rows\":1,\n\"cols\":1, \"data\": [[[1, 0]]") {
            Err(ParseError::Json { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_matrix(r#"{"rows":2,"cols":1,"data":[[[1,0]]]}"#),
            Err(ParseError::RowCount { declared: 2, found: 1 })
        ));
        assert!(matches!(
            parse_matrix(r#"{"rows":1,"cols":1,"data":[[["a",0]]]}"#),
            Err(ParseError::Entry { row: 0, col: 0, .. })
        ));
        assert!(matches!(parse_matrix(r#"{"rows":1,"cols":1,"data":[[[1e999,0]]]}"#), Err(ParseError::Json { .. })));
        assert_eq!(parse_matrix("  \n"), Err(ParseError::Empty));
    }

    #[test]
    fn round_trip_is_exact() {
        let mut rng = kronrad::generators::stream_rng(11, 0);
        for _ in 0..20 {
            let m: CMatrix = kronrad::generators::random_complex(&mut rng, 3, 3);
            let m = m.scale(cx(1e-7, 3e5));
            let text = emit_matrix(&m);
            let back = parse_matrix(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(emit_matrix(&back), text);
        }
        let edge = CMatrix::from_rows(&[vec![cx(-0.0, f64::MIN_POSITIVE), cx(f64::MAX, 5e-324)]]).unwrap();
        assert_eq!(parse_matrix(&emit_matrix(&edge)).unwrap(), edge);
    }

    #[test]
    fn polynomials() {
        let p = parse_poly("1 0 -2").unwrap();
        assert_eq!(p.coeffs(), &[cx(-2.0, 0.0), cx(0.0, 0.0)]);
        assert_eq!(parse_poly(r#"{"coeffs": [1, 0, 0, [-10, 0]]}"#).unwrap().degree(), 3);
        assert_eq!(parse_poly("[1, [0, 1], 2]").unwrap().coeffs(), &[cx(2.0, 0.0), cx(0.0, 1.0)]);
        assert!(matches!(parse_poly("2 0 1"), Err(ParseError::NotMonic(_))));
        assert!(matches!(parse_poly("1 3"), Err(ParseError::Core(_))));
    }
}
