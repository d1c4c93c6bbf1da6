//! JSON family files: `{"curves": [{"id": "a", "vertices": [[0, 0], ["1/2", "3.25"]]}]}`.
//!
//! Coordinates are integers, decimal strings or `"p/q"` strings, all read exactly.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::curve::GroundedCurve;
use super::family::{validate_family, CurveFamily, Violation};
use super::point::{is_integer, Point, Rational};

#[derive(Debug, thiserror::Error)]
pub enum FamilyFileError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("curve {curve}: bad coordinate {value}: {reason}")]
    Coordinate {
        curve: String,
        value: String,
        reason: String,
    },
    #[error("invalid family ({} violation(s))", .0.len())]
    Invalid(Vec<Violation>),
}

#[derive(Serialize, Deserialize)]
struct FileCurve {
    id: String,
    vertices: Vec<[Value; 2]>,
}

#[derive(Serialize, Deserialize)]
struct FileFamily {
    curves: Vec<FileCurve>,
}

/// Parses a decimal (`"-1.25"`), fraction (`"3/4"`) or integer string exactly.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|e| e.to_string())?;
        let q = BigInt::from_str(q.trim()).map_err(|e| e.to_string())?;
        if q.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err("empty number".into());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err("not a decimal".into());
    }
    let digits = format!("{whole}{frac}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|e| e.to_string())?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

fn coordinate(v: &Value, curve: &str) -> Result<Rational, FamilyFileError> {
    let bad = |reason: &str| FamilyFileError::Coordinate {
        curve: curve.to_string(),
        value: v.to_string(),
        reason: reason.to_string(),
    };
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(bad("non-integer JSON numbers are not exact; use a decimal string"))
            }
        }
        Value::String(s) => parse_rational(s).map_err(|e| bad(&e)),
        _ => Err(bad("expected an integer or a string")),
    }
}

/// Reads curves without validating them.
pub fn parse_curves(text: &str) -> Result<Vec<GroundedCurve>, FamilyFileError> {
    let file: FileFamily = serde_json::from_str(text).map_err(|e| FamilyFileError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.curves
        .into_iter()
        .map(|c| {
            let vertices = c
                .vertices
                .iter()
                .map(|[x, y]| Ok(Point::new(coordinate(x, &c.id)?, coordinate(y, &c.id)?)))
                .collect::<Result<Vec<_>, FamilyFileError>>()?;
            Ok(GroundedCurve::new(c.id, vertices))
        })
        .collect()
}

pub fn parse_family(text: &str) -> Result<CurveFamily, FamilyFileError> {
    validate_family(parse_curves(text)?).map_err(FamilyFileError::Invalid)
}

pub fn coordinate_value(r: &Rational) -> Value {
    if is_integer(r) {
        if let Ok(i) = i64::try_from(r.numer().clone()) {
            return Value::from(i);
        }
        return Value::String(r.numer().to_string());
    }
    if r.denom().is_one() {
        return Value::String(r.numer().to_string());
    }
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn curves_to_json(curves: &[GroundedCurve]) -> String {
    let file = FileFamily {
        curves: curves
            .iter()
            .map(|c| FileCurve {
                id: c.id().to_string(),
                vertices: c
                    .vertices()
                    .iter()
                    .map(|p| [coordinate_value(&p.x), coordinate_value(&p.y)])
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("family serializes");
    s.push('\n');
    s
}

pub fn family_to_json(family: &CurveFamily) -> String {
    curves_to_json(family.curves())
}
