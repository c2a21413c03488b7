//! Number formatting shared by every machine-readable output.
//!
//! Floats are written with 17 significant digits in scientific notation,
//! which round-trips every `f64` and makes byte-level diffs meaningful.

use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// `x` with 17 significant digits, e.g. `7.5000000000000000e-1`.
/// Non-finite values become `null`.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// `serialize_with` adapter emitting [`format_f64`] as a bare JSON number.
pub fn serialize_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(format_f64(*x)).map_err(S::Error::custom)?;
    raw.serialize(s)
}

/// Like [`serialize_f64`] for optional values; `None` becomes `null`.
pub fn serialize_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_f64(v, s),
        None => s.serialize_none(),
    }
}

/// Serializes a matrix as nested arrays of 17-digit numbers.
pub fn serialize_rows<S: Serializer>(rows: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
    let formatted: Vec<Vec<Box<RawValue>>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| RawValue::from_string(format_f64(x)))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()
        .map_err(S::Error::custom)?;
    formatted.serialize(s)
}

/// A value wrapper serializing with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sig17(pub f64);

impl Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_f64(&self.0, s)
    }
}
