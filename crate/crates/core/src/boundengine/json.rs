//! JSON forms of enclosures and exact values used in reports.

use serde_json::{json, Value};

use crate::balls::{ComplexBall, RealEnclosure};
use crate::exactfield::FieldElement;
use crate::liematrix::MatrixK;

/// Significant digits printed for interval endpoints.
pub const DIGITS: usize = 30;

/// `{"lower": .., "upper": ..}` rounded outward.
pub fn interval_json(x: &RealEnclosure) -> Value {
    let (lo, hi) = x.to_decimal_strings(DIGITS);
    json!({"lower": lo, "upper": hi})
}

pub fn complex_json(z: &ComplexBall) -> Value {
    json!({"re": interval_json(z.re()), "im": interval_json(z.im())})
}

/// Coefficients in the power basis as `"p/q"` strings.
pub fn element_json(x: &FieldElement) -> Value {
    json!(x.to_strings())
}

pub fn matrix_json(a: &MatrixK) -> Value {
    Value::Array(a.entries().iter().map(|r| Value::Array(r.iter().map(element_json).collect())).collect())
}

/// The lower end rounded down, as a decimal string.
pub fn lower_string(x: &RealEnclosure) -> String {
    x.to_decimal_strings(DIGITS).0
}
