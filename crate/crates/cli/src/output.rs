//! Number formatting shared by the JSON and CSV writers. Every real is
//! rounded to 12 significant digits so output is stable across platforms.

use latcover::{Basis, CopyCounts, IntMatrix, LatticeVector};
use serde_json::{json, Value};

pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return 0.0;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn num(x: f64) -> Value {
    json!(round12(x))
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn columns(b: &Basis) -> Value {
    Value::Array(b.columns().iter().map(|c| nums(c)).collect())
}

pub fn int_columns(m: &IntMatrix) -> Value {
    json!(m.columns())
}

pub fn vector(v: &LatticeVector) -> Value {
    json!(v.coeffs())
}

pub fn copies(c: &CopyCounts) -> Value {
    json!({
        "h": nums(&c.h),
        "layers": c.layers,
        "per_axis": c.per_axis,
        "total": c.total,
    })
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Shortest decimal form of an already rounded value.
pub fn csv_num(x: f64) -> String {
    format!("{}", round12(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_twelve_digits() {
        assert_eq!(round12(0.1 + 0.2), 0.3);
        assert_eq!(round12(2f64.sqrt()), 1.41421356237);
        assert_eq!(round12(-1e-300 * 1e-300), 0.0);
        assert!(round12(-0.0).is_sign_positive());
        assert_eq!(csv_num(1.0), "1");
        assert_eq!(csv_num(1234567.891234567), "1234567.89123");
    }
}
