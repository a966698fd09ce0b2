//! Numeric output formatting: every real number is printed with 17
//! significant digits so that values round-trip through text exactly.

/// `f64` at 17 significant digits (exact round-trip).
pub fn f(x: f64) -> String {
    format!("{x:.16e}")
}

/// Optional value; empty field when absent (CSV convention here).
pub fn opt_f(x: Option<f64>) -> String {
    x.map(f).unwrap_or_default()
}

pub fn opt_u32(x: Option<u32>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}
