//! Number formatting for data files.

/// Significant digits written to CSV and CLI output.
pub const OUTPUT_DIGITS: usize = 12;

/// Rounds `x` to `digits` significant decimal digits. Non-finite values pass through.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x == 0.0 {
        return 0.0;
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let rounded: f64 = s.parse().unwrap_or(x);
    // Avoid emitting "-0".
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

/// Shortest decimal rendering of `x` after rounding to [`OUTPUT_DIGITS`] significant digits.
/// Magnitudes below `1e-5` or from `1e15` up use exponent notation.
pub fn fmt_sig(x: f64) -> String {
    let r = round_sig(x, OUTPUT_DIGITS);
    if r != 0.0 && r.is_finite() && (r.abs() < 1e-5 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// Rounds every number in a JSON tree to [`OUTPUT_DIGITS`] significant digits.
pub fn round_json(value: &mut serde_json::Value) {
    use serde_json::Value;
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                if let Some(x) = n.as_f64() {
                    if let Some(r) = serde_json::Number::from_f64(round_sig(x, OUTPUT_DIGITS)) {
                        *n = r;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}
