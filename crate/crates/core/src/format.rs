//! Numeric text formatting shared by the CSV writers and the CLI.

/// Format a float with 12 significant digits.
///
/// Positional notation for moderate magnitudes, scientific otherwise.
/// Trailing zeros are kept so that equal values always render
/// byte-identically.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000000".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}
