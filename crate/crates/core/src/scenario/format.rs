//! Fixed CSV number formatting.

/// Scientific notation with the shortest mantissa that round-trips, padded to
/// at least 12 significant digits. Non-finite values become `NA`.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return "NA".to_string();
    }
    let shortest = format!("{x:e}");
    let mantissa = shortest.split('e').next().unwrap_or("");
    let digits = mantissa.chars().filter(char::is_ascii_digit).count();
    let precision = digits.max(12) - 1;
    format!("{x:.precision$e}")
}

/// `format_float` or `NA` when the sample is flagged invalid.
pub fn format_checked(x: f64, valid: bool) -> String {
    if valid {
        format_float(x)
    } else {
        "NA".to_string()
    }
}
