//! Number rendering shared by the CLI and report writers.
//!
//! Machine formats carry 17 significant digits so every `f64` round-trips;
//! human output carries 10. Trailing zeros are dropped, so `6.0` prints as `6`.

/// `x` rounded to `sig` significant digits, in plain decimal notation when
/// the exponent is moderate and scientific otherwise.
pub fn significant(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", sig.max(1) - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if negative { "-" } else { "" };
    if !(-6..=20).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        return if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        };
    }
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{int}.{frac}")
    };
    format!("{sign}{body}")
}

/// 17 significant digits; non-finite values become `null`.
pub fn json_number(x: f64) -> String {
    if x.is_finite() {
        significant(x, 17)
    } else {
        "null".into()
    }
}

/// 10 significant digits.
pub fn human_number(x: f64) -> String {
    significant(x, 10)
}

/// A JSON array of numbers at full precision.
pub fn json_array(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| json_number(x)).collect();
    format!("[{}]", parts.join(","))
}
