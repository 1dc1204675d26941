//! Deterministic 9-significant-digit float formatting for result CSVs.

/// Formats with exactly nine significant digits. Values whose decimal
/// exponent lies in [-4, 8] are written in plain decimal, the rest in
/// scientific notation. Zero becomes "0".
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("e-format contains exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if !(-4..=8).contains(&exp) {
        return format!("{mantissa}e{exp}");
    }
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 9);
    let sign = if negative { "-" } else { "" };
    if exp >= 0 {
        let split = (exp + 1) as usize;
        if split >= digits.len() {
            format!("{sign}{digits}")
        } else {
            format!("{sign}{}.{}", &digits[..split], &digits[split..])
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    }
}
