//! Fixed-precision number formatting for reports.

/// Significant digits used for every number written to CSV or JSON.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `v` with `digits` significant digits, like C's `%.{digits}g`:
/// trailing zeros are trimmed and scientific notation is used only for
/// very large or very small magnitudes.
pub fn format_sig(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rounds `v` to `digits` significant digits.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format_sig(v, digits).parse().unwrap_or(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (1.5, "1.5"),
            (2.0 / 3.0, "0.666666666667"),
            (12.0, "12"),
            (0.0, "0"),
            (-0.25, "-0.25"),
            (1.0 / 45.0, "0.0222222222222"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e12"),
            (0.000012345, "1.2345e-5"),
            (0.00012345, "0.00012345"),
            (25.75, "25.75"),
        ];
        for (v, expected) in cases {
            assert_eq!(format_sig(v, 12), expected, "{v}");
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_sig(2.0 / 3.0, 12), 0.666666666667);
        assert_eq!(round_sig(1.6, 12), 1.6);
    }
}
