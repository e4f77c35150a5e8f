//! Complex-number text syntax shared by the command line and reports.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nine significant digits in scientific notation, e.g. `4.16666667e-1`.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else if x == 0.0 {
        format!("{:.8e}", 0.0)
    } else {
        format!("{x:.8e}")
    }
}

/// `a+bi` / `a-bi` with both parts in [`format_real`] style.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{}{}i", format_real(z.re), sign, format_real(z.im.abs()))
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i` or `-i`; `j` is accepted for `i`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s = text.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse complex number `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };

    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        let cases = [
            ("2+0i", (2.0, 0.0)),
            ("0+1i", (0.0, 1.0)),
            ("1.5-2.5i", (1.5, -2.5)),
            ("-3", (-3.0, 0.0)),
            ("-i", (0.0, -1.0)),
            ("i", (0.0, 1.0)),
            ("4j", (0.0, 4.0)),
            ("1e-3+2E+2i", (1e-3, 200.0)),
            ("-1e-3-1e-3i", (-1e-3, -1e-3)),
            ("0+0.5i", (0.0, 0.5)),
        ];
        for (text, (re, im)) in cases {
            assert_eq!(
                parse_complex(text).unwrap(),
                Complex64::new(re, im),
                "{text}"
            );
        }
    }

    #[test]
    fn rejects_garbage() {
        for text in ["", "abc", "1+", "1+2", "1++2i", "i1"] {
            assert!(parse_complex(text).is_err(), "{text}");
        }
    }

    #[test]
    fn formats_nine_digits() {
        assert_eq!(format_real(5.0 / 12.0), "4.16666667e-1");
        assert_eq!(format_real(0.0), "0.00000000e0");
        assert_eq!(format_real(-0.0), "0.00000000e0");
        assert_eq!(
            format_complex(Complex64::new(1.0, -0.5)),
            "1.00000000e0-5.00000000e-1i"
        );
    }

    #[test]
    fn round_trips_within_nine_digits() {
        let z = Complex64::new(-0.123456789123, 98765.4321);
        let back = parse_complex(&format_complex(z)).unwrap();
        assert!((back - z).norm() <= 1e-8 * z.norm());
    }
}
