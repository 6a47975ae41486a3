//! Complex flag values: `1`, `-0.5+2i`, `i`.

use borel_core::Complex64;

fn imag_part(s: &str) -> Option<f64> {
    let body = s.strip_suffix('i')?;
    match body {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => body.parse().ok(),
    }
}

/// Parse `x`, `yi`, `x+yi` or `x-yi`.
pub fn parse_complex(src: &str) -> Result<Complex64, String> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("expected a complex number like 1, 2i or -0.5+2i, got {src:?}");
    if s.is_empty() {
        return Err(bad());
    }
    if !s.ends_with('i') {
        return s.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    }
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = s.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re: f64 = s[..k].parse().map_err(|_| bad())?;
            let im = imag_part(&s[k..]).ok_or_else(bad)?;
            Ok(Complex64::new(re, im))
        }
        None => imag_part(&s).map(|im| Complex64::new(0.0, im)).ok_or_else(bad),
    }
}

/// `x`, `yi` or `x±yi`, without negative zeros.
pub fn show_complex(z: Complex64) -> String {
    let (re, im) = (z.re + 0.0, z.im + 0.0);
    match (re, im) {
        (_, 0.0) => format!("{re}"),
        (0.0, _) => format!("{im}i"),
        _ if im < 0.0 => format!("{re}-{}i", -im),
        _ => format!("{re}+{im}i"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_complex("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("2.5i").unwrap(), Complex64::new(0.0, 2.5));
        assert_eq!(parse_complex("0.5-0.2i").unwrap(), Complex64::new(0.5, -0.2));
        assert_eq!(parse_complex("-1e-3+i").unwrap(), Complex64::new(-1e-3, 1.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
        assert_eq!(show_complex(Complex64::new(1.0, -0.0)), "1");
        assert_eq!(show_complex(Complex64::new(0.5, -2.0)), "0.5-2i");
    }
}
