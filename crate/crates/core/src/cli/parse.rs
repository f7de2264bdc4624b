//! Command-line value formats.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn parse_err(what: &str, s: &str) -> Error {
    Error::Parse(format!("cannot parse {what} from '{s}'"))
}

/// `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i`; exponents like `1e-3+2.5e1i` work.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(parse_err("a complex number", s));
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| parse_err("a complex number", s));
    };
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| parse_err("a complex number", s)),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k]
                .parse::<f64>()
                .map_err(|_| parse_err("a complex number", s))?;
            Ok(Complex64::new(re, imag(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn parse_real(s: &str) -> Result<f64> {
    if let Some((p, q)) = s.split_once('/') {
        let p: f64 = p.trim().parse().map_err(|_| parse_err("a fraction", s))?;
        let q: f64 = q.trim().parse().map_err(|_| parse_err("a fraction", s))?;
        if q == 0.0 {
            return Err(parse_err("a fraction", s));
        }
        return Ok(p / q);
    }
    s.trim().parse().map_err(|_| parse_err("a number", s))
}

/// `geometric:n` gives `α_j = 2^{-j}` for `j = 0..n-1`; `harmonic:n` gives
/// `1/k` for `k = 1..n`; otherwise a comma list of numbers or fractions.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let count = |n: &str| -> Result<usize> {
        let n: usize = n.trim().parse().map_err(|_| parse_err("a grid size", s))?;
        if n == 0 {
            return Err(Error::Domain("grid size must be at least 1".into()));
        }
        Ok(n)
    };
    if let Some(n) = s.strip_prefix("geometric:") {
        let n = count(n)?;
        return Ok((0..n).map(|j| 2f64.powi(-(j as i32))).collect());
    }
    if let Some(n) = s.strip_prefix("harmonic:") {
        let n = count(n)?;
        return Ok((1..=n).map(|k| 1.0 / k as f64).collect());
    }
    s.split(',').map(parse_real).collect()
}

/// `START:END:N` sampled inclusively.
pub fn parse_range(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(parse_err("a range START:END:N", s));
    };
    let a = parse_real(a)?;
    let b = parse_real(b)?;
    let n: usize = n.trim().parse().map_err(|_| parse_err("a range count", s))?;
    match n {
        0 => Err(Error::Domain("range needs at least one point".into())),
        1 => Ok(vec![a]),
        _ => Ok((0..n)
            .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
            .collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complex_forms() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("0.01+50i").unwrap(), c(0.01, 50.0));
        assert_eq!(parse_complex("0.5-2i").unwrap(), c(0.5, -2.0));
        assert_eq!(parse_complex("-3").unwrap(), c(-3.0, 0.0));
        assert_eq!(parse_complex("4i").unwrap(), c(0.0, 4.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2e1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex("1e-3-2E-1i").unwrap(), c(1e-3, -0.2));
        assert_eq!(parse_complex(" 1 + 2i ").unwrap(), c(1.0, 2.0));
        for bad in ["", "x", "1+", "1+2", "i1", "1++2i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("geometric:3").unwrap(), vec![1.0, 0.5, 0.25]);
        assert_eq!(parse_grid("1, 1/2,0.25").unwrap(), vec![1.0, 0.5, 0.25]);
        assert_eq!(parse_grid("harmonic:2").unwrap(), vec![1.0, 0.5]);
        assert!(parse_grid("geometric:0").is_err());
        assert!(parse_grid("1/0").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("10:20:3").unwrap(), vec![10.0, 15.0, 20.0]);
        assert!(parse_range("1:2").is_err());
    }

    proptest! {
        #[test]
        fn complex_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let z = Complex64::new(re, im);
            prop_assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }
}
