//! Complex Gamma function.
//!
//! Lanczos approximation (g = 7, nine coefficients) in the half-plane
//! `Re s >= 1/2`, with the upward recurrence `Γ(s) = Γ(s+n) / s(s+1)…(s+n-1)`
//! for points further left. The logarithmic form is used internally so that
//! large imaginary parts do not overflow or underflow before the final `exp`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Relative accuracy of the Lanczos sum itself in the right half-plane.
const LANCZOS_REL_ERR: f64 = 1e-14;

/// Distance below which a point is treated as sitting on a pole.
pub const POLE_EPS: f64 = 1e-14;

fn check_pole(s: Complex64) -> Result<()> {
    if s.re <= 0.5 {
        let k = s.re.round();
        if k <= 0.0 && (s - Complex64::new(k, 0.0)).norm() < POLE_EPS {
            return Err(Error::Pole(format!("Gamma has a pole at s = {k}")));
        }
    }
    Ok(())
}

/// `ln Γ(z)` for `Re z >= 1/2` plus a relative error estimate for `exp` of it.
fn ln_gamma_right(z: Complex64) -> (Complex64, f64) {
    let zm1 = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    let lt = t.ln();
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    let val = half_ln_2pi + (zm1 + 0.5) * lt - t + x.ln();
    // Rounding in the exponent is amplified by its magnitude.
    let mag = (zm1 + 0.5).norm() * lt.norm() + t.norm() + 1.0;
    (val, LANCZOS_REL_ERR + 4.0 * f64::EPSILON * mag)
}

/// `ln Γ(s)` (branch not normalised) and a relative error estimate valid for
/// `exp(ln Γ(s))`.
pub(crate) fn ln_gamma_with_err(s: Complex64) -> Result<(Complex64, f64)> {
    check_pole(s)?;
    if s.re >= 0.5 {
        return Ok(ln_gamma_right(s));
    }
    let n = (0.5 - s.re).ceil() as usize;
    let (mut v, mut rel) = ln_gamma_right(s + n as f64);
    for k in 0..n {
        v -= (s + k as f64).ln();
        rel += 4.0 * f64::EPSILON;
    }
    Ok((v, rel))
}

/// `ln Γ(s)`. The imaginary part is only defined modulo `2π`.
pub fn ln_gamma(s: Complex64) -> Result<CertifiedValue> {
    let (v, rel) = ln_gamma_with_err(s)?;
    // exp(v)(1 ± rel) corresponds to an absolute error of about rel in v.
    Ok(CertifiedValue::new(v, rel))
}

/// `Γ(s)` with a relative error bound of order `1e-14` in the working range.
pub fn gamma(s: Complex64) -> Result<CertifiedValue> {
    let (v, rel) = ln_gamma_with_err(s)?;
    let g = v.exp();
    Ok(CertifiedValue::new(g, rel * g.norm()))
}

/// `Γ(x)` for real `x`.
pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(Complex64::new(x, 0.0))?.value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_and_integers() {
        let g = gamma(Complex64::new(0.5, 0.0)).unwrap();
        assert!((g.value.re - PI.sqrt()).abs() < 1e-14);
        assert!(g.value.im.abs() < 1e-16);
        let g5 = gamma(Complex64::new(5.0, 0.0)).unwrap();
        assert!((g5.value.re - 24.0).abs() < 1e-12);
    }

    #[test]
    fn poles_rejected() {
        for k in 0..5 {
            let s = Complex64::new(-(k as f64), 0.0);
            assert!(matches!(gamma(s), Err(Error::Pole(_))));
        }
        assert!(gamma(Complex64::new(-2.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn negative_half() {
        // Γ(-1/2) = -2√π
        let g = gamma(Complex64::new(-0.5, 0.0)).unwrap();
        assert!((g.value.re + 2.0 * PI.sqrt()).abs() < 1e-13);
    }
}
