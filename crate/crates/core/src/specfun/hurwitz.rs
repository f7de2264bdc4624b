//! Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (a+k)^{-s}` by Euler–Maclaurin after a
//! direct head; valid for every `s ≠ 1` by continuation.

use num_complex::Complex64;

use super::bernoulli::{scaled_even_bernoulli, MAX_TERMS};
use super::gamma::POLE_EPS;
use crate::certified::CertifiedValue;
use crate::error::{Error, Result};

const TARGET: f64 = 1e-18;

fn head_len(s_abs: f64, a: f64) -> usize {
    (20.0f64.max(s_abs + 4.0) - a).ceil().max(0.0) as usize
}

/// `ζ(s, a)` for `a > 0`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<CertifiedValue> {
    if (s - 1.0).norm() < POLE_EPS {
        return Err(Error::Pole("Hurwitz zeta has a pole at s = 1".into()));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("Hurwitz zeta needs a > 0, got {a}")));
    }
    let n = head_len(s.norm(), a);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut round = 0.0;
    for k in 0..n {
        let lk = (a + k as f64).ln();
        let t = (-s * lk).exp();
        sum += t;
        round += t.norm() * (2.0 + s.norm() * lk.abs());
    }
    let b = a + n as f64;
    let lb = b.ln();
    let bs = (-s * lb).exp();
    sum += bs * b / (s - 1.0) + bs * 0.5;
    round += bs.norm() * (b / (s - 1.0).norm() + 1.0) * (2.0 + s.norm() * lb);
    let bern = scaled_even_bernoulli();
    let mut poch = s;
    let mut power = bs / b;
    let mut rem = f64::INFINITY;
    for q in 0..MAX_TERMS {
        let term = poch * power * bern[q];
        sum += term;
        let k = 2 * q + 1;
        let next_poch = poch * (s + k as f64) * (s + (k + 1) as f64);
        let next_power = power / (b * b);
        let bound = if q + 1 < MAX_TERMS {
            (next_poch * next_power * bern[q + 1]).norm() * 2.0
        } else {
            term.norm() * 2.0
        };
        rem = bound;
        if bound < TARGET * sum.norm().max(1e-300) {
            break;
        }
        poch = next_poch;
        power = next_power;
    }
    let err = rem + 4.0 * f64::EPSILON * (round + sum.norm());
    Ok(CertifiedValue::new(sum, err))
}

/// Real `ζ(s, a)` with an error estimate, for repeated evaluation.
pub(crate) fn hurwitz_real(s: f64, a: f64) -> (f64, f64) {
    let n = head_len(s.abs(), a);
    let mut sum = 0.0;
    let mut mag = 0.0;
    for k in 0..n {
        let t = (a + k as f64).powf(-s);
        sum += t;
        mag += t;
    }
    let b = a + n as f64;
    let bs = b.powf(-s);
    sum += bs * b / (s - 1.0) + 0.5 * bs;
    mag += bs * (b / (s - 1.0).abs() + 1.0);
    let bern = scaled_even_bernoulli();
    let mut poch = s;
    let mut power = bs / b;
    let mut rem = 0.0;
    for (q, bq) in bern.iter().enumerate().take(MAX_TERMS) {
        let term = poch * power * bq;
        sum += term;
        rem = 2.0 * term.abs();
        if rem < TARGET * sum.abs().max(1e-300) || term == 0.0 {
            break;
        }
        let k = (2 * q + 1) as f64;
        poch *= (s + k) * (s + k + 1.0);
        power /= b * b;
    }
    (sum, rem + 8.0 * f64::EPSILON * mag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeta;

    #[test]
    fn reduces_to_riemann_at_one() {
        for s in [Complex64::new(2.0, 0.0), Complex64::new(0.3, 14.0), Complex64::new(3.5, -40.0)] {
            let h = hurwitz_zeta(s, 1.0).unwrap();
            let z = zeta(s).unwrap();
            assert!((h.value - z.value).norm() < 1e-12 * (1.0 + z.value.norm()), "{s}");
        }
    }

    #[test]
    fn shift_relation() {
        // ζ(s, a) = a^{-s} + ζ(s, a+1), also for negative s
        for &s in &[-1.6, -0.6, 0.4, 2.5] {
            for &a in &[0.01, 0.37, 1.0] {
                let (lhs, e1) = hurwitz_real(s, a);
                let (rhs, e2) = hurwitz_real(s, a + 1.0);
                let d = (lhs - a.powf(-s) - rhs).abs();
                assert!(d < 1e-12 * (1.0 + lhs.abs()) + e1 + e2, "s={s} a={a} d={d}");
            }
        }
    }

    #[test]
    fn negative_integer_values() {
        // ζ(-1, x) = -B₂(x)/2
        for &x in &[0.1, 0.5, 0.9] {
            let (v, _) = hurwitz_real(-1.0, x);
            let want = -(x * x - x + 1.0 / 6.0) / 2.0;
            assert!((v - want).abs() < 1e-13, "{x}");
        }
        let c = hurwitz_zeta(Complex64::new(0.0, 0.0), 0.3).unwrap();
        assert!((c.value.re - 0.2).abs() < 1e-13);
    }
}
