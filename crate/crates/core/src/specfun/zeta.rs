//! Riemann zeta function for `Re s >= 0`.
//!
//! The default route is the Borwein acceleration of the alternating series
//! `η(s) = Σ (-1)^k (k+1)^{-s}`, with `ζ(s) = η(s) / (1 - 2^{1-s})`. Near the
//! zeros of `1 - 2^{1-s}` on `Re s = 1`, and for large imaginary parts where
//! the Borwein weights would need too many terms, Euler–Maclaurin summation is
//! used instead.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::bernoulli::{scaled_even_bernoulli, MAX_TERMS};
use super::gamma::POLE_EPS;
use crate::certified::CertifiedValue;
use crate::error::{Error, Result};

const TARGET: f64 = 1e-18;
/// Imaginary part above which Euler–Maclaurin is cheaper than Borwein.
const BORWEIN_MAX_IM: f64 = 150.0;

/// `1 - 2^{1-s}`, accurate near `s = 1`.
pub(crate) fn one_minus_pow2(s: Complex64) -> Complex64 {
    -expm1((1.0 - s) * LN_2)
}

fn expm1(z: Complex64) -> Complex64 {
    if z.norm() < 1e-3 {
        z * (1.0 + z / 2.0 * (1.0 + z / 3.0 * (1.0 + z / 4.0 * (1.0 + z / 5.0))))
    } else {
        z.exp() - 1.0
    }
}

/// `ζ(s)` for `Re s >= 0`, `s ≠ 1`.
pub fn zeta(s: Complex64) -> Result<CertifiedValue> {
    if (s - 1.0).norm() < POLE_EPS {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    if s.re < 0.0 {
        return Err(Error::Domain(format!(
            "zeta is only implemented for Re s >= 0 (got {s})"
        )));
    }
    let denom = one_minus_pow2(s);
    if s.im.abs() > BORWEIN_MAX_IM || (denom.norm() < 0.05 && (s - 1.0).norm() > 0.05) {
        return euler_maclaurin(s);
    }
    Ok(borwein(s, denom))
}

/// `ζ(x)` for real `x >= 0`, `x ≠ 1`.
pub fn zeta_real(x: f64) -> Result<f64> {
    Ok(zeta(Complex64::new(x, 0.0))?.value.re)
}

fn borwein_order(s: Complex64, denom: Complex64) -> usize {
    let t = s.im.abs();
    let log_pref = (3.0 * (1.0 + 2.0 * t) * (1.0 + s.norm()) / denom.norm()).ln();
    let need = log_pref + PI * t / 2.0 - TARGET.ln();
    let n = (need / (3.0 + 8f64.sqrt()).ln()).ceil() as usize;
    n.max(8)
}

fn borwein(s: Complex64, denom: Complex64) -> CertifiedValue {
    let n = borwein_order(s, denom);
    // log t_i with t_i = n (n+i-1)! 4^i / ((n-i)! (2i)!), t_0 = 1.
    let mut log_t = Vec::with_capacity(n + 1);
    log_t.push(0.0f64);
    for i in 0..n {
        let (fi, fnn) = (i as f64, n as f64);
        let step = (4.0 * (fnn + fi) * (fnn - fi)).ln() - ((2.0 * fi + 1.0) * (2.0 * fi + 2.0)).ln();
        log_t.push(log_t[i] + step);
    }
    let top = log_t.iter().cloned().fold(f64::MIN, f64::max);
    let t: Vec<f64> = log_t.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = t.iter().sum();

    // w_k = 1 - d_k/d_n = (t_{k+1} + … + t_n) / total
    let mut suffix = 0.0;
    let mut weights = vec![0.0; n];
    for k in (0..n).rev() {
        suffix += t[k + 1];
        weights[k] = suffix / total;
    }

    let mut eta = Complex64::new(0.0, 0.0);
    let mut round = 0.0;
    for (k, &w) in weights.iter().enumerate() {
        let lk = ((k + 1) as f64).ln();
        let term = (-s * lk).exp() * w;
        if k % 2 == 0 {
            eta += term;
        } else {
            eta -= term;
        }
        round += term.norm() * (2.0 + s.norm() * lk);
    }
    let value = eta / denom;
    let t_abs = s.im.abs();
    let trunc = 3.0 * (1.0 + 2.0 * t_abs) * (1.0 + s.norm()) * (PI * t_abs / 2.0).exp()
        / (3.0 + 8f64.sqrt()).powi(n as i32);
    let err = (trunc + 4.0 * f64::EPSILON * round) / denom.norm()
        + 4.0 * f64::EPSILON * value.norm();
    CertifiedValue::new(value, err)
}

/// Euler–Maclaurin summation with an explicit remainder bound.
pub fn euler_maclaurin(s: Complex64) -> Result<CertifiedValue> {
    if (s - 1.0).norm() < POLE_EPS {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    let n_cut = (s.norm() / 2.0).ceil() as usize + 20;
    let nf = n_cut as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut round = 0.0;
    for k in 1..n_cut {
        let lk = (k as f64).ln();
        let term = (-s * lk).exp();
        sum += term;
        round += term.norm() * (2.0 + s.norm() * lk);
    }
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp(); // N^{-s}
    sum += n_pow * nf / (s - 1.0) + n_pow * 0.5;
    round += n_pow.norm() * (nf / (s - 1.0).norm() + 1.0) * (2.0 + s.norm() * ln_n);

    let b = scaled_even_bernoulli();
    // poch = s(s+1)…(s+2k-2), running power N^{1-s-2k}
    let mut poch = s;
    let mut power = n_pow / nf; // N^{-s-1}
    let mut remainder = f64::INFINITY;
    for k in 1..=MAX_TERMS {
        let term = poch * power * b[k - 1];
        sum += term;
        if k < MAX_TERMS {
            let next_poch = poch * (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
            let next_power = power / (nf * nf);
            let next = (next_poch * next_power * b[k]).norm();
            let denom = s.re + (2 * k + 1) as f64;
            if denom > 0.0 {
                let bound = next * (s + (2 * k + 1) as f64).norm() / denom;
                if bound < TARGET * sum.norm().max(1e-300) || bound < 1e-300 {
                    remainder = bound;
                    break;
                }
                remainder = bound;
            }
            poch = next_poch;
            power = next_power;
        }
    }
    if !remainder.is_finite() {
        return Err(Error::NonConvergence {
            err: remainder,
            tol: TARGET,
            subdivisions: MAX_TERMS,
        });
    }
    let err = remainder + 4.0 * f64::EPSILON * round;
    Ok(CertifiedValue::new(sum, err))
}
