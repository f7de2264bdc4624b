//! Hardy-space objects on half-planes: kernels, Blaschke factors and the
//! target function `u_{r,λ}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::series::SeriesModel;
use crate::error::{Error, Result};

fn check_pole(den: Complex64, what: &str) -> Result<()> {
    if den.norm() < 1e-300 {
        return Err(Error::Pole(format!("{what} has a pole here")));
    }
    Ok(())
}

/// `b_{λ,r}(s) = (s-λ)/(s+λ̄-2r)`
pub fn blaschke(lambda: Complex64, r: f64, s: Complex64) -> Result<Complex64> {
    let den = s + lambda.conj() - 2.0 * r;
    check_pole(den, "Blaschke factor")?;
    Ok((s - lambda) / den)
}

/// `k_{λ,r}(s) = (1/2π)/(s-2r+λ̄)`
pub fn kernel(lambda: Complex64, r: f64, s: Complex64) -> Result<Complex64> {
    if !(lambda.re > r) {
        return Err(Error::Domain(format!("kernel needs Re λ > {r}, got {lambda}")));
    }
    let den = s - 2.0 * r + lambda.conj();
    check_pole(den, "reproducing kernel")?;
    Ok(1.0 / (2.0 * PI * den))
}

/// `‖k_{λ,r}‖₂ = (4π(Re λ - r))^{-1/2}`
pub fn kernel_norm(lambda: Complex64, r: f64) -> Result<f64> {
    if !(lambda.re > r) {
        return Err(Error::Domain(format!("kernel needs Re λ > {r}, got {lambda}")));
    }
    Ok((4.0 * PI * (lambda.re - r)).powf(-0.5))
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |b, i| b * (n - i) as f64 / (i + 1) as f64)
}

/// Coefficients `q_j` of `Q_{r,λ}(x) = Σ q_j x^j`, where
/// `q_j = (Σ_{k ≤ m-1-j} C(m,k)(A/B)^{m-k}) (-1)^j B^j / j!`,
/// `A = 2-2r`, `B = r+σ₀-1-λ̄`.
///
/// This is the residue of the Mellin inverse at `1+σ₀-r` taken with the
/// orientation of a contour moved to the right; for `m = 1` it gives
/// `Q = A/B`.
pub fn q_poly(m: usize, r: f64, sigma0: f64, lambda: Complex64) -> Vec<Complex64> {
    let a = Complex64::new(2.0 - 2.0 * r, 0.0);
    let b = r + sigma0 - 1.0 - lambda.conj();
    let ab = a / b;
    let mut fact = 1.0;
    (0..m)
        .map(|j| {
            if j > 0 {
                fact *= j as f64;
            }
            let inner: Complex64 = (0..m - j)
                .map(|k| binom(m, k) * ab.powi((m - k) as i32))
                .sum();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            inner * b.powi(j as i32) * (sign / fact)
        })
        .collect()
}

/// `u_{r,λ}(t) = C₀ t^{λ̄-2σ₀}` on `(0,1]`, `Q(log t) t^{r-σ₀-1}` on `(1,∞)`,
/// with `C₀ = (1+A/B)^{m}`.
#[derive(Debug, Clone, Serialize)]
pub struct UrLambda {
    pub lambda: Complex64,
    pub r: f64,
    pub sigma0: f64,
    pub m: usize,
    pub c0: Complex64,
    pub q: Vec<Complex64>,
}

impl UrLambda {
    pub fn new(m: usize, r: f64, sigma0: f64, lambda: Complex64) -> Result<Self> {
        if !(lambda.re > sigma0) {
            return Err(Error::Domain(format!(
                "u_(r,λ) needs Re λ > σ₀ = {sigma0}, got {lambda}"
            )));
        }
        if !(r < 1.0) {
            return Err(Error::Domain(format!("u_(r,λ) needs r < 1, got {r}")));
        }
        let a = Complex64::new(2.0 - 2.0 * r, 0.0);
        let b = r + sigma0 - 1.0 - lambda.conj();
        if b.norm() == 0.0 {
            return Err(Error::Degenerate("B = 0 in u_(r,λ)".into()));
        }
        Ok(Self {
            lambda,
            r,
            sigma0,
            m,
            c0: (1.0 + a / b).powi(m as i32),
            q: q_poly(m, r, sigma0, lambda),
        })
    }

    pub fn for_model(model: &SeriesModel, r: f64, lambda: Complex64) -> Result<Self> {
        model.check_r(r)?;
        Self::new(model.m_l, r, model.sigma0, lambda)
    }

    pub fn q_at(&self, x: f64) -> Complex64 {
        self.q
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        if t <= 1.0 {
            self.c0 * (t.ln() * (self.lambda.conj() - 2.0 * self.sigma0)).exp()
        } else {
            self.q_at(t.ln()) * t.powf(self.r - self.sigma0 - 1.0)
        }
    }

    /// `(2σ₀ - Re λ, 1 + σ₀ - r)`
    pub fn strip(&self) -> (f64, f64) {
        (2.0 * self.sigma0 - self.lambda.re, 1.0 + self.sigma0 - self.r)
    }

    /// `∫₀^∞ u(t) t^{s-1} dt` from the elementary branch integrals.
    pub fn mellin(&self, s: Complex64) -> Result<Complex64> {
        let (lo, hi) = self.strip();
        let margin = 1e-12 * (1.0 + s.norm());
        if !(s.re > lo + margin && s.re < hi - margin) {
            return Err(Error::Domain(format!(
                "Re s = {} outside the strip ({lo}, {hi})",
                s.re
            )));
        }
        let near = self.c0 / (s + self.lambda.conj() - 2.0 * self.sigma0);
        let z = Complex64::new(1.0 + self.sigma0 - self.r, 0.0) - s;
        let mut far = Complex64::new(0.0, 0.0);
        let mut fact = 1.0;
        for (j, qj) in self.q.iter().enumerate() {
            if j > 0 {
                fact *= j as f64;
            }
            far += qj * fact / z.powi(j as i32 + 1);
        }
        Ok(near + far)
    }

    /// `‖u‖²` in `L²((0,∞), dt/t^{1-2σ₀})`.
    pub fn norm_sq(&self) -> f64 {
        let near = self.c0.norm_sqr() / (2.0 * (self.lambda.re - self.sigma0));
        let a = 2.0 - 2.0 * self.r;
        let mut far = Complex64::new(0.0, 0.0);
        for (i, qi) in self.q.iter().enumerate() {
            for (j, qj) in self.q.iter().enumerate() {
                let f: f64 = (1..=i + j).map(|k| k as f64).product();
                far += qi * qj.conj() * (f / a.powi((i + j + 1) as i32));
            }
        }
        near + far.re
    }
}

/// `u_{r,λ}(t)` for the model.
pub fn u_r_lambda(model: &SeriesModel, r: f64, lambda: Complex64, t: f64) -> Result<Complex64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("u_(r,λ) needs t > 0, got {t}")));
    }
    Ok(UrLambda::for_model(model, r, lambda)?.eval(t))
}

/// `|û_{r,λ}(s) - 2π k_{λ,σ₀}(s) / b_{1,r}^{m}(s+r-σ₀)|`
pub fn mellin_u_check(model: &SeriesModel, r: f64, lambda: Complex64, s: Complex64) -> Result<f64> {
    let u = UrLambda::for_model(model, r, lambda)?;
    let lhs = u.mellin(s)?;
    let k = kernel(lambda, model.sigma0, s)?;
    let b = blaschke(Complex64::new(1.0, 0.0), r, s + r - model.sigma0)?;
    let rhs = 2.0 * PI * k / b.powi(model.m_l as i32);
    Ok((lhs - rhs).norm())
}
