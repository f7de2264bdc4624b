use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A complex number together with an absolute error bound.
///
/// Arithmetic propagates the bound with first-order worst-case rules:
/// errors add under `+`/`-`, and `|a|·err_b + |b|·err_a + err_a·err_b`
/// under `*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedValue {
    pub value: Complex64,
    pub err: f64,
}

impl CertifiedValue {
    pub fn new(value: Complex64, err: f64) -> Self {
        debug_assert!(err.is_finite() && err >= 0.0, "invalid error bound {err}");
        Self { value, err }
    }

    pub fn real(value: f64, err: f64) -> Self {
        Self::new(Complex64::new(value, 0.0), err)
    }

    pub fn exact(value: Complex64) -> Self {
        Self { value, err: 0.0 }
    }

    pub fn zero() -> Self {
        Self::exact(Complex64::new(0.0, 0.0))
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn abs(&self) -> f64 {
        self.value.norm()
    }

    /// Relative error bound, `err / |value|` (infinite at zero).
    pub fn rel_err(&self) -> f64 {
        let a = self.abs();
        if a == 0.0 {
            if self.err == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.err / a
        }
    }

    /// True when `truth` lies inside the error ball.
    pub fn covers(&self, truth: Complex64) -> bool {
        (self.value - truth).norm() <= self.err
    }

    pub fn scale(self, k: Complex64) -> Self {
        Self::new(self.value * k, self.err * k.norm())
    }

    pub fn with_extra_err(self, extra: f64) -> Self {
        Self::new(self.value, self.err + extra)
    }

    /// Reciprocal; the bound is first-order `err/|v|²`, inflated when the
    /// ball comes close to zero.
    pub fn recip(self) -> Self {
        let a = self.abs();
        let v = self.value.inv();
        if self.err >= a {
            return Self::new(v, f64::MAX);
        }
        Self::new(v, self.err / (a * (a - self.err)))
    }

    /// Square root of a nonnegative real value, with error bound chosen so
    /// that the interval `[v-err, v+err]` maps inside `[√· ± err']`.
    pub fn sqrt_real(self) -> Self {
        let v = self.value.re.max(0.0);
        let s = v.sqrt();
        let hi = (v + self.err).sqrt();
        let lo = (v - self.err).max(0.0).sqrt();
        Self::real(s, (hi - s).max(s - lo))
    }
}

impl From<f64> for CertifiedValue {
    fn from(v: f64) -> Self {
        Self::real(v, 0.0)
    }
}

impl From<Complex64> for CertifiedValue {
    fn from(v: Complex64) -> Self {
        Self::exact(v)
    }
}

impl Add for CertifiedValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.value + rhs.value, self.err + rhs.err)
    }
}

impl Sub for CertifiedValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value - rhs.value, self.err + rhs.err)
    }
}

impl Neg for CertifiedValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.value, self.err)
    }
}

impl Mul for CertifiedValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let err = self.abs() * rhs.err + rhs.abs() * self.err + self.err * rhs.err;
        Self::new(self.value * rhs.value, err)
    }
}

impl std::ops::Div for CertifiedValue {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl std::iter::Sum for CertifiedValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.im == 0.0 {
            write!(f, "{:.15e} ± {:.2e}", self.value.re, self.err)
        } else {
            write!(
                f,
                "{:.15e}{:+.15e}i ± {:.2e}",
                self.value.re, self.value.im, self.err
            )
        }
    }
}
