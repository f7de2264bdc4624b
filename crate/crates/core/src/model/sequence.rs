//! Finite dilation data `A = (α, c)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sequence {
    alpha: Vec<f64>,
    c: Vec<Complex64>,
}

impl Sequence {
    pub fn new(alpha: Vec<f64>, c: Vec<Complex64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::Domain("sequence must have length at least 1".into()));
        }
        if alpha.len() != c.len() {
            return Err(Error::Domain(format!(
                "alpha has {} entries but c has {}",
                alpha.len(),
                c.len()
            )));
        }
        if let Some(a) = alpha.iter().find(|&&a| !(a > 0.0 && a <= 1.0)) {
            return Err(Error::Domain(format!("alpha must lie in (0, 1], got {a}")));
        }
        Ok(Self { alpha, c })
    }

    /// `α = (1), c = (1)`.
    pub fn unit() -> Self {
        Self {
            alpha: vec![1.0],
            c: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn c(&self) -> &[Complex64] {
        &self.c
    }

    pub fn terms(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.alpha.iter().copied().zip(self.c.iter().copied())
    }

    /// `A ⊕ B`
    pub fn concat(&self, other: &Sequence) -> Sequence {
        let mut alpha = self.alpha.clone();
        alpha.extend_from_slice(&other.alpha);
        let mut c = self.c.clone();
        c.extend_from_slice(&other.c);
        Sequence { alpha, c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }

    /// `Σ |c_j| α_j^x`
    pub fn abs_weight(&self, x: f64) -> f64 {
        self.terms().map(|(a, c)| c.norm() * a.powf(x)).sum()
    }
}

/// `g_A(s) = Σ c_j α_j^s`
pub fn g_a(a: &Sequence, s: Complex64) -> Complex64 {
    a.terms().map(|(al, c)| c * (s * al.ln()).exp()).sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityReport {
    /// `Σ_j c_j α_j (log α_j)^k` for `k = 0..m-1`
    pub moments: Vec<Complex64>,
    pub is_admissible: bool,
    pub tol: f64,
}

impl AdmissibilityReport {
    pub fn max_moment(&self) -> f64 {
        self.moments.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub fn moments(a: &Sequence, m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|k| {
            a.terms()
                .map(|(al, c)| c * al * al.ln().powi(k as i32))
                .sum()
        })
        .collect()
}

pub fn admissibility(a: &Sequence, m: usize, tol: f64) -> Result<AdmissibilityReport> {
    if m == 0 {
        return Err(Error::Domain("admissibility order must be at least 1".into()));
    }
    let moments = moments(a, m);
    let is_admissible = moments.iter().all(|z| z.norm() < tol);
    Ok(AdmissibilityReport {
        moments,
        is_admissible,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn unit_not_admissible() {
        let r = admissibility(&Sequence::unit(), 1, 1e-10).unwrap();
        assert_eq!(r.moments[0], Complex64::new(1.0, 0.0));
        assert!(!r.is_admissible);
    }

    #[test]
    fn two_term_admissible() {
        let a = Sequence::new(
            vec![1.0, 1.0 / E],
            vec![Complex64::new(1.0, 0.0), Complex64::new(-E, 0.0)],
        )
        .unwrap();
        assert!(admissibility(&a, 1, 1e-12).unwrap().is_admissible);
    }

    #[test]
    fn g_a_values() {
        let s = Complex64::new(0.3, 7.0);
        assert!((g_a(&Sequence::unit(), s) - 1.0).norm() < 1e-15);
        let a = Sequence::new(vec![1.0 / E], vec![Complex64::new(2.0, 0.0)]).unwrap();
        assert!((g_a(&a, Complex64::new(1.0, 0.0)).re - 2.0 / E).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_alpha() {
        assert!(Sequence::new(vec![0.0], vec![Complex64::new(1.0, 0.0)]).is_err());
        assert!(Sequence::new(vec![1.5], vec![Complex64::new(1.0, 0.0)]).is_err());
        assert!(Sequence::new(vec![0.5], vec![]).is_err());
    }
}
