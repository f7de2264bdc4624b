//! The lower-triangular system linking logarithmic moments to the residue
//! polynomial `P = (p₀, …, p_{m-1})`:
//! `β_k = Σ_{i≤k} C(i+m-1-k, i) p_{i+m-1-k} y_i`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Residue polynomial coefficients, `p_{m-1} ≠ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyP {
    p: Vec<Complex64>,
}

impl PolyP {
    pub fn new(p: Vec<Complex64>) -> Result<Self> {
        match p.last() {
            None => Err(Error::Domain("PolyP needs at least one coefficient".into())),
            Some(z) if *z == Complex64::new(0.0, 0.0) => {
                Err(Error::Degenerate("leading coefficient p_{m-1} is zero".into()))
            }
            Some(_) => Ok(Self { p }),
        }
    }

    pub fn real(p: &[f64]) -> Result<Self> {
        Self::new(p.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn m(&self) -> usize {
        self.p.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.p
    }

    pub fn leading(&self) -> Complex64 {
        self.p[self.p.len() - 1]
    }

    pub fn sup_norm(&self) -> f64 {
        self.p.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `Σ p_k (log u)^k`
    pub fn eval_log(&self, log_u: f64) -> Complex64 {
        self.p
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * log_u + c)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangularSolution {
    pub y: Vec<Complex64>,
    /// Constant in `max|y_k| ≤ ξ Σ|β_k|`, from the geometric sum.
    pub xi: f64,
    /// The closed form `(1/|p|)(1 + q((mq)^{m-2}-1)/(mq-1))`, kept for comparison.
    pub xi_display: f64,
    pub residual: f64,
}

fn binom(n: usize, k: usize) -> f64 {
    let mut b = 1.0;
    for i in 0..k {
        b = b * (n - i) as f64 / (i + 1) as f64;
    }
    b
}

/// Matrix of the system, row `k`, column `i ≤ k`.
pub fn triangular_matrix(p: &PolyP) -> Vec<Vec<Complex64>> {
    let m = p.m();
    let c = p.coeffs();
    (0..m)
        .map(|k| {
            (0..m)
                .map(|i| {
                    if i <= k {
                        c[i + m - 1 - k] * binom(i + m - 1 - k, i)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect()
}

/// `(1/|p_{m-1}|)(1 + Σ_{j=1}^{m-1} m^{j-1} q^j)` with `q = ‖P‖_∞/|p_{m-1}|`.
pub fn xi_proof(p: &PolyP) -> f64 {
    let m = p.m();
    let lead = p.leading().norm();
    let q = p.sup_norm() / lead;
    let mut s = 1.0;
    let mut term = q; // m^{j-1} q^j at j = 1
    for _ in 1..m {
        s += term;
        term *= m as f64 * q;
    }
    s / lead
}

pub fn xi_display(p: &PolyP) -> f64 {
    let m = p.m();
    let lead = p.leading().norm();
    if m == 1 {
        return 1.0 / p.coeffs()[0].norm();
    }
    let q = p.sup_norm() / lead;
    let mq = m as f64 * q;
    // q ≥ 1 and m ≥ 2, so mq ≥ 2.
    (1.0 + q * (mq.powi(m as i32 - 2) - 1.0) / (mq - 1.0)) / lead
}

pub fn solve_triangular(p: &PolyP, beta: &[Complex64]) -> Result<TriangularSolution> {
    let m = p.m();
    if beta.len() != m {
        return Err(Error::Domain(format!(
            "beta has length {}, expected {m}",
            beta.len()
        )));
    }
    if p.leading().norm() < 1e-14 * p.sup_norm() {
        return Err(Error::Degenerate(
            "|p_{m-1}| is negligible against ‖P‖_∞".into(),
        ));
    }
    let a = triangular_matrix(p);
    let mut y = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..m {
        let mut s = beta[k];
        for i in 0..k {
            s -= a[k][i] * y[i];
        }
        y[k] = s / a[k][k];
    }
    let residual = (0..m)
        .map(|k| {
            let lhs: Complex64 = (0..=k).map(|i| a[k][i] * y[i]).sum();
            (lhs - beta[k]).norm()
        })
        .fold(0.0, f64::max);
    Ok(TriangularSolution {
        y,
        xi: xi_proof(p),
        xi_display: xi_display(p),
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn m1() {
        let p = PolyP::real(&[2.0]).unwrap();
        let s = solve_triangular(&p, &[c(3.0)]).unwrap();
        assert!((s.y[0] - c(1.5)).norm() < 1e-15);
        assert_eq!(s.xi, 0.5);
    }

    #[test]
    fn m2_hand() {
        let p = PolyP::real(&[0.0, 1.0]).unwrap();
        let s = solve_triangular(&p, &[c(1.0), c(0.0)]).unwrap();
        assert!((s.y[0] - c(1.0)).norm() < 1e-15 && s.y[1].norm() < 1e-15);
        // q = 1: proof form 1 + 1 = 2, display form gives 1.
        assert_eq!(s.xi, 2.0);
        assert_eq!(s.xi_display, 1.0);
    }

    #[test]
    fn zero_leading_rejected() {
        assert!(PolyP::real(&[1.0, 0.0]).is_err());
        let p = PolyP::real(&[1.0, 1e-20]).unwrap();
        assert!(matches!(
            solve_triangular(&p, &[c(1.0), c(1.0)]),
            Err(Error::Degenerate(_))
        ));
    }
}
