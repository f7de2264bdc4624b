//! `E(r)`, `Λ(m, r)` and the comparison factor `1 + θ(ψ,r)√(1-r)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{pascal_min_eigenvalue, vandermonde_constant, xi_proof};
use crate::model::{p_norm2, poly_p, psi_norm_r, zeta_psi_norm_sq_bound, SeriesModel};
use crate::specfun::QuadratureSpec;

fn check_r(r: f64) -> Result<()> {
    if !(r < 1.0) || !r.is_finite() {
        return Err(Error::Domain(format!("need r < 1, got {r}")));
    }
    Ok(())
}

/// `E(r) = (2 Σ_{k≥0} (2-2r)^{2k}/(k!)²)^{1/2}`
pub fn e_of_r(r: f64) -> Result<f64> {
    check_r(r)?;
    let x = (2.0 - 2.0 * r).powi(2);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..10_000 {
        term *= x / (k as f64 * k as f64);
        sum += term;
        if term < 1e-16 * sum {
            break;
        }
    }
    Ok((2.0 * sum).sqrt())
}

/// `(Σ_{k<m} (2-2r)^{2k+1}/(k!)²)^{1/2}`, the sum that actually occurs in
/// the Cauchy–Schwarz step; it is at most `E(r)√(1-r)`.
pub fn e_partial(r: f64, m: usize) -> Result<f64> {
    check_r(r)?;
    let a = 2.0 - 2.0 * r;
    let mut term = a;
    let mut sum = 0.0;
    for k in 0..m {
        if k > 0 {
            term *= a * a / (k as f64 * k as f64);
        }
        sum += term;
    }
    Ok(sum.sqrt())
}

/// `Λ(m,r) = ((m-1)2^m+1) max(e^m, e^{(1-r)m}) (‖P‖₂² + ‖ψ‖_r²)^{1/2}`
pub fn lambda_m_r(m: usize, r: f64, p_norm2: f64, psi_norm_r: f64) -> f64 {
    let mf = m as f64;
    vandermonde_constant(m) * mf.exp().max(((1.0 - r) * mf).exp()) * p_norm2.hypot(psi_norm_r)
}

/// Where `‖ψ‖_r` comes from.
#[derive(Debug, Clone, Copy)]
pub enum NormSource {
    /// Quadrature, using the upper end of its error interval.
    Quadrature(QuadratureSpec),
    /// The closed-form bound available for ζ.
    PaperBound,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorComponents {
    pub xi: f64,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "Lambda")]
    pub lambda: f64,
    pub mu_m: f64,
    pub p_norm2: f64,
    pub psi_norm_r: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonFactor {
    pub r: f64,
    pub theta: f64,
    pub factor: f64,
    pub components: FactorComponents,
}

/// `θ(ψ,r) = ξ(ψ) E(r) Λ(m,r) / √μ_m` and `1 + θ√(1-r)`.
pub fn theta_psi_r(model: &SeriesModel, r: f64, source: NormSource) -> Result<ComparisonFactor> {
    model.check_r(r)?;
    let p = poly_p(model)?;
    let m = p.m();
    let psi_norm = match source {
        NormSource::Quadrature(spec) => {
            let n = psi_norm_r(model, r, &spec)?;
            n.norm.value.re + n.norm.err
        }
        NormSource::PaperBound => {
            if model.name != "zeta" {
                return Err(Error::UnsupportedModel(format!(
                    "no closed-form bound on the psi norm for model '{}'",
                    model.name
                )));
            }
            let b = zeta_psi_norm_sq_bound(r, model.sigma1)?;
            (b.value.re + b.err).sqrt()
        }
    };
    let mu = pascal_min_eigenvalue(m)?;
    let mu_m = mu.value.re - mu.err;
    let xi = xi_proof(&p);
    let e = e_of_r(r)?;
    let pn = p_norm2(&p);
    let lambda = lambda_m_r(m, r, pn, psi_norm);
    let theta = xi * e * lambda / mu_m.sqrt();
    Ok(ComparisonFactor {
        r,
        theta,
        factor: 1.0 + theta * (1.0 - r).sqrt(),
        components: FactorComponents {
            xi,
            e,
            lambda,
            mu_m,
            p_norm2: pn,
            psi_norm_r: psi_norm,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_limits() {
        assert!((e_of_r(1.0 - 1e-12).unwrap() - 2f64.sqrt()).abs() < 1e-10);
        // Σ 1/(k!)² = I₀(2)
        let i0_2: f64 = 2.279_585_302_336_067_3;
        assert!((e_of_r(0.5).unwrap() - (2.0 * i0_2).sqrt()).abs() < 1e-14);
        assert!(e_of_r(1.0).is_err());
    }

    #[test]
    fn partial_sum_dominated() {
        for &r in &[0.0, 0.3, 0.49, 0.9] {
            for m in 1..6 {
                let lhs = e_partial(r, m).unwrap();
                let rhs = e_of_r(r).unwrap() * (1.0f64 - r).sqrt();
                assert!(lhs <= rhs + 1e-15, "r={r} m={m}");
            }
        }
    }

    #[test]
    fn lambda_plug_in() {
        let v = lambda_m_r(1, 0.5, 1.0, 0.0);
        assert!((v - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn theta_bound_mode() {
        let model = SeriesModel::zeta(0.4).unwrap();
        let f = theta_psi_r(&model, 0.49, NormSource::PaperBound).unwrap();
        assert!(f.theta > 0.0 && f.factor > 1.0);
        assert_eq!(f.factor, 1.0 + f.theta * 0.51f64.sqrt());
    }
}
