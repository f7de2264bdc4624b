//! Finite-span upper bounds for `dist(target, K_r)` and `dist(target, K_r♯)`.
//!
//! The objective `c^H G c - 2 Re c^H b + ‖T‖²` is evaluated at the solved
//! `c` and inflated by the quadrature errors, so the reported value bounds
//! the distance from above whatever the solver did.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use super::gram::{check_grid, gram_with, Gram, GramCtx};
use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::model::split::mellin_psi_from;
use crate::model::{moments, Sequence, SeriesModel, UrLambda};
use crate::specfun::QuadratureSpec;

#[derive(Debug, Clone)]
pub enum Target {
    /// `w_λ(t) = t^{λ̄-2σ₀} χ_(0,1)(t)`
    W(Complex64),
    /// `u_{r,λ}`
    U(Complex64),
    /// `f_{A,r}` for a given sequence.
    Span(Sequence),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    None,
    Admissible,
}

#[derive(Debug, Clone, Copy)]
pub struct DistanceOptions {
    pub spec: QuadratureSpec,
    pub cond_max: f64,
    /// Proceed (with the ridge) when the condition estimate exceeds `cond_max`.
    pub allow_ill_conditioned: bool,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self {
            spec: QuadratureSpec::default(),
            cond_max: 1e12,
            allow_ill_conditioned: false,
        }
    }
}

/// `b_i = ⟨T, f_i⟩` and `‖T‖²`.
#[derive(Debug, Clone)]
pub struct TargetData {
    pub b: Vec<CertifiedValue>,
    pub norm_sq: CertifiedValue,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistanceResult {
    /// Certified upper bound on the distance.
    pub value: f64,
    /// Objective `‖Σ c_j f_j - T‖²` at `c`, before error inflation.
    pub objective: f64,
    pub objective_err: f64,
    pub alpha: Vec<f64>,
    pub c: Vec<Complex64>,
    pub constraint: Constraint,
    pub condition: f64,
    pub ridge: f64,
    /// Smallest eigenvalue of the (reduced) Gram matrix.
    pub eigen_min: f64,
    /// Spectral-norm bound on the Gram error.
    pub gram_err: f64,
    pub target_norm: f64,
}

fn lambda_check(model: &SeriesModel, lambda: Complex64) -> Result<()> {
    model.check_lambda(lambda)
}

pub(crate) fn target_with(
    ctx: &GramCtx,
    r: f64,
    target: &Target,
    alpha: &[f64],
    spec: &QuadratureSpec,
) -> Result<TargetData> {
    let model = ctx.model();
    let s0 = model.sigma0;
    // ⟨w_λ, f_i⟩ = conj(α_i^z ∫_{α_i}^∞ ψ(v) v^{-z-1} dv), z = λ + r - σ₀
    let w_part = |lambda: Complex64| -> Result<Vec<CertifiedValue>> {
        let z = lambda + r - s0;
        alpha
            .iter()
            .map(|&al| {
                let m = mellin_psi_from(model, ctx.p(), ctx.split(), z, al, spec)?;
                let v = m.scale((z * al.ln()).exp());
                Ok(CertifiedValue::new(v.value.conj(), v.err))
            })
            .collect()
    };
    match target {
        Target::W(lambda) => {
            lambda_check(model, *lambda)?;
            let b = w_part(*lambda)?;
            let n = 1.0 / (2.0 * (lambda.re - s0));
            Ok(TargetData {
                b,
                norm_sq: CertifiedValue::real(n, 4.0 * f64::EPSILON * n),
            })
        }
        Target::U(lambda) => {
            lambda_check(model, *lambda)?;
            let u = UrLambda::for_model(model, r, *lambda)?;
            let bw = w_part(*lambda)?;
            // ∫₀¹ Q(-log u) u^{-2r} ψ(α u) du with ψ(αu) = p₀ α u
            let a = 2.0 - 2.0 * r;
            let mut fact = 1.0;
            let mut qint = Complex64::new(0.0, 0.0);
            for (j, qj) in u.q.iter().enumerate() {
                if j > 0 {
                    fact *= j as f64;
                }
                qint += qj * fact / a.powi(j as i32 + 1);
            }
            let p0 = ctx.split().p0;
            let b = bw
                .iter()
                .zip(alpha)
                .map(|(w, &al)| {
                    let v = u.c0 * w.value + qint * p0 * al;
                    let e = u.c0.norm() * w.err + 1e-15 * (qint * p0 * al).norm();
                    CertifiedValue::new(v, e)
                })
                .collect();
            let n = u.norm_sq();
            Ok(TargetData {
                b,
                norm_sq: CertifiedValue::real(n, 1e-14 * n),
            })
        }
        Target::Span(a) => {
            let terms: Vec<(f64, Complex64)> = a.terms().collect();
            let mut b = Vec::with_capacity(alpha.len());
            for &ai in alpha {
                let mut acc = CertifiedValue::zero();
                for &(ak, ck) in &terms {
                    acc = acc + ctx.entry(ai, ak, r, spec)?.scale(ck);
                }
                b.push(acc);
            }
            let mut nrm = CertifiedValue::zero();
            for &(ai, ci) in &terms {
                for &(ak, ck) in &terms {
                    nrm = nrm + ctx.entry(ai, ak, r, spec)?.scale(ci.conj() * ck);
                }
            }
            Ok(TargetData {
                b,
                norm_sq: CertifiedValue::new(Complex64::new(nrm.value.re, 0.0), nrm.err),
            })
        }
    }
}

/// `⟨T, f_i⟩` and `‖T‖²` for a grid.
pub fn target_vector(
    model: &SeriesModel,
    r: f64,
    target: &Target,
    alpha: &[f64],
    spec: &QuadratureSpec,
) -> Result<TargetData> {
    model.check_r(r)?;
    check_grid(alpha)?;
    let ctx = GramCtx::new(model)?;
    target_with(&ctx, r, target, alpha, spec)
}

/// Orthonormal basis (columns) of `{c : C c = 0}`.
fn null_space(cm: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let n = cm.ncols();
    let cch = cm * cm.adjoint();
    let scale = cch.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let eig = SymmetricEigen::new(cch.clone());
    let emin = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if !(emin > 1e-13 * scale) {
        return Err(Error::SingularConstraint(format!(
            "moment constraints are (numerically) dependent: smallest eigenvalue {emin:.3e} of C C^H"
        )));
    }
    let inv = cch
        .try_inverse()
        .ok_or_else(|| Error::SingularConstraint("C C^H is not invertible".into()))?;
    let proj = DMatrix::<Complex64>::identity(n, n) - cm.adjoint() * inv * cm;
    let pe = SymmetricEigen::new((&proj + proj.adjoint()) * Complex64::new(0.5, 0.0));
    let cols: Vec<DVector<Complex64>> = pe
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 0.5)
        .map(|(k, _)| pe.eigenvectors.column(k).into_owned())
        .collect();
    if cols.is_empty() {
        return Ok(DMatrix::zeros(n, 0));
    }
    Ok(DMatrix::from_columns(&cols))
}

fn spectral_bound(e: &DMatrix<f64>) -> f64 {
    // ‖E‖₂ ≤ ‖E‖_F
    e.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Minimise over the span of the grid dilates, optionally restricted to
/// admissible coefficient vectors, from precomputed Gram and target data.
pub fn distance_from_gram(
    model: &SeriesModel,
    gram: &Gram,
    target: &TargetData,
    constraint: Constraint,
    opts: &DistanceOptions,
) -> Result<DistanceResult> {
    let n = gram.alpha.len();
    let g = (&gram.g + gram.g.adjoint()) * Complex64::new(0.5, 0.0);
    let b = DVector::from_iterator(n, target.b.iter().map(|v| v.value));
    let basis = match constraint {
        Constraint::None => DMatrix::<Complex64>::identity(n, n),
        Constraint::Admissible => {
            let m = model.m_l;
            let cm = DMatrix::from_fn(m, n, |k, j| {
                let a = gram.alpha[j];
                Complex64::new(a * a.ln().powi(k as i32), 0.0)
            });
            null_space(&cm)?
        }
    };
    let gram_err = spectral_bound(&gram.err);
    let (c, condition, ridge, eigen_min) = if basis.ncols() == 0 {
        (DVector::zeros(n), 1.0, 0.0, 0.0)
    } else {
        let gr = basis.adjoint() * &g * &basis;
        let br = basis.adjoint() * &b;
        let eig = SymmetricEigen::new(gr.clone());
        let lmin = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let lmax = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let trace: f64 = gr.diagonal().iter().map(|z| z.re).sum();
        let floor = 1e-14 * trace;
        let tau = if lmin < floor { floor } else { 0.0 };
        let condition = lmax / (lmin.max(0.0) + tau).max(f64::MIN_POSITIVE);
        if condition > opts.cond_max && !opts.allow_ill_conditioned {
            return Err(Error::IllConditioned(condition));
        }
        let tau = if condition > opts.cond_max { tau.max(lmax / opts.cond_max) } else { tau };
        let vh_b = eig.eigenvectors.adjoint() * &br;
        let scaled = DVector::from_iterator(
            vh_b.len(),
            vh_b.iter()
                .zip(eig.eigenvalues.iter())
                .map(|(x, &l)| x / (l.max(0.0) + tau)),
        );
        let y = &eig.eigenvectors * scaled;
        (&basis * y, condition, tau, lmin)
    };
    let gc = &g * &c;
    let quad = c.dotc(&gc).re;
    let cross = c.dotc(&b).re;
    let t = target.norm_sq.value.re;
    let objective = quad - 2.0 * cross + t;
    let cabs: Vec<f64> = c.iter().map(|z| z.norm()).collect();
    let mut err = 0.0;
    for i in 0..n {
        for j in 0..n {
            err += cabs[i] * gram.err[(i, j)] * cabs[j];
        }
        err += 2.0 * cabs[i] * target.b[i].err;
    }
    err += target.norm_sq.err;
    let round = 64.0 * n as f64 * f64::EPSILON * (quad.abs() + 2.0 * cross.abs() + t.abs());
    err += round;
    if let Constraint::Admissible = constraint {
        let seq = Sequence::new(gram.alpha.clone(), c.iter().copied().collect());
        if let Ok(seq) = seq {
            let worst = moments(&seq, model.m_l).iter().map(|z| z.norm()).fold(0.0, f64::max);
            let scale: f64 = cabs.iter().sum::<f64>().max(1.0);
            if worst > 1e-8 * scale {
                return Err(Error::SingularConstraint(format!(
                    "constrained solution violates the moment conditions by {worst:.3e}"
                )));
            }
        }
    }
    Ok(DistanceResult {
        value: (objective.max(0.0) + err).sqrt(),
        objective,
        objective_err: err,
        alpha: gram.alpha.clone(),
        c: c.iter().copied().collect(),
        constraint,
        condition,
        ridge,
        eigen_min,
        gram_err,
        target_norm: t.max(0.0).sqrt(),
    })
}

/// `min_c ‖Σ c_j t^{r-σ₀} ψ(α_j/t) - T‖` over the grid, as an upper bound
/// on the distance from `T` to `K_r` (or `K_r♯` under the admissibility
/// constraint).
pub fn distance_upper_bound(
    model: &SeriesModel,
    r: f64,
    target: &Target,
    alpha: &[f64],
    constraint: Constraint,
    opts: &DistanceOptions,
) -> Result<DistanceResult> {
    model.check_r(r)?;
    check_grid(alpha)?;
    let ctx = GramCtx::new(model)?;
    let gram = gram_with(&ctx, r, alpha, &opts.spec)?;
    let data = target_with(&ctx, r, target, alpha, &opts.spec)?;
    distance_from_gram(model, &gram, &data, constraint, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> DistanceOptions {
        DistanceOptions {
            spec: QuadratureSpec::new(1e-10, 1e-12, 200).unwrap(),
            ..Default::default()
        }
    }

    #[test]
    fn target_in_span() {
        let model = SeriesModel::zeta(0.4).unwrap();
        let d = distance_upper_bound(
            &model,
            0.49,
            &Target::Span(Sequence::unit()),
            &[1.0],
            Constraint::None,
            &opts(),
        )
        .unwrap();
        assert!(d.value < 1e-4, "{d:?}");
        assert!((d.c[0] - Complex64::new(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn constrained_not_below_unconstrained() {
        let model = SeriesModel::zeta(0.4).unwrap();
        let lambda = Complex64::new(0.01, 50.0);
        let alpha = [1.0, 0.5, 0.25];
        let o = opts();
        let ctx = GramCtx::new(&model).unwrap();
        let gram = gram_with(&ctx, 0.49, &alpha, &o.spec).unwrap();
        let data = target_with(&ctx, 0.49, &Target::W(lambda), &alpha, &o.spec).unwrap();
        let free = distance_from_gram(&model, &gram, &data, Constraint::None, &o).unwrap();
        let cons = distance_from_gram(&model, &gram, &data, Constraint::Admissible, &o).unwrap();
        assert!(cons.objective >= free.objective - 1e-10, "{free:?} {cons:?}");
        assert!(free.objective <= data.norm_sq.value.re + 1e-12);
    }
}
