//! Gram matrices `G_ij = ⟨f_j, f_i⟩ = ∫₀^∞ ψ(α_j u) conj ψ(α_i u) u^{-1-2r} du`
//! of the dilates `f_j(t) = t^{r-σ₀} ψ(α_j/t)` in `L²(dt/t^{1-2σ₀})`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::linalg::PolyP;
use crate::model::split::{pair_integral, Split};
use crate::model::{poly_p, SeriesModel};
use crate::specfun::QuadratureSpec;

/// Largest denominator accepted when writing `α_j/α_i` as a fraction.
pub const MAX_RATIO_DENOM: u64 = 4096;

#[derive(Debug, Clone)]
pub struct Gram {
    pub alpha: Vec<f64>,
    pub r: f64,
    pub g: DMatrix<Complex64>,
    /// Entrywise error bounds.
    pub err: DMatrix<f64>,
}

/// `x ≈ p/q` with `q ≤ MAX_RATIO_DENOM`, by continued fractions.
pub(crate) fn as_fraction(x: f64) -> Option<(u64, u64)> {
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a > 1e12 {
            break;
        }
        let a = a as u64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_RATIO_DENOM {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (h1 as f64 / k1 as f64 - x).abs() <= 1e-12 * x {
            return Some((h1, k1));
        }
        let frac = y - a as f64;
        if frac < 1e-15 {
            break;
        }
        y = 1.0 / frac;
    }
    None
}

pub(crate) struct GramCtx<'a> {
    model: &'a SeriesModel,
    p: PolyP,
    split: Split,
}

impl<'a> GramCtx<'a> {
    pub fn new(model: &'a SeriesModel) -> Result<Self> {
        let p = poly_p(model)?;
        let split = Split::new(model, &p).ok_or_else(|| {
            Error::UnsupportedModel(format!(
                "Gram entries need unit coefficients with a simple pole (model '{}')",
                model.name
            ))
        })?;
        Ok(Self { model, p, split })
    }

    pub fn split(&self) -> &Split {
        &self.split
    }

    pub fn p(&self) -> &PolyP {
        &self.p
    }

    pub fn model(&self) -> &SeriesModel {
        self.model
    }

    /// `∫₀^∞ ψ(α_j u) ψ(α_i u) u^{-1-2r} du`
    pub fn entry(&self, ai: f64, aj: f64, r: f64, spec: &QuadratureSpec) -> Result<CertifiedValue> {
        let (p, q) = as_fraction(aj / ai).ok_or_else(|| {
            Error::Domain(format!(
                "dilations {ai} and {aj} are not in a rational ratio with denominator <= {MAX_RATIO_DENOM}"
            ))
        })?;
        // u = κv with α_j κ = p, α_i κ = q
        let kappa = q as f64 / ai;
        let v = pair_integral(self.model, &self.p, &self.split, p, q, r, 0.0, spec)?;
        Ok(v.scale(Complex64::new(kappa.powf(-2.0 * r), 0.0)))
    }
}

pub(crate) fn check_grid(alpha: &[f64]) -> Result<()> {
    if alpha.is_empty() {
        return Err(Error::Domain("grid must be nonempty".into()));
    }
    for &a in alpha {
        if !(a > 0.0 && a <= 1.0) {
            return Err(Error::Domain(format!("grid values must lie in (0, 1], got {a}")));
        }
    }
    let mut s = alpha.to_vec();
    s.sort_by(f64::total_cmp);
    if s.windows(2).any(|w| (w[1] - w[0]).abs() <= 1e-12 * w[1]) {
        return Err(Error::Domain("grid values must be distinct".into()));
    }
    Ok(())
}

/// Gram matrix of the dilates for the grid `alpha`; entries run in parallel.
pub fn gram_matrix(model: &SeriesModel, r: f64, alpha: &[f64], spec: &QuadratureSpec) -> Result<Gram> {
    model.check_r(r)?;
    check_grid(alpha)?;
    let ctx = GramCtx::new(model)?;
    gram_with(&ctx, r, alpha, spec)
}

pub(crate) fn gram_with(ctx: &GramCtx, r: f64, alpha: &[f64], spec: &QuadratureSpec) -> Result<Gram> {
    let n = alpha.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let vals = pairs
        .par_iter()
        .map(|&(i, j)| ctx.entry(alpha[i], alpha[j], r, spec))
        .collect::<Result<Vec<_>>>()?;
    let mut g = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    let mut err = DMatrix::from_element(n, n, 0.0);
    for (&(i, j), v) in pairs.iter().zip(vals) {
        g[(i, j)] = v.value;
        g[(j, i)] = v.value.conj();
        err[(i, j)] = v.err;
        err[(j, i)] = v.err;
    }
    Ok(Gram {
        alpha: alpha.to_vec(),
        r,
        g,
        err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions() {
        assert_eq!(as_fraction(0.5), Some((1, 2)));
        assert_eq!(as_fraction(8.0 / 7.0), Some((8, 7)));
        assert_eq!(as_fraction(1.0), Some((1, 1)));
        assert_eq!(as_fraction(std::f64::consts::PI), None);
    }

    #[test]
    fn diagonal_scales_like_alpha_to_2r() {
        let model = SeriesModel::zeta(0.4).unwrap();
        let spec = QuadratureSpec::new(1e-10, 1e-12, 200).unwrap();
        let ctx = GramCtx::new(&model).unwrap();
        let g1 = ctx.entry(1.0, 1.0, 0.49, &spec).unwrap();
        let g2 = ctx.entry(0.25, 0.25, 0.49, &spec).unwrap();
        let want = g1.value.re * 0.25f64.powf(0.98);
        assert!((g2.value.re - want).abs() < 1e-9 * want, "{g2} vs {want}");
    }

    #[test]
    fn grid_checks() {
        assert!(check_grid(&[]).is_err());
        assert!(check_grid(&[0.5, 0.5]).is_err());
        assert!(check_grid(&[1.5]).is_err());
        assert!(check_grid(&[1.0, 0.5]).is_ok());
    }
}
