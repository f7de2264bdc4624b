//! Zero-free discs: the pseudo-hyperbolic discs produced by the radius
//! `√(4π(a-σ₀))|h(λ)|/‖h‖`, by distance bounds, and their Euclidean form.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::bounds::gram_matrix;
use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::model::{
    blaschke, c_sigma1, g_a, poly_p, psi1_norm_sq, psi_norm_r, zeta_psi_norm_sq_bound, Sequence,
    SeriesModel,
};
use crate::specfun::{gamma, integrate, zeta, QuadratureSpec, Tail, Upper, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertifiedBy {
    #[serde(rename = "prop61")]
    Prop61,
    #[serde(rename = "thm62")]
    Thm62,
    #[serde(rename = "thm21sharp")]
    Thm21Sharp,
    #[serde(rename = "zeta_F")]
    ZetaF,
}

/// `shift + {μ : |(μ-λ)/(μ+λ̄-2σ₀)| < R}`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PseudoDisc {
    pub lambda: Complex64,
    #[serde(rename = "R")]
    pub ratio: f64,
    pub sigma0: f64,
    pub shift: f64,
    /// Set when a computed `R > 1` was cut back to 1.
    #[serde(default)]
    pub clipped: bool,
}

impl PseudoDisc {
    /// `R` is clipped into `[0, 1]`; NaN is rejected.
    pub fn new(lambda: Complex64, ratio: f64, sigma0: f64, shift: f64) -> Result<Self> {
        if !(lambda.re > sigma0) {
            return Err(Error::Domain(format!(
                "need Re λ > σ₀ = {sigma0}, got λ = {lambda}"
            )));
        }
        if ratio.is_nan() || !shift.is_finite() {
            return Err(Error::Domain(format!("bad disc data R = {ratio}, shift = {shift}")));
        }
        Ok(Self {
            lambda,
            ratio: ratio.clamp(0.0, 1.0),
            sigma0,
            shift,
            clipped: ratio > 1.0,
        })
    }

    /// `|(μ-λ)/(μ+λ̄-2σ₀)|` at `s = shift + μ`.
    pub fn modulus(&self, s: Complex64) -> f64 {
        let mu = s - self.shift;
        ((mu - self.lambda) / (mu + self.lambda.conj() - 2.0 * self.sigma0)).norm()
    }

    pub fn contains(&self, s: Complex64) -> bool {
        self.modulus(s) < self.ratio
    }

    /// The point `shift + μ` with `(μ-λ)/(μ+λ̄-2σ₀) = R e^{iθ}`.
    pub fn boundary_point(&self, theta: f64) -> Complex64 {
        let w = Complex64::from_polar(self.ratio, theta);
        let mu = (self.lambda + w * (self.lambda.conj() - 2.0 * self.sigma0)) / (1.0 - w);
        mu + self.shift
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EuclideanDisc {
    pub center: Complex64,
    pub radius: f64,
}

impl EuclideanDisc {
    pub fn contains(&self, s: Complex64) -> bool {
        (s - self.center).norm() < self.radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Disc(EuclideanDisc),
    /// `Re s > re_min`, the image of `R = 1`.
    HalfPlane { re_min: f64 },
}

pub fn pseudo_to_euclidean(d: &PseudoDisc) -> Geometry {
    let (a, b) = (d.lambda.re, d.lambda.im);
    let r2 = d.ratio * d.ratio;
    if d.ratio >= 1.0 {
        return Geometry::HalfPlane {
            re_min: d.shift + d.sigma0,
        };
    }
    Geometry::Disc(EuclideanDisc {
        center: Complex64::new(d.shift + (a + r2 * (a - 2.0 * d.sigma0)) / (1.0 - r2), b),
        radius: 2.0 * d.ratio * (a - d.sigma0) / (1.0 - r2),
    })
}

/// Everything a caller needs to audit one disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub center_re: Option<f64>,
    pub center_im: Option<f64>,
    pub radius: Option<f64>,
    /// Only for `R = 1`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub half_plane_re_min: Option<f64>,
    #[serde(rename = "R")]
    pub ratio: f64,
    pub certified_by: CertifiedBy,
    pub pseudo: PseudoDisc,
    pub inputs: Map<String, Value>,
    pub errors: Map<String, Value>,
}

impl Certificate {
    pub fn new(
        pseudo: PseudoDisc,
        certified_by: CertifiedBy,
        inputs: Map<String, Value>,
        mut errors: Map<String, Value>,
    ) -> Self {
        if pseudo.clipped {
            errors.insert("warning".into(), json!("R > 1 clipped to 1"));
        }
        let (center_re, center_im, radius, half) = match pseudo_to_euclidean(&pseudo) {
            Geometry::Disc(d) => (Some(d.center.re), Some(d.center.im), Some(d.radius), None),
            Geometry::HalfPlane { re_min } => (None, None, None, Some(re_min)),
        };
        Self {
            center_re,
            center_im,
            radius,
            half_plane_re_min: half,
            ratio: pseudo.ratio,
            certified_by,
            pseudo,
            inputs,
            errors,
        }
    }

    pub fn geometry(&self) -> Geometry {
        pseudo_to_euclidean(&self.pseudo)
    }
}

/// How `‖h_{A,r}‖₂` is obtained.
#[derive(Debug, Clone, Copy)]
pub enum NormMode {
    /// `Σ|c_j| α_j^r (‖ψ₁‖ + ‖ψ‖_r)` with the closed-form `‖ψ‖_r` bound
    /// for ζ (quadrature `‖ψ‖_r` otherwise).
    PaperBound,
    /// `‖f_{A,r}‖ = (c^H G c)^{1/2}` from the Gram matrix.
    Quadrature(QuadratureSpec),
}

fn model_lambda(model: &SeriesModel, r: f64, lambda: Complex64) -> Result<Complex64> {
    model.check_r(r)?;
    model.check_lambda(lambda)?;
    Ok(lambda + r - model.sigma0)
}

/// `h_{A,r}(λ) = -(2π)^{-1/2} (L φ̂ g_A b_{1,r}^{m_L})(λ+r-σ₀)`
pub fn h_value(model: &SeriesModel, a: &Sequence, r: f64, lambda: Complex64) -> Result<CertifiedValue> {
    let s = model_lambda(model, r, lambda)?;
    let l = model.l(s)?;
    let ph = model.phi_hat(s)?;
    let b = blaschke(Complex64::new(1.0, 0.0), r, s)?.powu(model.m_l as u32);
    let g = g_a(a, s);
    let k = -(2.0 * PI).powf(-0.5) * b * g;
    // |b| ≤ 1 and g_A is exact up to rounding
    let round = 4.0 * f64::EPSILON * a.abs_weight(s.re) * (model.m_l as f64 + 1.0);
    Ok((l * ph).scale(k).with_extra_err(round * (l.abs() * ph.abs())))
}

/// An upper estimate of `‖h_{A,r}‖₂` (value plus error bound).
pub fn h_norm(model: &SeriesModel, a: &Sequence, r: f64, mode: NormMode) -> Result<CertifiedValue> {
    model.check_r(r)?;
    if a.is_zero() {
        return Err(Error::ZeroNorm("all coefficients of A vanish".into()));
    }
    match mode {
        NormMode::PaperBound => {
            let p = poly_p(model)?;
            let psi1 = psi1_norm_sq(&p, r).sqrt();
            let psi = if model.name == "zeta" {
                zeta_psi_norm_sq_bound(r, model.sigma1)?.sqrt_real()
            } else {
                psi_norm_r(model, r, &QuadratureSpec::default())?.norm
            };
            let w = a.abs_weight(r);
            Ok(CertifiedValue::real(w * (psi1 + psi.value.re), w * psi.err))
        }
        NormMode::Quadrature(spec) => {
            let g = gram_matrix(model, r, a.alpha(), &spec)?;
            let c = a.c();
            let mut v = Complex64::new(0.0, 0.0);
            let mut err = 0.0;
            for i in 0..c.len() {
                for j in 0..c.len() {
                    v += c[i].conj() * g.g[(i, j)] * c[j];
                    err += c[i].norm() * c[j].norm() * g.err[(i, j)];
                }
            }
            if !(v.re > err) {
                return Err(Error::ZeroNorm(format!(
                    "‖f_A‖² = {:.3e} is not separated from zero (err {err:.1e})",
                    v.re
                )));
            }
            Ok(CertifiedValue::real(v.re, err).sqrt_real())
        }
    }
}

/// `‖h_{A,r}‖₂² = (2π)^{-1} ∫ |L φ̂ g_A(r+it)|² dt`, integrated directly on
/// the line `Re s = r` where `|b_{1,r}| = 1`. Needs `φ̂` to decay fast enough
/// for the tail, e.g. `σ₁ ≤ -1` for ζ.
pub fn h_norm_sq_on_line(
    model: &SeriesModel,
    a: &Sequence,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<CertifiedValue> {
    model.check_r(r)?;
    let sq = |s: Complex64| -> Complex64 {
        match (model.l(s), model.phi_hat(s)) {
            (Ok(l), Ok(p)) => Complex64::new((l.value * p.value * g_a(a, s)).norm_sqr(), 0.0),
            _ => Complex64::new(f64::NAN, 0.0),
        }
    };
    let f = |t: f64| sq(Complex64::new(r, t)) + sq(Complex64::new(r, -t));
    // |φ̂|² ~ t^{2σ₁-2}; the mean square of L on the line is bounded for r > 1/2
    let decay = 1.0 - 2.0 * model.sigma1;
    let v = integrate(&f, 0.0, Upper::Infinite(Tail::power(decay)), Weight::None, spec)?;
    if !v.value.re.is_finite() {
        return Err(Error::Domain("L or φ̂ failed on the line Re s = r".into()));
    }
    Ok(v.scale(Complex64::new(1.0 / (2.0 * PI), 0.0)))
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop61 {
    pub disc: PseudoDisc,
    /// `√(4π(a-σ₀))|h(λ)|/‖h‖` before the error bound is removed.
    pub ratio_nominal: f64,
    pub ratio_err: f64,
    pub h: CertifiedValue,
    pub h_norm: CertifiedValue,
}

/// `R(λ)` and its removal of the propagated error, so the disc stays on
/// the safe side: `R = nominal - err`.
fn certified_ratio(scale: f64, num: CertifiedValue, den: CertifiedValue) -> (f64, f64) {
    let nominal = scale * num.abs() / den.value.re;
    let lo = scale * (num.abs() - num.err).max(0.0) / (den.value.re + den.err);
    (nominal, nominal - lo)
}

pub fn prop61_radius(
    model: &SeriesModel,
    a: &Sequence,
    r: f64,
    lambda: Complex64,
    mode: NormMode,
) -> Result<Prop61> {
    let h = h_value(model, a, r, lambda)?;
    let n = h_norm(model, a, r, mode)?;
    let scale = (4.0 * PI * (lambda.re - model.sigma0)).sqrt();
    let (nominal, err) = certified_ratio(scale, h, n);
    Ok(Prop61 {
        disc: PseudoDisc::new(lambda, nominal - err, model.sigma0, r - model.sigma0)?,
        ratio_nominal: nominal,
        ratio_err: err,
        h,
        h_norm: n,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ZetaF {
    pub disc: PseudoDisc,
    #[serde(rename = "F")]
    pub f: f64,
    pub f_err: f64,
    pub zeta: CertifiedValue,
    pub gamma_lambda_r: CertifiedValue,
    pub gamma_one_minus_sigma1: CertifiedValue,
    pub gamma_shifted: CertifiedValue,
    pub c_sigma1: f64,
    #[serde(rename = "C_r_sigma1")]
    pub c_r_sigma1: CertifiedValue,
    pub psi1_norm: f64,
}

/// `F(λ,r,σ₁) = √(2a)|Γ(λ+r)Γ(1-σ₁)ζ(λ+r)(λ+r-1)| /
/// ((C(r,σ₁) + ‖ψ₁‖)|Γ(λ+r+1-σ₁)(λ-r+1)|)`
pub fn zeta_f(lambda: Complex64, r: f64, sigma1: f64) -> Result<ZetaF> {
    if !(sigma1 < 0.5) {
        return Err(Error::Domain(format!("sigma1 must be < 1/2, got {sigma1}")));
    }
    if !(r > sigma1.max(0.0) && r < 1.0) {
        return Err(Error::Domain(format!(
            "need max(0, sigma1) < r < 1, got r = {r}"
        )));
    }
    if !(lambda.re > 0.0) {
        return Err(Error::Domain(format!("need Re λ > 0, got λ = {lambda}")));
    }
    let s = lambda + r;
    let z = zeta(s)?;
    let g1 = gamma(s)?;
    let g2 = gamma(Complex64::new(1.0 - sigma1, 0.0))?;
    let g3 = gamma(s + 1.0 - sigma1)?;
    let c_r = zeta_psi_norm_sq_bound(r, sigma1)?.sqrt_real();
    let psi1 = ((1.0 - sigma1).powi(2) * (2.0 - 2.0 * r)).powf(-0.5);
    let num = (g1 * g2 * z).scale(s - 1.0);
    let den = g3.scale(lambda - r + 1.0);
    let norm = c_r + CertifiedValue::real(psi1, 4.0 * f64::EPSILON * psi1);
    // |num/den| = |num|/|den|
    let quot = CertifiedValue::real(num.abs(), num.err)
        * CertifiedValue::real(den.abs(), den.err).recip();
    let scale = (2.0 * lambda.re).sqrt();
    let (f, err) = certified_ratio(scale, quot, norm);
    Ok(ZetaF {
        disc: PseudoDisc::new(lambda, f - err, 0.0, r)?,
        f,
        f_err: err,
        zeta: z,
        gamma_lambda_r: g1,
        gamma_one_minus_sigma1: g2,
        gamma_shifted: g3,
        c_sigma1: c_sigma1(sigma1),
        c_r_sigma1: c_r,
        psi1_norm: psi1,
    })
}

fn distance_disc(dist_upper: f64, r: f64, lambda: Complex64, sigma0: f64) -> Result<PseudoDisc> {
    if !(dist_upper >= 0.0) {
        return Err(Error::Domain(format!(
            "distance bound must be nonnegative, got {dist_upper}"
        )));
    }
    let rad = 1.0 - 2.0 * (lambda.re - sigma0) * dist_upper * dist_upper;
    PseudoDisc::new(lambda, rad.max(0.0).sqrt(), sigma0, r - sigma0)
}

/// `R = (1 - 2(a-σ₀)δ²)^{1/2}` from an upper bound on `dist(u_{r,λ}, K_r)`.
pub fn thm62_disc(delta_upper: f64, r: f64, lambda: Complex64, sigma0: f64) -> Result<PseudoDisc> {
    distance_disc(delta_upper, r, lambda, sigma0)
}

/// Same shape, from an upper bound on `dist(w_λ, K_r♯)`.
pub fn thm21_sharp_disc(
    d_sharp_upper: f64,
    r: f64,
    lambda: Complex64,
    sigma0: f64,
) -> Result<PseudoDisc> {
    distance_disc(d_sharp_upper, r, lambda, sigma0)
}

#[derive(Debug, Clone, Serialize)]
pub struct ZetaGridCheck {
    pub points: usize,
    pub min_abs: f64,
    pub max_err: f64,
    pub ok: bool,
}

/// Evaluate ζ on a 10×10 polar grid inside the disc and check that no
/// value comes within its error bound of zero. A sanity check only.
pub fn zeta_grid_check(d: &EuclideanDisc) -> Result<ZetaGridCheck> {
    let mut min_abs = f64::INFINITY;
    let mut max_err = 0.0f64;
    let mut points = 0;
    for i in 0..10 {
        let rho = d.radius * i as f64 / 10.0;
        for k in 0..10 {
            let s = d.center + Complex64::from_polar(rho, 2.0 * PI * (k as f64 + 0.5 * i as f64) / 10.0);
            let z = zeta(s)?;
            min_abs = min_abs.min(z.abs());
            max_err = max_err.max(z.err);
            points += 1;
        }
    }
    Ok(ZetaGridCheck {
        points,
        min_abs,
        max_err,
        ok: min_abs > 10.0 * max_err,
    })
}

/// Parameter record for [`Certificate::inputs`].
pub fn inputs_record(model: &SeriesModel, a: &Sequence, r: f64, lambda: Complex64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("model".into(), json!(model.name));
    m.insert("lambda_re".into(), json!(lambda.re));
    m.insert("lambda_im".into(), json!(lambda.im));
    m.insert("r".into(), json!(r));
    m.insert("sigma0".into(), json!(model.sigma0));
    m.insert("sigma1".into(), json!(model.sigma1));
    m.insert("m_L".into(), json!(model.m_l));
    m.insert("A".into(), serde_json::to_value(a).unwrap_or(Value::Null));
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_ratio_is_a_point() {
        let d = PseudoDisc::new(Complex64::new(0.3, 2.0), 0.0, 0.0, 0.2).unwrap();
        match pseudo_to_euclidean(&d) {
            Geometry::Disc(e) => {
                assert_eq!(e.radius, 0.0);
                assert!((e.center - Complex64::new(0.5, 2.0)).norm() < 1e-15);
            }
            g => panic!("{g:?}"),
        }
    }

    #[test]
    fn unit_ratio_is_half_plane() {
        let d = thm62_disc(0.0, 0.6, Complex64::new(0.3, 1.0), 0.1).unwrap();
        assert_eq!(pseudo_to_euclidean(&d), Geometry::HalfPlane { re_min: 0.6 });
        let d = PseudoDisc::new(Complex64::new(0.3, 1.0), 1.2, 0.0, 0.0).unwrap();
        assert!(d.clipped && d.ratio == 1.0);
    }

    #[test]
    fn radicand_zero() {
        let lam = Complex64::new(0.25, 3.0);
        let delta = (1.0f64 / (2.0 * 0.25)).sqrt();
        assert!(thm62_disc(delta, 0.5, lam, 0.0).unwrap().ratio < 1e-7);
        assert!(thm62_disc(-1.0, 0.5, lam, 0.0).is_err());
    }

    #[test]
    fn headline_disc() {
        let z = zeta_f(Complex64::new(0.01, 50.0), 0.49, 0.4).unwrap();
        let Geometry::Disc(e) = pseudo_to_euclidean(&z.disc) else {
            panic!()
        };
        assert!((e.center - Complex64::new(0.5, 50.0)).norm() < 1e-4);
        assert!(e.radius > 1.44e-5 && e.radius < 1.54e-5, "{}", e.radius);
    }

    #[test]
    fn zero_sequence_rejected() {
        let model = SeriesModel::zeta(0.4).unwrap();
        let a = Sequence::new(vec![1.0], vec![Complex64::new(0.0, 0.0)]).unwrap();
        assert!(matches!(
            h_norm(&model, &a, 0.49, NormMode::PaperBound),
            Err(Error::ZeroNorm(_))
        ));
    }
}
