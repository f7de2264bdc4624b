//! Numerical Mellin transforms of ψ-combinations, used to check
//! `f̂_{A,r}(s) = -L φ̂ g_A` at `s + r - σ₀`.

use num_complex::Complex64;

use super::psi::{int_pow_log, integer_points, psi_with_err, PsiArg};
use super::sequence::Sequence;
use super::series::{poly_p, SeriesModel};
use super::split::{mellin_psi_from, Split};
use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::linalg::PolyP;
use crate::specfun::{integrate, Abscissa, Integrand, QuadratureSpec, Singularity, Tail, Upper, Weight};

struct Combo<'a> {
    model: &'a SeriesModel,
    p: PolyP,
    a: &'a Sequence,
    z: Complex64,
}

impl Integrand for Combo<'_> {
    fn eval(&self, x: Abscissa) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (al, c) in self.a.terms() {
            s += c * psi_with_err(self.model, &self.p, PsiArg::scaled(al, x)).0;
        }
        let u = x.t();
        s * (-(self.z + 1.0) * u.ln()).exp()
    }

    fn singularities(&self, lo: f64, hi: f64) -> Vec<Singularity> {
        self.a
            .alpha()
            .iter()
            .flat_map(|&al| integer_points(al, lo, hi, self.model.sigma1))
            .collect()
    }
}

/// `∫₀^∞ Σ c_j ψ(α_j u) u^{-z-1} du`.
///
/// For unit coefficients each term is `α^z ∫₀^∞ ψ(v) v^{-z-1} dv`, with the
/// tail in closed form. Otherwise: below `u = 1/max α` every ψ is on its
/// small-argument branch and the integral is elementary, the rest is dyadic
/// quadrature.
pub fn mellin_psi_inv(
    model: &SeriesModel,
    a: &Sequence,
    z: Complex64,
    spec: &QuadratureSpec,
) -> Result<CertifiedValue> {
    let lo = model.r0;
    if !(z.re > lo && z.re < 1.0) {
        return Err(Error::Domain(format!(
            "Mellin integral needs {lo} < Re z < 1, got {z}"
        )));
    }
    let p = poly_p(model)?;
    if let Some(sp) = Split::new(model, &p) {
        let m = mellin_psi_from(model, &p, &sp, z, 0.0, spec)?;
        let mut acc = CertifiedValue::zero();
        for (al, c) in a.terms() {
            acc = acc + m.scale(c * (z * al.ln()).exp());
        }
        return Ok(acc);
    }
    let amax = a.alpha().iter().copied().fold(0.0, f64::max);
    let u0 = 1.0 / amax;
    // ψ(αu) = αu Σ_k p_k (log α + log u)^k; binomial expansion in log u.
    let mut near = Complex64::new(0.0, 0.0);
    let expo = 1.0 - z; // u^{1-z-1}
    for (al, c) in a.terms() {
        let la = al.ln();
        for (k, pk) in p.coeffs().iter().enumerate() {
            let mut binom = 1.0;
            for i in 0..=k {
                if i > 0 {
                    binom = binom * (k - i + 1) as f64 / i as f64;
                }
                near += c * al * pk * binom * la.powi((k - i) as i32) * int_pow_log(expo, i, u0);
            }
        }
    }
    let f = Combo { model, p, a, z };
    let far = integrate(
        &f,
        u0,
        Upper::Infinite(Tail::complex_power(z)),
        Weight::None,
        spec,
    )?;
    Ok(far + CertifiedValue::new(near, 1e-14 * near.norm()))
}

/// Numerical `∫₀^∞ f_{A,r}(t) t^{s-1} dt`.
pub fn mellin_f_a(
    model: &SeriesModel,
    a: &Sequence,
    r: f64,
    s: Complex64,
    spec: &QuadratureSpec,
) -> Result<CertifiedValue> {
    model.check_r(r)?;
    mellin_psi_inv(model, a, s + r - model.sigma0, spec)
}
