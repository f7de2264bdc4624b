//! ψ(u) = res(L φ̂ u^s, 1) - Σ_{n<u} a_n φ(n/u), the functions f_{A,r}, and
//! the norms ‖P‖₂, ‖ψ₁‖ and ‖ψ‖_r.

use num_complex::Complex64;
use serde::Serialize;

use super::sequence::Sequence;
use super::series::{poly_p, Coefficients, SeriesModel};
use super::split::{pair_integral, Split};
use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::linalg::PolyP;
use crate::specfun::{
    integrate, scaled_even_bernoulli, zeta, Abscissa, Integrand, QuadratureSpec, Singularity, Tail,
    Upper, Weight,
};

/// Terms summed directly before switching to Euler–Maclaurin.
const DIRECT_MAX: u64 = 64;
/// Terms next to `u` that are always summed exactly.
const EXACT_TAIL: u64 = 20;

/// `u = n + frac` with integer `n ≥ 0` and `|frac| < 1`, so that `u - k`
/// is exact for integers `k` near `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiArg {
    n: f64,
    frac: f64,
}

impl PsiArg {
    pub fn new(u: f64) -> Self {
        let n = u.floor();
        Self { n, frac: u - n }
    }

    /// `u = n + frac`; falls back to [`PsiArg::new`] when `|frac| ≥ 1`.
    pub fn anchored(n: f64, frac: f64) -> Self {
        if frac.abs() < 1.0 && n >= 0.0 {
            Self { n, frac }
        } else {
            Self::new(n + frac)
        }
    }

    /// Argument `α·t` with `t` given relative to an anchor. If `α·anchor` is
    /// an integer the anchor is taken to be exactly that singular point.
    pub fn scaled(alpha: f64, x: Abscissa) -> Self {
        let base = alpha * x.anchor;
        let n = base.round();
        if n >= 1.0 && (base - n).abs() <= 1e-9 * n {
            Self::anchored(n, alpha * x.offset)
        } else {
            Self::new(alpha * x.t())
        }
    }

    pub fn u(&self) -> f64 {
        self.n + self.frac
    }

    /// Number of positive integers `k < u`.
    pub fn count(&self) -> u64 {
        let c = if self.frac > 0.0 { self.n } else { self.n - 1.0 };
        c.max(0.0) as u64
    }

    /// `u - ⌈u⌉ + 1 ∈ (0, 1]`
    pub(crate) fn frac_star(&self) -> f64 {
        if self.frac > 0.0 {
            self.frac
        } else {
            1.0 + self.frac
        }
    }

    /// `u - k`
    pub fn minus(&self, k: u64) -> f64 {
        (self.n - k as f64) + self.frac
    }
}

/// Unit coefficients with residue `u/(1-σ₁)`, as for ζ.
pub(crate) fn unit_residue(model: &SeriesModel, p: &PolyP) -> bool {
    let s1 = model.sigma1;
    matches!(model.coefficients, Coefficients::Unit)
        && p.m() == 1
        && (p.coeffs()[0] - 1.0 / (1.0 - s1)).norm() <= 1e-15 / (1.0 - s1)
}

/// Pochhammer symbol `(x)_j`.
pub(crate) fn rising(x: f64, j: usize) -> f64 {
    (0..j).map(|i| x + i as f64).product()
}

/// `ψ(u)` with a rounding/truncation error estimate.
pub fn psi_with_err(model: &SeriesModel, p: &PolyP, arg: PsiArg) -> (Complex64, f64) {
    let u = arg.u();
    let n_terms = arg.count();
    let residue = p.eval_log(u.ln()) * u;
    if n_terms == 0 {
        return (residue, 4.0 * f64::EPSILON * residue.norm());
    }
    let s1 = model.sigma1;
    let g = |k: u64| (arg.minus(k) / u).powf(-s1);
    if !unit_residue(model, p) || n_terms <= DIRECT_MAX {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for k in 1..=n_terms {
            let t = model.coefficient(k) * g(k);
            mag += t.norm();
            sum += t;
        }
        let v = residue - sum;
        let err = (n_terms as f64 + 4.0) * f64::EPSILON * (residue.norm() + mag);
        return (v, err);
    }
    // Σ_{k≤M} g(k) by Euler–Maclaurin with g(x) = (1 - x/u)^{-σ₁}; the
    // residue u/(1-σ₁) cancels the integral of g analytically.
    let m = n_terms - EXACT_TAIL;
    let w = arg.minus(m);
    let gm = (w / u).powf(-s1);
    let head = w.powf(1.0 - s1) * u.powf(s1) / (1.0 - s1);
    let mut v = head - 0.5 * (gm - 1.0);
    let bern = scaled_even_bernoulli();
    let mut last = 0.0;
    let (mut w_pow, mut u_pow) = (1.0 / w, 1.0 / u);
    for (q, b) in bern.iter().enumerate().take(15) {
        let j = 2 * q + 1;
        let term = b * rising(s1, j) * (w_pow * gm - u_pow);
        v -= term;
        last = term.abs();
        if last < 1e-18 * head.abs().max(1.0) {
            break;
        }
        w_pow /= w * w;
        u_pow /= u * u;
    }
    let mut tail = 0.0;
    for k in m + 1..=n_terms {
        tail += g(k);
    }
    v -= tail;
    let err = last + 8.0 * f64::EPSILON * (head.abs() + tail + gm);
    (Complex64::new(v, 0.0), err)
}

/// `ψ(u)` for `u > 0`.
pub fn psi(model: &SeriesModel, u: f64) -> Result<CertifiedValue> {
    if !(u > 0.0) {
        return Err(Error::Domain(format!("psi needs u > 0, got {u}")));
    }
    let p = poly_p(model)?;
    let (v, e) = psi_with_err(model, &p, PsiArg::new(u));
    Ok(CertifiedValue::new(v, e))
}

/// `ψ₁(u) = u Σ p_k (log u)^k`
pub fn psi1(p: &PolyP, u: f64) -> Complex64 {
    p.eval_log(u.ln()) * u
}

/// `f_{A,r}(t) = t^{r-σ₀} Σ c_j ψ(α_j/t)`
pub fn f_a(model: &SeriesModel, a: &Sequence, r: f64, t: f64) -> Result<CertifiedValue> {
    model.check_r(r)?;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("f_A needs t > 0, got {t}")));
    }
    let p = poly_p(model)?;
    let scale = t.powf(r - model.sigma0);
    let mut acc = CertifiedValue::zero();
    for (al, c) in a.terms() {
        let (v, e) = psi_with_err(model, &p, PsiArg::new(al / t));
        acc = acc + CertifiedValue::new(c * v, c.norm() * e);
    }
    Ok(acc.scale(Complex64::new(scale, 0.0)))
}

/// `∫₀^U u^{a-1} (log u)^k du` for `Re a > 0`.
pub fn int_pow_log(a: Complex64, k: usize, upper: f64) -> Complex64 {
    let l = upper.ln();
    let mut s = Complex64::new(0.0, 0.0);
    let mut coef = 1.0; // k!/(k-i)!
    let mut apow = a; // a^{i+1}
    for i in 0..=k {
        if i > 0 {
            coef *= (k - i + 1) as f64;
            apow *= a;
        }
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * coef * l.powi((k - i) as i32) / apow;
    }
    s * (a * l).exp()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `Σ p_i p̄_j (-1)^{i+j} (i+j)! / a^{i+j+1}`, i.e. `∫₀¹ |P(log u)|² u^{a-1} du`.
fn log_gram(p: &PolyP, a: f64) -> f64 {
    let c = p.coeffs();
    let mut s = Complex64::new(0.0, 0.0);
    for (i, pi) in c.iter().enumerate() {
        for (j, pj) in c.iter().enumerate() {
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            s += pi * pj.conj() * (sign * factorial(i + j) / a.powi((i + j + 1) as i32));
        }
    }
    s.re
}

/// `‖P‖₂² = ∫₀¹ |Σ p_i (log u)^i|² u du`
pub fn p_norm2_sq(p: &PolyP) -> f64 {
    log_gram(p, 2.0)
}

pub fn p_norm2(p: &PolyP) -> f64 {
    p_norm2_sq(p).max(0.0).sqrt()
}

/// `‖ψ₁‖² = ∫₀¹ |ψ₁(u)|² du/u^{1+2r}`
pub fn psi1_norm_sq(p: &PolyP, r: f64) -> f64 {
    log_gram(p, 2.0 - 2.0 * r)
}

/// `C(σ₁) = 1/(1-2σ₁) + 1/((1-σ₁)²(3-2σ₁)) + ε₁/(1-σ₁)²`
pub fn c_sigma1(sigma1: f64) -> f64 {
    let eps1 = if sigma1 >= 0.0 { 1.0 } else { -1.0 };
    let d = (1.0 - sigma1).powi(2);
    1.0 / (1.0 - 2.0 * sigma1) + 1.0 / (d * (3.0 - 2.0 * sigma1)) + eps1 / d
}

/// Closed-form bound `‖ψ‖_r² ≤ 1/(2r) + C(σ₁) ζ(1 + 2(r-σ₁))` for ζ.
pub fn zeta_psi_norm_sq_bound(r: f64, sigma1: f64) -> Result<CertifiedValue> {
    if !(sigma1 < 0.5 && r > sigma1.max(0.0) && r < 1.0) {
        return Err(Error::Domain(format!(
            "bound needs sigma1 < 1/2 and max(0, sigma1) < r < 1 (r = {r}, sigma1 = {sigma1})"
        )));
    }
    let z = zeta(Complex64::new(1.0 + 2.0 * (r - sigma1), 0.0))?;
    let c = c_sigma1(sigma1);
    Ok(CertifiedValue::real(1.0 / (2.0 * r), 0.0) + z.scale(Complex64::new(c, 0.0)))
}

/// Integrand `|ψ(u)|²` with singular points at the integers.
struct PsiSquare<'a> {
    model: &'a SeriesModel,
    p: PolyP,
}

impl Integrand for PsiSquare<'_> {
    fn eval(&self, x: Abscissa) -> Complex64 {
        let (v, _) = psi_with_err(self.model, &self.p, PsiArg::scaled(1.0, x));
        Complex64::new(v.norm_sqr(), 0.0)
    }

    fn singularities(&self, a: f64, b: f64) -> Vec<Singularity> {
        integer_points(1.0, a, b, 2.0 * self.model.sigma1)
    }
}

/// Points `k/α ∈ [a, b]` (`k ≥ 1`) where `ψ(α u)` is singular.
pub(crate) fn integer_points(alpha: f64, a: f64, b: f64, exponent: f64) -> Vec<Singularity> {
    let k0 = (a * alpha).ceil().max(1.0) as u64;
    let k1 = (b * alpha).floor() as u64;
    (k0..=k1)
        .map(|k| Singularity::right(k as f64 / alpha, exponent))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PsiNorm {
    pub r: f64,
    /// `‖ψ‖_r²` by quadrature.
    pub squared: CertifiedValue,
    pub norm: CertifiedValue,
    /// Closed-form bound on `‖ψ‖_r²` where one is known.
    pub bound_squared: Option<f64>,
    pub within_bound: Option<bool>,
}

/// `‖ψ‖_r = (∫₁^∞ |ψ(t)|² dt/t^{1+2r})^{1/2}`; periodic tail for unit
/// coefficients, dyadic quadrature otherwise.
pub fn psi_norm_r(model: &SeriesModel, r: f64, spec: &QuadratureSpec) -> Result<PsiNorm> {
    model.check_r(r)?;
    let p = poly_p(model)?;
    let sq = match Split::new(model, &p) {
        Some(sp) => pair_integral(model, &p, &sp, 1, 1, r, 1.0, spec)?,
        None => {
            let f = PsiSquare { model, p };
            let decay = 2.0 * r - 2.0 * model.psi_growth;
            integrate(
                &f,
                1.0,
                Upper::Infinite(Tail::power(decay)),
                Weight::InvPowOnePlusTwoR(r),
                spec,
            )?
        }
    };
    let bound_squared = if model.name == "zeta" {
        Some(zeta_psi_norm_sq_bound(r, model.sigma1)?)
    } else {
        None
    };
    let bound_val = bound_squared.map(|b| b.value.re + b.err);
    Ok(PsiNorm {
        r,
        squared: sq,
        norm: sq.sqrt_real(),
        bound_squared: bound_val,
        within_bound: bound_val.map(|b| sq.value.re - sq.err <= b),
    })
}
