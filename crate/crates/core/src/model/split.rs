//! For unit coefficients, `ψ(u) = E(u) - u^{σ₁} ζ(σ₁, {u})` with
//! `{u} ∈ (0, 1]` and `E(u) = u/(1-σ₁) + u^{σ₁} ζ(σ₁, u) ~ 1/2 + Σ c_q u^{1-2q}`.
//! Past some `U` the oscillating part is 1-periodic up to a power weight,
//! so its integrals reduce to a few moments on `[0, 1]` times Hurwitz sums.
//! This replaces dyadic tails that would need cutoffs far beyond reach.

use num_complex::Complex64;
use rayon::prelude::*;

use super::psi::{integer_points, psi_with_err, rising, unit_residue, PsiArg};
use super::series::SeriesModel;
use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::linalg::PolyP;
use crate::specfun::{
    hurwitz_real, hurwitz_zeta, integrate, scaled_even_bernoulli, Abscissa, Integrand,
    QuadratureSpec, Singularity, Upper, Weight,
};

/// Smallest argument at which the expansion of `E` is used.
pub(crate) const U_MIN: f64 = 64.0;
const MAX_MOMENTS: usize = 80;

#[derive(Debug, Clone)]
pub(crate) struct Split {
    pub s1: f64,
    pub p0: f64,
    /// `E(u) ≈ Σ coef · u^pow`
    pub e: Vec<(f64, f64)>,
    /// Bound on the truncation of `E` for `u ≥ U_MIN`.
    pub e_err: f64,
}

impl Split {
    pub fn new(model: &SeriesModel, p: &PolyP) -> Option<Self> {
        if !unit_residue(model, p) {
            return None;
        }
        let s1 = model.sigma1;
        let mut e = vec![(0.5, 0.0)];
        let mut e_err = 0.0;
        for (q, b) in scaled_even_bernoulli().iter().enumerate().take(20) {
            let pow = -((2 * q + 1) as f64);
            let c = b * rising(s1, 2 * q + 1);
            let size = (c * U_MIN.powf(pow)).abs();
            if size < 1e-24 {
                e_err = 2.0 * size;
                break;
            }
            e.push((c, pow));
            e_err = 2.0 * size;
        }
        Some(Self {
            s1,
            p0: 1.0 / (1.0 - s1),
            e,
            e_err,
        })
    }

    /// `ζ(σ₁, {m t})` with the fractional part taken in `(0, 1]`.
    pub fn h(&self, m: f64, x: Abscissa) -> f64 {
        let f = PsiArg::scaled(m, x).frac_star();
        hurwitz_real(self.s1, f).0
    }

    /// Smooth part at `u ≥ U_MIN`.
    #[cfg(test)]
    pub fn e_at(&self, u: f64) -> f64 {
        self.e.iter().map(|&(c, p)| c * u.powf(p)).sum()
    }
}

/// `(x - 1/2)^i Π_m ζ(σ₁, {m x})` on `[0, 1]`, or its modulus.
struct Periodic<'a> {
    sp: &'a Split,
    mults: &'a [f64],
    power: Option<i32>,
}

impl Integrand for Periodic<'_> {
    fn eval(&self, x: Abscissa) -> Complex64 {
        let mut v = 1.0;
        for &m in self.mults {
            v *= self.sp.h(m, x);
        }
        let v = match self.power {
            Some(i) => v * (x.t() - 0.5).powi(i),
            None => v.abs(),
        };
        Complex64::new(v, 0.0)
    }

    fn singularities(&self, a: f64, b: f64) -> Vec<Singularity> {
        let s1 = self.sp.s1;
        let mut out = vec![Singularity::right(0.0, s1 * self.mults.len() as f64)];
        for &m in self.mults {
            out.extend(integer_points(m, a, b, s1));
        }
        out
    }
}

/// Centred moments `∫₀¹ (x-1/2)^i F(x) dx`, `i < count`, and `∫₀¹ |F|`.
pub(crate) struct Moments {
    pub m: Vec<CertifiedValue>,
    pub abs: f64,
}

impl Split {
    pub fn moments(&self, mults: &[f64], count: usize, spec: &QuadratureSpec) -> Result<Moments> {
        let run = |power: Option<i32>| {
            let f = Periodic {
                sp: self,
                mults,
                power,
            };
            integrate(&f, 0.0, Upper::Finite(1.0), Weight::None, spec)
        };
        let m = (0..count)
            .into_par_iter()
            .map(|i| run(Some(i as i32)))
            .collect::<Result<Vec<_>>>()?;
        let abs = run(None)?;
        Ok(Moments {
            m,
            abs: abs.value.re + abs.err,
        })
    }
}

/// `ζ(σ, a) ≤ a^{-σ} + a^{1-σ}/(σ-1)` for real `σ > 1`.
fn hurwitz_bound(sigma: f64, a: f64) -> f64 {
    a.powf(-sigma) + a.powf(1.0 - sigma) / (sigma - 1.0)
}

/// Moments needed so that the binomial series for `(k + 1/2 + y)^β` is
/// below `1e-17` relative.
pub(crate) fn moment_count(beta: Complex64, u: f64, mean_zero: bool) -> usize {
    let a = u + 0.5;
    let mut b = 1.0;
    let mut top: f64 = 0.0;
    for i in 0..MAX_MOMENTS {
        let sigma = i as f64 - beta.re;
        if sigma > 1.0 && !(mean_zero && i == 0) {
            let t = b * 0.5f64.powi(i as i32) * hurwitz_bound(sigma, a);
            top = top.max(t);
            if i >= 2 && t < 1e-17 * top {
                return i + 1;
            }
        }
        b *= (beta - i as f64).norm() / (i + 1) as f64;
    }
    MAX_MOMENTS
}

/// `∫_U^∞ v^β F({v}) dv` for an integer `U` and 1-periodic `F`, given its
/// centred moments. With `mean_zero` the `i = 0` term is taken as exactly 0.
pub(crate) fn periodic_tail(
    beta: Complex64,
    u: f64,
    mom: &Moments,
    mean_zero: bool,
) -> Result<CertifiedValue> {
    let a = u + 0.5;
    let mut b = Complex64::new(1.0, 0.0);
    let mut acc = CertifiedValue::zero();
    let n = mom.m.len();
    for (i, mi) in mom.m.iter().enumerate() {
        if !(i == 0 && mean_zero) {
            let s = Complex64::new(i as f64, 0.0) - beta;
            if s.re <= 1.0 {
                return Err(Error::Domain(format!(
                    "periodic tail diverges for exponent {beta}"
                )));
            }
            let z = hurwitz_zeta(s, a)?;
            let v = b * mi.value * z.value;
            let e = b.norm() * (mi.err * z.value.norm() + mi.value.norm() * z.err);
            acc = acc + CertifiedValue::new(v, e);
        }
        b *= (beta - i as f64) / (i + 1) as f64;
    }
    let sigma = n as f64 - beta.re;
    let trunc = 2.0 * b.norm() * 0.5f64.powi(n as i32) * mom.abs * hurwitz_bound(sigma.max(1.5), a);
    Ok(acc.with_extra_err(trunc))
}

/// `∫_U^∞ v^β dv` for `Re β < -1`.
pub(crate) fn power_tail(beta: Complex64, u: f64) -> Complex64 {
    -(u.ln() * (beta + 1.0)).exp() / (beta + 1.0)
}

/// `∫₁^U ψ(v) v^{-z-1} dv` integrand.
struct SingleNumeric<'a> {
    model: &'a SeriesModel,
    p: &'a PolyP,
    z: Complex64,
}

impl Integrand for SingleNumeric<'_> {
    fn eval(&self, x: Abscissa) -> Complex64 {
        let v = psi_with_err(self.model, self.p, PsiArg::scaled(1.0, x)).0;
        v * (-(self.z + 1.0) * x.t().ln()).exp()
    }

    fn singularities(&self, a: f64, b: f64) -> Vec<Singularity> {
        integer_points(1.0, a, b, self.model.sigma1)
    }
}

/// `∫_lo^∞ ψ(v) v^{-z-1} dv` for `0 ≤ lo ≤ 1` and `Re z > max(σ₁, 0)`;
/// `lo = 0` also needs `Re z < 1`.
pub(crate) fn mellin_psi_from(
    model: &SeriesModel,
    p: &PolyP,
    sp: &Split,
    z: Complex64,
    lo: f64,
    spec: &QuadratureSpec,
) -> Result<CertifiedValue> {
    if !(z.re > sp.s1.max(0.0) && (lo > 0.0 || z.re < 1.0) && (0.0..=1.0).contains(&lo)) {
        return Err(Error::Domain(format!(
            "Mellin integral of psi from {lo} needs max(sigma1,0) < Re z (< 1 from 0), got {z}"
        )));
    }
    let u = (U_MIN + 2.0 * z.norm()).ceil();
    let w = Complex64::new(1.0, 0.0) - z;
    let near = if lo == 0.0 {
        sp.p0 / w
    } else if w.norm() < 1e-8 {
        -sp.p0 * lo.ln() * (1.0 - 0.5 * w * lo.ln())
    } else {
        sp.p0 * (1.0 - (w * lo.ln()).exp()) / w
    };
    let f = SingleNumeric { model, p, z };
    let mid = integrate(&f, 1.0, Upper::Finite(u), Weight::None, spec)?;
    let mut smooth = Complex64::new(0.0, 0.0);
    for &(c, pw) in &sp.e {
        smooth += c * power_tail(Complex64::new(pw, 0.0) - z - 1.0, u);
    }
    let beta = Complex64::new(sp.s1, 0.0) - z - 1.0;
    let mom = sp.moments(&[1.0], moment_count(beta, u, true), spec)?;
    let osc = periodic_tail(beta, u, &mom, true)?;
    let e_tail = sp.e_err * u.powf(-z.re) / z.re;
    let rest = CertifiedValue::new(near + smooth, 1e-15 * (near.norm() + smooth.norm()) + e_tail);
    Ok(rest + mid - osc)
}

/// `ψ(m₁v) ψ(m₂v) v^{-1-2r}`
struct PairNumeric<'a> {
    model: &'a SeriesModel,
    p: &'a PolyP,
    m1: f64,
    m2: f64,
    r: f64,
}

impl Integrand for PairNumeric<'_> {
    fn eval(&self, x: Abscissa) -> Complex64 {
        let a = psi_with_err(self.model, self.p, PsiArg::scaled(self.m1, x)).0;
        let b = if self.m2 == self.m1 {
            a
        } else {
            psi_with_err(self.model, self.p, PsiArg::scaled(self.m2, x)).0
        };
        a * b.conj() * x.t().powf(-1.0 - 2.0 * self.r)
    }

    fn singularities(&self, a: f64, b: f64) -> Vec<Singularity> {
        let s1 = self.model.sigma1;
        if self.m2 == self.m1 {
            return integer_points(self.m1, a, b, 2.0 * s1);
        }
        let mut out = integer_points(self.m1, a, b, s1);
        out.extend(integer_points(self.m2, a, b, s1));
        out
    }
}

/// `∫_lo^∞ ψ(m₁v) ψ(m₂v) v^{-1-2r} dv` for positive integers `m₁, m₂`.
pub(crate) fn pair_integral(
    model: &SeriesModel,
    p: &PolyP,
    sp: &Split,
    m1: u64,
    m2: u64,
    r: f64,
    lo: f64,
    spec: &QuadratureSpec,
) -> Result<CertifiedValue> {
    if !(r > sp.s1.max(0.0)) {
        return Err(Error::Domain(format!("pair integral needs r > max(sigma1, 0), got {r}")));
    }
    let (f1, f2) = (m1 as f64, m2 as f64);
    let vc = 1.0 / f1.max(f2);
    let u = (U_MIN / f1.min(f2)).ceil().max(lo.ceil() + 1.0);
    let mut total = CertifiedValue::zero();
    if lo < vc {
        // both arguments below 1: ψ(mv) = p₀ m v
        let g = 2.0 - 2.0 * r;
        let v = sp.p0 * sp.p0 * f1 * f2 * (vc.powf(g) - lo.powf(g)) / g;
        total = total + CertifiedValue::real(v, 4.0 * f64::EPSILON * v.abs());
    }
    let f = PairNumeric {
        model,
        p,
        m1: f1,
        m2: f2,
        r,
    };
    total = total + integrate(&f, lo.max(vc), Upper::Finite(u), Weight::None, spec)?;

    let s1 = sp.s1;
    let base = -1.0 - 2.0 * r;
    let cplx = |x: f64| Complex64::new(x, 0.0);
    let mut smooth = 0.0;
    for &(c1, q1) in &sp.e {
        for &(c2, q2) in &sp.e {
            let coef = c1 * f1.powf(q1) * c2 * f2.powf(q2);
            smooth += coef * power_tail(cplx(q1 + q2 + base), u).re;
        }
    }
    total = total + CertifiedValue::real(smooth, 1e-15 * smooth.abs());

    // cross terms −E(m_a v)(m_b v)^{σ₁} H({m_b v})
    let cross = |ma: f64, mb: f64| -> Result<CertifiedValue> {
        let betas: Vec<f64> = sp.e.iter().map(|&(_, q)| q + s1 + base).collect();
        let count = betas
            .iter()
            .map(|&b| moment_count(cplx(b), u, true))
            .max()
            .unwrap_or(1);
        let mom = sp.moments(&[mb], count, spec)?;
        let mut acc = CertifiedValue::zero();
        for (&(c, q), &b) in sp.e.iter().zip(&betas) {
            let coef = -c * ma.powf(q) * mb.powf(s1);
            acc = acc + periodic_tail(cplx(b), u, &mom, true)?.scale(cplx(coef));
        }
        Ok(acc)
    };
    total = total + cross(f1, f2)? + cross(f2, f1)?;

    let beta = cplx(2.0 * s1 + base);
    let mults: Vec<f64> = if m1 == m2 { vec![f1, f1] } else { vec![f1, f2] };
    let mom = sp.moments(&mults, moment_count(beta, u, false), spec)?;
    let osc = periodic_tail(beta, u, &mom, false)?.scale(cplx((f1 * f2).powf(s1)));
    total = total + osc;

    // E truncation: |δE| ≤ e_err, times |ψ| ≲ 1 + (mv)^{σ₁}|H|
    let grow = s1.max(0.0);
    let e_tail = 4.0 * sp.e_err * (1.0 + (f1.max(f2)).powf(grow) * mom.abs.sqrt().max(1.0))
        * u.powf(2.0 * grow - 2.0 * r)
        / (2.0 * r - 2.0 * grow).max(1e-3);
    Ok(total.with_extra_err(e_tail))
}
