//! Special functions and quadrature.

mod bernoulli;
mod gamma;
mod hurwitz;
pub mod quad;
mod zeta;

use num_complex::Complex64;

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};

pub use bernoulli::scaled_even_bernoulli;
pub use gamma::{gamma, gamma_real, ln_gamma, POLE_EPS};
pub(crate) use gamma::ln_gamma_with_err;
pub use hurwitz::hurwitz_zeta;
pub(crate) use hurwitz::hurwitz_real;
pub use quad::{
    integrate, Abscissa, Integrand, QuadratureSpec, Side, Singularity, Tail, TailStrategy, Upper,
    Weight, WithSingularities,
};
pub use zeta::{euler_maclaurin as zeta_euler_maclaurin, zeta, zeta_real};

/// Mellin transform of `(1-t)^{-σ₁}` on `(0,1)`:
/// `Γ(s)Γ(1-σ₁)/Γ(1+s-σ₁)`.
pub fn phi_hat(s: Complex64, sigma1: f64) -> Result<CertifiedValue> {
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("phi_hat needs Re s > 0, got {s}")));
    }
    if !(sigma1 < 0.5) {
        return Err(Error::Domain(format!("sigma1 must be < 1/2, got {sigma1}")));
    }
    let one = Complex64::new(1.0 - sigma1, 0.0);
    let (a, ea) = ln_gamma_with_err(s)?;
    let (b, eb) = ln_gamma_with_err(one)?;
    let (c, ec) = ln_gamma_with_err(s + one)?;
    let v = (a + b - c).exp();
    Ok(CertifiedValue::new(v, (ea + eb + ec + 8.0 * f64::EPSILON) * v.norm()))
}
