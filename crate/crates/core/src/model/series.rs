//! The pair (L, φ): a Dirichlet series with a pole of order `m_L` at `s = 1`
//! and the test function `φ(x) = (1-x)^{-σ₁}` on `(0,1)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::linalg::PolyP;
use crate::specfun;

pub type EvalFn = Arc<dyn Fn(Complex64) -> Result<CertifiedValue> + Send + Sync>;
pub type CoeffFn = Arc<dyn Fn(u64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub enum Coefficients {
    /// `a_n = 1` for all `n`; enables a summation shortcut in ψ.
    Unit,
    Custom(CoeffFn),
}

impl Coefficients {
    pub fn at(&self, n: u64) -> Complex64 {
        match self {
            Coefficients::Unit => Complex64::new(1.0, 0.0),
            Coefficients::Custom(f) => f(n),
        }
    }
}

#[derive(Clone)]
pub struct SeriesModel {
    pub name: String,
    pub coefficients: Coefficients,
    pub m_l: usize,
    pub sigma0: f64,
    /// Smallest admissible `r`.
    pub r0: f64,
    /// Whether `r = r0` itself is allowed.
    pub r0_inclusive: bool,
    pub sigma1: f64,
    pub l_eval: EvalFn,
    pub phi_hat_eval: EvalFn,
    /// Residue polynomial `(p₀, …, p_{m_L-1})`, if known.
    pub laurent: Option<Vec<Complex64>>,
    /// `|ψ(u)| = O(u^κ)` as `u → ∞`; sets the tail decay of ψ integrals.
    pub psi_growth: f64,
}

impl fmt::Debug for SeriesModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesModel")
            .field("name", &self.name)
            .field("m_l", &self.m_l)
            .field("sigma0", &self.sigma0)
            .field("r0", &self.r0)
            .field("r0_inclusive", &self.r0_inclusive)
            .field("sigma1", &self.sigma1)
            .field("laurent", &self.laurent)
            .finish_non_exhaustive()
    }
}

impl SeriesModel {
    /// ζ with `σ₀ = 0`, `m_L = 1` and `p₀ = φ̂(1) = 1/(1-σ₁)`.
    ///
    /// `r` must satisfy `max(0, σ₁) < r < 1`.
    pub fn zeta(sigma1: f64) -> Result<Self> {
        if !(sigma1 < 0.5) || !sigma1.is_finite() {
            return Err(Error::Domain(format!("sigma1 must be < 1/2, got {sigma1}")));
        }
        Ok(Self {
            name: "zeta".into(),
            coefficients: Coefficients::Unit,
            m_l: 1,
            sigma0: 0.0,
            r0: sigma1.max(0.0),
            r0_inclusive: false,
            sigma1,
            l_eval: Arc::new(specfun::zeta),
            phi_hat_eval: Arc::new(move |s| specfun::phi_hat(s, sigma1)),
            laurent: Some(vec![Complex64::new(1.0 / (1.0 - sigma1), 0.0)]),
            psi_growth: sigma1.max(0.0),
        })
    }

    /// Raise `r0` (it may never drop below the built-in value).
    pub fn with_r0(mut self, r0: f64) -> Result<Self> {
        if r0 < self.r0 {
            return Err(Error::Domain(format!(
                "r0 = {r0} is below the model minimum {}",
                self.r0
            )));
        }
        if !(r0 < 1.0) {
            return Err(Error::Domain(format!("r0 must be < 1, got {r0}")));
        }
        if r0 > self.r0 {
            self.r0 = r0;
            self.r0_inclusive = true;
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma0 < self.r0 || (self.sigma0 == self.r0 && !self.r0_inclusive)) {
            return Err(Error::Domain("model needs sigma0 < r0".into()));
        }
        if !(self.r0 < 1.0) {
            return Err(Error::Domain("model needs r0 < 1".into()));
        }
        if !(self.sigma1 < 0.5) {
            return Err(Error::Domain("model needs sigma1 < 1/2".into()));
        }
        if let Some(p) = &self.laurent {
            if p.len() != self.m_l {
                return Err(Error::Domain(format!(
                    "model has {} residue coefficients for a pole of order {}",
                    p.len(),
                    self.m_l
                )));
            }
        }
        Ok(())
    }

    /// Check `r0 ≤ r < 1` (strict at `r0` when the model says so).
    pub fn check_r(&self, r: f64) -> Result<()> {
        let low_ok = if self.r0_inclusive {
            r >= self.r0
        } else {
            r > self.r0
        };
        if !(low_ok && r < 1.0) {
            let open = if self.r0_inclusive { "[" } else { "(" };
            return Err(Error::Domain(format!(
                "r = {r} outside {open}{}, 1)",
                self.r0
            )));
        }
        Ok(())
    }

    pub fn check_lambda(&self, lambda: Complex64) -> Result<()> {
        if !(lambda.re > self.sigma0) {
            return Err(Error::Domain(format!(
                "need Re λ > σ₀ = {}, got λ = {lambda}",
                self.sigma0
            )));
        }
        Ok(())
    }

    pub fn coefficient(&self, n: u64) -> Complex64 {
        self.coefficients.at(n)
    }

    pub fn l(&self, s: Complex64) -> Result<CertifiedValue> {
        (self.l_eval)(s)
    }

    pub fn phi_hat(&self, s: Complex64) -> Result<CertifiedValue> {
        (self.phi_hat_eval)(s)
    }

    /// `φ(x) = (1-x)^{-σ₁}` on `(0,1)`, zero elsewhere.
    pub fn phi(&self, x: f64) -> f64 {
        if x > 0.0 && x < 1.0 {
            (1.0 - x).powf(-self.sigma1)
        } else {
            0.0
        }
    }
}

/// Residue polynomial of `L(s)φ̂(s)` at `s = 1`.
pub fn poly_p(model: &SeriesModel) -> Result<PolyP> {
    if model.m_l == 0 {
        return Err(Error::UnsupportedModel(
            "model has no pole at s = 1 (m_L = 0)".into(),
        ));
    }
    let p = model.laurent.clone().ok_or_else(|| {
        Error::UnsupportedModel(format!("no Laurent data for model '{}'", model.name))
    })?;
    PolyP::new(p)
}

/// `H(s) = Σ k! p_k/(s-1)^{k+1} - L(s)φ̂(s)`.
pub fn h_function(model: &SeriesModel, s: Complex64) -> Result<CertifiedValue> {
    let p = poly_p(model)?;
    let mut principal = Complex64::new(0.0, 0.0);
    let mut fact = 1.0;
    let d = s - 1.0;
    for (k, pk) in p.coeffs().iter().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        principal += pk * fact / d.powi(k as i32 + 1);
    }
    let lphi = model.l(s)? * model.phi_hat(s)?;
    Ok(CertifiedValue::exact(principal) - lphi)
}
