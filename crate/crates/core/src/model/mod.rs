//! Analytic objects attached to a series model.

pub mod hardy;
pub mod mellin;
pub mod psi;
pub mod sequence;
pub mod series;
pub(crate) mod split;

pub use hardy::{blaschke, kernel, kernel_norm, mellin_u_check, q_poly, u_r_lambda, UrLambda};
pub use mellin::{mellin_f_a, mellin_psi_inv};
pub use psi::{
    c_sigma1, f_a, p_norm2, p_norm2_sq, psi, psi1, psi1_norm_sq, psi_norm_r,
    zeta_psi_norm_sq_bound, PsiArg, PsiNorm,
};
pub use sequence::{admissibility, g_a, moments, AdmissibilityReport, Sequence};
pub use series::{h_function, poly_p, Coefficients, SeriesModel};
