//! Certified zero-free discs for Dirichlet series, with the Riemann zeta
//! function as the shipped model.

pub mod bounds;
pub mod certified;
pub mod cli;
pub mod discs;
pub mod error;
pub mod linalg;
pub mod model;
pub mod specfun;

pub use certified::CertifiedValue;
pub use error::{Error, Result};
