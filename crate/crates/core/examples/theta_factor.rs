//! The comparison factor θ(ψ, r) for ζ as r → 1, with both sources of ‖ψ‖_r.

use zerofree::bounds::{theta_psi_r, NormSource};
use zerofree::model::SeriesModel;
use zerofree::specfun::QuadratureSpec;

fn main() -> zerofree::Result<()> {
    let model = SeriesModel::zeta(0.4)?;
    let spec = QuadratureSpec::new(1e-10, 1e-12, 200)?;
    for r in [0.5, 0.7, 0.9, 0.99, 0.999] {
        let q = theta_psi_r(&model, r, NormSource::Quadrature(spec))?;
        let b = theta_psi_r(&model, r, NormSource::PaperBound)?;
        println!(
            "r = {r}: theta {:.4e} (bound form {:.4e}), theta*sqrt(1-r) {:.4e}, factor {:.4}",
            q.theta,
            b.theta,
            q.theta * (1.0 - r).sqrt(),
            q.factor
        );
    }
    Ok(())
}
