//! Zero-free discs for ζ near a few points just right of the critical line,
//! from the closed-form F(λ, r, σ₁), plus the grid check of ζ on each disc.

use num_complex::Complex64;
use zerofree::discs::{pseudo_to_euclidean, zeta_f, zeta_grid_check, Geometry};

fn main() -> zerofree::Result<()> {
    let (r, sigma1) = (0.49, 0.4);
    for t in [14.0, 21.0, 50.0, 100.0] {
        let lambda = Complex64::new(0.01, t);
        let z = zeta_f(lambda, r, sigma1)?;
        match pseudo_to_euclidean(&z.disc) {
            Geometry::Disc(d) => {
                let check = zeta_grid_check(&d)?;
                println!(
                    "λ = {lambda}: F = {:.6e} (err {:.1e}), disc center {:.8} radius {:.4e}, min |ζ| on grid {:.3e}",
                    z.f, z.f_err, d.center, d.radius, check.min_abs
                );
            }
            Geometry::HalfPlane { re_min } => println!("λ = {lambda}: half-plane Re s > {re_min}"),
        }
    }
    Ok(())
}
