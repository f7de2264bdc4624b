//! Pseudo-hyperbolic discs as Euclidean discs; R = 1 becomes a half-plane.

use std::f64::consts::PI;

use num_complex::Complex64;
use zerofree::discs::{pseudo_to_euclidean, Geometry, PseudoDisc};

fn main() -> zerofree::Result<()> {
    let lambda = Complex64::new(0.3, 2.0);
    for ratio in [0.1, 0.5, 0.9, 1.0] {
        let d = PseudoDisc::new(lambda, ratio, 0.0, 0.0)?;
        match pseudo_to_euclidean(&d) {
            Geometry::Disc(e) => {
                let worst = (0..20)
                    .map(|k| ((d.boundary_point(2.0 * PI * k as f64 / 20.0) - e.center).norm() - e.radius).abs())
                    .fold(0.0, f64::max);
                println!("R = {ratio}: center {}, radius {:.6}, boundary residual {worst:.1e}", e.center, e.radius);
            }
            Geometry::HalfPlane { re_min } => println!("R = {ratio}: Re s > {re_min}"),
        }
    }
    Ok(())
}
