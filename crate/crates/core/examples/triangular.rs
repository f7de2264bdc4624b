//! The lower-triangular system built from a polynomial P: solution size
//! against ξ(P) Σ|β|.

use num_complex::Complex64;
use zerofree::linalg::{solve_triangular, xi_display, xi_proof, PolyP};

fn main() -> zerofree::Result<()> {
    let c = |re, im| Complex64::new(re, im);
    let p = PolyP::new(vec![c(1.0, 0.0), c(-0.5, 0.25), c(0.1, 0.0)])?;
    let beta = vec![c(1.0, 0.0), c(0.0, -1.0), c(0.3, 0.3)];
    let sol = solve_triangular(&p, &beta)?;
    let bsum: f64 = beta.iter().map(|z| z.norm()).sum();
    let ymax = sol.y.iter().map(|z| z.norm()).fold(0.0, f64::max);
    println!("y = {:?}", sol.y);
    println!("max |y| = {ymax:.6} <= xi * sum |beta| = {:.6}", sol.xi * bsum);
    println!("xi (sum form) = {}, xi (max form) = {}", xi_proof(&p), xi_display(&p));
    Ok(())
}
