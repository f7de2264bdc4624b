//! Inverse of the Vandermonde matrix on nodes 1..m: exact absolute sums, and
//! a random solve checked against the bound.

use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};
use zerofree::linalg::{solve_vandermonde, vandermonde_abs_sum_exact, vandermonde_constant};

fn main() -> zerofree::Result<()> {
    for m in 1..=8 {
        println!(
            "m = {m}: sum |inverse entries| = {} (constant {})",
            vandermonde_abs_sum_exact(m)?,
            vandermonde_constant(m)
        );
    }
    let mut rng = StdRng::seed_from_u64(1);
    let y: Vec<Complex64> = (0..6)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let (x, bound) = solve_vandermonde(&y)?;
    let total: f64 = x.iter().map(|z| z.norm()).sum();
    println!("random solve, m = 6: sum |x| = {total:.6} <= {bound:.6}");
    Ok(())
}
