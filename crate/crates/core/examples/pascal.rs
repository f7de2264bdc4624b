//! Smallest eigenvalue of the symmetric Pascal matrix against its lower
//! bound, and exact characteristic polynomials.

use zerofree::linalg::{
    pascal_char_poly_exact, pascal_eigenvalue_lower_bound, pascal_min_eigenvalue,
};

fn main() -> zerofree::Result<()> {
    for m in 1..=12 {
        let mu = pascal_min_eigenvalue(m)?;
        let lb = pascal_eigenvalue_lower_bound(m);
        println!("m = {m:2}: mu_m = {:.6e} (err {:.1e}), bound {lb:.6e}, ratio {:.3}", mu.value.re, mu.err, mu.value.re / lb);
    }
    for m in 1..=5 {
        let p = pascal_char_poly_exact(m)?;
        let coeffs: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        println!("char poly m = {m}: [{}]", coeffs.join(", "));
    }
    Ok(())
}
