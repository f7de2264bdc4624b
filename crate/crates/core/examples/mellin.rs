//! Mellin identities for the zeta model: the transform of f_{A,r} against
//! -ζ φ̂ g_A, and the closed-form transform of u_{r,λ}.

use num_complex::Complex64;
use zerofree::model::{g_a, mellin_f_a, mellin_u_check, Sequence, SeriesModel};
use zerofree::specfun::QuadratureSpec;

fn main() -> zerofree::Result<()> {
    let sigma1 = 0.4;
    let r = 0.49;
    let model = SeriesModel::zeta(sigma1)?;
    let spec = QuadratureSpec::new(1e-10, 1e-10, 200)?;
    let two = Sequence::new(
        vec![1.0, 0.5],
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)],
    )?;
    for a in [Sequence::unit(), two] {
        for s in [Complex64::new(0.42, 0.0), Complex64::new(0.45, 3.0)] {
            let t = std::time::Instant::now();
            let num = mellin_f_a(&model, &a, r, s, &spec)?;
            let z = s + r;
            let rhs = -(model.l(z)? * model.phi_hat(z)?).value * g_a(&a, z);
            println!(
                "A of length {} at s = {s}: quadrature {} (err {:.1e}), closed form {rhs}, |diff| = {:.2e}  [{:.2?}]",
                a.len(),
                num.value,
                num.err,
                (num.value - rhs).norm(),
                t.elapsed()
            );
        }
    }
    let lambda = Complex64::new(0.01, 50.0);
    for s in [
        Complex64::new(0.2, 0.0),
        Complex64::new(0.1, 10.0),
        Complex64::new(0.4, -3.0),
    ] {
        println!(
            "u_(r,λ) transform residual at s = {s}: {:.2e}",
            mellin_u_check(&model, r, lambda, s)?
        );
    }
    Ok(())
}
