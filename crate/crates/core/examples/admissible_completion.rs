//! Completing a short sequence A so its first m moments vanish, which makes
//! f_{A,r} vanish on (1, ∞).

use num_complex::Complex64;
use zerofree::bounds::completion_report;
use zerofree::model::{f_a, moments, Sequence, SeriesModel};

fn main() -> zerofree::Result<()> {
    let a = Sequence::new(
        vec![1.0, 0.5, 0.3],
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0), Complex64::new(-0.5, 0.5)],
    )?;
    let m = 3;
    let rep = completion_report(&a, m)?;
    println!("A' = {:?}", rep.completion);
    let mom = moments(&rep.combined, m);
    println!("moments of A + A': {mom:?}");
    let csum: f64 = rep.completion.c().iter().map(|z| z.norm()).sum();
    println!("sum |c'| = {csum:.6} <= {:.6}", rep.coeff_bound);
    let model = SeriesModel::zeta(0.4)?;
    for t in [0.3, 0.9, 1.5, 3.0, 10.0] {
        println!("f(t = {t}) = {:.3e}", f_a(&model, &rep.combined, 0.49, t)?.value);
    }
    Ok(())
}
