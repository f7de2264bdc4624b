//! Finite-span distance bounds for ζ at λ = 0.01+50i, r = 0.49 on the grid
//! α = 1, 1/2, …, 1/8, with and without the admissibility constraint.

use num_complex::Complex64;
use zerofree::bounds::{distance_upper_bound, Constraint, DistanceOptions, Target};
use zerofree::model::SeriesModel;
use zerofree::specfun::QuadratureSpec;

fn main() -> zerofree::Result<()> {
    let model = SeriesModel::zeta(0.4)?;
    let r = 0.49;
    let lambda = Complex64::new(0.01, 50.0);
    let grid: Vec<f64> = (1..=8).map(|k| 1.0 / k as f64).collect();
    let opts = DistanceOptions {
        spec: QuadratureSpec::new(1e-10, 1e-12, 200)?,
        allow_ill_conditioned: true,
        ..Default::default()
    };
    for (name, target) in [("w", Target::W(lambda)), ("u", Target::U(lambda))] {
        for constraint in [Constraint::None, Constraint::Admissible] {
            let t = std::time::Instant::now();
            let d = distance_upper_bound(&model, r, &target, &grid, constraint, &opts)?;
            println!(
                "target {name}, {constraint:?}: distance <= {:.6e} (‖target‖ = {:.6e}, cond {:.2e}, ridge {:.1e}, err {:.1e}) [{:.2?}]",
                d.value,
                d.target_norm,
                d.condition,
                d.ridge,
                d.objective_err,
                t.elapsed()
            );
        }
    }
    Ok(())
}
