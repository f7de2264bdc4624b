//! Property suites behind `verify`.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::bounds::completion_report;
use crate::error::Result;
use crate::linalg::{
    pascal_char_poly_exact, pascal_eigenvalue_lower_bound, pascal_min_eigenvalue,
    solve_triangular, solve_vandermonde, vandermonde_abs_sum_exact, vandermonde_constant, PolyP,
};
use crate::model::{g_a, mellin_f_a, mellin_u_check, moments, Sequence, SeriesModel};
use crate::specfun::QuadratureSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Pascal,
    Vandermonde,
    Triangular,
    Mellin,
    Completion,
    All,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    /// Residual or margin, whichever the check measures.
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Sink {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Sink {
    fn new(suite: &'static str) -> Self {
        Self {
            suite,
            checks: Vec::new(),
        }
    }

    /// Passes when `value <= tol`.
    fn le(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            value,
            tol,
            pass: value <= tol,
        });
    }

    fn holds(&mut self, name: impl Into<String>, ok: bool) {
        self.le(name, if ok { 0.0 } else { 1.0 }, 0.0);
    }
}

fn rand_c(rng: &mut StdRng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn pascal() -> Result<Vec<Check>> {
    let mut s = Sink::new("pascal");
    let closed = [1.0, (3.0 - 5f64.sqrt()) / 2.0, 4.0 - 15f64.sqrt()];
    for (m, want) in closed.iter().enumerate() {
        let mu = pascal_min_eigenvalue(m + 1)?;
        s.le(format!("mu_min({}) closed form", m + 1), (mu.value.re - want).abs(), 1e-12);
    }
    for m in 1..=12 {
        let mu = pascal_min_eigenvalue(m)?;
        let lb = pascal_eigenvalue_lower_bound(m);
        // relative shortfall; m = 1 is an equality
        s.le(
            format!("mu_min({m}) = {:.6e} >= 3/(4^m-1)", mu.value.re),
            ((lb - mu.value.re) / lb).max(0.0),
            1e-12,
        );
    }
    for m in 1..=8 {
        let c = pascal_char_poly_exact(m)?;
        let sign = if m % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        let pal = (0..=m).all(|k| c[k] == &sign * &c[m - k]);
        s.holds(format!("char poly palindromic, m = {m}"), pal);
    }
    Ok(s.checks)
}

pub fn vandermonde(seed: u64) -> Result<Vec<Check>> {
    let mut s = Sink::new("vandermonde");
    for m in 1..=8 {
        let sum = vandermonde_abs_sum_exact(m)?;
        let want = (m as i128 - 1) * (1i128 << m) + 1;
        s.holds(format!("sum |w_ij| = (m-1)2^m+1, m = {m}"), *sum.numer() == want && *sum.denom() == 1);
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..500 {
        let m = rng.gen_range(1..=8);
        let y: Vec<Complex64> = (0..m).map(|_| rand_c(&mut rng)).collect();
        let (x, bound) = solve_vandermonde(&y)?;
        let lhs: f64 = x.iter().map(|z| z.norm()).sum();
        worst = worst.max(lhs - bound);
        let ymax = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
        debug_assert_eq!(bound, vandermonde_constant(m) * ymax);
    }
    s.le("sum |x_i| <= ((m-1)2^m+1) max |y| on 500 instances", worst, 1e-9);
    Ok(s.checks)
}

pub fn triangular(seed: u64) -> Result<Vec<Check>> {
    let mut s = Sink::new("triangular");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    let mut worst_res: f64 = 0.0;
    let mut done = 0;
    while done < 500 {
        let m = rng.gen_range(1..=6);
        let coeffs: Vec<Complex64> = (0..m).map(|_| rand_c(&mut rng)).collect();
        let Ok(p) = PolyP::new(coeffs) else { continue };
        let beta: Vec<Complex64> = (0..m).map(|_| rand_c(&mut rng)).collect();
        let Ok(sol) = solve_triangular(&p, &beta) else { continue };
        let ymax = sol.y.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let bsum: f64 = beta.iter().map(|z| z.norm()).sum();
        worst = worst.max((ymax - sol.xi * bsum) / (1.0 + sol.xi * bsum));
        worst_res = worst_res.max(sol.residual);
        done += 1;
    }
    s.le("max |y_k| <= xi(P) sum |beta_k| on 500 instances", worst, 1e-9);
    s.le("back-substitution residual", worst_res, 1e-10);
    Ok(s.checks)
}

pub fn completion(seed: u64) -> Result<Vec<Check>> {
    let mut s = Sink::new("completion");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst_moment: f64 = 0.0;
    let mut worst_bound = f64::NEG_INFINITY;
    for _ in 0..200 {
        let m = rng.gen_range(1..=4);
        let len = rng.gen_range(1..=5);
        let alpha: Vec<f64> = (0..len).map(|_| rng.gen_range(0.05..=1.0)).collect();
        let c: Vec<Complex64> = (0..len).map(|_| rand_c(&mut rng)).collect();
        let a = Sequence::new(alpha, c)?;
        let rep = completion_report(&a, m)?;
        let mom = moments(&rep.combined, m);
        worst_moment = worst_moment.max(mom.iter().map(|z| z.norm()).fold(0.0, f64::max));
        let weighted: f64 = rep.completion.abs_weight(1.0);
        worst_bound = worst_bound.max(weighted - rep.weighted_bound * (1.0 + 1e-12));
    }
    s.le("moments of A + A' vanish on 200 instances", worst_moment, 1e-10);
    s.le("sum |c'_j| alpha'_j within the Vandermonde bound", worst_bound, 0.0);
    Ok(s.checks)
}

pub fn mellin() -> Result<Vec<Check>> {
    let mut s = Sink::new("mellin");
    let r = 0.49;
    let model = SeriesModel::zeta(0.4)?;
    let spec = QuadratureSpec::new(1e-10, 1e-10, 200)?;
    let two = Sequence::new(
        vec![1.0, 0.5],
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)],
    )?;
    for (name, a) in [("A = ((1),(1))", Sequence::unit()), ("A = ((1,1/2),(1,2i))", two)] {
        for z in [Complex64::new(0.42, 0.0), Complex64::new(0.45, 3.0)] {
            let num = mellin_f_a(&model, &a, r, z, &spec)?;
            let w = z + r;
            let rhs = -(model.l(w)? * model.phi_hat(w)?).value * g_a(&a, w);
            s.le(
                format!("transform of f_A,r vs -L phi_hat g_A, {name}, s = {z}"),
                (num.value - rhs).norm(),
                1e-6,
            );
        }
    }
    let lambda = Complex64::new(0.01, 50.0);
    for z in [
        Complex64::new(0.2, 0.0),
        Complex64::new(0.1, 10.0),
        Complex64::new(0.4, -3.0),
    ] {
        s.le(
            format!("transform of u_r,lambda, s = {z}"),
            mellin_u_check(&model, r, lambda, z)?,
            1e-8,
        );
    }
    Ok(s.checks)
}

pub fn run(suite: Suite, seed: u64) -> Result<Report> {
    let checks = match suite {
        Suite::Pascal => pascal()?,
        Suite::Vandermonde => vandermonde(seed)?,
        Suite::Triangular => triangular(seed)?,
        Suite::Mellin => mellin()?,
        Suite::Completion => completion(seed)?,
        Suite::All => {
            let mut v = pascal()?;
            v.extend(vandermonde(seed)?);
            v.extend(triangular(seed)?);
            v.extend(mellin()?);
            v.extend(completion(seed)?);
            v
        }
    };
    Ok(Report {
        suite,
        passed: checks.iter().all(|c| c.pass),
        checks,
    })
}
