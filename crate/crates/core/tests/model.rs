use std::f64::consts::{E, PI};
use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use zerofree::linalg::PolyP;
use zerofree::model::*;
use zerofree::specfun::{
    integrate, phi_hat, zeta, Abscissa, Integrand, QuadratureSpec, Singularity, Tail, Upper, Weight,
};
use zerofree::Error;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// `u/(1-σ₁) - Σ_{n<u} (1-n/u)^{-σ₁}` summed term by term.
fn psi_direct(sigma1: f64, u: f64) -> f64 {
    let mut s = u / (1.0 - sigma1);
    let mut n = 1.0;
    while n < u {
        s -= (1.0 - n / u).powf(-sigma1);
        n += 1.0;
    }
    s
}

/// ‖ψ‖_r² for σ₁ = 0, where ψ(t) = {t}: 7-point Gauss–Legendre on each unit
/// interval up to K, then the mean value 1/3 of {t}² for the rest.
fn frac_norm_sq(r: f64) -> f64 {
    let x = [
        0.0,
        0.405_845_151_377_397_2,
        -0.405_845_151_377_397_2,
        0.741_531_185_599_394_4,
        -0.741_531_185_599_394_4,
        0.949_107_912_342_758_5,
        -0.949_107_912_342_758_5,
    ];
    let w = [
        0.417_959_183_673_469_4,
        0.381_830_050_505_118_9,
        0.381_830_050_505_118_9,
        0.279_705_391_489_276_7,
        0.279_705_391_489_276_7,
        0.129_484_966_168_869_7,
        0.129_484_966_168_869_7,
    ];
    let k_max = 200_000;
    let mut s = 0.0;
    for k in (1..k_max).rev() {
        for (xi, wi) in x.iter().zip(&w) {
            let f = 0.5 * (1.0 + xi);
            s += 0.5 * wi * f * f * (k as f64 + f).powf(-1.0 - 2.0 * r);
        }
    }
    // ∫_K^∞ ({t}² - 1/3) t^{-1-2r} dt is O(K^{-1-2r})
    s + (k_max as f64).powf(-2.0 * r) / (6.0 * r)
}

#[test]
fn residue_polynomial() {
    let p = poly_p(&SeriesModel::zeta(0.4).unwrap()).unwrap();
    assert_eq!(p.m(), 1);
    assert!((p.coeffs()[0].re - 1.0 / 0.6).abs() < 1e-15);
    let p = poly_p(&SeriesModel::zeta(0.0).unwrap()).unwrap();
    assert!((p.coeffs()[0].re - 1.0).abs() < 1e-15);
    let model = SeriesModel::zeta(0.4).unwrap();
    for u in [0.1, 0.5, 0.9] {
        assert!((psi(&model, u).unwrap().value.re - u / 0.6).abs() < 1e-10);
    }
    let mut no_pole = model.clone();
    no_pole.m_l = 0;
    assert!(matches!(poly_p(&no_pole), Err(Error::UnsupportedModel(_))));
}

#[test]
fn psi_examples() {
    let model = SeriesModel::zeta(0.4).unwrap();
    assert!((psi(&model, 0.5).unwrap().value.re - 0.5 / 0.6).abs() < 1e-15);
    let want = 1.5 / 0.6 - (1.0 - 1.0 / 1.5f64).powf(-0.4);
    assert!((psi(&model, 1.5).unwrap().value.re - want).abs() < 1e-12);
    // n < u is strict at integers
    let want = 2.0 / 0.6 - 0.5f64.powf(-0.4);
    assert!((psi(&model, 2.0).unwrap().value.re - want).abs() < 1e-12);
    assert!(psi(&model, 1e-12).unwrap().value.norm() < 1e-11);
    assert!(psi(&model, 0.0).is_err());
}

proptest! {
    #![proptest_config(cfg(200))]

    #[test]
    fn psi_matches_direct_sum(u in 1.0f64..400.0, s1 in -1.0f64..0.49) {
        let model = SeriesModel::zeta(s1).unwrap();
        let v = psi(&model, u).unwrap();
        let d = psi_direct(s1, u);
        let scale = 1.0 + (u - u.floor()).max(1e-300).powf(-s1.max(0.0));
        prop_assert!((v.value.re - d).abs() <= 1e-10 * u * scale, "u={u}: {} vs {d}", v.value.re);
    }

    #[test]
    fn f_a_r_scaling(t in 0.05f64..20.0, r in 0.41f64..0.99, r1 in 0.41f64..0.99) {
        let model = SeriesModel::zeta(0.4).unwrap();
        let a = Sequence::new(vec![1.0, 0.3], vec![c(1.0, 0.0), c(-0.5, 2.0)]).unwrap();
        let f = f_a(&model, &a, r, t).unwrap().value;
        let f1 = f_a(&model, &a, r1, t).unwrap().value;
        prop_assert!((f - f1 * t.powf(r - r1)).norm() <= 1e-12 * (1.0 + f.norm()));
    }

    #[test]
    fn g_a_triangle(re in -2.0f64..2.0, im in -60.0f64..60.0) {
        let a = Sequence::new(vec![1.0, 0.5, 0.125], vec![c(1.0, 1.0), c(0.0, -2.0), c(3.0, 0.0)]).unwrap();
        let s = c(re, im);
        prop_assert!(g_a(&a, s).norm() <= a.abs_weight(re) * (1.0 + 1e-14));
    }

    #[test]
    fn blaschke_on_boundary(t in -1e3f64..1e3, lr in 0.5f64..3.0, li in -100.0f64..100.0) {
        let r = 0.49;
        let b = blaschke(c(lr, li), r, c(r, t)).unwrap();
        prop_assert!((b.norm() - 1.0).abs() < 1e-14);
        let inside = blaschke(c(lr, li), r, c(r + 0.3, t)).unwrap();
        prop_assert!(inside.norm() <= 1.0);
    }
}

#[test]
fn psi_unit_route_matches_generic() {
    let unit = SeriesModel::zeta(0.3).unwrap();
    let mut generic = unit.clone();
    generic.coefficients = Coefficients::Custom(Arc::new(|_| c(1.0, 0.0)));
    for u in [0.7, 1.0, 1.01, 2.5, 17.999, 123.4] {
        let a = psi(&unit, u).unwrap();
        let b = psi(&generic, u).unwrap();
        assert!((a.value - b.value).norm() <= a.err + b.err + 1e-12, "u={u}");
    }
}

#[test]
fn psi_norm_sigma1_zero_against_fractional_part() {
    let model = SeriesModel::zeta(0.0).unwrap();
    let spec = QuadratureSpec::new(1e-10, 1e-12, 200).unwrap();
    for r in [0.5, 0.9] {
        let n = psi_norm_r(&model, r, &spec).unwrap();
        let want = frac_norm_sq(r);
        assert!(
            (n.squared.value.re - want).abs() < 1e-8 * want,
            "r={r}: {} vs {want}",
            n.squared.value.re
        );
    }
}

#[test]
fn psi_norm_bound_and_monotone() {
    let model = SeriesModel::zeta(0.4).unwrap();
    let spec = QuadratureSpec::new(1e-10, 1e-12, 200).unwrap();
    let n = psi_norm_r(&model, 0.49, &spec).unwrap();
    let bound = zeta_psi_norm_sq_bound(0.49, 0.4).unwrap().value.re;
    let cs = 1.0 / 0.2 + 1.0 / (0.36 * 2.2) + 1.0 / 0.36;
    assert!((c_sigma1(0.4) - cs).abs() < 1e-14);
    assert!((bound - (1.0 / 0.98 + cs * zeta(c(1.18, 0.0)).unwrap().value.re)).abs() < 1e-10);
    assert!(n.squared.value.re + n.squared.err <= bound);
    assert_eq!(n.within_bound, Some(true));

    let z0 = SeriesModel::zeta(0.0).unwrap();
    let a = psi_norm_r(&z0, 0.5, &spec).unwrap().norm.value.re;
    let b = psi_norm_r(&z0, 0.9, &spec).unwrap().norm.value.re;
    assert!(b <= a);

    let coarse = psi_norm_r(&model, 0.49, &QuadratureSpec::new(1e-6, 1e-8, 200).unwrap()).unwrap();
    let fine = psi_norm_r(&model, 0.49, &QuadratureSpec::new(1e-8, 1e-10, 200).unwrap()).unwrap();
    assert!(
        (coarse.squared.value - fine.squared.value).norm() <= coarse.squared.err + fine.squared.err
    );
    assert!(psi_norm_r(&model, 0.4, &spec).is_err());
}

#[test]
fn p_norms() {
    assert!((p_norm2(&PolyP::real(&[1.0]).unwrap()) - 0.5f64.sqrt()).abs() < 1e-15);
    assert!((p_norm2_sq(&PolyP::real(&[0.0, 1.0]).unwrap()) - 0.25).abs() < 1e-15);
    let spec = QuadratureSpec::new(1e-12, 1e-14, 200).unwrap();
    for coeffs in [
        vec![c(1.0, 0.0), c(-2.0, 0.5)],
        vec![c(0.3, 0.0), c(0.0, 1.0), c(1.0, -1.0)],
    ] {
        let p = PolyP::new(coeffs).unwrap();
        let pp = p.clone();
        let f = zerofree::specfun::WithSingularities {
            f: move |u: f64| c(pp.eval_log(u.ln()).norm_sqr() * u, 0.0),
            points: vec![Singularity::right(0.0, 0.01)],
        };
        let q = integrate(&f, 0.0, Upper::Finite(1.0), Weight::None, &spec).unwrap();
        assert!((q.value.re - p_norm2_sq(&p)).abs() < 1e-10);
    }
}

#[test]
fn f_a_examples() {
    let model = SeriesModel::zeta(0.4).unwrap();
    let r = 0.49;
    for t in [1.5f64, 4.0, 100.0] {
        let want = t.powf(r) / t / 0.6;
        assert!((f_a(&model, &Sequence::unit(), r, t).unwrap().value.re - want).abs() < 1e-12);
    }
    let zero = Sequence::new(vec![1.0, 0.5], vec![c(0.0, 0.0); 2]).unwrap();
    assert_eq!(f_a(&model, &zero, r, 0.3).unwrap().value, c(0.0, 0.0));
}

#[test]
fn g_a_examples() {
    let s = c(0.3, 7.0);
    assert!((g_a(&Sequence::unit(), s) - 1.0).norm() < 1e-15);
    let a = Sequence::new(vec![1.0 / E], vec![c(2.0, 0.0)]).unwrap();
    assert!((g_a(&a, c(1.0, 0.0)) - 2.0 / E).norm() < 1e-15);
    assert!(Sequence::new(vec![1.5], vec![c(1.0, 0.0)]).is_err());
    assert!(Sequence::new(vec![0.5, 0.2], vec![c(1.0, 0.0)]).is_err());
}

#[test]
fn blaschke_and_kernel_examples() {
    let lam = c(0.01, 50.0);
    let r = 0.49;
    assert_eq!(blaschke(lam, r, lam).unwrap(), c(0.0, 0.0));
    let one = c(1.0, 0.0);
    let b = blaschke(one, r, lam + r).unwrap();
    assert!((b - (lam + r - 1.0) / (lam - r + 1.0)).norm() < 1e-15);
    assert!(matches!(blaschke(lam, r, 2.0 * r - lam.conj()), Err(Error::Pole(_))));

    assert!((kernel(one, 0.0, one).unwrap().re - 1.0 / (4.0 * PI)).abs() < 1e-16);
    assert!((kernel_norm(lam, 0.0).unwrap() - (0.04 * PI).powf(-0.5)).abs() < 1e-12);
    assert!(kernel(c(0.2, 0.0), 0.3, one).is_err());
}

/// `h(it)/(λ - it) + h(-it)/(λ + it)` for `h(s) = 1/(s+1)`.
struct Reproduce {
    lambda: Complex64,
}

impl Integrand for Reproduce {
    fn eval(&self, x: Abscissa) -> Complex64 {
        let t = x.t();
        let h = |s: Complex64| 1.0 / (s + 1.0);
        h(c(0.0, t)) / (self.lambda - c(0.0, t)) + h(c(0.0, -t)) / (self.lambda + c(0.0, t))
    }
}

#[test]
fn kernel_reproduces() {
    let spec = QuadratureSpec::new(1e-9, 1e-12, 400).unwrap();
    for lambda in [c(0.5, 2.0), c(0.1, -7.0)] {
        let f = Reproduce { lambda };
        let q = integrate(&f, 0.0, Upper::Infinite(Tail::power(1.0)), Weight::None, &spec).unwrap();
        let got = q.value / (2.0 * PI);
        let want = 1.0 / (lambda + 1.0);
        assert!((got - want).norm() < 1e-6, "{got} vs {want}");
        // and against the kernel itself: dt = ds/i on Re s = 0
        let k = kernel(lambda, 0.0, c(0.0, 0.0)).unwrap();
        assert!((k - 1.0 / (2.0 * PI * lambda.conj())).norm() < 1e-15);
    }
}

#[test]
fn u_branches_and_mellin() {
    let model = SeriesModel::zeta(0.4).unwrap();
    let r = 0.49;
    let lam = c(0.01, 50.0);
    let a = c(2.0 - 2.0 * r, 0.0);
    let b = r - 1.0 - lam.conj();
    for t in [0.01f64, 0.3, 1.0] {
        let want = (1.0 + a / b) * (lam.conj() * t.ln()).exp();
        assert!((u_r_lambda(&model, r, lam, t).unwrap() - want).norm() < 1e-13);
    }
    let u = UrLambda::for_model(&model, r, lam).unwrap();
    assert!((u.q[0] - a / b).norm() < 1e-15);
    for t in [1.5f64, 10.0] {
        let want = a / b * t.powf(r - 1.0);
        assert!((u.eval(t) - want).norm() < 1e-13);
    }
    for s in [c(0.2, 0.0), c(0.1, 10.0), c(0.4, -3.0), c(-0.005, 0.0), c(0.5, 0.0)] {
        assert!(mellin_u_check(&model, r, lam, s).unwrap() < 1e-8, "s={s}");
    }
    // strip is (-0.01, 0.51)
    assert!(mellin_u_check(&model, r, lam, c(0.51, 0.0)).is_err());
    assert!(mellin_u_check(&model, r, lam, c(-0.02, 1.0)).is_err());
}

#[test]
fn u_mellin_real_axis_by_hand() {
    // m = 1, real s: ∫₀¹ C₀ t^{λ̄+s-1} dt + ∫₁^∞ (A/B) t^{r+s-2} dt
    let model = SeriesModel::zeta(0.4).unwrap();
    let (r, lam, s) = (0.6, c(0.3, 2.0), 0.1);
    let u = UrLambda::for_model(&model, r, lam).unwrap();
    let a = 2.0 - 2.0 * r;
    let b = r - 1.0 - lam.conj();
    let want = (1.0 + a / b) / (lam.conj() + s) + (a / b) / (1.0 - r - s);
    assert!((u.mellin(c(s, 0.0)).unwrap() - want).norm() < 1e-14);
}

#[test]
fn psi_mellin_identity() {
    let model = SeriesModel::zeta(0.4).unwrap();
    let spec = QuadratureSpec::new(1e-10, 1e-12, 200).unwrap();
    for z in [c(0.45, 0.0), c(0.6, 5.0), c(0.9, -20.0)] {
        let m = mellin_psi_inv(&model, &Sequence::unit(), z, &spec).unwrap();
        let want = -(zeta(z).unwrap().value * phi_hat(z, 0.4).unwrap().value);
        assert!((m.value - want).norm() < 1e-6, "z={z}: {} vs {want}", m.value);
    }
}

#[test]
fn admissibility_examples() {
    let rep = admissibility(&Sequence::unit(), 1, 1e-10).unwrap();
    assert_eq!(rep.moments[0], c(1.0, 0.0));
    assert!(!rep.is_admissible);
    let a = Sequence::new(vec![1.0, 1.0 / E], vec![c(1.0, 0.0), c(-E, 0.0)]).unwrap();
    let rep = admissibility(&a, 1, 1e-10).unwrap();
    assert!(rep.moments[0].norm() < 1e-15 && rep.is_admissible);
    assert!(!admissibility(&a, 2, 1e-10).unwrap().is_admissible);
}

#[test]
fn model_domains() {
    assert!(SeriesModel::zeta(0.5).is_err());
    let m = SeriesModel::zeta(0.4).unwrap();
    assert!(m.check_r(0.4).is_err() && m.check_r(0.41).is_ok() && m.check_r(1.0).is_err());
    let m = m.with_r0(0.45).unwrap();
    assert!(m.check_r(0.45).is_ok() && m.check_r(0.44).is_err());
    assert!(SeriesModel::zeta(0.4).unwrap().with_r0(0.3).is_err());
}
