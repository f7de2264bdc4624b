//! Adaptive Gauss–Kronrod (7/15) quadrature with declared endpoint
//! singularities and dyadic tail extrapolation for infinite ranges.
//!
//! A panel whose endpoint carries an integrable singularity `|t-c|^{-σ}` is
//! integrated in the variable `v` with `t = c ± h·v^{1/(1-σ)}`; the Jacobian
//! cancels the leading singular behaviour so the transformed integrand is
//! bounded near `v = 0`.
//!
//! Integrands receive an [`Abscissa`] (anchor + offset) rather than a bare
//! `t`, so that functions with singularities at the anchor can evaluate
//! `t - anchor` without cancellation.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// How the integral over an infinite range is truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailStrategy {
    /// Extrapolate dyadic block contributions geometrically. The decay rate
    /// comes from the caller and is cross-checked against the measured
    /// ratio of the last two blocks.
    Geometric,
    /// Extend the range until a caller-supplied envelope of the remaining
    /// tail is below `abs_tol / 10`.
    BoundDriven,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Bisection budget per initial panel.
    pub max_subdivisions: usize,
    pub tail_cutoff_strategy: TailStrategy,
    /// Largest truncation point used for infinite ranges.
    pub max_cutoff: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_subdivisions: 200,
            tail_cutoff_strategy: TailStrategy::Geometric,
            max_cutoff: 131_072.0,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
            ..Self::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_tail(mut self, strategy: TailStrategy) -> Self {
        self.tail_cutoff_strategy = strategy;
        self
    }

    pub fn with_max_cutoff(mut self, cutoff: f64) -> Self {
        self.max_cutoff = cutoff;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be positive".into()));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Domain("max_subdivisions must be at least 1".into()));
        }
        if !(self.max_cutoff > 1.0) {
            return Err(Error::Domain("max_cutoff must exceed 1".into()));
        }
        Ok(())
    }
}

/// Measure multiplying the integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    None,
    /// `dt / t^{1+2r}`
    InvPowOnePlusTwoR(f64),
    /// `dt / t^{1-2σ₀}`
    InvPowOneMinusTwoSigma0(f64),
}

impl Weight {
    pub fn at(&self, t: f64) -> f64 {
        match *self {
            Weight::None => 1.0,
            Weight::InvPowOnePlusTwoR(r) => t.powf(-1.0 - 2.0 * r),
            Weight::InvPowOneMinusTwoSigma0(s0) => t.powf(2.0 * s0 - 1.0),
        }
    }
}

/// Which side of the point the singular behaviour lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Singular as `t ↑ at`.
    Left,
    /// Singular as `t ↓ at`.
    Right,
}

/// An integrable singularity `|t - at|^{-exponent}` (`exponent < 1`).
/// Nonpositive exponents mark points where the integrand is continuous but
/// not smooth; they also act as breakpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Singularity {
    pub at: f64,
    pub exponent: f64,
    pub side: Side,
}

impl Singularity {
    pub fn right(at: f64, exponent: f64) -> Self {
        Self {
            at,
            exponent,
            side: Side::Right,
        }
    }

    pub fn left(at: f64, exponent: f64) -> Self {
        Self {
            at,
            exponent,
            side: Side::Left,
        }
    }

    pub fn breakpoint(at: f64) -> Self {
        Self::right(at, 0.0)
    }
}

/// An evaluation point `t = anchor + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub anchor: f64,
    pub offset: f64,
}

impl Abscissa {
    pub fn at(t: f64) -> Self {
        Self {
            anchor: t,
            offset: 0.0,
        }
    }

    pub fn t(&self) -> f64 {
        self.anchor + self.offset
    }
}

/// Something that can be integrated.
pub trait Integrand: Sync {
    fn eval(&self, x: Abscissa) -> Complex64;

    /// Singular points or breakpoints in `[a, b]`.
    fn singularities(&self, _a: f64, _b: f64) -> Vec<Singularity> {
        Vec::new()
    }
}

impl<F> Integrand for F
where
    F: Fn(f64) -> Complex64 + Sync,
{
    fn eval(&self, x: Abscissa) -> Complex64 {
        self(x.t())
    }
}

/// A closure paired with a fixed list of singular points.
pub struct WithSingularities<F> {
    pub f: F,
    pub points: Vec<Singularity>,
}

impl<F> Integrand for WithSingularities<F>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    fn eval(&self, x: Abscissa) -> Complex64 {
        (self.f)(x.t())
    }

    fn singularities(&self, a: f64, b: f64) -> Vec<Singularity> {
        self.points
            .iter()
            .copied()
            .filter(|s| s.at >= a && s.at <= b)
            .collect()
    }
}

/// Behaviour beyond the last block of an infinite range.
#[derive(Clone, Copy)]
pub struct Tail<'a> {
    /// Dyadic blocks `∫_T^{2T}` scale like `T^{-decay}`.
    pub decay: Complex64,
    /// Bound on `|∫_T^∞ f w|`, required by [`TailStrategy::BoundDriven`].
    pub envelope: Option<&'a (dyn Fn(f64) -> f64 + Sync)>,
}

impl<'a> Tail<'a> {
    pub fn power(decay: f64) -> Self {
        Self {
            decay: Complex64::new(decay, 0.0),
            envelope: None,
        }
    }

    pub fn complex_power(decay: Complex64) -> Self {
        Self {
            decay,
            envelope: None,
        }
    }

    pub fn with_envelope(mut self, envelope: &'a (dyn Fn(f64) -> f64 + Sync)) -> Self {
        self.envelope = Some(envelope);
        self
    }
}

/// Upper limit of integration.
#[derive(Clone, Copy)]
pub enum Upper<'a> {
    Finite(f64),
    Infinite(Tail<'a>),
}

#[derive(Debug, Clone, Copy)]
enum Map {
    /// `t = v`; offsets are measured from `anchor`.
    Identity { anchor: f64 },
    /// `t = anchor + h·v^k`, `v ∈ [0, 1]`.
    Power { anchor: f64, h: f64, k: f64 },
}

impl Map {
    #[inline]
    fn point(&self, v: f64) -> (Abscissa, f64) {
        match *self {
            Map::Identity { anchor } => (
                Abscissa {
                    anchor,
                    offset: v - anchor,
                },
                1.0,
            ),
            Map::Power { anchor, h, k } => {
                let vk = v.powf(k);
                (
                    Abscissa {
                        anchor,
                        offset: h * vk,
                    },
                    h.abs() * k * vk / v,
                )
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Seg {
    v0: f64,
    v1: f64,
    map: Map,
    value: Complex64,
    err: f64,
}

fn gk15<I: Integrand + ?Sized>(f: &I, w: Weight, map: Map, v0: f64, v1: f64) -> (Complex64, f64) {
    let c = 0.5 * (v0 + v1);
    let h = 0.5 * (v1 - v0);
    let g = |v: f64| -> Complex64 {
        let (x, jac) = map.point(v);
        if jac == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        f.eval(x) * (w.at(x.t()) * jac)
    };
    let fc = g(c);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = fc.norm() * WGK[7];
    let mut fv1 = [Complex64::new(0.0, 0.0); 7];
    let mut fv2 = [Complex64::new(0.0, 0.0); 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = g(c - dx);
        let f2 = g(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += (f1 + f2) * WGK[j];
        res_abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            res_g += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = (fc - mean).norm() * WGK[7];
    for j in 0..7 {
        res_asc += ((fv1[j] - mean).norm() + (fv2[j] - mean).norm()) * WGK[j];
    }
    let value = res_k * h;
    res_abs *= h.abs();
    res_asc *= h.abs();
    let mut err = ((res_k - res_g) * h).norm();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        return (value, f64::INFINITY);
    }
    (value, err)
}

/// Split `[a, b]` into initial panels according to the singularity list.
fn initial_segments(a: f64, b: f64, mut sing: Vec<Singularity>) -> Vec<(f64, f64, Map)> {
    sing.retain(|s| s.at >= a && s.at <= b);
    sing.sort_by(|x, y| x.at.total_cmp(&y.at));
    // Merge coincident points: exponents on each side add.
    let mut pts: Vec<(f64, f64, f64)> = Vec::new(); // (at, left_exp, right_exp)
    for s in sing {
        let (le, re) = match s.side {
            Side::Left => (s.exponent, 0.0),
            Side::Right => (0.0, s.exponent),
        };
        match pts.last_mut() {
            Some(last) if (last.0 - s.at).abs() <= 1e-14 * s.at.abs().max(1e-300) => {
                last.1 += le;
                last.2 += re;
            }
            _ => pts.push((s.at, le, re)),
        }
    }
    let mut nodes: Vec<(f64, f64, f64)> = Vec::with_capacity(pts.len() + 2);
    match pts.first() {
        Some(p) if p.0 == a => {}
        _ => nodes.push((a, 0.0, 0.0)),
    }
    nodes.extend(pts.iter().copied());
    match nodes.last() {
        Some(p) if p.0 == b => {}
        _ => nodes.push((b, 0.0, 0.0)),
    }
    let mut out = Vec::new();
    for win in nodes.windows(2) {
        let (x0, _, right_exp) = win[0];
        let (x1, left_exp, _) = win[1];
        if x1 <= x0 {
            continue;
        }
        // Nonpositive exponents only mark kinks: plain panels handle them.
        let lsing = right_exp > 0.0; // singular as t ↓ x0
        let rsing = left_exp > 0.0; // singular as t ↑ x1
        match (lsing, rsing) {
            (false, false) => out.push((x0, x1, Map::Identity { anchor: x0 })),
            (true, false) => out.push((0.0, 1.0, power_map(x0, x1 - x0, right_exp))),
            (false, true) => out.push((0.0, 1.0, power_map(x1, x0 - x1, left_exp))),
            (true, true) => {
                let mid = 0.5 * (x0 + x1);
                out.push((0.0, 1.0, power_map(x0, mid - x0, right_exp)));
                out.push((0.0, 1.0, power_map(x1, mid - x1, left_exp)));
            }
        }
    }
    out
}

fn power_map(anchor: f64, h: f64, exponent: f64) -> Map {
    let e = exponent.min(0.999);
    Map::Power {
        anchor,
        h,
        // a multiple of 1/(1-e) keeps the mapped integrand a series in v^{k(1-e)};
        // k ≥ 3 makes the remaining fractional powers smooth enough for GK15
        k: (3.0 * (1.0 - e)).ceil().max(1.0) / (1.0 - e),
    }
}

struct Finite {
    value: Complex64,
    err: f64,
}

fn integrate_finite<I: Integrand + ?Sized>(
    f: &I,
    a: f64,
    b: f64,
    weight: Weight,
    spec: &QuadratureSpec,
    abs_tol: f64,
) -> Result<Finite> {
    if a == b {
        return Ok(Finite {
            value: Complex64::new(0.0, 0.0),
            err: 0.0,
        });
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("invalid integration range [{a}, {b}]")));
    }
    let init = initial_segments(a, b, f.singularities(a, b));
    let eval = |(v0, v1, map): (f64, f64, Map)| {
        let (value, err) = gk15(f, weight, map, v0, v1);
        Seg {
            v0,
            v1,
            map,
            value,
            err,
        }
    };
    let mut segs: Vec<Seg> = if init.len() > 16 {
        init.into_par_iter().map(eval).collect()
    } else {
        init.into_iter().map(eval).collect()
    };
    let limit = spec.max_subdivisions.saturating_mul(segs.len().max(1));
    let mut subdivisions = 0usize;
    loop {
        let value: Complex64 = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.err).sum();
        let tol = abs_tol.max(spec.rel_tol * value.norm());
        if err <= tol {
            return Ok(Finite { value, err });
        }
        if !err.is_finite() && subdivisions >= limit {
            return Err(Error::NonConvergence {
                err,
                tol,
                subdivisions,
            });
        }
        if subdivisions >= limit {
            return Err(Error::NonConvergence {
                err,
                tol,
                subdivisions,
            });
        }
        // Bisect the worst panels until their removal would meet tolerance.
        let mut order: Vec<usize> = (0..segs.len()).collect();
        order.sort_by(|&i, &j| segs[j].err.total_cmp(&segs[i].err));
        let mut remaining = err;
        let mut chosen = Vec::new();
        for &i in &order {
            if remaining <= 0.5 * tol {
                break;
            }
            let s = &segs[i];
            let width = s.v1 - s.v0;
            if width.abs() <= 1e-13 * (s.v0.abs() + s.v1.abs()).max(1e-300) {
                continue;
            }
            remaining -= s.err;
            chosen.push(i);
            if subdivisions + chosen.len() >= limit {
                break;
            }
        }
        if chosen.is_empty() {
            return Err(Error::NonConvergence {
                err,
                tol,
                subdivisions,
            });
        }
        subdivisions += chosen.len();
        let halves: Vec<(Seg, Seg)> = chosen
            .par_iter()
            .map(|&i| {
                let s = segs[i];
                let mid = 0.5 * (s.v0 + s.v1);
                let (v_l, e_l) = gk15(f, weight, s.map, s.v0, mid);
                let (v_r, e_r) = gk15(f, weight, s.map, mid, s.v1);
                (
                    Seg {
                        v0: s.v0,
                        v1: mid,
                        map: s.map,
                        value: v_l,
                        err: e_l,
                    },
                    Seg {
                        v0: mid,
                        v1: s.v1,
                        map: s.map,
                        value: v_r,
                        err: e_r,
                    },
                )
            })
            .collect();
        for (&i, (l, r)) in chosen.iter().zip(halves) {
            segs[i] = l;
            segs.push(r);
        }
    }
}

/// Integrate `f(t)·w(t)` from `a` to `b`.
///
/// For an infinite upper limit the range is cut into dyadic blocks starting
/// at `max(a, 1)`; the reported error includes the tail estimate.
pub fn integrate<I: Integrand + ?Sized>(
    f: &I,
    a: f64,
    b: Upper<'_>,
    weight: Weight,
    spec: &QuadratureSpec,
) -> Result<CertifiedValue> {
    spec.validate()?;
    match b {
        Upper::Finite(b) => {
            let r = integrate_finite(f, a, b, weight, spec, spec.abs_tol)?;
            Ok(CertifiedValue::new(r.value, r.err))
        }
        Upper::Infinite(tail) => integrate_infinite(f, a, tail, weight, spec),
    }
}

fn integrate_infinite<I: Integrand + ?Sized>(
    f: &I,
    a: f64,
    tail: Tail<'_>,
    weight: Weight,
    spec: &QuadratureSpec,
) -> Result<CertifiedValue> {
    let start = if a > 0.0 { a } else { 1.0 };
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    if a < start {
        let r = integrate_finite(f, a, start, weight, spec, spec.abs_tol / 4.0)?;
        value += r.value;
        err += r.err;
    }
    let block_tol = spec.abs_tol / 64.0;
    let ratio = Complex64::new(2.0, 0.0).powc(-tail.decay);
    let mut blocks: Vec<Complex64> = Vec::new();
    let mut lo = start;
    loop {
        let hi = 2.0 * lo;
        let r = integrate_finite(f, lo, hi, weight, spec, block_tol)?;
        value += r.value;
        err += r.err;
        blocks.push(r.value);
        let n = blocks.len();
        match spec.tail_cutoff_strategy {
            TailStrategy::BoundDriven => {
                let env = tail.envelope.ok_or_else(|| {
                    Error::Domain("bound-driven tail needs a decay envelope".into())
                })?;
                let bound = env(hi);
                if bound <= spec.abs_tol / 10.0 {
                    return Ok(CertifiedValue::new(value, err + bound));
                }
                if 2.0 * hi > spec.max_cutoff {
                    return Err(Error::NonConvergence {
                        err: err + bound,
                        tol: spec.abs_tol,
                        subdivisions: n,
                    });
                }
            }
            TailStrategy::Geometric => {
                if n >= 3 {
                    let (est, est_err) = geometric_tail(&blocks, ratio);
                    let tol = spec.abs_tol.max(spec.rel_tol * value.norm());
                    let settled = n >= 4 && est_err <= tol / 10.0 && {
                        let (_, prev_err) = geometric_tail(&blocks[..n - 1], ratio);
                        prev_err <= tol
                    };
                    if settled || 2.0 * hi > spec.max_cutoff {
                        return Ok(CertifiedValue::new(value + est, err + est_err));
                    }
                }
            }
        }
        lo = hi;
    }
}

/// Tail after the last block assuming the block ratio `ratio`, with an error
/// estimate from the measured ratio of the last two blocks.
fn geometric_tail(blocks: &[Complex64], ratio: Complex64) -> (Complex64, f64) {
    let n = blocks.len();
    let last = blocks[n - 1];
    let prev = blocks[n - 2];
    let model = if ratio.norm() < 1.0 {
        last * ratio / (1.0 - ratio)
    } else {
        return (Complex64::new(0.0, 0.0), f64::INFINITY);
    };
    let measured = if prev.norm() > 0.0 { last / prev } else { ratio };
    let emp = if measured.norm() < 0.999 {
        last * measured / (1.0 - measured)
    } else {
        return (model, model.norm().max(last.norm()) * 10.0);
    };
    let err = (model - emp).norm() + 4.0 * f64::EPSILON * model.norm();
    (model, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn polynomial_exact() {
        let spec = QuadratureSpec::default();
        let r = integrate(&|t: f64| c(t * t), 0.0, Upper::Finite(1.0), Weight::None, &spec).unwrap();
        assert!((r.value.re - 1.0 / 3.0).abs() < 1e-15);
        assert!(r.err < 1e-14);
    }

    #[test]
    fn power_tail() {
        let spec = QuadratureSpec::default();
        let r = integrate(
            &|t: f64| c(t.powi(-2)),
            1.0,
            Upper::Infinite(Tail::power(1.0)),
            Weight::None,
            &spec,
        )
        .unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12, "{r}");
        assert!(r.err < 1e-10);
    }

    #[test]
    fn endpoint_singularity_flattened() {
        let spec = QuadratureSpec::default();
        let f = WithSingularities {
            f: |t: f64| c((1.0 - t).powf(-0.4)),
            points: vec![Singularity::left(1.0, 0.4)],
        };
        let r = integrate(&f, 0.0, Upper::Finite(1.0), Weight::None, &spec).unwrap();
        assert!((r.value.re - 1.0 / 0.6).abs() < 1e-13, "{r}");
    }

    #[test]
    fn bound_driven_requires_envelope() {
        let spec = QuadratureSpec::new(1e-10, 1e-9, 200)
            .unwrap()
            .with_tail(TailStrategy::BoundDriven);
        let f = |t: f64| c(t.powi(-2));
        let r = integrate(&f, 1.0, Upper::Infinite(Tail::power(1.0)), Weight::None, &spec);
        assert!(matches!(r, Err(Error::Domain(_))));
        let env = |t: f64| 1.0 / t;
        let r = integrate(
            &f,
            1.0,
            Upper::Infinite(Tail::power(1.0).with_envelope(&env)),
            Weight::None,
            &spec.with_max_cutoff(1e12),
        )
        .unwrap();
        assert!((r.value.re - 1.0).abs() <= r.err && r.err < 1e-9, "{r}");
    }

    #[test]
    fn invalid_spec() {
        assert!(QuadratureSpec::new(0.0, 1e-10, 10).is_err());
        assert!(QuadratureSpec::new(1e-10, 1e-10, 0).is_err());
    }
}
