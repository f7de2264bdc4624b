//! The `zerofree` command line: `certify-zeta`, `verify`, `distance` and
//! `disc-geometry`.
//!
//! Exit codes: 0 ok, 1 a verification check failed, 2 bad input, 3 a
//! numerical routine failed.

pub mod parse;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::bounds::{distance_upper_bound, Constraint, DistanceOptions, Target};
use crate::discs::{
    inputs_record, prop61_radius, pseudo_to_euclidean, thm21_sharp_disc, thm62_disc, zeta_f,
    zeta_grid_check, Certificate, CertifiedBy, Geometry, NormMode, PseudoDisc,
};
use crate::error::{Error, Result};
use crate::model::{Sequence, SeriesModel};
use crate::specfun::QuadratureSpec;
use parse::{format_complex, parse_complex, parse_grid, parse_range};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

pub const DEFAULT_LAMBDA: &str = "0.01+50i";
pub const DEFAULT_R: f64 = 0.49;
pub const DEFAULT_SIGMA1: f64 = 0.4;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_GRID: &str = "harmonic:8";

#[derive(Parser, Debug)]
#[command(name = "zerofree", version, about = "Certified zero-free discs for ζ and Dirichlet series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Zero-free disc for ζ around λ + r.
    CertifyZeta(CertifyArgs),
    /// Run a property suite.
    Verify(VerifyArgs),
    /// Finite-span distance bound and the disc it certifies.
    Distance(DistanceArgs),
    /// Euclidean form of a pseudo-hyperbolic disc.
    DiscGeometry(GeometryArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[value(name = "paper_bound", alias = "paper-bound")]
    PaperBound,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutFormat {
    #[default]
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    /// `u_{r,λ}` (certifies through δ_r)
    U,
    /// `w_λ` (certifies through d♯ with `--constraint admissible`)
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintKind {
    None,
    Admissible,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// λ as `a+bi`
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma1: Option<f64>,
    /// Relative quadrature tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// JSON file with default parameters; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Sweep Im λ over `START:END:N`, keeping Re λ.
    #[arg(long, allow_hyphen_values = true)]
    pub batch: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: verify::Suite,
    #[arg(long, default_value_t = 20240601)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
}

#[derive(Args, Debug)]
pub struct DistanceArgs {
    #[command(flatten)]
    pub common: Common,
    /// `geometric:n` (α = 2^{-j}), `harmonic:n` (α = 1/k), or a list `1,1/2,0.3`.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, value_enum)]
    pub constraint: Option<ConstraintKind>,
    #[arg(long, value_enum)]
    pub target: Option<TargetKind>,
    /// Keep going (with more ridge) on an ill-conditioned Gram matrix.
    #[arg(long)]
    pub allow_ill_conditioned: bool,
}

#[derive(Args, Debug)]
pub struct GeometryArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long = "R")]
    pub ratio: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub sigma0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub shift: f64,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
}

/// Contents of `--config`. Every field is optional.
#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Only `"zeta"` is available.
    pub model: Option<String>,
    pub lambda: Option<String>,
    pub r: Option<f64>,
    pub sigma1: Option<f64>,
    /// Raise the model's `r₀`.
    pub r0: Option<f64>,
    pub tol: Option<f64>,
    pub mode: Option<Mode>,
    pub grid: Option<String>,
    pub constraint: Option<ConstraintKind>,
    pub target: Option<TargetKind>,
    pub allow_ill_conditioned: Option<bool>,
}

impl Config {
    pub fn load(path: &PathBuf) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("bad config {}: {e}", path.display())))
    }
}

/// Flags merged over the config file over the defaults.
#[derive(Debug, Clone)]
struct Params {
    lambda: Complex64,
    r: f64,
    spec: QuadratureSpec,
    model: SeriesModel,
    cfg: Config,
}

fn params(c: &Common) -> Result<Params> {
    let cfg = match &c.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(m) = &cfg.model {
        if m != "zeta" {
            return Err(Error::UnsupportedModel(format!(
                "model '{m}' is not available from the command line"
            )));
        }
    }
    let lambda = parse_complex(
        c.lambda
            .as_deref()
            .or(cfg.lambda.as_deref())
            .unwrap_or(DEFAULT_LAMBDA),
    )?;
    let r = c.r.or(cfg.r).unwrap_or(DEFAULT_R);
    let sigma1 = c.sigma1.or(cfg.sigma1).unwrap_or(DEFAULT_SIGMA1);
    let tol = c.tol.or(cfg.tol).unwrap_or(DEFAULT_TOL);
    let spec = QuadratureSpec::new(tol, (tol * 1e-2).max(1e-15), 200)?;
    let mut model = SeriesModel::zeta(sigma1)?;
    if let Some(r0) = cfg.r0 {
        model = model.with_r0(r0)?;
    }
    model.check_r(r)?;
    model.check_lambda(lambda)?;
    Ok(Params {
        lambda,
        r,
        spec,
        model,
        cfg,
    })
}

fn cv_json(v: crate::CertifiedValue) -> Value {
    json!({"re": v.value.re, "im": v.value.im, "err": v.err})
}

/// One ζ certificate: `F(λ,r,σ₁)` in paper-bound mode, the Gram norm of
/// `f_{(1),(1)}` in quadrature mode.
pub fn certify_zeta_one(
    model: &SeriesModel,
    lambda: Complex64,
    r: f64,
    mode: Mode,
    spec: &QuadratureSpec,
) -> Result<Certificate> {
    let a = Sequence::unit();
    let mut inputs = inputs_record(model, &a, r, lambda);
    inputs.insert("lambda".into(), json!(format_complex(lambda)));
    inputs.insert("mode".into(), serde_json::to_value(mode).unwrap_or(Value::Null));
    let mut errors = Map::new();
    let (pseudo, by) = match mode {
        Mode::PaperBound => {
            let z = zeta_f(lambda, r, model.sigma1)?;
            inputs.insert("F".into(), json!(z.f));
            inputs.insert("zeta".into(), cv_json(z.zeta));
            inputs.insert("gamma_lambda_r".into(), cv_json(z.gamma_lambda_r));
            inputs.insert("gamma_one_minus_sigma1".into(), cv_json(z.gamma_one_minus_sigma1));
            inputs.insert("gamma_shifted".into(), cv_json(z.gamma_shifted));
            inputs.insert("C_sigma1".into(), json!(z.c_sigma1));
            inputs.insert("C_r_sigma1".into(), cv_json(z.c_r_sigma1));
            inputs.insert("psi1_norm".into(), json!(z.psi1_norm));
            errors.insert("F".into(), json!(z.f_err));
            errors.insert("zeta".into(), json!(z.zeta.err));
            (z.disc, CertifiedBy::ZetaF)
        }
        Mode::Quadrature => {
            let p = prop61_radius(model, &a, r, lambda, NormMode::Quadrature(*spec))?;
            inputs.insert("R_nominal".into(), json!(p.ratio_nominal));
            inputs.insert("h".into(), cv_json(p.h));
            inputs.insert("h_norm".into(), cv_json(p.h_norm));
            inputs.insert("tol".into(), json!(spec.rel_tol));
            errors.insert("R".into(), json!(p.ratio_err));
            errors.insert("h".into(), json!(p.h.err));
            errors.insert("h_norm".into(), json!(p.h_norm.err));
            (p.disc, CertifiedBy::Prop61)
        }
    };
    if let Geometry::Disc(d) = pseudo_to_euclidean(&pseudo) {
        let chk = zeta_grid_check(&d)?;
        errors.insert(
            "zeta_grid_check".into(),
            serde_json::to_value(chk).unwrap_or(Value::Null),
        );
    }
    Ok(Certificate::new(pseudo, by, inputs, errors))
}

fn cmd_certify(a: &CertifyArgs) -> Result<Value> {
    let p = params(&a.common)?;
    let mode = a.mode.or(p.cfg.mode).unwrap_or(Mode::PaperBound);
    match &a.batch {
        None => {
            let c = certify_zeta_one(&p.model, p.lambda, p.r, mode, &p.spec)?;
            Ok(serde_json::to_value(c).unwrap_or(Value::Null))
        }
        Some(b) => {
            let mut rows = Vec::new();
            for im in parse_range(b)? {
                let lam = Complex64::new(p.lambda.re, im);
                let c = certify_zeta_one(&p.model, lam, p.r, mode, &p.spec)?;
                rows.push(serde_json::to_value(c).unwrap_or(Value::Null));
            }
            Ok(Value::Array(rows))
        }
    }
}

fn cmd_distance(a: &DistanceArgs) -> Result<Value> {
    let p = params(&a.common)?;
    let grid = parse_grid(a.grid.as_deref().or(p.cfg.grid.as_deref()).unwrap_or(DEFAULT_GRID))?;
    let constraint = match a.constraint.or(p.cfg.constraint).unwrap_or(ConstraintKind::None) {
        ConstraintKind::None => Constraint::None,
        ConstraintKind::Admissible => Constraint::Admissible,
    };
    let kind = a.target.or(p.cfg.target).unwrap_or(TargetKind::U);
    let target = match kind {
        TargetKind::U => Target::U(p.lambda),
        TargetKind::W => Target::W(p.lambda),
    };
    let opts = DistanceOptions {
        spec: p.spec,
        allow_ill_conditioned: a.allow_ill_conditioned || p.cfg.allow_ill_conditioned.unwrap_or(false),
        ..Default::default()
    };
    let d = distance_upper_bound(&p.model, p.r, &target, &grid, constraint, &opts)?;
    let mut inputs = inputs_record(&p.model, &Sequence::unit(), p.r, p.lambda);
    inputs.remove("A");
    inputs.insert("lambda".into(), json!(format_complex(p.lambda)));
    inputs.insert("grid".into(), json!(grid));
    inputs.insert("target".into(), serde_json::to_value(kind).unwrap_or(Value::Null));
    inputs.insert(
        "constraint".into(),
        serde_json::to_value(constraint).unwrap_or(Value::Null),
    );
    inputs.insert("distance_upper".into(), json!(d.value));
    let mut errors = Map::new();
    errors.insert("objective".into(), json!(d.objective_err));
    errors.insert("gram".into(), json!(d.gram_err));
    // a bound on dist(u, K_r) certifies through δ_r whatever the
    // constraint; for w_λ only the admissible span gives d♯
    let disc = match (kind, constraint) {
        (TargetKind::U, _) => Some((
            thm62_disc(d.value, p.r, p.lambda, p.model.sigma0)?,
            CertifiedBy::Thm62,
        )),
        (TargetKind::W, Constraint::Admissible) => Some((
            thm21_sharp_disc(d.value, p.r, p.lambda, p.model.sigma0)?,
            CertifiedBy::Thm21Sharp,
        )),
        (TargetKind::W, Constraint::None) => None,
    };
    let disc = match disc {
        Some((pd, by)) => serde_json::to_value(Certificate::new(pd, by, inputs, errors))
            .unwrap_or(Value::Null),
        None => Value::Null,
    };
    Ok(json!({
        "distance": serde_json::to_value(&d).unwrap_or(Value::Null),
        "disc": disc,
    }))
}

/// Largest deviation of 20 boundary samples from the Euclidean circle.
pub fn boundary_residual(d: &PseudoDisc) -> Option<f64> {
    let Geometry::Disc(e) = pseudo_to_euclidean(d) else {
        return None;
    };
    Some(
        (0..20)
            .map(|k| {
                let p = d.boundary_point(std::f64::consts::TAU * k as f64 / 20.0);
                ((p - e.center).norm() - e.radius).abs()
            })
            .fold(0.0, f64::max),
    )
}

fn cmd_geometry(a: &GeometryArgs) -> Result<Value> {
    let lambda = parse_complex(&a.lambda)?;
    if !(0.0..=1.0).contains(&a.ratio) {
        return Err(Error::Domain(format!("R must lie in [0, 1], got {}", a.ratio)));
    }
    let d = PseudoDisc::new(lambda, a.ratio, a.sigma0, a.shift)?;
    let mut v = json!({
        "lambda": format_complex(lambda),
        "R": d.ratio,
        "sigma0": d.sigma0,
        "shift": d.shift,
    });
    let m = v.as_object_mut().expect("object");
    match pseudo_to_euclidean(&d) {
        Geometry::Disc(e) => {
            m.insert("center_re".into(), json!(e.center.re));
            m.insert("center_im".into(), json!(e.center.im));
            m.insert("radius".into(), json!(e.radius));
            m.insert("boundary_residual".into(), json!(boundary_residual(&d)));
        }
        Geometry::HalfPlane { re_min } => {
            m.insert("center_re".into(), Value::Null);
            m.insert("center_im".into(), Value::Null);
            m.insert("radius".into(), Value::Null);
            m.insert("half_plane_re_min".into(), json!(re_min));
        }
    }
    Ok(v)
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        x => out.push((prefix.to_string(), x.to_string())),
    }
}

fn records(v: &Value) -> Vec<&Value> {
    match v {
        Value::Array(a) if a.iter().all(Value::is_object) && !a.is_empty() => a.iter().collect(),
        x => vec![x],
    }
}

/// Render a result document. Text and CSV print the same number strings
/// as the JSON.
pub fn render(v: &Value, fmt: OutFormat) -> String {
    match fmt {
        OutFormat::Json => {
            let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
            s.push('\n');
            s
        }
        OutFormat::Text => {
            let mut s = String::new();
            for (i, rec) in records(v).into_iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                let mut kv = Vec::new();
                flatten("", rec, &mut kv);
                for (k, x) in kv {
                    s.push_str(&format!("{k} = {x}\n"));
                }
            }
            s
        }
        OutFormat::Csv => {
            let recs: Vec<Vec<(String, String)>> = records(v)
                .into_iter()
                .map(|r| {
                    let mut kv = Vec::new();
                    flatten("", r, &mut kv);
                    kv
                })
                .collect();
            let mut header: Vec<String> = Vec::new();
            for r in &recs {
                for (k, _) in r {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            let _ = w.write_record(&header);
            for r in &recs {
                let row: Vec<&str> = header
                    .iter()
                    .map(|h| {
                        r.iter()
                            .find(|(k, _)| k == h)
                            .map(|(_, x)| x.as_str())
                            .unwrap_or("")
                    })
                    .collect();
                let _ = w.write_record(&row);
            }
            String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_domain() {
        EXIT_DOMAIN
    } else {
        EXIT_NUMERIC
    }
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let (result, fmt) = match &cli.command {
        Command::CertifyZeta(a) => (cmd_certify(a), a.common.out),
        Command::Distance(a) => (cmd_distance(a), a.common.out),
        Command::DiscGeometry(a) => (cmd_geometry(a), a.out),
        Command::Verify(a) => {
            let rep = verify::run(a.suite, a.seed);
            let code = match &rep {
                Ok(r) if !r.passed => EXIT_VERIFY,
                _ => EXIT_OK,
            };
            let rep = rep.map(|r| serde_json::to_value(r).unwrap_or(Value::Null));
            match rep {
                Ok(v) => {
                    let _ = write!(out, "{}", render(&v, a.out));
                    return code;
                }
                Err(e) => (Err(e), a.out),
            }
        }
    };
    match result {
        Ok(v) => {
            let _ = write!(out, "{}", render(&v, fmt));
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("zerofree").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn bad_r_is_a_domain_error() {
        let (code, _, err) = go(&["certify-zeta", "--r", "1.2"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("r = 1.2"), "{err}");
    }

    #[test]
    fn unknown_flag() {
        assert_eq!(go(&["certify-zeta", "--bogus"]).0, EXIT_DOMAIN);
        assert_eq!(go(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn flatten_paths() {
        let v = json!({"a": {"b": [1, 2]}, "c": null, "d": "x"});
        let mut kv = Vec::new();
        flatten("", &v, &mut kv);
        assert_eq!(
            kv,
            vec![
                ("a.b.0".into(), "1".into()),
                ("a.b.1".into(), "2".into()),
                ("c".into(), "".into()),
                ("d".into(), "x".into())
            ]
        );
    }
}
