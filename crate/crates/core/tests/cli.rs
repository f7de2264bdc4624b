use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerofree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

const HEADLINE: [&str; 9] = [
    "certify-zeta",
    "--lambda",
    "0.01+50i",
    "--r",
    "0.49",
    "--sigma1",
    "0.4",
    "--mode",
    "paper_bound",
];

#[test]
fn headline_certificate() {
    let v = json(&HEADLINE);
    let radius = v["radius"].as_f64().unwrap();
    assert!((1.44e-5..=1.54e-5).contains(&radius), "{radius}");
    assert!((v["center_re"].as_f64().unwrap() - 0.5).abs() < 1e-4);
    assert!((v["center_im"].as_f64().unwrap() - 50.0).abs() < 1e-4);
    assert_eq!(v["certified_by"], "zeta_F");
    for key in ["R", "inputs", "errors"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["F", "zeta", "C_sigma1", "psi1_norm", "sigma1", "r"] {
        assert!(v["inputs"].get(key).is_some(), "missing inputs.{key}");
    }
    assert_eq!(v["errors"]["zeta_grid_check"]["ok"], true);
}

#[test]
fn quadrature_mode_gives_a_larger_disc() {
    let closed = json(&HEADLINE);
    let mut args = HEADLINE.to_vec();
    args[8] = "quadrature";
    let quad = json(&args);
    assert_eq!(quad["certified_by"], "prop61");
    assert!(quad["radius"].as_f64().unwrap() >= closed["radius"].as_f64().unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["certify-zeta", "--r", "1.2"]), 2);
    assert_eq!(code(&["certify-zeta", "--r", "0.3"]), 2);
    assert_eq!(code(&["certify-zeta", "--lambda", "-0.1+3i"]), 2);
    assert_eq!(code(&["certify-zeta", "--lambda", "banana"]), 2);
    assert_eq!(code(&["certify-zeta", "--sigma1", "0.5"]), 2);
    assert_eq!(code(&["certify-zeta", "--frobnicate"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["disc-geometry", "--lambda", "1+i", "--R", "1.5"]), 2);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["verify", "pascal"]), 0);
    let out = run(&["certify-zeta", "--r", "1.2"]);
    assert!(!out.stderr.is_empty());
}

#[test]
fn verify_all_passes() {
    let v = json(&["verify", "all"]);
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() > 30);
    for suite in ["pascal", "vandermonde", "triangular", "mellin", "completion"] {
        assert!(checks.iter().any(|c| c["suite"] == suite), "{suite}");
    }
    let other_seed = json(&["verify", "triangular", "--seed", "99"]);
    assert_eq!(other_seed["passed"], true);
}

#[test]
fn text_and_json_agree() {
    let v = json(&HEADLINE);
    let mut args = HEADLINE.to_vec();
    args.extend(["--out", "text"]);
    let out = run(&args);
    let text = String::from_utf8(out.stdout).unwrap();
    let get = |key: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{key} = ")))
            .unwrap_or_else(|| panic!("no {key} in\n{text}"))
            .parse()
            .unwrap()
    };
    assert_eq!(get("radius"), v["radius"].as_f64().unwrap());
    assert_eq!(get("center_re"), v["center_re"].as_f64().unwrap());
    assert_eq!(get("inputs.F"), v["inputs"]["F"].as_f64().unwrap());
}

#[test]
fn config_file_and_precedence() {
    let dir = std::env::temp_dir().join(format!("zerofree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, r#"{"model": "zeta", "lambda": "0.02+30i", "r": 0.6, "sigma1": 0.25}"#).unwrap();
    let path = cfg.to_str().unwrap();
    let from_file = json(&["certify-zeta", "--config", path]);
    let from_flags = json(&["certify-zeta", "--lambda", "0.02+30i", "--r", "0.6", "--sigma1", "0.25"]);
    assert_eq!(from_file["radius"], from_flags["radius"]);
    // flags win over the file
    let mixed = json(&["certify-zeta", "--config", path, "--r", "0.49"]);
    assert_eq!(mixed["inputs"]["r"], 0.49);

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"lamda": "1+i"}"#).unwrap();
    assert_eq!(code(&["certify-zeta", "--config", bad.to_str().unwrap()]), 2);
    let other = dir.join("other.json");
    std::fs::write(&other, r#"{"model": "dirichlet-beta"}"#).unwrap();
    assert_eq!(code(&["certify-zeta", "--config", other.to_str().unwrap()]), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn batch_as_csv() {
    let out = run(&["certify-zeta", "--batch", "40:50:3", "--out", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let col = headers.iter().position(|h| h == "center_im").unwrap();
    let rad = headers.iter().position(|h| h == "radius").unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3);
    for (row, im) in rows.iter().zip([40.0, 45.0, 50.0]) {
        assert!((row[col].parse::<f64>().unwrap() - im).abs() < 1e-6);
        assert!(row[rad].parse::<f64>().unwrap() > 0.0);
    }
    let v = json(&["certify-zeta", "--batch", "40:50:3"]);
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn disc_geometry() {
    let v = json(&["disc-geometry", "--lambda", "0.3+2i", "--R", "0.5"]);
    assert!(v["boundary_residual"].as_f64().unwrap() < 1e-12);
    // |x-a|/|x+a| = R crosses the line Im = 2 at a(1∓R)/(1±R): 0.1 and 0.9
    assert!((v["center_re"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    assert!((v["center_im"].as_f64().unwrap() - 2.0).abs() < 1e-15);
    assert!((v["radius"].as_f64().unwrap() - 0.4).abs() < 1e-15);
    let h = json(&["disc-geometry", "--lambda", "0.3+2i", "--R", "1", "--sigma0", "0.1", "--shift", "0.2"]);
    assert!(h["radius"].is_null());
    assert!((h["half_plane_re_min"].as_f64().unwrap() - 0.3).abs() < 1e-15);
}

#[test]
fn distance_subcommand() {
    let v = json(&["distance", "--grid", "1,1/2", "--target", "w", "--constraint", "admissible"]);
    assert_eq!(v["disc"]["certified_by"], "thm21sharp");
    let d = v["distance"]["value"].as_f64().unwrap();
    assert!(d > 0.0 && d <= v["distance"]["target_norm"].as_f64().unwrap() + 1e-10);
    let v = json(&["distance", "--grid", "geometric:2", "--target", "w"]);
    assert!(v["disc"].is_null());
    let v = json(&["distance", "--grid", "geometric:2"]);
    assert_eq!(v["disc"]["certified_by"], "thm62");
    assert_eq!(code(&["distance", "--grid", "geometric:0"]), 2);
    assert_eq!(code(&["distance", "--grid", "1,2"]), 2);
}
