mod common;

use std::path::{Path, PathBuf};

use minsurf4::cli::{run, EXIT_COMPAT, EXIT_DEGENERATE, EXIT_IO, EXIT_PARSE, EXIT_TOLERANCE};
use minsurf4::io::mesh::{quad_mesh, write_mesh};
use minsurf4::{Grid2, Vec4};

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("minsurf4-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn cli(out: &Path, args: &[&str]) -> i32 {
    let mut v = vec!["minsurf4".to_string(), "--out".into(), out.display().to_string()];
    v.extend(args.iter().map(|s| s.to_string()));
    run(v)
}

fn summary_value(dir: &Path, key: &str) -> f64 {
    let s = std::fs::read_to_string(dir.join("summary.txt")).unwrap();
    s.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.trim().parse().ok()))
        .unwrap_or_else(|| panic!("{key} missing from summary:\n{s}"))
}

fn classes(dir: &Path) -> Vec<String> {
    let text = std::fs::read_to_string(dir.join("invariants.csv")).unwrap();
    text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().to_string()).collect()
}

const ODE_SPEC: &str = "[surface]\nkind = \"rotational-ode\"\nalpha = 1.0\nbeta = 2.0\nf0 = 1.0\ng0 = 0.5\ntheta0 = 0.5\nlength = 1.0\nh_u = 0.005\n";

#[test]
fn argument_errors() {
    assert_eq!(run(["minsurf4", "--help"]), 0);
    assert_eq!(run(["minsurf4", "frobnicate"]), EXIT_PARSE);
    assert_eq!(run(["minsurf4", "--grid", "3x3", "analyze", "builtin:plane"]), EXIT_PARSE);
    assert_eq!(run(["minsurf4", "--tol", "tol_flat", "analyze", "builtin:plane"]), EXIT_PARSE);
    let d = scratch("args");
    assert_eq!(cli(&d, &["analyze", "builtin:nope"]), EXIT_PARSE);
    assert_eq!(cli(&d, &["--tol", "tol_flat=-1", "analyze", "builtin:plane"]), EXIT_PARSE);
    assert_eq!(cli(&d, &["analyze", d.join("missing.toml").to_str().unwrap()]), EXIT_IO);
    std::fs::write(d.join("bad.toml"), "[surface]\nkind = \"builtin\"\nname = \"plane\"\ncolour = 3\n").unwrap();
    assert_eq!(cli(&d, &["analyze", d.join("bad.toml").to_str().unwrap()]), EXIT_PARSE);
}

#[test]
fn plane_is_flat() {
    let d = scratch("plane");
    assert_eq!(cli(&d, &["analyze", "builtin:plane"]), 0);
    let c = classes(&d);
    assert_eq!(c.len(), 101 * 101);
    assert!(c.iter().all(|x| x == "Flat"));
    let text = std::fs::read_to_string(d.join("invariants.csv")).unwrap();
    for l in text.lines().skip(1) {
        let cells: Vec<&str> = l.split(',').collect();
        for k in 5..11 {
            assert_eq!(cells[k].parse::<f64>().unwrap(), 0.0, "{l}");
        }
    }
    let h = std::fs::read_to_string(d.join("histogram.txt")).unwrap();
    assert!(h.contains("Flat 10201"));
}

#[test]
fn clifford_is_not_minimal() {
    let d = scratch("clifford");
    assert_eq!(cli(&d, &["--grid", "21x21", "classify", "builtin:clifford"]), 0);
    let h = std::fs::read_to_string(d.join("histogram.txt")).unwrap();
    // the oracle sees κ² − k bounded away from zero everywhere on the torus
    let s = minsurf4::catalog::clifford_torus();
    let mut rng = common::rng(3);
    for _ in 0..5 {
        let dm = s.domain;
        let (u, v) = (common::random_in(&mut rng, dm.u_min, dm.u_max), common::random_in(&mut rng, dm.v_min, dm.v_max));
        let o = common::oracle_invariants(&s, u, v);
        assert!(o.kappa * o.kappa - o.k > 1e-2);
    }
    assert!(h.contains("NonMinimal 441"), "{h}");
}

#[test]
fn rotational_pipeline_round_trip() {
    let d = scratch("ode");
    let spec = d.join("ode.toml");
    std::fs::write(&spec, ODE_SPEC).unwrap();
    let spec = spec.to_str().unwrap();
    assert_eq!(cli(&d, &["analyze", spec]), 0);
    assert!(classes(&d).iter().all(|x| x == "MinimalGeneralType"));
    assert!(summary_value(&d, "max_abs_kappa2_minus_k") < 1e-7);

    let prof = d.join("prof.toml");
    std::fs::write(&prof, "[surface]\nkind = \"invariant-profile\"\nfile = \"invariant_profile.csv\"\nv_extent = 1.0\n").unwrap();
    let r = scratch("ode-rec");
    assert_eq!(cli(&r, &["reconstruct", prof.to_str().unwrap()]), 0);
    assert!(summary_value(&r, "compatibility") < 1e-3);
    assert!(summary_value(&r, "orthonormality") < 1e-5);
    assert!(summary_value(&r, "closure") < 1e-7);
    assert!(r.join("surface.mesh4").exists());

    assert_eq!(cli(&r, &["rotational", spec]), 0);
    assert!(r.join("profile.csv").exists());

    // determinism: the same run twice gives identical bytes
    let again = scratch("ode-again");
    assert_eq!(cli(&again, &["analyze", spec]), 0);
    for f in ["invariants.csv", "frame_invariants.csv", "invariant_profile.csv"] {
        assert_eq!(std::fs::read(d.join(f)).unwrap(), std::fs::read(again.join(f)).unwrap(), "{f}");
    }

    // a corrupted profile is a parse error
    std::fs::write(d.join("invariant_profile.csv"), "u,mu,nu\n0,1,oops\n").unwrap();
    assert_eq!(cli(&r, &["reconstruct", prof.to_str().unwrap()]), EXIT_PARSE);
}

#[test]
fn incompatible_field_rejected() {
    let d = scratch("bad-field");
    let mut t = String::from("u,v,mu,nu\n");
    for i in 0..21 {
        for j in 0..21 {
            let (u, v) = (0.3 + 0.05 * i as f64, 0.3 + 0.05 * j as f64);
            t += &format!("{u},{v},{},{}\n", 1.0 + 0.3 * u * v, 0.2 + 0.1 * u);
        }
    }
    std::fs::write(d.join("field.csv"), t).unwrap();
    let spec = d.join("field.toml");
    std::fs::write(&spec, "[surface]\nkind = \"invariant-field\"\nfile = \"field.csv\"\n").unwrap();
    assert_eq!(cli(&d, &["reconstruct", spec.to_str().unwrap()]), EXIT_COMPAT);
    let s = std::fs::read_to_string(d.join("summary.txt")).unwrap();
    assert!(s.contains("rejected"));
    assert!(summary_value(&d, "compatibility") > 1e-3);
}

#[test]
fn degenerate_and_tolerance_exits() {
    let d = scratch("exits");
    let spec = d.join("axis.toml");
    std::fs::write(&spec, ODE_SPEC.replace("f0 = 1.0", "f0 = 0.0").replace("g0 = 0.5", "g0 = 0.0")).unwrap();
    assert_eq!(cli(&d, &["analyze", spec.to_str().unwrap()]), EXIT_DEGENERATE);
    assert_eq!(cli(&d, &["--tol", "admit_tol=1e-14", "residuals", "builtin:weierstrass"]), EXIT_TOLERANCE);
    assert_eq!(cli(&d, &["residuals", "builtin:weierstrass"]), 0);
}

#[test]
fn mesh_export() {
    let g = Grid2::new(0.0, 1.0, 2, 0.0, 1.0, 2).unwrap();
    let pts: Vec<Vec4> = g.nodes().map(|(i, j)| Vec4::new(i as f64, j as f64, 0.0, 0.0)).collect();
    let m = quad_mesh(&g, &pts).unwrap();
    assert_eq!(m.vertices, pts);
    assert_eq!(m.quads.len(), 1);

    let d = scratch("mesh");
    assert_eq!(cli(&d, &["--grid", "11x33", "export", "builtin:rotational-explicit"]), 0);
    let text = std::fs::read_to_string(d.join("surface.mesh4")).unwrap();
    // one period in v closes up: 32 distinct columns, 10 × 32 quads
    assert!(text.starts_with("mesh4 352 320\n"), "{}", text.lines().next().unwrap());
    for f in ["surface_xyz.obj", "surface_xyw.obj", "surface_xzw.obj"] {
        let o = std::fs::read_to_string(d.join(f)).unwrap();
        assert_eq!(o.lines().filter(|l| l.starts_with("v ")).count(), 352);
        assert_eq!(o.lines().filter(|l| l.starts_with("f ")).count(), 320);
    }

    let empty = scratch("mesh-empty");
    let g1 = Grid2::new(0.0, 1.0, 1, 0.0, 1.0, 2).unwrap_or(g);
    assert!(write_mesh(&empty, "surface", &g1, &[]).is_err());
    assert_eq!(std::fs::read_dir(&empty).unwrap().count(), 0);
}
