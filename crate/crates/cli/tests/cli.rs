use std::path::Path;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kstab").chain(args.iter().copied());
    let code = kstab::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn document(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let (code, out, err) = run(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

const CUSP: &str =
    r#"[{"degree":3,"terms":[{"coeff":"1","exps":[0,2,1]},{"coeff":"-1","exps":[3,0,0]}]}]"#;
const SQUARES: &str = r#"[{"degree":2,"terms":[{"coeff":"1","exps":[2,0]}]},{"degree":2,"terms":[{"coeff":"1","exps":[0,2]}]}]"#;

#[test]
fn a_vector_example() {
    let (code, out, _) = run(&["a-vector", "--n", "4", "--degrees", "2,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("a = (5/6, 5/6)"));
    let doc = document(&["a-vector", "--n", "4", "--degrees", "2,2"]);
    assert_eq!(doc["result"]["a"], serde_json::json!(["5/6", "5/6"]));
    assert_eq!(doc["input"]["degrees"], serde_json::json!([2, 2]));
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["checks_passed"], true);
    assert!(doc.get("approximate_non_authoritative").is_none());
}

#[test]
fn kss_polytope_interval() {
    let (code, out, _) = run(&["kss-polytope", "--n", "2", "--degrees", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("interval [0, 3/4]"));
    let doc = document(&["kss-polytope", "--n", "2", "--degrees", "2"]);
    let p = &doc["result"]["polytope"];
    assert_eq!(p["vrep"], serde_json::json!([["0"], ["3/4"]]));
    assert_eq!(p["hrep"].as_array().unwrap().len(), 2);
    assert_eq!(doc["checks"]["round_trip"], true);
}

#[test]
fn kss_polytope_svg_for_two_boundaries() {
    let dir = TempDir::new().unwrap();
    let svg = dir.path().join("kss.svg");
    let (code, _, err) = run(&[
        "kss-polytope",
        "--n",
        "4",
        "--degrees",
        "2,2",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.contains("(5/6, 5/6)"));
}

#[test]
fn vgit_chambers_example_with_svg() {
    let dir = TempDir::new().unwrap();
    let svg = dir.path().join("fan.svg");
    let json = dir.path().join("fan.json");
    let args = [
        "vgit-chambers",
        "--n",
        "1",
        "--degrees",
        "2,2",
        "--svg",
        svg.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert!(out.contains("γ1 = γ2") && out.contains("chambers: 2"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["result"]["walls"].as_array().unwrap().len(), 1);
    assert_eq!(doc["result"]["chambers"], 2);
    let first = std::fs::read_to_string(&svg).unwrap();
    assert!(first.contains("γ1 = γ2") && first.contains("C1") && first.contains("C2"));
    run(&args);
    assert_eq!(std::fs::read_to_string(&svg).unwrap(), first);
}

#[test]
fn vgit_classifies_given_tuple() {
    let dir = TempDir::new().unwrap();
    let forms = write(&dir, "squares.json", SQUARES);
    let doc = document(&[
        "vgit-chambers",
        "--n",
        "1",
        "--degrees",
        "2,2",
        "--forms",
        &forms,
    ]);
    let statuses: Vec<(&str, &str)> = doc["result"]["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["kind"].as_str().unwrap(), c["status"].as_str().unwrap()))
        .collect();
    for (kind, status) in statuses {
        let expected = if kind == "wall" {
            "strictly-semistable-on-wall"
        } else {
            "unstable"
        };
        assert_eq!(status, expected);
    }
}

#[test]
fn svg_needs_two_coordinates() {
    let dir = TempDir::new().unwrap();
    let svg = dir.path().join("x.svg");
    let (code, _, err) = run(&[
        "kss-polytope",
        "--n",
        "2",
        "--degrees",
        "2",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("SVG"));
}

#[test]
fn beta_and_s_invariant() {
    let doc = document(&[
        "beta",
        "--n",
        "4",
        "--degrees",
        "2,2",
        "--coefficients",
        "5/6,5/6",
    ]);
    for entry in doc["result"]["invariants"].as_array().unwrap() {
        assert_eq!(entry["beta"], "0");
    }
    let doc = document(&[
        "s-invariant",
        "--n",
        "4",
        "--degrees",
        "2,2",
        "--coefficients",
        "1/3,1/5",
        "--index",
        "2",
    ]);
    let entries = doc["result"]["invariants"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["index"], 2);
    assert_eq!(entries[0]["s"], entries[0]["closed_form"]);
    assert_eq!(doc["checks"]["integral_matches_closed_form"], true);
}

#[test]
fn cone_chain_and_cone_verify() {
    let doc = document(&["cone-chain", "--n", "4", "--degrees", "2,2"]);
    let radii: Vec<&str> = doc["result"]["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["radius"].as_str().unwrap())
        .collect();
    assert_eq!(radii, vec!["2/3", "1/2"]);
    let doc = document(&["cone-verify", "--n", "2", "--degrees", "2", "--m-max", "6"]);
    assert_eq!(doc["result"]["reports"][0]["checks_passed"], true);
    assert_eq!(
        doc["result"]["reports"][0]["cone_hilbert"]
            .as_array()
            .unwrap()
            .len(),
        7
    );
}

#[test]
fn cm_weight_routes() {
    let dir = TempDir::new().unwrap();
    let forms = write(&dir, "squares.json", SQUARES);
    let doc = document(&[
        "cm-weight",
        "--n",
        "1",
        "--forms",
        &forms,
        "--coefficients",
        "1/2,1/3",
        "--one-ps",
        "1,-1",
    ]);
    let w = &doc["result"]["weights"];
    assert_eq!(w["def31"], w["lem41"]);
    assert_eq!(w["lem32"], w["lem41"]);
    assert_eq!(doc["result"]["scalar"], "1");
    assert_eq!(doc["checks"]["routes_agree"], true);
    let doc = document(&[
        "cm-weight",
        "--n",
        "1",
        "--forms",
        &forms,
        "--coefficients",
        "1/2,1/3",
        "--one-ps",
        "-1,1",
        "--beta",
        "1/2",
        "--route",
        "lem41",
    ]);
    assert!(doc["result"]["weights"].get("def31").is_none());
    assert_eq!(doc["result"]["beta"], "1/2");
}

#[test]
fn effective_linearization_records_seed() {
    let doc = document(&[
        "effective-linearization",
        "--n",
        "1",
        "--degrees",
        "2,2",
        "--coefficients",
        "1/3,1/2",
        "--seed",
        "3",
    ]);
    assert_eq!(doc["seed"], 3);
    assert_eq!(doc["result"]["gamma"], serde_json::json!(["1", "3/2"]));
    assert_eq!(doc["result"]["proportional_to_coefficients"], true);
}

#[test]
fn git_check_cusp_and_frames() {
    let dir = TempDir::new().unwrap();
    let cusp = write(&dir, "cusp.json", CUSP);
    let (code, out, _) = run(&["git-check", "--forms", &cusp]);
    assert_eq!(code, 0);
    assert!(out.starts_with("status: unstable"));
    let doc = document(&["git-check", "--forms", &cusp, "--frames", "permutations"]);
    assert_eq!(doc["result"]["status"], "unstable");
    assert!(doc["result"]["certificate"].is_array());

    // x0 x2^2 - x1^3 after x0 -> x0 + x1, x2 -> x1 + x2 hides from the identity frame
    let sheared = r#"[{"degree":3,"terms":[
        {"coeff":"1","exps":[1,2,0]},{"coeff":"2","exps":[1,1,1]},{"coeff":"1","exps":[1,0,2]},
        {"coeff":"2","exps":[0,2,1]},{"coeff":"1","exps":[0,1,2]}]}]"#;
    let sheared = write(&dir, "sheared.json", sheared);
    let doc = document(&["git-check", "--forms", &sheared]);
    assert_eq!(doc["result"]["status"], "semistable-in-tested-frames");
    let frames = write(
        &dir,
        "frames.json",
        r#"[[["1","-1","0"],["0","1","0"],["0","-1","1"]]]"#,
    );
    let doc = document(&["git-check", "--forms", &sheared, "--frames", &frames]);
    assert_eq!(doc["result"]["status"], "unstable");
}

#[test]
fn decimal_column_is_marked() {
    let (_, out, _) = run(&["a-vector", "--n", "4", "--degrees", "2,2", "--decimal"]);
    assert!(out.contains("non-authoritative"));
    let doc = document(&["a-vector", "--n", "4", "--degrees", "2,2", "--decimal"]);
    assert_eq!(doc["result"]["a"][0], "5/6");
    let approx = doc["approximate_non_authoritative"]["a"][0]
        .as_f64()
        .unwrap();
    assert!((approx - 5.0 / 6.0).abs() < 1e-12);
}

#[test]
fn report_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let run_to = |p: &Path| {
        run(&[
            "report",
            "--n",
            "4",
            "--degrees",
            "2,2",
            "--seed",
            "7",
            "--json",
            p.to_str().unwrap(),
        ])
    };
    let (c1, o1, _) = run_to(&a);
    let (c2, o2, _) = run_to(&b);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let doc: Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(doc["seed"], 7);
    for key in [
        "a_vector",
        "kss_polytope",
        "vgit_chambers",
        "cone_checks",
        "cone_chain",
        "linearization",
    ] {
        assert!(doc["result"].get(key).is_some(), "{key}");
    }
    assert_eq!(doc["result"]["linearization"]["agrees_with_uniform"], true);
}

#[test]
fn report_flags_nonuniform_linearization() {
    let doc = document(&["report", "--n", "4", "--degrees", "2,1"]);
    let lin = &doc["result"]["linearization"];
    assert_eq!(lin["effective"], lin["predicted_from_coefficients"]);
    assert_eq!(lin["agrees_with_uniform"], false);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["a-vector", "--n", "4", "--degrees", "3,2"]).0, 2);
    assert_eq!(
        run(&[
            "beta",
            "--n",
            "4",
            "--degrees",
            "2,2",
            "--coefficients",
            "1/0,1"
        ])
        .0,
        2
    );
    assert_eq!(
        run(&[
            "beta",
            "--n",
            "4",
            "--degrees",
            "2,2",
            "--coefficients",
            "1,1",
            "--index",
            "3"
        ])
        .0,
        2
    );
    assert_eq!(
        run(&["git-check", "--forms", "/nonexistent/forms.json"]).0,
        2
    );
    assert_eq!(run(&["a-vector", "--n", "4"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"[{"degree":2,"terms":[{"coeff":"1","exps":[1,0]}]}]"#,
    );
    let (code, _, err) = run(&["git-check", "--forms", &bad]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn help_and_version_succeed() {
    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
    assert_eq!(run(&["report", "--help"]).0, 0);
}

#[test]
fn cap_flag_exit_three() {
    let dir = TempDir::new().unwrap();
    let cusp = write(&dir, "cusp.json", CUSP);
    let (code, _, err) = run(&["git-check", "--forms", &cusp, "--cap", "1"]);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("cap"));
}

#[test]
fn binary_honours_cap_environment() {
    let dir = TempDir::new().unwrap();
    let cusp = write(&dir, "cusp.json", CUSP);
    let bin = env!("CARGO_BIN_EXE_kstab");
    let status = Command::new(bin)
        .args(["git-check", "--forms", &cusp])
        .env("KSTAB_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
    let status = Command::new(bin)
        .args(["git-check", "--forms", &cusp])
        .env("KSTAB_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(bin)
        .args(["git-check", "--forms", &cusp, "--cap", "20000"])
        .env("KSTAB_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let status = Command::new(bin)
        .args(["a-vector", "--n", "4", "--degrees", "2,2"])
        .output()
        .unwrap();
    assert_eq!(
        String::from_utf8(status.stdout).unwrap().lines().next(),
        Some("a = (5/6, 5/6)")
    );
}
