use std::path::{Path, PathBuf};

use conormal::cli::run_command;
use conormal::report::RunReport;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str], out: &Path) -> i32 {
    let mut argv = vec!["conormal".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.push("--out".into());
    argv.push(out.to_string_lossy().into_owned());
    run_command(argv)
}

fn report(out: &Path) -> RunReport {
    serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap()
}

#[test]
fn check_conormal_on_three_rays() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    assert_eq!(run(&["check-conormal", &fixture("three_rays_l2.json")], &out), 0);
    let r = report(&out);
    assert_eq!(r.verdict, Some(true));
    assert_eq!(r.parameters.seed, 0);
    assert_eq!(r.parameters.tolerance.feas_tol, 1e-9);
}

#[test]
fn negative_controls_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    assert_eq!(run(&["check-coadditive", &fixture("rays_e1_e2.json")], &out), 1);
    let r = report(&out);
    assert_eq!(r.verdict, Some(false));
    assert!(r.certificates["failing"]["separator"].is_object());
    assert_eq!(run(&["check-conormal", &fixture("rays_e1_e2.json")], &out), 1);
    assert_eq!(run(&["decompose", &fixture("rays_e1_e2.json"), "--point", "-1,0"], &out), 1);
    assert!(report(&out).certificates["not_decomposable"]["separator"].is_array());
    assert_eq!(run(&["intersect", &fixture("rays_e1_e2.json")], &out), 1);
}

#[test]
fn decompose_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    assert_eq!(run(&["decompose", &fixture("three_rays_l2.json"), "--point", "0,-1"], &out), 0);
    let r = report(&out);
    let parts = &r.quantities[0].witness;
    assert!((parts[0] + parts[2] + parts[4]).abs() < 1e-9);
    assert!((parts[1] + parts[3] + parts[5] + 1.0).abs() < 1e-9);
    // c = 1 in the one-parameter family of decompositions
    assert!((r.quantities[0].value - (1.0 + 2f64.sqrt())).abs() < 1e-6);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = ["alpha-coadditive", &fixture("quadrant_wedge_l2.json"), "--samples", "200", "--seed", "3"];
    assert_eq!(run(&args, &a), 0);
    assert_eq!(run(&args, &b), 0);
    let mut ra = report(&a);
    let mut rb = report(&b);
    // the command echo holds the output path
    ra.command.clear();
    rb.command.clear();
    ra.timing = None;
    rb.timing = None;
    assert_eq!(serde_json::to_string(&ra).unwrap(), serde_json::to_string(&rb).unwrap());
    assert_eq!(ra.content_digest().unwrap(), rb.content_digest().unwrap());
}

#[test]
fn csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    assert_eq!(run(&["alpha-conormal", &fixture("three_rays_l1.json"), "--format", "csv"], &out), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("quantity,value,mode,witness"));
    assert!(text.contains("alpha,3.0000000000000000e0,EXACT_VERTEX"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    assert_eq!(run(&["beta", &fixture("orthant_pair_l1.json"), "--format", "xml"], &out), 2);
    assert_eq!(run(&["beta", &fixture("missing.json")], &out), 2);
    assert_eq!(run(&["alpha-conormal", &fixture("three_rays_l2.json"), "--mode", "exact"], &out), 2);
    assert_eq!(run(&["decompose", &fixture("three_rays_l2.json"), "--point", "1,2,3"], &out), 2);
    assert_eq!(run(&["frobnicate"], &out), 2);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"schema_version":1,"dimension":2,"norm":{"kind":"l1"},"cones":[]}"#).unwrap();
    assert_eq!(run(&["check-conormal", &bad.to_string_lossy()], &out), 2);
    let unwritable = dir.path().join("no/such/dir/r.json");
    assert_eq!(run(&["check-conormal", &fixture("three_rays_l2.json")], &unwritable), 2);
}

#[test]
fn analysis_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let orth = fixture("orthant_pair_l1.json");
    assert_eq!(run(&["beta", &orth], &out), 0);
    let r = report(&out);
    assert_eq!(r.quantities[1].name, "beta");
    assert_eq!(r.quantities[1].value, 1.0);
    assert_eq!(run(&["gauge", &orth, "--point", "3,-4"], &out), 0);
    assert_eq!(report(&out).quantities[0].value, 7.0);
    assert_eq!(run(&["audit-selection", &orth, "--mesh-size", "40"], &out), 0);
    assert_eq!(
        run(&["probe-lipschitz", &orth, "--trials", "200", "--known-constant", "1"], &out),
        0
    );
    assert_eq!(report(&out).verdict, Some(true));
    assert_eq!(
        run(&["probe-lipschitz", &orth, "--trials", "200", "--known-constant", "0.5"], &out),
        1
    );
    assert_eq!(
        run(&["gauge", &fixture("quadrant_wedge_l2.json"), "--form", "upsilon", "--xi", "0,0;1,0"], &out),
        0
    );
    assert_eq!(run(&["gauge", &fixture("rays_e1_e2.json"), "--point", "-1,0"], &out), 1);
}
