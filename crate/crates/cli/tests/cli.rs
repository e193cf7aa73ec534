use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn cubex(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cubex")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn bad_square_fails_with_witness() {
    let (code, out, _) = cubex(&["check-cube", "--class", "surjections", &fixture("square-bad.cx")]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("comparison at {0,1} not in surjections: image 3 of 4"), "{out}");
    assert!(out.contains("witness:"));
    assert!(out.contains("cube bad dim 2"));
}

#[test]
fn generated_resolution_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tv.cx");
    let p = path.to_str().unwrap();
    let (code, out, err) = cubex(&["tv-generate", "--class", "surjections", "--level", "2", &fixture("three.cx"), "-o", p]);
    assert_eq!(code, 0, "{out}{err}");
    let (code, out, _) = cubex(&["check-resolution", "--class", "surjections", p]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("exact at A_1: true"));
    let (code, _, _) = cubex(&["check-kan", p]);
    assert_eq!(code, 0);
}

#[test]
fn tv_generate_prints_a_document() {
    let (code, out, _) = cubex(&["tv-generate", "--level", "1", &fixture("z2.cx")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("cubex-format 1\n"));
    assert!(cubex::format::parse(&out).unwrap().simplicials().contains_key("tv"));
}

#[test]
fn verify_dip_holds() {
    let (code, out, _) = cubex(&["verify", "--id", "dip-equivalence", "--seed", "7"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[dip-equivalence] relation square {00,01,10}: holds"));
}

#[test]
fn exit_code_ignores_report_format() {
    for args in [
        vec!["check-cube".to_string(), fixture("square-bad.cx")],
        vec!["check-kan".to_string(), fixture("nerve-ordinal-2.cx")],
        vec!["check-resolution".to_string(), fixture("mutation-three-1-1.cx")],
        vec!["check-resolution".to_string(), fixture("tv-z2-3.cx")],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (text, _, _) = cubex(&args);
        let mut s = args.clone();
        s.extend(["--report", "structured"]);
        let (structured, out, _) = cubex(&s);
        assert_eq!(text, structured, "{args:?}");
        for line in out.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v["instance_hash"].is_string());
        }
    }
}

#[test]
fn searches() {
    let (code, out, _) = cubex(&["search-counterexample", "--domain", "sets", "--max", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("comparison image 3 of 4"));
    let (code, out, _) = cubex(&["search-counterexample", "--domain", "groups", "--max", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("none-found-in-bounds"));
}

#[test]
fn audits() {
    let (code, out, _) = cubex(&["audit-class", "--class", "isomorphisms", "--universe", "sets:2"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("E4: violated"));
    let (code, out, _) = cubex(&["audit-class", "--universe", "groups:4", "--axioms", "E1,E2,E3,E4,E5"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = cubex(&["audit-class", "--universe", "sets:3", "--axioms", "E5"]);
    assert_eq!(code, 1);
    let (code, out, _) = cubex(&["audit-class", "--lifted", "--universe", "sets:2", "--axioms", "E1,E2,E3"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(cubex(&["frobnicate"]).0, 2);
    assert_eq!(cubex(&["check-cube", "--bogus", &fixture("square-bad.cx")]).0, 2);
    assert_eq!(cubex(&["check-cube", "--class", "epis", &fixture("square-bad.cx")]).0, 2);
    assert_eq!(cubex(&["verify", "--id", "no-such-theorem"]).0, 2);
    assert_eq!(cubex(&["check-cube", "/no/such/file.cx"]).0, 2);
    assert_eq!(cubex(&["--caps", "apex=10", "check-resolution", &fixture("cech-z4-z2.cx")]).0, 2);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.cx");
    std::fs::write(
        &path,
        "cubex-format 1\nobject one = set \"0\"\nobject two = set \"0\" \"1\"\n\
         morphism id2 : two -> two = 0 1\nmorphism swap : two -> two = 1 0\n\
         cube c dim 2 {\n  at [] two\n  at [0] two\n  at [1] two\n  at [0,1] two\n\
         gen [] 0 id2\n  gen [] 1 id2\n  gen [0] 1 swap\n  gen [1] 0 id2\n}\n",
    )
    .unwrap();
    let (code, _, err) = cubex(&["check-cube", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("broken.cx:6:"), "{err}");
    assert!(err.contains("(∅,0,1)"), "{err}");
}

#[test]
fn fmt_is_idempotent() {
    let (code, out, _) = cubex(&["fmt", &fixture("cech-z4-z2.cx")]);
    assert_eq!(code, 0);
    assert_eq!(out, std::fs::read_to_string(fixture("cech-z4-z2.cx")).unwrap());
}
