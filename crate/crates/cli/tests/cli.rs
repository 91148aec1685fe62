use std::path::PathBuf;
use std::process::Command;

use hyperint_cli::{emit, parse_problem, parse_report, run, Format, Mode, Overrides, Report};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn fixtures() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    out.sort();
    out
}

fn report_for(path: &PathBuf) -> Report {
    let problem = parse_problem(&std::fs::read_to_string(path).unwrap()).unwrap();
    run(&problem, problem.mode.unwrap(), &Overrides::default()).unwrap()
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hyperint")).args(args).output().unwrap()
}

#[test]
fn json_round_trip() {
    for path in fixtures() {
        let r = report_for(&path);
        let json = emit(&r, Format::Json);
        assert_eq!(parse_report(&json).unwrap(), r, "{}", path.display());
    }
}

#[test]
fn reports_match_the_schema() {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../../../docs/report.schema.json")).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).unwrap();
    for path in fixtures() {
        let value: serde_json::Value = serde_json::from_str(&emit(&report_for(&path), Format::Json)).unwrap();
        if let Err(errors) = validator.validate(&value) {
            let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
            panic!("{}: {msgs:?}", path.display());
        };
    }
}

#[test]
fn half_line_analyze_example() {
    let r = report_for(&fixture("half_line_unbounded.toml"));
    assert_eq!(r.status, "unbounded_certified");
    let a = &r.analyses[0];
    assert_eq!(a.witness.as_ref().unwrap().r, vec!["0", "-1/2"]);
    assert_eq!(a.residue_statement, "unbounded for all p ≡ 1 mod 2");
}

#[test]
fn zero_vector_is_minimal_integral() {
    let r = report_for(&fixture("zero_vector.toml"));
    assert_eq!(r.status, "integral_certified");
    assert_eq!(r.analyses[0].w_p_v, "0");
}

#[test]
fn text_form_has_certificate_line() {
    let r = report_for(&fixture("half_line_integral.toml"));
    assert!(emit(&r, Format::Text).contains("w_p(v) = 1 ≥ bound = 1"));
}

#[test]
fn classical_and_eisenstein_examples() {
    let g = report_for(&fixture("gauss.toml"));
    assert_eq!(g.classical.as_ref().unwrap().statement, "integral for all p ∤ 2");
    let e = report_for(&fixture("sqrt_one_plus_x.toml"));
    let e = e.eisenstein.unwrap();
    assert_eq!((e.n.as_str(), e.verified_to), ("4", 100));
}

#[test]
fn subcommand_must_agree_with_declared_mode() {
    let text = std::fs::read_to_string(fixture("half_line_integral.toml")).unwrap();
    let declared = parse_problem(&text).unwrap();
    assert!(run(&declared, Mode::Bound, &Overrides::default()).is_err());
    let undeclared = parse_problem(&text.replace("mode = \"analyze\"\n", "")).unwrap();
    let r = run(&undeclared, Mode::Bound, &Overrides::default()).unwrap();
    assert_eq!(r.mode, "bound");
    assert!(r.analyses[0].search_bounds.is_none());
}

#[test]
fn bad_input_is_reported_with_location() {
    let err = parse_problem("mode = \"analyze\"\np = 3\n[configuration]\ncolumns = [[1], [2]]\nv = [\"0\", \"x\"]\n");
    let msg = match err {
        Ok(p) => run(&p, Mode::Analyze, &Overrides::default()).unwrap_err().to_string(),
        Err(e) => e.to_string(),
    };
    assert!(msg.contains('x'), "{msg}");
    assert!(parse_problem("mode = \"analyze\"\nbogus = 1\n").unwrap_err().to_string().contains("bogus"));
}

#[test]
fn exit_codes() {
    let path = |n: &str| fixture(n).to_string_lossy().into_owned();
    assert_eq!(binary(&["analyze", "--input", &path("half_line_integral.toml")]).status.code(), Some(0));
    assert_eq!(binary(&["classical", "--input", &path("reversed_landau.toml")]).status.code(), Some(2));
    assert_eq!(binary(&["analyze", "--input", "/nonexistent.toml"]).status.code(), Some(1));
    let guarded = binary(&["analyze", "--input", &path("half_line_unbounded.toml"), "--guard", "1"]);
    assert_eq!(guarded.status.code(), Some(3), "{}", String::from_utf8_lossy(&guarded.stderr));
}

#[test]
fn output_file_and_timing_side_channel() {
    let dir = std::env::temp_dir().join(format!("hyperint-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let input = fixture("gauss.toml");
    let run = binary(&["classical", "--input", input.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert!(run.status.success());
    assert!(run.stdout.is_empty());
    assert!(String::from_utf8_lossy(&run.stderr).contains("elapsed:"));
    let written = std::fs::read_to_string(&out).unwrap();
    assert!(!written.contains("elapsed"));
    assert_eq!(parse_report(&written).unwrap(), report_for(&input));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn output_is_deterministic_across_runs_and_threads() {
    for path in fixtures() {
        let problem = parse_problem(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let mode = problem.mode.unwrap().as_str().to_string();
        let p = path.to_string_lossy().into_owned();
        let mut outputs = Vec::new();
        for threads in ["1", "4", "4"] {
            let o = binary(&[&mode, "--input", &p, "--threads", threads]);
            outputs.push(o.stdout);
        }
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{}", path.display());
    }
}
