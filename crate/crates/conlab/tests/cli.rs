use std::path::PathBuf;
use std::process::Command;

use conlab_core::construction::{run_stages, Enumeration};
use conlab_core::entailment::{GlProvider, Verdict};
use conlab_core::modal::{mock_con, parse_modal};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn conlab_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_conlab"));
    cmd.args(args).env_remove(conlab::SEED_VAR);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn conlab(args: &[&str]) -> Run {
    conlab_env(args, &[])
}

fn json(r: &Run) -> Value {
    assert_eq!(r.code, 0, "{}", r.stderr);
    serde_json::from_str(&r.stdout).expect("valid json")
}

fn keys(v: &Value) -> Vec<&str> {
    v.as_object().expect("object").keys().map(String::as_str).collect()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn valuation(p0: bool, p1: bool) -> PathBuf {
    let n = format!("v{}{}.json", p0 as u8, p1 as u8);
    let atoms: Vec<String> =
        (0..8).map(|i| format!("\"p{i}\": {}", if i == 0 { p0 } else if i == 1 { p1 } else { true })).collect();
    scratch(&n, &format!("{{{}}}", atoms.join(", ")))
}

#[test]
fn construct_counts_fourteen_at_stage_two() {
    let v = json(&conlab(&["construct", "--mode", "modal", "--stages", "2", "--format", "json"]));
    assert_eq!(v["total"], 14);
    assert_eq!(v["entries"].as_array().unwrap().len(), 14);
    let numerated: usize = v["stages"].as_array().unwrap().iter().map(|s| s["numerated"].as_array().unwrap().len()).sum();
    assert_eq!(numerated, 14);
    let early: usize = v["stages"].as_array().unwrap()[..2].iter().map(|s| s["numerated"].as_array().unwrap().len()).sum();
    assert_eq!(early, 6);
}

#[test]
fn construct_matches_the_library_trace() {
    let tr = run_stages(&Enumeration::atoms(), 3, std::rc::Rc::new(mock_con));
    let v = json(&conlab(&["construct", "--stages", "3", "--format", "json"]));
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), tr.entries.len());
    for (e, x) in tr.entries.iter().zip(entries) {
        assert_eq!(x["sentence"], e.sentence.to_string());
        assert_eq!(x["stage"], e.stage);
    }
}

#[test]
fn lob_axiom_is_valid() {
    let r = conlab(&["gl", "--prove", "([]( []p0 -> p0) -> []p0)"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "Valid\n"));
}

#[test]
fn reflection_has_a_countermodel() {
    let r = conlab(&["gl", "--prove", "([]p0 -> p0)"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().next(), Some("Invalid"));
    let v = json(&conlab(&["gl", "--prove", "([]p0 -> p0)", "--format", "json"]));
    assert_eq!(v["verdict"], "Invalid");
    assert!(!v["countermodel"]["worlds"].as_array().unwrap().is_empty());
}

#[test]
fn g_apply_output_entails_diamond_p0() {
    let r = conlab(&["g-apply", "--mode", "modal", "--stages", "4", "--input", "p0"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let g = parse_modal(r.stdout.trim()).unwrap();
    let goal = parse_modal("<>p0").unwrap();
    assert_eq!(GlProvider::new().entails(&[g], &goal).unwrap(), Verdict::Provable);
}

#[test]
fn json_keys_are_stable() {
    let cases: &[(&[&str], &[&str])] = &[
        (&["parse", "--mode", "modal", "[]p0"], &["atoms", "formula", "modal_depth", "size"]),
        (&["parse", "--mode", "arith", "0=0"], &["code", "formula", "free_variables", "size"]),
        (&["classify", "0=0"], &["formula", "level", "pi", "sigma"]),
        (&["gl", "--prove", "p0"], &["countermodel", "formula", "verdict"]),
        (&["itcon", "--mode", "modal", "p0", "--n", "1"], &["input", "n", "sentence"]),
        (&["construct"], &["depth", "entries", "enumeration", "stages", "total"]),
        (&["tree", "--stages", "1"], &["nodes", "roots"]),
        (&["g-apply", "--input", "p0", "--operator", "con"], &["input", "operator", "output"]),
        (&["diagonal", "x0=x0"], &["defining_formula", "instance", "sentence", "shape_holds", "target"]),
    ];
    for (args, expected) in cases {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let v = json(&conlab(&a));
        assert_eq!(keys(&v), *expected, "{args:?}");
    }
    let v = json(&conlab(&["certify", "--operator", "identity", "--input", "0=0", "--format", "json"]));
    assert_eq!(keys(&v), ["accepted", "facts", "failure", "input", "k", "operator", "steps"]);
    assert_eq!(keys(&v["steps"][0]), ["claim", "justification", "step"]);
}

#[test]
fn usage_errors_exit_two_and_list_flags() {
    for args in [
        &["gl"][..],
        &["gl", "--prove", "p0", "--budget", "5"],
        &["classify", "0=0", "--mode", "modal"],
        &["construct", "--format", "dot"],
        &["construct", "--budget", "0", "--mode", "arith"],
        &["construct", "--mode", "modal", "--enumeration", "by-size"],
        &["gl", "--prove", "p0", "--valuation", "v.json"],
        &["truth", "p0"],
        &["itcon", "p0", "--n", "1", "--omega"],
        &["g-apply", "--input", "p0", "--operator", "nonsense"],
        &["frobnicate"],
    ] {
        let r = conlab(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        assert!(r.stderr.contains("Usage: conlab"), "{args:?}: {}", r.stderr);
        assert!(r.stdout.is_empty());
    }
    let r = conlab(&["gl", "--prove", "p0", "--budget", "5"]);
    assert!(r.stderr.contains("--prove <FORMULA>"));
    assert!(r.stderr.contains("--budget <STEPS>"));
}

#[test]
fn domain_errors_exit_one() {
    let v = valuation(true, true);
    for args in [
        &["parse", "--mode", "modal", "[]("][..],
        &["classify", "x0 = "],
        &["con", "x0=x0"],
        &["diagonal", "x0=x1"],
        &["truth", "--valuation", v.to_str().unwrap(), "p9"],
    ] {
        let r = conlab(args);
        assert_eq!(r.code, 1, "{args:?}: {}", r.stderr);
        assert!(r.stderr.starts_with("error: "), "{args:?}");
    }
}

#[test]
fn help_succeeds() {
    let r = conlab(&["--help"]);
    assert_eq!(r.code, 0);
    for sub in ["parse", "classify", "con", "itcon", "diagonal", "gl", "truth", "build-a", "construct", "tree", "g-apply", "dichotomy", "claims", "certify"] {
        assert!(r.stdout.contains(&format!("  {sub} ")), "{sub}");
    }
}

#[test]
fn truth_reads_valuation_files() {
    let v = valuation(true, false);
    let path = v.to_str().unwrap();
    assert_eq!(conlab(&["truth", "--valuation", path, "(p0 & ~p1)"]).stdout, "true\n");
    assert_eq!(conlab(&["truth", "--valuation", path, "p1"]).stdout, "false\n");
    // the surrogate reads boxes as provability in GL
    assert_eq!(conlab(&["truth", "--valuation", path, "<>top"]).stdout, "true\n");
    assert_eq!(conlab(&["truth", "--valuation", path, "[]bot"]).stdout, "false\n");
}

#[test]
fn missing_atom_is_an_error_not_false() {
    let v = scratch("only_p0.json", r#"{"p0": false}"#);
    let r = conlab(&["truth", "--valuation", v.to_str().unwrap(), "(p0 | ~p1)"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("p1"), "{}", r.stderr);
}

#[test]
fn malformed_valuations_are_rejected() {
    for (name, text) in [("list.json", "[true]"), ("key.json", r#"{"q0": true}"#), ("pad.json", r#"{"p01": true}"#), ("int.json", r#"{"p0": 1}"#)] {
        let v = scratch(name, text);
        let r = conlab(&["truth", "--valuation", v.to_str().unwrap(), "p0"]);
        assert_eq!(r.code, 1, "{name}");
        assert!(r.stderr.contains("valuation"), "{name}: {}", r.stderr);
    }
}

#[test]
fn dichotomy_tags_and_failures() {
    let v = valuation(true, true);
    let path = v.to_str().unwrap();
    let run = |op: &str, candidate: &str| {
        json(&conlab(&["dichotomy", "--valuation", path, "--operator", op, "--candidate", candidate, "--format", "json"]))
    };
    let trivial = run("const_top", "top");
    assert_eq!(trivial["case"], "eventually-trivial");
    assert_eq!(trivial["failures"], 0);
    assert_eq!(trivial["samples"].as_array().unwrap().len(), 25);
    let con = run("con", "top");
    assert_eq!(con["case"], "eventually-con-like");
    assert_eq!(con["failures"], 0);
    let con_top = run("const_con_top", "top");
    assert_eq!(con_top["case"], "eventually-trivial");
    assert_eq!(con_top["generator"], "<>top");
    assert_eq!(con_top["failures"], 0);

    let r = conlab(&["dichotomy", "--valuation", path, "--operator", "identity", "--samples", "5"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("failures: 5"), "{}", r.stdout);
}

#[test]
fn seed_comes_from_flag_then_environment() {
    let v = valuation(true, true);
    let base = ["dichotomy", "--valuation", v.to_str().unwrap(), "--operator", "con", "--samples", "6"];
    let with = |extra: &[&str], env: &[(&str, &str)]| {
        let mut a = base.to_vec();
        a.extend(extra);
        let r = conlab_env(&a, env);
        assert_eq!(r.code, 0, "{}", r.stderr);
        r.stdout
    };
    let default = with(&[], &[]);
    assert_eq!(default, with(&["--seed", "0"], &[]));
    let env5 = with(&[], &[(conlab::SEED_VAR, "5")]);
    assert_eq!(env5, with(&["--seed", "5"], &[]));
    assert_eq!(env5, with(&[], &[(conlab::SEED_VAR, "5")]));
    assert_ne!(env5, default);
    assert_eq!(with(&["--seed", "0"], &[(conlab::SEED_VAR, "5")]), default);

    let mut a = base.to_vec();
    a.push("--format");
    a.push("text");
    let r = conlab_env(&a, &[(conlab::SEED_VAR, "five")]);
    assert_eq!(r.code, 2);
}

#[test]
fn claims_pass_on_every_valuation() {
    for (p0, p1) in [(true, true), (true, false), (false, true), (false, false)] {
        let v = valuation(p0, p1);
        let r = conlab(&["claims", "--valuation", v.to_str().unwrap(), "--stages", "3", "--format", "json"]);
        let j = json(&r);
        assert_eq!(j["failures"], 0);
        assert!(!j["checks"].as_array().unwrap().is_empty());
    }
}

#[test]
fn tree_dot_is_a_digraph_over_the_json_nodes() {
    let r = conlab(&["tree", "--stages", "2", "--format", "dot"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("digraph tree {\n") && r.stdout.ends_with("}\n"));
    let j = json(&conlab(&["tree", "--stages", "2", "--format", "json"]));
    let nodes = j["nodes"].as_array().unwrap();
    assert_eq!(r.stdout.matches("[label=").count(), nodes.len());
    let edges: usize = nodes.iter().map(|n| n["children"].as_array().unwrap().len()).sum();
    assert_eq!(r.stdout.matches(" -> ").count(), edges);
    assert_eq!(nodes.len(), 14);
}

#[test]
fn arith_con_is_pi1() {
    let j = json(&conlab(&["con", "0=0", "--format", "json"]));
    assert_eq!(j["level"], "Pi1");
    let r = conlab(&["itcon", "--mode", "arith", "0=0", "--omega", "--summary"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("Pi1 sentence of size "), "{}", r.stdout);
}

#[test]
fn certificate_summaries_match_golden_files() {
    let cases: &[(&[&str], &str)] = &[
        (&["certify", "--operator", "identity", "--input", "0=0", "--summary"], "certify_identity.txt"),
        (&["certify", "--summary"], "certify_con.txt"),
    ];
    for (args, file) in cases {
        let r = conlab(args);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.stdout, std::fs::read_to_string(golden(file)).unwrap(), "{file}");
        assert!(r.stdout.ends_with("# accepted\n"));
        assert_eq!(r.stdout.lines().filter(|l| !l.starts_with('#')).count(), 6);
    }
}

#[test]
fn forged_certificate_is_rejected() {
    let cert = golden("forged.cert");
    let r = conlab(&["certify", "--operator", "identity", "--input", "0=0", "--summary", "--certificate", cert.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, std::fs::read_to_string(golden("certify_forged.txt")).unwrap());
    assert_eq!(r.stderr, "error: certificate rejected at step 1\n");
}

#[test]
fn printed_certificates_check_again_and_tampering_is_caught() {
    let args = ["certify", "--operator", "identity", "--input", "0=0"];
    let r = conlab(&args);
    assert_eq!(r.code, 0);
    let path = scratch("identity.cert", &r.stdout);
    let mut again = args.to_vec();
    again.extend(["--certificate", path.to_str().unwrap()]);
    let r2 = conlab(&again);
    assert_eq!((r2.code, &r2.stdout), (0, &r.stdout));

    // the second instantiation term is the code of psi = 0=0
    let tampered = r.stdout.replace("Instantiation(1;#32833;#32833)", "Instantiation(1;#32833;#32834)");
    assert_ne!(tampered, r.stdout);
    let path = scratch("tampered.cert", &tampered);
    let mut bad = args.to_vec();
    bad.extend(["--certificate", path.to_str().unwrap(), "--summary"]);
    let r3 = conlab(&bad);
    assert_eq!(r3.code, 1);
    assert!(r3.stdout.lines().last().unwrap().starts_with("# rejected at step 2"), "{}", r3.stdout);
}

#[test]
fn library_entry_point_matches_the_binary() {
    let args = ["conlab", "gl", "--prove", "([]p0 -> p0)"];
    let out = conlab::run(args);
    let r = conlab(&args[1..]);
    assert_eq!((out.code as i32, out.stdout, out.stderr), (r.code, r.stdout, r.stderr));
}
