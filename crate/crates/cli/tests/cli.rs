use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use matchcover::{canonical_form, named_graph, MultiGraph, NamedGraph};
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_matchcover"));
    c.env_remove("MATCHCOVER_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn shipped() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn write_named(dir: &Path, name: &str) -> PathBuf {
    let path = dir.join(format!("{}.g", name.replace(',', "")));
    let o = run(&["named", name, "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn analyze_json(path: &Path, extra: &[&str]) -> (i32, Value) {
    let mut args = vec!["analyze", "--json", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = run(&args);
    (code(&o), serde_json::from_slice(&o.stdout).expect("json report"))
}

fn form_of(path: &Path) -> String {
    let g = MultiGraph::from_text(&fs::read_to_string(path).unwrap()).unwrap();
    canonical_form(&g).unwrap().to_hex()
}

#[test]
fn even_cycle_meets_the_bipartite_bound() {
    let dir = TempDir::new().unwrap();
    let (c, r) = analyze_json(&write_named(dir.path(), "C6"), &[]);
    assert_eq!(c, 0);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["epsilon"], 3);
    assert_eq!(r["b"], 0);
    assert_eq!(r["c4"], 2);
    assert_eq!(r["bounds"]["bipartiteBoundHolds"], true);
    assert_eq!(r["bounds"]["tight"], true);
    assert_eq!(r["equivalenceClasses"], serde_json::json!([[1, 3, 5], [2, 4, 6]]));
    let text = stdout(&run(&["analyze", dir.path().join("C6.g").to_str().unwrap()]));
    assert!(text.contains("bound 1 + c4: holds (tight)"), "{text}");
}

#[test]
fn triangular_prism_is_a_nonsolid_brick() {
    let dir = TempDir::new().unwrap();
    let (c, r) = analyze_json(&write_named(dir.path(), "C6bar"), &[]);
    assert_eq!(c, 0);
    assert_eq!(r["epsilon"], 2);
    assert_eq!(r["classification"], "brick");
    assert_eq!(r["solid"], false);
    assert_eq!(r["flags"]["matchingCovered"], true);
}

#[test]
fn path_is_not_matching_covered() {
    let dir = TempDir::new().unwrap();
    let (c, r) = analyze_json(&write_named(dir.path(), "P4"), &[]);
    assert_eq!(c, 2);
    assert_eq!(r["flags"]["matchingCovered"], false);
    assert_eq!(r["flags"]["matchable"], true);
    assert_eq!(r["witness"]["edge"], 2);
    assert!(r["equivalenceClasses"].is_null());
}

#[test]
fn parse_errors_report_the_line() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.g");
    fs::write(&p, "# comment\np 3 2\ne 1 2\ne 2 x\n").unwrap();
    let o = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    let o = run(&["analyze", dir.path().join("missing.g").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let p = write_named(dir.path(), "k4-k33");
    for args in [
        vec!["analyze", "--json", "--decompose", "--oracle-check"],
        vec!["analyze", "--decompose", "--strategy", "random", "--seed", "7"],
    ] {
        let mut a = args.clone();
        a.push(p.to_str().unwrap());
        assert_eq!(run(&a).stdout, run(&a).stdout);
    }
    let corpus = shipped();
    let a = ["corpus", "--dir", corpus.to_str().unwrap(), "--check", "structure", "--json"];
    assert_eq!(run(&a).stdout, run(&a).stdout);
}

#[test]
fn decomposition_tree_is_reported() {
    let dir = TempDir::new().unwrap();
    let (_, r) = analyze_json(&write_named(dir.path(), "k4-k33"), &["--decompose", "--oracle-check"]);
    let d = &r["decomposition"];
    assert_eq!(d["nodes"].as_array().unwrap().len(), 3);
    let kinds: Vec<&str> = d["leaves"].as_array().unwrap().iter().map(|l| l["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds.len(), 2);
    assert!(kinds.contains(&"brick") && kinds.contains(&"brace"));
    assert_eq!(r["oracleCheck"]["partitionAgrees"], true);
}

#[test]
fn enumeration_budget_exhaustion_is_undecided() {
    let dir = TempDir::new().unwrap();
    let p = write_named(dir.path(), "petersen");
    let o = bin()
        .args(["analyze", "--json", "--oracle-check", p.to_str().unwrap()])
        .env("MATCHCOVER_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["undecided"], serde_json::json!(["oracleCheck"]));
    assert_eq!(r["epsilon"], 1);
}

#[test]
fn written_graphs_reparse_to_identical_ids() {
    let dir = TempDir::new().unwrap();
    let p = write_named(dir.path(), "c6bar-k4");
    let text = fs::read_to_string(&p).unwrap();
    let g = MultiGraph::from_text(&text).unwrap();
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    assert_eq!(g.to_text(), body);
    let named = named_graph(&NamedGraph::PrismK4).unwrap();
    assert_eq!(g, MultiGraph::from_text(&named.to_text()).unwrap());
}

#[test]
fn splicing_two_k4_gives_the_prism() {
    let dir = TempDir::new().unwrap();
    let k4 = write_named(dir.path(), "K4");
    let prism = write_named(dir.path(), "C6bar");
    let out = dir.path().join("s.g");
    let o = run(&["splice", k4.to_str().unwrap(), "1", k4.to_str().unwrap(), "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("cut edges: 1 2 3"));
    let (_, a) = analyze_json(&out, &[]);
    let (_, b) = analyze_json(&prism, &[]);
    for key in ["canonicalForm", "epsilon", "classification", "solid", "b", "c4"] {
        assert_eq!(a[key], b[key], "{key}");
    }
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("# cut shore: 1 2 3"));
}

#[test]
fn wheel_hub_variants_include_petersen() {
    let dir = TempDir::new().unwrap();
    let w5 = write_named(dir.path(), "W5");
    let pet = write_named(dir.path(), "petersen");
    let out = dir.path().join("variants");
    let o = run(&["splice", w5.to_str().unwrap(), "1", w5.to_str().unwrap(), "1", "--all-variants", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let forms: Vec<String> = fs::read_dir(&out).unwrap().map(|e| form_of(&e.unwrap().path())).collect();
    assert!(forms.len() >= 2);
    assert!(forms.contains(&form_of(&pet)));
}

#[test]
fn explicit_bijection_and_bad_splices() {
    let dir = TempDir::new().unwrap();
    let k4 = write_named(dir.path(), "K4");
    let w5 = write_named(dir.path(), "W5");
    let k = k4.to_str().unwrap();
    // K4 edges at vertex 1 are 1, 2, 3 in the named labeling order
    let o = run(&["splice", k, "1", k, "1", "--pi", "1=2,2=3,3=1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("# splice of"));
    assert_eq!(code(&run(&["splice", k, "1", k, "1", "--pi", "1=1,2=1,3=3"])), 1);
    assert_eq!(code(&run(&["splice", k, "1", w5.to_str().unwrap(), "1"])), 1);
    assert_eq!(code(&run(&["splice", k, "9", k, "1"])), 1);
}

#[test]
fn construction_runs_and_verifies() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c33");
    let o = run(&["construct", "--p", "3", "--q", "3", "--verify", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    let num = |key: &str| -> usize {
        let line = text.lines().find(|l| l.starts_with(key)).unwrap();
        line.split('=').nth(1).unwrap().trim().parse().unwrap()
    };
    assert!(num("kappa") >= 3 && num("epsilon") >= 3);
    let trace: Value = serde_json::from_str(&fs::read_to_string(out.join("trace.json")).unwrap()).unwrap();
    assert_eq!(trace["schema"], 1);
    assert_eq!(trace["trace"]["q"], 3);
    for name in ["brace.g", "g0.g", "j1.g", "j2.g", "g1.g", "g2.g"] {
        let t = fs::read_to_string(out.join(name)).unwrap();
        let g = MultiGraph::from_text(&t).unwrap();
        assert!(t.ends_with(&g.to_text()), "{name}");
    }
    let (c, r) = analyze_json(&out.join("g2.g"), &[]);
    assert_eq!((c, r["epsilon"].as_u64().unwrap()), (0, 3));

    let o = run(&["construct", "--p", "2", "--q", "2", "--verify", "--out", dir.path().join("c22").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
}

#[test]
fn construction_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x");
    let o = out.to_str().unwrap();
    assert_eq!(code(&run(&["construct", "--p", "1", "--q", "2", "--out", o])), 1);
    assert_eq!(code(&run(&["construct", "--p", "2", "--q", "3", "--misaligned", "--verify", "--out", o])), 1);
    let c6 = write_named(dir.path(), "C6");
    assert_eq!(
        code(&run(&["construct", "--p", "2", "--q", "2", "--brace", c6.to_str().unwrap(), "--anchor", "1", "--out", o])),
        1
    );
    let k44 = write_named(dir.path(), "K4,4");
    let o2 = dir.path().join("k44");
    let args = ["construct", "--p", "3", "--q", "2", "--brace", k44.to_str().unwrap(), "--anchor", "6", "--verify", "--out", o2.to_str().unwrap()];
    assert_eq!(code(&run(&args)), 0);
}

#[test]
fn shipped_corpus_passes_every_suite() {
    let corpus = shipped();
    let n = fs::read_dir(&corpus).unwrap().count();
    for suite in ["bounds", "uniqueness", "merging", "structure", "oracle"] {
        let o = run(&["corpus", "--dir", corpus.to_str().unwrap(), "--check", suite, "--json"]);
        assert_eq!(code(&o), 0, "{suite}: {}", stdout(&o));
        let r: Value = serde_json::from_slice(&o.stdout).unwrap();
        let rows = r["rows"].as_array().unwrap();
        assert_eq!(rows.len(), n);
        let files: Vec<&str> = rows.iter().map(|x| x["file"].as_str().unwrap()).collect();
        let mut sorted = files.clone();
        sorted.sort();
        assert_eq!(files, sorted);
        assert!(rows.iter().all(|x| x["status"] == "pass"));
    }
}

#[test]
fn corpus_edge_cases() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = run(&["corpus", "--dir", d, "--check", "bounds"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("0 files"));
    assert_eq!(code(&run(&["corpus", "--dir", d, "--check", "nonsense"])), 1);
    write_named(dir.path(), "K4");
    write_named(dir.path(), "P4");
    let o = run(&["corpus", "--dir", d, "--check", "bounds", "--json"]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["rows"][0]["file"], "K4.g");
    assert_eq!(r["rows"][1]["status"], "fail");
    assert_eq!(r["failed"], 1);
}

#[test]
fn help_and_unknown_commands() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["named", "Q9"])), 1);
}
