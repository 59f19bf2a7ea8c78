use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use wordhyp_cli::format::AutomatonDoc;
use wordhyp_cli::read_file;
use wordhyp_core::{Nfa, RegexExpr};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn wordhyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordhyp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FREE_MONOID_TABLE: &str = r#"{
  "automata": { "a-star": { "regex": "a*" } },
  "grammars": {
    "good": { "terminals": ["a"], "productions": ["T -> a T a | #1 V", "V -> a V a | #2"] },
    "bad": { "terminals": ["a"], "productions": ["S -> T | a #1 a #2 a", "T -> a T a | #1 V", "V -> a V a | #2"] }
  },
  "oracles": { "A": { "type": "free_monoid", "letters": ["a"] } },
  "structures": {
    "good": { "alphabet": ["a"], "combing": "a-star", "table": "good", "kind": "monoid", "oracle": "A" },
    "bad": { "alphabet": ["a"], "combing": "a-star", "table": "bad", "kind": "monoid", "oracle": "A" }
  }
}"#;

#[test]
fn member_verdicts_on_the_bicyclic_monoid() {
    let file = data("bicyclic.json");
    let o = wordhyp(&["member", path(&file), "b", "c", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "MEMBER");
    let o = wordhyp(&["member", path(&file), "b", "c", "b"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "NOT-MEMBER");
    let o = wordhyp(&["member", path(&file), "cb", "c", "c"]);
    assert_eq!(stdout(&o).trim(), "MEMBER");
    let o = wordhyp(&["member", path(&file), "b #1", "c", "b"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("marker"));
}

#[test]
fn extend_then_semigroup_product_verifies() {
    let dir = TempDir::new().unwrap();
    let (e1, f1, ef) = (dir.path().join("e1.json"), dir.path().join("f1.json"), dir.path().join("ef.json"));
    let input = data("idempotents.json");
    for (s, stab, name, out) in [("E", "se", "E1", &e1), ("F", "sf", "F1", &f1)] {
        let o = wordhyp(&[
            "build", path(&input), "--construction", "extend", "--structure", s, "--stabiliser", stab, "--name", name,
            "--out", path(out),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let o = wordhyp(&[
        "build", path(&e1), path(&f1), "--construction", "sgp-fp", "--structure", "E1", "--structure", "F1", "--out",
        path(&ef),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = wordhyp(&["verify", path(&ef), "--oracle", "result.oracle", "--bound", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("spurious: 0"));
    let o = wordhyp(&["member", path(&ef), "e f", "f e", "e f e"]);
    assert_eq!(stdout(&o).trim(), "MEMBER");
}

#[test]
fn semigroup_product_rejects_plain_inputs() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.json");
    let o = wordhyp(&[
        "build", path(&data("idempotents.json")), "--construction", "sgp-fp", "--structure", "E", "--structure", "F",
        "--out", path(&out),
    ]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("combing lacks ε"), "{}", stderr(&o));
    assert!(!out.exists());
}

#[test]
fn monoid_product_of_free_monoids() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ab.json");
    let o = wordhyp(&[
        "build", path(&data("free_monoids.json")), "--construction", "mon-fp-1unique", "--structure", "A",
        "--structure", "B", "--out", path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let file = read_file(&out).unwrap();
    let h = file.structure("result").unwrap();
    assert!(h.flags().one_uniqueness);
    let alt = Nfa::from_regex(&RegexExpr::parse("(a+ b+)* a* | (b+ a+)* b*").unwrap());
    assert!(h.combing().equivalent(&alt));
    let o = wordhyp(&["member", path(&out), "a", "b a", "a b a"]);
    assert_eq!(stdout(&o).trim(), "MEMBER");
    let o = wordhyp(&["verify", path(&out), "--oracle", "result.oracle", "--bound", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn star_product_of_bicyclic_monoids() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("star.json");
    let o = wordhyp(&[
        "build", path(&data("bicyclic_pair.json")), "--construction", "mon-fp-star", "--structure", "B1",
        "--structure", "B2", "--out", path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let file = read_file(&out).unwrap();
    let union_star = Nfa::from_regex(&RegexExpr::parse("(b1 | c1 | b2 | c2)*").unwrap());
    assert!(file.automaton("result.combing").unwrap().equivalent(&union_star));
    let o = wordhyp(&["member", path(&out), "b2 b1", "c1 b2", "b2 b2"]);
    assert_eq!(stdout(&o).trim(), "MEMBER");
}

#[test]
fn overlapping_operands_are_renamed() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("aa.json");
    let o = wordhyp(&[
        "build", path(&data("free_monoids.json")), "--construction", "mon-fp-1unique", "--structure", "A",
        "--structure", "A", "--out", path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("renamed"));
    let o = wordhyp(&["member", path(&out), "a@1", "a@2", "a@1 a@2"]);
    assert_eq!(stdout(&o).trim(), "MEMBER");
    let o = wordhyp(&["verify", path(&out), "--oracle", "result.oracle", "--bound", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn alt_writes_an_automaton() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("alt.json");
    let o = wordhyp(&[
        "build", path(&data("bicyclic_pair.json")), "--construction", "alt", "--structure", "B1", "--structure", "B2",
        "--out", path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let alt = read_file(&out).unwrap().automaton("result").unwrap();
    assert!(alt.accepts(&wordhyp_core::symbol::parse_word("b1 c1 b2 c1").unwrap()).unwrap());
    assert!(alt.accepts(&[]).unwrap());
}

#[test]
fn verify_reports_injected_faults() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("a.json");
    std::fs::write(&file, FREE_MONOID_TABLE).unwrap();
    let o = wordhyp(&["verify", path(&file), "--structure", "good", "--oracle", "A", "--bound", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = wordhyp(&["verify", path(&file), "--structure", "bad", "--oracle", "A", "--bound", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("spurious a #1 a #2 a"), "{}", stdout(&o));
    let o = wordhyp(&["verify", path(&file), "--structure", "good", "--oracle", "missing"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_and_format_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("broken.json");
    std::fs::write(&file, "{ \"structures\": 3 }").unwrap();
    assert_eq!(wordhyp(&["dump", path(&file), "--what", "table"]).status.code(), Some(2));
    std::fs::write(&file, r##"{ "alphabets": { "x": ["#1"] } }"##).unwrap();
    let o = wordhyp(&["dump", path(&file), "--what", "table"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("marker"));
    std::fs::write(&file, r#"{ "structures": { "s": { "alphabet": ["a"], "combing": "r", "table": "t", "kind": "monoid" } } }"#).unwrap();
    let o = wordhyp(&["dump", path(&file), "--what", "table"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unresolved automaton"));
    assert_eq!(wordhyp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(wordhyp(&["verify", path(&data("bicyclic.json"))]).status.code(), Some(2));
}

#[test]
fn dump_outputs() {
    let dir = TempDir::new().unwrap();
    let ext = dir.path().join("e.json");
    let o = wordhyp(&["dump", path(&data("idempotents.json")), "--structure", "E", "--what", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let g = wordhyp_core::Grammar::parse(&stdout(&o)).unwrap();
    let words: Vec<_> = g.enumerate(8).into_iter().collect();
    assert_eq!(words, vec![wordhyp_core::symbol::parse_word("e #1 e #2 e").unwrap()]);

    let o = wordhyp(&["dump", path(&data("bicyclic.json")), "--what", "combing"]);
    let doc: AutomatonDoc = serde_json::from_str(&stdout(&o)).unwrap();
    let combing = Nfa::from_regex(&RegexExpr::parse("c* b*").unwrap());
    assert!(doc.to_nfa().unwrap().equivalent(&combing));

    let o = wordhyp(&[
        "build", path(&data("idempotents.json")), "--construction", "extend", "--structure", "E", "--stabiliser", "se",
        "--out", path(&ext),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = wordhyp(&["dump", path(&ext), "--what", "grammar-stats"]);
    let counts: Vec<usize> = stdout(&o)
        .split(|c: char| !c.is_ascii_digit())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(counts.len(), 4);
    assert!(counts[2] <= counts[0] && counts[3] <= counts[1]);
}
