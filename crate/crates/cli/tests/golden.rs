//! Byte-for-byte comparison of command output against files under
//! `tests/golden`. Run with `UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};

use primspec_cli::run;

const CASES: &[(&str, &[&str])] = &[
    ("e1_parse.txt", &["parse", "--graph", "e1.g", "--format", "text"]),
    ("e1_parse.json", &["parse", "--graph", "e1.g"]),
    ("e1_parse.dot", &["parse", "--graph", "e1.g", "--format", "dot"]),
    ("e1_tails.json", &["tails", "--graph", "e1.g"]),
    ("e1_tails.txt", &["tails", "--graph", "e1.g", "--format", "text"]),
    ("e1_bv.json", &["bv", "--graph", "e1.g"]),
    ("e1_hs.json", &["hs", "--graph", "e1.g"]),
    ("e1_hs.dot", &["hs", "--graph", "e1.g", "--format", "dot"]),
    ("e1_ideals.json", &["ideals", "--graph", "e1.g"]),
    ("e1_ideals.dot", &["ideals", "--graph", "e1.g", "--format", "dot"]),
    ("e1_ideals.txt", &["ideals", "--graph", "e1.g", "--format", "text"]),
    ("e1_prim.json", &["prim", "--graph", "e1.g"]),
    ("e1_prim.txt", &["prim", "--graph", "e1.g", "--format", "text"]),
    ("e1_closure_empty.json", &["closure", "--graph", "e1.g", "--set", "{}"]),
    ("e1_closure_tail.json", &["closure", "--graph", "e1.g", "--set", r#"{"gamma":["M2"]}"#]),
    ("e1_closure_bv.json", &["closure", "--graph", "e1.g", "--set", "bv:v"]),
    ("e1_order.json", &["order", "--graph", "e1.g"]),
    ("e1_order.dot", &["order", "--graph", "e1.g", "--format", "dot"]),
    ("e1_order.txt", &["order", "--graph", "e1.g", "--format", "text"]),
    ("e1_quotient_w.txt", &["quotient", "--graph", "e1.g", "--K", "w", "--format", "text"]),
    ("e1_quotient_wv.json", &["quotient", "--graph", "e1.g", "--K", "w", "--B", "v"]),
    ("e1_simple.json", &["simple", "--graph", "e1.g"]),
    ("e1_report.json", &["report", "--graph", "e1.g", "--order", "--pretty"]),
    ("e2_tails.json", &["tails", "--graph", "e2.g"]),
    ("e2_tails_by_root.txt", &["tails", "--graph", "e2.g", "--label-by-root", "--format", "text"]),
    ("e2_ideals.dot", &["ideals", "--graph", "e2.g", "--format", "dot"]),
    ("e2_prim.json", &["prim", "--graph", "e2.g"]),
    ("e2_closure_arc.json", &["closure", "--graph", "e2.g", "--set", r#"{"circle":{"M3":"arc:(0,1/2)"}}"#]),
    ("e2_closure_arc.txt", &["closure", "--graph", "e2.g", "--set", "circle:M3=arc:(0,1/2)", "--format", "text"]),
    ("e2_closure_m2.json", &["closure", "--graph", "e2.g", "--set", "gamma:M2"]),
    ("e2_closure_m1.json", &["closure", "--graph", "e2.g", "--set", "circle:M1=T"]),
    (
        "e2_closure_by_root.json",
        &["closure", "--graph", "e2.g", "--label-by-root", "--set", "circle:T(w)=point:1/4,arc:(3/4,1/4]"],
    ),
    ("e2_order.json", &["order", "--graph", "e2.g"]),
    ("e2_order.dot", &["order", "--graph", "e2.g", "--format", "dot"]),
    ("e2_order.txt", &["order", "--graph", "e2.g", "--format", "text"]),
    ("e2_hs.txt", &["hs", "--graph", "e2.g", "--format", "text"]),
    ("e2_quotient_w.dot", &["quotient", "--graph", "e2.g", "--K", "w", "--format", "dot"]),
    ("e2_report.json", &["report", "--graph", "e2.g", "--set", "circle:M3=arc:(0,1/2)", "--order", "--pretty"]),
    ("e2_simple.txt", &["simple", "--graph", "e2.g", "--format", "text"]),
];

fn dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn argv(args: &[&str]) -> Vec<String> {
    let data = dir("data");
    let mut out = vec!["primspec".to_string()];
    let mut after_graph = false;
    for &a in args {
        out.push(if after_graph { data.join(a).display().to_string() } else { a.to_string() });
        after_graph = a == "--graph";
    }
    out
}

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (file, args) in CASES {
        let outcome = run(argv(args));
        assert_eq!(outcome.code, 0, "{file}: {}", outcome.stderr);
        let path = dir("golden").join(file);
        if update {
            std::fs::write(&path, &outcome.stdout).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if expected != outcome.stdout {
            mismatches.push(format!("{file}:\n--- expected\n{expected}--- actual\n{}", outcome.stdout));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn repeated_runs_are_identical() {
    for (file, args) in CASES {
        assert_eq!(run(argv(args)), run(argv(args)), "{file}");
    }
}
