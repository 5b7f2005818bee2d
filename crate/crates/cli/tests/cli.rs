use std::io::Write;
use std::path::PathBuf;

fn run(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["imlk".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let code = imlk_cli::run(&argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn write_file(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path
}

#[test]
fn decide_km_slob_is_theorem() {
    let (code, out) = run(&["decide-km", "(box A -> A) -> A"]);
    assert_eq!(out.lines().next(), Some("theorem"));
    assert_eq!(code, 0);
}

#[test]
fn fixpoint_shortcut_prints_substitution() {
    let (code, out) = run(&["fixpoint", "--shortcut", "box p -> bot", "p"]);
    assert_eq!(out.lines().next(), Some("box top -> bot"));
    assert_eq!(code, 0);
}

#[test]
fn fixpoint_diag_with_verification() {
    let (code, out) = run(&["fixpoint", "--diag", "--verify", "3", "q & box p", "p"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("q & box (q & top)"));
    assert_eq!(lines.next(), Some("unrefuted"));
    assert_eq!(lines.next(), Some("bound 3"));
    assert_eq!(code, 0);
}

#[test]
fn countermodel_dumps_frame_and_exits_one() {
    let (code, out) = run(&["countermodel", "--logic", "ALL", "--max", "2", "p -> box p"]);
    assert_eq!(code, 1);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("countermodel"));
    assert!(out.contains("worlds 2"));
    assert!(out.contains("prec 0 1"));
    assert!(out.contains("val p = {0}"));
    assert!(out.contains("world 0"));
}

#[test]
fn countermodel_unrefuted_exits_zero() {
    let (code, out) = run(&["countermodel", "--logic", "GL", "--max", "3", "box (box A -> A) -> box A"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("unrefuted"));
    assert!(out.contains("bound 3"));
}

#[test]
fn parse_and_render() {
    let (code, out) = run(&["parse", "boxdot (p -> q)"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(p -> q) & box (p -> q)");

    let (code, out) = run(&["render", "--axiom", "slob"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(box A -> A) -> A");
}

#[test]
fn parse_corpus_file() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_file(&dir, "corpus.txt", "# two formulas\nbox p\np->p\n");
    let (code, out) = run(&["parse", "--file", corpus.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "box p\np -> p\n");
}

#[test]
fn parse_error_is_usage_error() {
    let (code, out) = run(&["parse", "p ->"]);
    assert_eq!(code, 2);
    assert!(out.contains("syntax error at byte"));
}

#[test]
fn check_and_validity_on_frame_file() {
    let dir = tempfile::tempdir().unwrap();
    let frame = write_file(&dir, "c2.frame", "worlds 2\nleq 0 1\nprec 0 1\n");
    // closed formula true everywhere on the chain
    let (code, out) = run(&["check", frame.to_str().unwrap(), "~box bot"]);
    assert_eq!((code, out.lines().next()), (1, Some("countermodel")));
    let (code, out) = run(&["check", frame.to_str().unwrap(), "top"]);
    assert_eq!((code, out.lines().next()), (0, Some("valid")));

    let (code, out) = run(&["validity", frame.to_str().unwrap(), "box A -> A"]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().next(), Some("countermodel"));
    let (code, out) = run(&["validity", frame.to_str().unwrap(), "A -> box A"]);
    assert_eq!((code, out.lines().next()), (0, Some("valid")));
}

#[test]
fn condition_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let frame = write_file(&dir, "r1.frame", "worlds 1\nprec 0 0\n");
    let (code, out) = run(&["condition", frame.to_str().unwrap(), "refl"]);
    assert_eq!((code, out.trim()), (0, "holds"));
    let (code, out) = run(&["condition", frame.to_str().unwrap(), "ver"]);
    assert_eq!((code, out.trim()), (1, "fails"));
    let (code, out) = run(&["condition", frame.to_str().unwrap(), "pll"]);
    assert_eq!(code, 2);
    assert!(out.contains("no relational condition"));
}

#[test]
fn translate_subcommand() {
    let (code, out) = run(&["translate", "--flat", "p"]);
    assert_eq!((code, out.trim()), (0, "[i] p"));
    let (code, out) = run(&["translate", "--to-gl", "p"]);
    assert_eq!((code, out.trim()), (0, "box p & p"));
}

#[test]
fn decide_gl_and_km_lc() {
    let (code, out) = run(&["decide-gl", "~box bot"]);
    assert_eq!(code, 1);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("non-theorem"));
    assert!(out.contains("worlds 1"));

    let (code, out) = run(&["decide-km-lc", "(A -> B) | (B -> A)"]);
    assert_eq!((code, out.trim()), (0, "theorem"));
    let (code, out) = run(&["decide-km-lc", "A | ~A"]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().next(), Some("non-theorem"));
}

#[test]
fn algebra_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let poset = write_file(&dir, "chain.poset", "points 2\nle 0 1\n");
    let (code, out) = run(&["algebra", poset.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("scattered"));
    assert!(out.contains("elements 3"));
    assert!(out.contains("coderiv {} = {1}"));
    assert!(out.contains("km=true"));
}

#[test]
fn presheaf_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    write_file(&dir, "fork.poset", "points 3\nle 0 1\nle 0 2\n");
    let fork = dir.path().join("fork.poset");
    let (code, out) = run(&["presheaf", "--strong-lob", fork.to_str().unwrap()]);
    assert_eq!((code, out.trim()), (0, "valid"));

    write_file(&dir, "chain.poset", "points 2\nle 0 1\n");
    // labels read first-bit-first; restriction keeps the first bit and the
    // endomorphism prepends a 1
    let psh = write_file(
        &dir,
        "streams.psh",
        "poset chain.poset\n\
         stage 0: 00 01 10 11\n\
         stage 1: 0 1\n\
         map 0 1: 00->0 01->0 10->1 11->1\n\
         nat: 0: 00->10 01->10 10->11 11->11\n\
         nat: 1: 0->1 1->1\n",
    );
    let (code, out) = run(&["presheaf", "--banach", psh.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("fixpoint"));
    // all-ones stream at each stage
    assert!(out.contains("stage 0: 11"));
    assert!(out.contains("stage 1: 1"));

    let (code, out) = run(&["presheaf", "--maxst", psh.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("holds"));
}

#[test]
fn enumerate_subcommand() {
    let (code, out) = run(&["enumerate", "1", "--logic", "ALL"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("count 2"));
    let (code, out) = run(&["enumerate", "1", "--logic", "KM"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("count 1"));
}

#[test]
fn json_records() {
    let (_, out) = run(&["decide-km", "--json", "(box A -> A) -> A"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["verdict"], "theorem");

    let (_, out) = run(&["countermodel", "--json", "--logic", "ALL", "--max", "2", "p -> box p"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["verdict"], "countermodel");
    assert_eq!(v["witness"]["world"], 0);
    assert_eq!(v["witness"]["valuation"]["p"][0], 0);

    let (_, out) = run(&["countermodel", "--json", "--logic", "GL", "--max", "2", "box A"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    // box A fails on a GL frame with a successor
    assert_eq!(v["verdict"], "countermodel");
}

#[test]
fn usage_error_exit_code() {
    let (code, _) = run(&["no-such-subcommand"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_byte_stable() {
    for args in [
        vec!["decide-km", "box A -> ((B -> A) | B)"],
        vec!["countermodel", "--logic", "ALL", "--max", "3", "(A -> B) | (B -> A)"],
        vec!["enumerate", "2"],
    ] {
        let (c1, o1) = run(&args);
        let (c2, o2) = run(&args);
        assert_eq!(c1, c2);
        assert_eq!(o1, o2);
    }
}
