mod common;

use std::process::{Command, Output};

use common::instances_dir;

fn relcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relcoh")).args(args).output().expect("binary runs")
}

fn instance(name: &str) -> String {
    instances_dir().join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn cohomology_of_c2_with_trivial_member() {
    let o = relcoh(&["cohomology", &instance("c2_trivial_member_f2.rel")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("H2(G): [2]"), "{s}");
    assert!(s.contains("prod H2(S_i): []"));
    assert!(s.contains("H2_rel: [2]"));
    assert!(s.contains("oracle [2]"));
}

#[test]
fn cohomology_of_c2_with_both_members_is_trivial() {
    let o = relcoh(&["cohomology", &instance("c2_whole_f2.rel")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H2_rel: []"));
}

#[test]
fn other_degrees() {
    let o = relcoh(&["cohomology", "--degree", "1", &instance("c2_trivial_member_f2.rel")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H1_rel: [2]"));
    let o = relcoh(&["cohomology", "--degree", "3", &instance("c4_c2_f2.rel")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H3_rel: [2]"), "{}", stdout(&o));
    let o = relcoh(&["cohomology", "--degree", "4", &instance("c4_c2_f2.rel")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cochain_section_is_classified() {
    let o = relcoh(&["cohomology", &instance("c2_trivial_member_cocycle.rel")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cochain class: [1]"));
    let o = relcoh(&["verify", &instance("c2_trivial_member_cocycle.rel")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cochain: class [1], round trip ok"));
}

#[test]
fn corrupted_cocycle_names_the_tuple() {
    for cmd in ["cohomology", "verify"] {
        let o = relcoh(&[cmd, &instance("corrupted_cocycle.rel")]);
        assert_eq!(o.status.code(), Some(2));
        let e = stderr(&o);
        assert!(e.contains("not a relative cocycle") && e.contains("[1,1]"), "{e}");
    }
}

#[test]
fn malformed_inputs_exit_two() {
    let o = relcoh(&["cohomology", &instance("malformed_table.rel")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let o = relcoh(&["cohomology", &instance("empty_family.rel")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty"));
    let o = relcoh(&["cohomology", &instance("does_not_exist.rel")]);
    assert_eq!(o.status.code(), Some(2));
    let o = relcoh(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passes_on_every_instance_file() {
    for name in [
        "c2_trivial_member_f2.rel",
        "c2_whole_f2.rel",
        "c4_c2_f2.rel",
        "v4_two_members_z4.rel",
        "s3_transposition_z3_sign.rel",
        "s3_two_members_z3.rel",
    ] {
        let o = relcoh(&["verify", &instance(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        assert!(stdout(&o).ends_with("result: PASS\n"), "{name}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["verify", "--json"],
        vec!["verify"],
        vec!["enumerate"],
        vec!["cohomology", "--representatives"],
        vec!["les"],
    ] {
        let mut full = args.clone();
        let path = instance("s3_transposition_z3_sign.rel");
        full.push(&path);
        let a = relcoh(&full);
        let b = relcoh(&full);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn transversal_choice_keeps_counts() {
    let path = instance("v4_two_members_z4.rel");
    let a: serde_json::Value = serde_json::from_slice(&relcoh(&["verify", "--json", &path]).stdout).unwrap();
    let b: serde_json::Value =
        serde_json::from_slice(&relcoh(&["verify", "--json", "--transversal", "max", &path]).stdout).unwrap();
    for key in ["invariants", "cohomology_order", "class_count", "extensions_enumerated", "passed"] {
        assert_eq!(a[key], b[key], "{key}");
    }
    assert_eq!(a["passed"], serde_json::Value::Bool(true));
}

#[test]
fn timings_only_on_request() {
    let path = instance("c4_c2_f2.rel");
    let plain = stdout(&relcoh(&["verify", "--json", &path]));
    assert!(!plain.contains("elapsed"));
    let timed = stdout(&relcoh(&["verify", "--json", "--timings", &path]));
    assert!(timed.contains("elapsed"));
}

#[test]
fn lifting_files() {
    let o = relcoh(&["lifting", &instance("lifting_c4_c2.rel")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("solvable: no, class: [1]") && s.contains("criterion: holds"), "{s}");
    let o = relcoh(&["lifting", &instance("lifting_split.rel")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("solvable: yes"));
    let o = relcoh(&["lifting", &instance("lifting_sym5_c15.rel")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("kernel nonabelian"));
    let o = relcoh(&["lifting", &instance("c4_c2_f2.rel")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn les_file() {
    let o = relcoh(&["les", &instance("c4_c2_f2.rel")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches(": ok, composite zero: ok").count(), 3);
}

#[test]
fn cap_skips_the_oracle() {
    let o = relcoh(&["cohomology", "--cap", "10", &instance("s3_two_members_z3.rel")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle skipped"));
    let o = relcoh(&["verify", "--cap", "10", &instance("s3_two_members_z3.rel")]);
    assert_eq!(o.status.code(), Some(2));
}
