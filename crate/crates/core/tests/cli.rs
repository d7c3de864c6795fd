use std::path::PathBuf;
use std::process::{Command, Output};

fn ualg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ualg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

/// Invocations that emit a certificate with `--json`.
const CERTIFYING: &[&[&str]] = &[
    &["weakes", "--class", "catalog:chain_lattice(2)", "--max-size", "4", "--max-gens", "2", "--max-width", "2"],
    &["weakes", "--class", "catalog:S2", "--max-size", "4", "--max-gens", "2", "--max-width", "2"],
    &["epic", "catalog:S3", "--sub", "0,2", "--class", "catalog:S2"],
    &["full", "catalog:S3", "--sub", "0,2", "--class", "catalog:S2"],
    &["full", "catalog:S3", "--sub", "0", "--class", "catalog:S2"],
    &["fully-epic", "catalog:product(L2,L2)", "--sub", "0,1,3", "--class", "catalog:L2"],
    &["decide-epic", "catalog:S3", "--sub", "0,2", "--class", "catalog:S2"],
    &["decide-epic", "catalog:B4", "--sub", "0,3", "--class", "catalog:B2"],
    &["epic", "catalog:heyting_chain(3)", "--sub", "0,2", "--class", "catalog:heyting_chain(3)", "--mode", "v"],
    &["terms", "pixley", "--class", "catalog:boolean(1)"],
    &["terms", "maltsev", "--class", "catalog:L2"],
    &["terms", "nu", "--arity", "3", "--class", "catalog:L2"],
    &["terms", "discriminator", "--class", "catalog:B2"],
    &["arith-witness", "--class", "catalog:L2"],
    &["arith-witness", "--class", "catalog:B2"],
    &["arith-witness", "--class", "catalog:S2"],
];

#[test]
fn every_certificate_round_trips() {
    for (i, args) in CERTIFYING.iter().enumerate() {
        let mut a = args.to_vec();
        a.push("--json");
        let first = ualg(&a);
        assert!(first.status.success(), "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
        let second = ualg(&a);
        assert_eq!(first.stdout, second.stdout, "output of {args:?} is not deterministic");
        let path = scratch(&format!("cert{i}.json"));
        std::fs::write(&path, &first.stdout).unwrap();
        let v = ualg(&["verify-cert", path.to_str().unwrap()]);
        assert!(v.status.success(), "{args:?}: {}", stdout(&v));
        assert!(stdout(&v).starts_with("verified"));
    }
}

#[test]
fn weakes_example() {
    let o = ualg(&CERTIFYING[0].iter().copied().chain(["--json"]).collect::<Vec<_>>());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "WeakESFailure");
    assert_eq!(v["witness"]["ambient"]["elements"].as_array().unwrap().len(), 4);
}

#[test]
fn pixley_term_in_prefix_notation() {
    let o = ualg(&["terms", "pixley", "--class", "catalog:boolean(1)"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("verdict: TermFound"));
    let term = text.lines().find(|l| l.starts_with("pixley term")).unwrap();
    assert!(term.contains("x0") && term.contains('('));
}

#[test]
fn nu_sweep_is_flagged() {
    let text = stdout(&ualg(&["terms", "nu", "--class", "catalog:S2"]));
    assert!(text.contains("arities swept over 3..=5"));
    assert_eq!(text.matches("verdict: NoTerm").count(), 3);
}

#[test]
fn tampered_certificates_are_rejected() {
    let o = ualg(&["epic", "catalog:S3", "--sub", "0,2", "--class", "catalog:S2", "--json"]);
    let text = stdout(&o).replace("\"NotEpic\"", "\"Epic\"");
    let path = scratch("tampered.json");
    std::fs::write(&path, text).unwrap();
    let v = ualg(&["verify-cert", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(ualg(&["con", "catalog:S3"]).status.code(), Some(0));
    assert_eq!(ualg(&["con", "catalog:chain_lattice(0)"]).status.code(), Some(1));
    assert_eq!(ualg(&["con", "/no/such/file.json"]).status.code(), Some(1));
    assert_eq!(ualg(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(ualg(&["free", "--class", "catalog:B2", "--cap", "4"]).status.code(), Some(2));
    assert_eq!(ualg(&["homs", "catalog:chain_lattice(3)", "catalog:chain_lattice(3)", "--node-budget", "1"]).status.code(), Some(2));
    assert_eq!(ualg(&["--help"]).status.code(), Some(0));
}

#[test]
fn files_and_catalog_agree() {
    let dump = ualg(&["catalog", "dump", "S3"]);
    let path = scratch("s3.json");
    std::fs::write(&path, &dump.stdout).unwrap();
    let from_file = ualg(&["con", path.to_str().unwrap(), "--json"]);
    let from_key = ualg(&["con", "catalog:S3", "--json"]);
    assert_eq!(from_file.stdout, from_key.stdout);
    let list = stdout(&ualg(&["catalog", "list"]));
    assert!(list.contains("heyting_chain(n)"));
}

#[test]
fn other_subcommands_run() {
    for args in [
        vec!["relcon", "catalog:S3", "--class", "catalog:S2"],
        vec!["sg", "catalog:B4", "--gens", "1"],
        vec!["homs", "catalog:S3", "catalog:S2"],
        vec!["quotient", "catalog:S3", "0 1|2"],
        vec!["decompose", "catalog:B4", "--class", "catalog:B2"],
        vec!["fullify", "catalog:S3", "--sub", "0,2", "--class", "catalog:S2"],
        vec!["free", "--class", "catalog:L2", "--vars", "3"],
        vec!["terms", "majority", "--class", "catalog:L2", "--threads", "2"],
    ] {
        for json in [false, true] {
            let mut a = args.clone();
            if json {
                a.push("--json");
            }
            let o = ualg(&a);
            assert!(o.status.success(), "{a:?}: {}", String::from_utf8_lossy(&o.stderr));
            if json {
                serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap();
            }
        }
    }
}
