use std::process::{Command, Output};

fn modring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modring")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn qexp_prints_expansions() {
    let o = modring(&["qexp", "E4", "--prec", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1 + 240*q + 2160*q^2 + 6720*q^3 + O(q^4)");
    let o = modring(&["qexp", "theta", "--prec", "5"]);
    assert_eq!(stdout(&o).trim(), "1 + 2*q + 2*q^4 + O(q^5)");
    let o = modring(&["qexp", "f[1;rho3]", "--prec", "3"]);
    assert_eq!(stdout(&o).trim(), "1 + 6*q + O(q^3)");
}

#[test]
fn dims_lists_table_rows() {
    let o = modring(&["dims", "--group", "gamma0:2", "--kmax", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), ["k=0: 1", "k=2: 1", "k=4: 2", "k=6: 2", "k=8: 3"]);
}

#[test]
fn verify_span_json() {
    let o = modring(&["verify", "span", "--case", "N5", "--output", "json"]);
    assert!(o.status.success());
    let line = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(v["case"], "N5");
    assert_eq!(v["check"], "span");
    assert_eq!(v["status"], "pass");
    for key in ["k_range", "precision", "details", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn verify_presentation_and_hilbert() {
    let o = modring(&["verify", "presentation", "--case", "N11h3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().filter(|l| !l.trim().is_empty()).count() >= 4);
    let o = modring(&["hilbert", "--case", "N9"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("k=3: series 10  dim 10"));
}

#[test]
fn catalog_list_and_identities() {
    let o = modring(&["catalog", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("gammaH:11:[3]"));
    assert!(text.contains("N14h9"));
    let o = modring(&["verify", "identity"]);
    assert!(o.status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(modring(&["qexp", "nosuchform"]).status.code(), Some(2));
    assert_eq!(modring(&["verify", "span", "--case", "N99"]).status.code(), Some(2));
    assert_eq!(modring(&["dims", "--group", "gamma0:97"]).status.code(), Some(2));
    assert_eq!(modring(&["verify", "relations", "--case", "N9", "--prec", "3"]).status.code(), Some(3));
}

#[test]
fn failing_catalog_exits_one() {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../catalog/data/catalog.toml")).unwrap();
    let bad = src.replacen("frho7^2 - fchi7*fchi7b", "frho7^2 - fchi7^2", 1);
    let path = std::env::temp_dir().join(format!("modring-bad-{}.toml", std::process::id()));
    std::fs::write(&path, bad).unwrap();
    let o = modring(&["verify", "relations", "--case", "N7", "--catalog", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fail"));
}
