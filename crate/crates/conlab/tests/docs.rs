//! The tables under docs/ are generated; each must match its generator.

use std::path::PathBuf;

fn fenced_block(doc: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs").join(doc);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let start = text.find("```text\n").expect("fenced text block") + "```text\n".len();
    let len = text[start..].find("```").expect("closing fence");
    text[start..start + len].to_string()
}

#[test]
fn constructor_tags() {
    assert_eq!(fenced_block("coding.md"), conlab_core::coding::tag_table());
}

#[test]
fn axiom_schemas() {
    assert_eq!(fenced_block("schemas.md"), conlab_core::arith::schemas::schema_table());
}

#[test]
fn substitution_definition() {
    assert_eq!(fenced_block("substitution.md"), conlab_core::arith::toolkit::substitution_definition());
}

#[test]
fn worked_coding_example() {
    let f = conlab_core::formula::parse_formula("0=0").unwrap();
    assert_eq!(conlab_core::coding::encode(&f).to_string(), "32833");
    assert_eq!(8 * 64 * 64 + 64 + 1, 32833);
}
