//! The shipped header against the exported functions.

use std::collections::BTreeSet;

const HEADER: &str = include_str!("../include/ucp.h");
const SOURCE: &str = include_str!("../src/lib.rs");

fn header_functions() -> BTreeSet<String> {
    let code: String = HEADER.lines().filter(|l| !l.trim_start().starts_with("//")).collect::<Vec<_>>().join("\n");
    code.split(';')
        .filter_map(|decl| {
            let decl = decl.trim();
            let name_end = decl.find('(')?;
            let name = decl[..name_end].rsplit(|c: char| c.is_whitespace() || c == '*').next()?;
            name.starts_with("ucp_").then(|| name.to_string())
        })
        .collect()
}

fn exported_functions() -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    let mut exported = false;
    for line in SOURCE.lines().map(str::trim) {
        if line == "#[no_mangle]" {
            exported = true;
        } else if exported && line.starts_with("pub ") {
            let after = line.split("fn ").nth(1).expect("exported item is a function");
            names.insert(after[..after.find('(').unwrap()].to_string());
            exported = false;
        }
    }
    names
}

#[test]
fn header_declares_every_export() {
    let exported = exported_functions();
    assert_eq!(exported.len(), 15);
    assert_eq!(header_functions(), exported);
}

#[test]
fn header_carries_the_status_codes() {
    for (name, code) in [
        ("UCP_STATUS_OK", 0),
        ("UCP_STATUS_NULL_POINTER", 1),
        ("UCP_STATUS_INVALID_UTF8", 2),
        ("UCP_STATUS_PARSE_ERROR", 3),
        ("UCP_STATUS_INVALID_ARGUMENT", 4),
        ("UCP_STATUS_TOO_LARGE", 5),
        ("UCP_STATUS_PANIC", 6),
    ] {
        assert!(HEADER.contains(&format!("{name} = {code},")), "{name}");
    }
    assert!(HEADER.contains("typedef struct UcpInstance UcpInstance;"));
    assert!(HEADER.contains("typedef struct UcpSolveResult UcpSolveResult;"));
}
