//! Compiles a C program against the header and links the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "ucp.h"

int main(void) {
    /* five-cycle: not 2-colorable, 3-colorable */
    size_t edges[] = {0, 1, 1, 2, 2, 3, 3, 4, 4, 0};
    UcpInstance *two = NULL, *three = NULL;
    if (ucp_graph_reduce(UCP_GRAPH_REDUCTION_COLORING, 5, edges, 5, 2, 0, &two) != UCP_STATUS_OK) return 10;
    if (ucp_graph_reduce(UCP_GRAPH_REDUCTION_COLORING, 5, edges, 5, 3, 0, &three) != UCP_STATUS_OK) return 11;
    int yes_two = -1, yes_three = -1;
    if (ucp_decide(two, &yes_two) != UCP_STATUS_OK || ucp_decide(three, &yes_three) != UCP_STATUS_OK) return 12;

    UcpSolveResult *result = NULL;
    if (ucp_solve_exact(two, &result) != UCP_STATUS_OK) return 13;
    char *optimum = NULL;
    if (ucp_result_optimum(result, &optimum) != UCP_STATUS_OK) return 14;
    size_t labels[5];
    if (ucp_result_argmax(result, labels, 5) != UCP_STATUS_OK) return 15;
    printf("two=%d three=%d optimum=%s evaluations=%llu first=%zu\n", yes_two, yes_three, optimum,
           (unsigned long long)ucp_result_evaluations(result), labels[0]);

    UcpInstance *bad = NULL;
    UcpStatus status = ucp_instance_from_json("{", &bad);
    printf("status=%d message_empty=%d\n", (int)status, strlen(ucp_last_error_message()) == 0);

    ucp_string_free(optimum);
    ucp_result_free(result);
    ucp_instance_free(two);
    ucp_instance_free(three);
    return 0;
}
"#;

/// `target/<profile>`, found from this test binary in `target/<profile>/deps`.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let lib = profile_dir().join("libucp_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let source = dir.path().join("main.c");
    let binary = dir.path().join("main");
    std::fs::write(&source, PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&binary)
        .arg(&source)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "compile or link failed");
    let out = Command::new(&binary).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("two=0 three=1 optimum=-1 evaluations=15 first=0"), "{text}");
    assert!(text.contains("status=3 message_empty=0"), "{text}");
}
