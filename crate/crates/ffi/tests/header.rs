use std::path::{Path, PathBuf};
use std::process::Command;

fn header_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("helicity.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header_path()).unwrap();
    assert!(h.starts_with("#ifndef HELICITY_H"));
    for name in [
        "typedef struct HelMesh HelMesh;",
        "typedef struct HelChernReport",
        "HEL_STATUS_OK = 0",
        "HEL_STATUS_ADMISSIBILITY_VIOLATION = 10",
        "HEL_STATUS_PANIC = 99",
        "hel_version(void)",
        "hel_last_error(void)",
        "hel_mesh_latlon(size_t n_theta, size_t n_phi, struct HelMesh **out)",
        "hel_mesh_icosphere",
        "hel_mesh_free",
        "hel_chern_lattice",
        "hel_chern_clutching",
        "hel_overlap",
        "hel_measure_helicity",
        "extern \"C\"",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

const SMOKE: &str = r#"
#include <stdio.h>
#include "helicity.h"

int main(void) {
    HelMesh *m = NULL;
    HelChernReport r;
    if (hel_mesh_icosphere(3, &m) != HEL_STATUS_OK) return 10;
    if (hel_chern_lattice(2, m, &r) != HEL_STATUS_OK) return 11;
    hel_mesh_free(m);
    if (r.chern != -4 || r.method != HEL_METHOD_LATTICE) return 12;
    if (hel_chern_clutching(3, 8, &r) != HEL_STATUS_TOO_FEW_SAMPLES) return 13;
    if (hel_last_error() == NULL || r.h != 2) return 14; /* out untouched on failure */
    printf("%s %lld\n", hel_version(), (long long)r.h);
    return 0;
}
"#;

// Compile and link a small C program against the static library when a C
// compiler is on PATH.
#[test]
fn c_program_links_and_runs() {
    let Some(cc) = ["cc", "gcc", "clang"].into_iter().find(|c| {
        Command::new(c)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())
    }) else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let test_exe = std::env::current_exe().unwrap();
    let profile_dir = test_exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libhelicity_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let exe = dir.path().join("smoke");
    std::fs::write(&src, SMOKE).unwrap();
    let out = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header_path().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert_eq!(stdout.trim(), format!("{} 2", env!("CARGO_PKG_VERSION")));
}
