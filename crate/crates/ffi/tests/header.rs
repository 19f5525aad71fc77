use std::path::Path;
use std::process::Command;

fn header() -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hypergroup.h");
    std::fs::read_to_string(path).expect("header is generated by the build script")
}

#[test]
fn declares_every_exported_function() {
    let src = include_str!("../src/lib.rs");
    let h = header();
    let exported: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 10);
    for name in exported {
        assert!(h.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(h.contains("typedef struct HgHypergroup HgHypergroup;"));
}

#[test]
fn header_compiles_as_c() {
    let dir = std::env::temp_dir().join(format!("hg-header-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let prog = dir.join("use.c");
    std::fs::write(
        &prog,
        "#include \"hypergroup.h\"\n\
         int main(void) {\n\
           HgHypergroup *h = 0;\n\
           char *out = 0;\n\
           int passed = 0;\n\
           if (hg_hypergroup_from_catalog(\"su2\", &h) != HG_STATUS_OK) return 1;\n\
           hg_hypergroup_product(h, \"1\", \"1\", &out);\n\
           hg_hypergroup_check(h, 4, &passed);\n\
           hg_string_free(out);\n\
           hg_hypergroup_free(h);\n\
           return passed ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&prog)
        .status();
    match status {
        Ok(s) => assert!(s.success(), "C compiler rejected the header"),
        Err(e) => eprintln!("skipping: no C compiler ({e})"),
    }
}
