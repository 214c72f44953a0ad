//! The files under `specs/` are the catalog serialized; regenerate them with
//! `cargo run --example export_specs` if this fails.

use std::path::Path;

use algebroid_leaves::algebroid::{catalog, AlgebroidSpec};

#[test]
fn spec_files_match_catalog() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("specs");
    let mut specs = catalog::all();
    specs.push(("broken", catalog::broken()));
    for (stem, spec) in specs {
        let path = dir.join(format!("{stem}.spec"));
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, spec.to_json(), "{stem}");
        let loaded = AlgebroidSpec::load(&path).unwrap();
        assert_eq!(loaded, spec, "{stem}");
        assert_eq!(loaded.content_hash(), spec.content_hash());
    }
}

#[test]
fn no_stray_spec_files() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("specs");
    let count = std::fs::read_dir(dir).unwrap().count();
    assert_eq!(count, catalog::all().len() + 1);
}
