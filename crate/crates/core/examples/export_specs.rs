//! Writes every bundled spec (and the deliberately broken one) as JSON.
//!
//! ```text
//! cargo run --example export_specs -- crates/core/specs
//! ```

use std::path::PathBuf;

use algebroid_leaves::algebroid::catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs"));
    std::fs::create_dir_all(&dir)?;
    let mut specs = catalog::all();
    specs.push(("broken", catalog::broken()));
    for (stem, spec) in specs {
        let path = dir.join(format!("{stem}.spec"));
        spec.save(&path)?;
        println!(
            "{:<20} n={} m={} hash={}",
            path.display(),
            spec.n(),
            spec.m(),
            spec.content_hash()
        );
    }
    Ok(())
}
