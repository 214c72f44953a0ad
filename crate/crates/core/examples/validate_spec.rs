//! Loads a spec file, checks the algebroid axioms and the Jacobi identity of
//! the induced Lie-Poisson bracket, and prints the bracket table.
//!
//! ```text
//! cargo run --example validate_spec -- crates/core/specs/broken.spec
//! ```

use std::path::PathBuf;

use algebroid_leaves::algebroid::{AlgebroidSpec, Section};
use algebroid_leaves::lie_poisson::{DualPoint, LiePoisson};
use algebroid_leaves::sampling::uniform_points;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs/cotangent-so3.spec")
        });
    let spec = AlgebroidSpec::load(&path)?;
    println!(
        "{} (n = {}, m = {}, hash {})",
        spec.name(),
        spec.n(),
        spec.m(),
        spec.content_hash()
    );

    let m = spec.m();
    for i in 0..m {
        let rho: Vec<String> = spec
            .anchor_field(i)
            .iter()
            .map(|e| e.to_string_with(spec.coords()))
            .collect();
        println!("  ρ(e{}) = ({})", i + 1, rho.join(", "));
    }
    for i in 0..m {
        for j in i + 1..m {
            let b = spec.bracket_sections(&Section::basis(m, i), &Section::basis(m, j))?;
            let parts: Vec<String> = b
                .components
                .iter()
                .map(|e| e.to_string_with(spec.coords()))
                .collect();
            println!("  [e{}, e{}] = ({})", i + 1, j + 1, parts.join(", "));
        }
    }

    let report = spec.validate(&uniform_points(1, 100, spec.n(), -1.0, 1.0), 1e-8);
    println!(
        "axioms at 100 points: antisymmetry {:.2e}, anchor {:.2e}, jacobi {:.2e} -> {}",
        report.antisymmetry,
        report.anchor_morphism,
        report.jacobi,
        if report.pass { "ok" } else { "FAILED" }
    );

    let lp = LiePoisson::new(&spec);
    let mut worst: f64 = 0.0;
    for z in uniform_points(2, 100, lp.dim(), -1.0, 1.0) {
        worst = worst.max(lp.jacobi_defect(&DualPoint::from_flat(spec.n(), &z))?);
    }
    println!("Lie-Poisson Jacobi defect at 100 points of A*: {worst:.2e}");
    Ok(())
}
