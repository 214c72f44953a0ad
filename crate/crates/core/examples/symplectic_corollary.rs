//! A* is symplectic exactly when the anchor is an isomorphism. Compare leaf
//! dimensions across the bundled specs.

use algebroid_leaves::algebroid::catalog;
use algebroid_leaves::leaves::leaf_dimension;
use algebroid_leaves::lie_poisson::{DualPoint, LiePoisson};
use algebroid_leaves::sampling::uniform_points;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:<20} {:>6} {:>12}  symplectic",
        "spec", "dim A*", "leaf dims"
    );
    for (name, spec) in catalog::all() {
        let lp = LiePoisson::new(&spec);
        let mut dims = std::collections::BTreeSet::new();
        for z in uniform_points(4, 200, lp.dim(), -1.0, 1.0) {
            dims.insert(leaf_dimension(
                &lp,
                &DualPoint::from_flat(spec.n(), &z),
                1e-8,
            )?);
        }
        let symplectic = dims.len() == 1 && dims.contains(&lp.dim());
        println!(
            "{name:<20} {:>6} {:>12}  {symplectic}",
            lp.dim(),
            format!("{dims:?}")
        );
    }
    Ok(())
}
