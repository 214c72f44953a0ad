//! At every point of A*, the fundamental vector fields of the affine action
//! span exactly the Hamiltonian directions, so its orbits are the leaves.

use algebroid_leaves::algebroid::catalog;
use algebroid_leaves::jet_action::span_equality_check;
use algebroid_leaves::lie_poisson::{DualPoint, LiePoisson};
use algebroid_leaves::sampling::uniform_points;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:<20} {:>6} {:>10} {:>10}",
        "spec", "points", "leaf dims", "all equal"
    );
    for (name, spec) in catalog::all() {
        let lp = LiePoisson::new(&spec);
        let mut dims = std::collections::BTreeSet::new();
        let mut equal = true;
        let pts = uniform_points(3, 100, lp.dim(), -1.0, 1.0);
        for z in &pts {
            let r = span_equality_check(&lp, &DualPoint::from_flat(spec.n(), z), 1e-8)?;
            equal &= r.equal && r.ham_rank == r.bivector_rank;
            dims.insert(r.ham_rank);
        }
        println!(
            "{name:<20} {:>6} {:>10} {:>10}",
            pts.len(),
            format!("{dims:?}"),
            equal
        );
    }
    Ok(())
}
