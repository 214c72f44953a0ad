//! Coadjoint orbits of so(3) are the spheres |ξ| = r: trace a few of them by
//! random Hamiltonian flows and look at the Casimir, the leaf dimension and
//! the area form.

use algebroid_leaves::algebroid::catalog;
use algebroid_leaves::leaves::{self, Solver, TraceConfig};
use algebroid_leaves::lie_poisson::{DualPoint, LiePoisson};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lp = LiePoisson::new(&catalog::so3());
    let casimir = lp.parse_function("xi1^2 + xi2^2 + xi3^2")?;
    for r in [0.5, 1.0, 2.0] {
        let start = DualPoint::new(vec![0.0], vec![0.0, 0.0, r]);
        let trace = leaves::trace_leaf(
            &lp,
            &start,
            &TraceConfig {
                seed: 42,
                ..Default::default()
            },
        )?;
        let lowest = trace
            .points
            .iter()
            .map(|p| p.xi[2])
            .fold(f64::INFINITY, f64::min);
        let dims: std::collections::BTreeSet<usize> = trace
            .points
            .iter()
            .step_by(500)
            .map(|p| leaves::leaf_dimension(&lp, p, 1e-9))
            .collect::<Result<_, _>>()?;
        println!(
            "r = {r}: {} steps, |ξ|² drift {:.1e}, lowest ξ3 {lowest:.3}, leaf dimensions {dims:?}",
            trace.steps(),
            leaves::drift(&trace, &casimir)?
        );
        // ω(∂ξ1, ∂ξ2) at the north pole is 1/r
        let w = leaves::leaf_form_at(
            &lp,
            &start,
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            1e-9,
            Solver::Svd,
        )?;
        println!("       ω(∂ξ1, ∂ξ2) at the pole = {w:.6}");
    }
    let origin = DualPoint::new(vec![0.0], vec![0.0; 3]);
    println!(
        "leaf dimension at the origin: {}",
        leaves::leaf_dimension(&lp, &origin, 1e-9)?
    );
    Ok(())
}
