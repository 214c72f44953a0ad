//! The trivial gauge algebroid TM ⊕ (M × so(3)): its leaves are products of
//! T*M with a coadjoint sphere, so the leaf form splits into blocks.

use algebroid_leaves::algebroid::catalog;
use algebroid_leaves::leaves::{self, Solver, TraceConfig};
use algebroid_leaves::lie_poisson::{DualPoint, LiePoisson};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = catalog::trivial_gauge_so3();
    let lp = LiePoisson::new(&spec);
    let start = DualPoint::new(vec![0.0, 0.0], vec![1.0, 0.0, 0.0, 0.0, 1.0]);

    let iso = leaves::isotropy_algebra(&spec, &start.x, 1e-9)?;
    println!("isotropy algebra: dim {}, basis {:?}", iso.dim(), iso.basis);

    let trace = leaves::trace_leaf(
        &lp,
        &start,
        &TraceConfig {
            seed: 42,
            ..Default::default()
        },
    )?;
    let mu2 = lp.parse_function("xi3^2 + xi4^2 + xi5^2")?;
    let check = leaves::fiber_bundle_check(&trace, &[mu2])?;
    println!(
        "|μ|² spread over {} points: {:.1e}",
        trace.points.len(),
        check.max_spread
    );
    let end = trace.points.last().expect("non-empty");
    println!(
        "end point: x = {:.3?}, p = {:.3?}, μ = {:.3?}",
        end.x,
        &end.xi[..2],
        &end.xi[2..]
    );
    println!(
        "leaf dimension at end: {}",
        leaves::leaf_dimension(&lp, end, 1e-9)?
    );

    let mut vectors: Vec<Vec<f64>> = (0..4)
        .map(|k| (0..7).map(|j| if j == k { 1.0 } else { 0.0 }).collect())
        .collect();
    for i in 0..3 {
        vectors.push(lp.hamiltonian_vf(&lp.fiber_coordinate(2 + i), end)?);
    }
    let form = leaves::leaf_form_matrix(&lp, end, &vectors, 1e-8, Solver::Svd)?;
    println!("leaf form on (∂x, ∂p, X_μ1, X_μ2, X_μ3):");
    for i in 0..7 {
        let row: Vec<String> = form
            .row(i)
            .iter()
            .map(|v| format!("{:6.2}", if v.abs() < 5e-3 { 0.0 } else { *v }))
            .collect();
        println!("    [{}]", row.join(" "));
    }
    Ok(())
}
