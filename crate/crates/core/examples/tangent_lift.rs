//! For a Poisson manifold (M, π), the dual of the cotangent algebroid is TM
//! and its Lie-Poisson structure is the tangent lift of π: Hamiltonian fields
//! of linear and basic functions are the complete and vertical lifts of X_f.

use algebroid_leaves::algebroid::catalog;
use algebroid_leaves::expr::parse;
use algebroid_leaves::leaves::{self, TraceConfig};
use algebroid_leaves::lie_poisson::{DualPoint, LiePoisson};
use algebroid_leaves::sampling::uniform_points;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = catalog::cotangent_so3();
    let (coords, pi) = catalog::so3_bivector();
    let lp = LiePoisson::new(&spec);
    let pts: Vec<DualPoint> = uniform_points(9, 50, 6, -1.0, 1.0)
        .iter()
        .map(|z| DualPoint::from_flat(3, z))
        .collect();
    for f in ["x3", "x1*x2", "sin(x1)*x3", "exp(x2) - x1*x3"] {
        let d = leaves::tangent_lift_check(&lp, &pi, &parse(f, &coords)?, &pts)?;
        println!("f = {f:<16} lift defect {d:.1e}");
    }

    // |x|² and ⟨x, v⟩ are Casimirs of the tangent lift
    let start = DualPoint::new(vec![0.3, -0.5, 0.8], vec![0.2, 0.1, -0.4]);
    let trace = leaves::trace_leaf(
        &lp,
        &start,
        &TraceConfig {
            seed: 9,
            ..Default::default()
        },
    )?;
    for c in ["x1^2 + x2^2 + x3^2", "x1*xi1 + x2*xi2 + x3*xi3"] {
        println!(
            "drift of {c:<26} {:.1e}",
            leaves::drift(&trace, &lp.parse_function(c)?)?
        );
    }
    println!(
        "leaf dimension at start: {}",
        leaves::leaf_dimension(&lp, &start, 1e-9)?
    );
    Ok(())
}
