//! A charged particle in the plane: the magnetic extension of T ℝ² by
//! B = dx1∧dx2. On the leaf s = const the symplectic form picks up the
//! magnetic term −s·B, and H = |p|²/2 generates circular Lorentz orbits.

use std::f64::consts::PI;

use algebroid_leaves::algebroid::catalog;
use algebroid_leaves::leaves::{self, Splitting};
use algebroid_leaves::lie_poisson::{DualPoint, LiePoisson};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = catalog::magnetic2d();
    let lp = LiePoisson::new(&spec);

    let curv = leaves::curvature_at(&spec, &Splitting::standard(&spec)?, &[0.0, 0.0])?;
    println!("R_λ(∂1, ∂2) = {:?}", curv.values[0][1]);

    for s in [0.0, 1.0, 2.5] {
        let pt = DualPoint::new(vec![0.2, -0.4], vec![0.3, 0.5, s]);
        let r = leaves::magnetic_form_check(&lp, &pt, 1e-9)?;
        println!(
            "s = {s}: leaf form on (∂x1, ∂x2, ∂p1, ∂p2), deviation {:.1e}",
            r.max_deviation
        );
        for i in 0..4 {
            let row: Vec<String> = r
                .form
                .row(i)
                .iter()
                .map(|v| format!("{:6.2}", if v.abs() < 5e-3 { 0.0 } else { *v }))
                .collect();
            println!("    [{}]", row.join(" "));
        }
    }

    let h = lp.parse_function("(xi1^2 + xi2^2)/2")?;
    for s in [1.0_f64, 2.0] {
        let (x0, p0) = ([0.2, -0.1], [0.6, 0.3]);
        let center = [x0[0] - p0[1] / s, x0[1] + p0[0] / s];
        let radius = f64::hypot(p0[0], p0[1]) / s;
        let steps = 6000;
        let path = leaves::integrate_flow(
            &lp,
            &h,
            &DualPoint::new(x0.to_vec(), vec![p0[0], p0[1], s]),
            2.0 * PI / s / steps as f64,
            steps,
        )?;
        let err = path
            .iter()
            .map(|q| (f64::hypot(q.x[0] - center[0], q.x[1] - center[1]) - radius).abs())
            .fold(0.0, f64::max);
        let end = path.last().expect("non-empty");
        println!(
            "s = {s}: circle of radius {radius:.4} about ({:.2}, {:.2}), radial error {err:.1e}, returns to start within {:.1e}",
            center[0],
            center[1],
            f64::hypot(end.x[0] - x0[0], end.x[1] - x0[1])
        );
    }
    Ok(())
}
