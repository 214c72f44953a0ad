//! Isotropy Lie algebras ker ρ_x and the curvature of the standard splitting
//! for the bundled specs that admit one.

use algebroid_leaves::algebroid::catalog;
use algebroid_leaves::leaves::{curvature_at, isotropy_algebra, Splitting};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = |n: usize| vec![0.3; n];
    for (name, spec) in catalog::all() {
        let iso = isotropy_algebra(&spec, &x(spec.n()), 1e-9)?;
        let abelian = iso.structure_constants.iter().all(|c| c.abs() < 1e-12);
        println!(
            "{name:<20} isotropy dim {}, abelian {abelian}, closure defect {:.1e}",
            iso.dim(),
            iso.closure_defect
        );
    }
    println!();
    for spec in [
        catalog::tangent2d(),
        catalog::magnetic2d(),
        catalog::trivial_gauge_so3(),
    ] {
        let c = curvature_at(&spec, &Splitting::standard(&spec)?, &x(spec.n()))?;
        println!(
            "{:<20} R(∂1, ∂2) = {:?}, ker ρ defect {:.1e}",
            spec.name(),
            c.values[0][1],
            c.kernel_defect
        );
    }
    Ok(())
}
