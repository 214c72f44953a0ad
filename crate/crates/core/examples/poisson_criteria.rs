//! When is the vector field of a single `D ∈ Hom(TM, A)` or `γ ∈ Ω¹(M)` a
//! Poisson vector field? Compare the direct Lie-derivative test against the
//! algebraic criteria (D∘ρ a derivation, ρ*(dγ) = 0).

use algebroid_leaves::algebroid::{catalog, OneForm};
use algebroid_leaves::expr::{parse, Expr};
use algebroid_leaves::jet_action::{poisson_criterion_d, poisson_criterion_gamma};
use algebroid_leaves::lie_poisson::{DualPoint, LiePoisson};
use algebroid_leaves::sampling::uniform_points;

fn points(lp: &LiePoisson) -> Vec<DualPoint> {
    uniform_points(6, 20, lp.dim(), -1.0, 1.0)
        .iter()
        .map(|z| DualPoint::from_flat(lp.spec().n(), z))
        .collect()
}

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<34} {:>12} {:>12}  agree", "D", "L_X Π", "derivation");
    for case in catalog::derivation_corpus() {
        let lp = LiePoisson::new(&case.spec);
        let r = poisson_criterion_d(&lp, &case.d, &points(&lp), 1e-8)?;
        let agree = r.is_poisson == (r.derivation_defect <= 1e-8);
        println!(
            "{:<34} {:>12.2e} {:>12.2e}  {agree}",
            case.label, r.lie_deriv_defect, r.derivation_defect
        );
    }

    println!();
    let spec = catalog::tangent2d();
    let lp = LiePoisson::new(&spec);
    let c = spec.coords();
    let forms = [
        ("d(x1^2 x2)", OneForm::exact(&parse("x1^2*x2", c)?, 2)),
        (
            "dx1 + 2 dx2",
            OneForm::new(vec![Expr::one(), Expr::constant(2.0)]),
        ),
        ("x1 dx2", OneForm::new(vec![Expr::zero(), parse("x1", c)?])),
        (
            "x2 dx1 - x1 dx2",
            OneForm::new(vec![parse("x2", c)?, parse("neg(x1)", c)?]),
        ),
    ];
    println!("{:<34} {:>12} {:>12}", "γ on tangent2d", "L_X Π", "ρ*(dγ)");
    for (label, g) in &forms {
        let r = poisson_criterion_gamma(&lp, g, &points(&lp), 1e-8)?;
        println!(
            "{label:<34} {:>12.2e} {:>12.2e}",
            r.lie_deriv_defect, r.rho_d_gamma_defect
        );
    }
    Ok(())
}
