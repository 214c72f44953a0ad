//! Runs each example's `main` so the examples cannot silently rot.

macro_rules! example {
    ($name:ident, $file:literal) => {
        #[path = $file]
        #[allow(dead_code)]
        mod $name;
    };
}

example!(so3_coadjoint_orbits, "../examples/so3_coadjoint_orbits.rs");
example!(theorem_span_check, "../examples/theorem_span_check.rs");
example!(poisson_criteria, "../examples/poisson_criteria.rs");
example!(magnetic_leaf, "../examples/magnetic_leaf.rs");
example!(tangent_lift, "../examples/tangent_lift.rs");
example!(trivial_gauge, "../examples/trivial_gauge.rs");
example!(symplectic_corollary, "../examples/symplectic_corollary.rs");
example!(isotropy_curvature, "../examples/isotropy_curvature.rs");
example!(jet_homomorphism, "../examples/jet_homomorphism.rs");

#[test]
fn examples_run() {
    so3_coadjoint_orbits::main().unwrap();
    theorem_span_check::main().unwrap();
    poisson_criteria::main().unwrap();
    magnetic_leaf::main().unwrap();
    tangent_lift::main().unwrap();
    trivial_gauge::main().unwrap();
    symplectic_corollary::main().unwrap();
    isotropy_curvature::main().unwrap();
    jet_homomorphism::main().unwrap();
}
