use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use algebroid_leaves::algebroid::{catalog, AlgebroidSpec, Section};
use algebroid_leaves::expr::{central_difference, parse, Expr};
use algebroid_leaves::fields;
use algebroid_leaves::jet_action::{homomorphism_defect, AffineJetSection};
use algebroid_leaves::lie_poisson::{DualPoint, LiePoisson};
use algebroid_leaves::linalg::{self, Mat};
use algebroid_leaves::sampling;

const VARS: usize = 3;

fn names() -> Vec<String> {
    (1..=VARS).map(|i| format!("x{i}")).collect()
}

/// Polynomials in x1..x3 with small integer-ish coefficients.
fn polynomial() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-3i32..=3).prop_map(|c| Expr::constant(c as f64 / 2.0)),
        (0..VARS).prop_map(Expr::var),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.sub(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(&b)),
            (inner, 0i32..=3).prop_map(|(a, k)| a.powi(k)),
        ]
    })
}

/// Smooth expressions including transcendental functions.
fn smooth() -> impl Strategy<Value = Expr> {
    polynomial().prop_recursive(2, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| a.sin()),
            inner.clone().prop_map(|a| a.cos()),
            inner
                .clone()
                .prop_map(|a| a.mul(&Expr::constant(0.3)).exp()),
            (inner.clone(), inner).prop_map(|(a, b)| a.mul(&b)),
        ]
    })
}

/// Fixed seed so the suite is reproducible; failures are persisted as usual.
fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        ..ProptestConfig::default()
    }
}

fn point() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, VARS)
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn derivative_matches_central_difference(f in polynomial(), x in point(), var in 0..VARS) {
        let exact = f.diff(var).eval(&x).unwrap();
        let approx = central_difference(&f, var, &x, 1e-5).unwrap();
        prop_assert!(close(exact, approx, 1e-5), "{f}: {exact} vs {approx}");
    }
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn smooth_derivative_matches_central_difference(f in smooth(), x in point(), var in 0..VARS) {
        let exact = f.diff(var).eval(&x).unwrap();
        let approx = central_difference(&f, var, &x, 1e-5).unwrap();
        prop_assert!(close(exact, approx, 1e-4), "{f}: {exact} vs {approx}");
    }

    #[test]
    fn mixed_partials_commute(f in smooth(), x in point(), a in 0..VARS, b in 0..VARS) {
        let ab = f.diff(a).diff(b).eval(&x).unwrap();
        let ba = f.diff(b).diff(a).eval(&x).unwrap();
        prop_assert!(close(ab, ba, 1e-10), "{f}: {ab} vs {ba}");
    }

    #[test]
    fn print_parse_round_trip(f in smooth(), x in point()) {
        let names = names();
        let back = parse(&f.to_string_with(&names), &names).unwrap();
        let (a, b) = (f.eval(&x).unwrap(), back.eval(&x).unwrap());
        prop_assert!(close(a, b, 1e-12), "{f}: {a} vs {b}");
    }

    #[test]
    fn rank_is_rotation_invariant(
        rank in 0usize..=4,
        seed in any::<u64>(),
        angles in prop::collection::vec(-3.0f64..3.0, 6),
    ) {
        // a 4×4 matrix of the given rank
        let cols = sampling::uniform_points(seed, rank, 4, -1.0, 1.0);
        let rows = sampling::uniform_points(seed.wrapping_add(1), rank, 4, -1.0, 1.0);
        let mut m = Mat::zeros(4, 4);
        for k in 0..rank {
            for i in 0..4 {
                for j in 0..4 {
                    m[(i, j)] += cols[k][i] * rows[k][j];
                }
            }
        }
        let base = linalg::numerical_rank(&m, 1e-9);
        // product of Givens rotations
        let mut q = Mat::identity(4);
        let mut t = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                let mut g = Mat::identity(4);
                let (s, c) = angles[t].sin_cos();
                g[(i, i)] = c;
                g[(j, j)] = c;
                g[(i, j)] = -s;
                g[(j, i)] = s;
                q = q.matmul(&g);
                t += 1;
            }
        }
        prop_assert_eq!(linalg::numerical_rank(&q.matmul(&m), 1e-9), base);
        prop_assert_eq!(linalg::numerical_rank(&m.matmul(&q.transpose()), 1e-9), base);
    }
}

fn random_section(spec: &AlgebroidSpec, seed: u64) -> Section {
    let mut r = sampling::rng(seed);
    Section::new(
        (0..spec.m())
            .map(|_| sampling::random_quadratic(&mut r, spec.n()))
            .collect(),
    )
}

fn specs() -> Vec<AlgebroidSpec> {
    catalog::all().into_iter().map(|(_, s)| s).collect()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn section_bracket_is_antisymmetric(which in 0usize..9, s1 in any::<u64>(), s2 in any::<u64>(), z in any::<u64>()) {
        let spec = &specs()[which];
        let (u, v) = (random_section(spec, s1), random_section(spec, s2));
        let x = &sampling::uniform_points(z, 1, spec.n(), -1.0, 1.0)[0];
        let uv = spec.bracket_sections(&u, &v).unwrap().eval(x).unwrap();
        let vu = spec.bracket_sections(&v, &u).unwrap().eval(x).unwrap();
        for (a, b) in uv.iter().zip(&vu) {
            prop_assert!((a + b).abs() <= 1e-10 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn section_bracket_obeys_leibniz(which in 0usize..9, s1 in any::<u64>(), s2 in any::<u64>(), z in any::<u64>()) {
        let spec = &specs()[which];
        let (u, v) = (random_section(spec, s1), random_section(spec, s2));
        let f = sampling::random_quadratic(&mut sampling::rng(s1 ^ s2), spec.n());
        let x = &sampling::uniform_points(z, 1, spec.n(), -1.0, 1.0)[0];
        let lhs = spec.bracket_sections(&u, &v.scale(&f)).unwrap();
        let rho_u_f = fields::apply(&spec.anchor_of(&u), &f);
        let rhs = spec.bracket_sections(&u, &v).unwrap().scale(&f).add(&v.scale(&rho_u_f));
        for (a, b) in lhs.eval(x).unwrap().iter().zip(&rhs.eval(x).unwrap()) {
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn linear_functions_bracket_like_sections(which in 0usize..9, s1 in any::<u64>(), s2 in any::<u64>(), z in any::<u64>()) {
        let spec = &specs()[which];
        let lp = LiePoisson::new(spec);
        let (u, v) = (random_section(spec, s1), random_section(spec, s2));
        let p = DualPoint::from_flat(spec.n(), &sampling::uniform_points(z, 1, lp.dim(), -1.0, 1.0)[0]);
        let lhs = lp.bracket(&lp.linear_function(&u), &lp.linear_function(&v)).eval(&p.flat()).unwrap();
        let rhs = lp.linear_function(&spec.bracket_sections(&u, &v).unwrap()).eval(&p.flat()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()), "{lhs} vs {rhs}");
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn affine_action_is_a_homomorphism(which in 0usize..9, seed in any::<u64>()) {
        let spec = &specs()[which];
        let lp = LiePoisson::new(spec);
        let mut r = sampling::rng(seed);
        let s1 = AffineJetSection::random(spec, &mut r);
        let s2 = AffineJetSection::random(spec, &mut r);
        let pts: Vec<DualPoint> = sampling::uniform_points(seed, 3, lp.dim(), -1.0, 1.0)
            .iter()
            .map(|z| DualPoint::from_flat(spec.n(), z))
            .collect();
        let d = homomorphism_defect(&lp, &s1, &s2, &pts).unwrap();
        prop_assert!(d <= 1e-8, "{}: {d}", spec.name());
    }
}
