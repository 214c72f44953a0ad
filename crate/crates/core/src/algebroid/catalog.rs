//! The bundled example specs. The files under `specs/` are these, serialized.

use super::builders::{self, LieAlgebra};
use super::{AlgebroidSpec, HomTMA};
use crate::expr::{parse, Expr};
use crate::sampling;

fn coords(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn exprs(names: &[String], rows: &[&[&str]]) -> Vec<Vec<Expr>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|s| parse(s, names).expect("catalog expression"))
                .collect()
        })
        .collect()
}

pub fn so3() -> AlgebroidSpec {
    builders::from_lie_algebra(&LieAlgebra::so3()).with_name("so3")
}

pub fn heisenberg() -> AlgebroidSpec {
    builders::from_lie_algebra(&LieAlgebra::heisenberg()).with_name("heisenberg")
}

pub fn tangent2d() -> AlgebroidSpec {
    builders::tangent(2).with_name("tangent2d")
}

/// Rank-2 distribution on ℝ³ spanned by `∂_1 + x2 ∂_3`, `∂_2 + x1 ∂_3`
/// (commuting; leaves are `x3 − x1 x2 = const`).
pub fn dist2in3() -> AlgebroidSpec {
    let c = coords(&["x1", "x2", "x3"]);
    let frame = exprs(&c, &[&["1", "0", "x2"], &["0", "1", "x1"]]);
    builders::regular_distribution(c, frame, &[])
        .expect("catalog spec")
        .with_name("dist2in3")
}

/// so(3) acting trivially on ℝ².
pub fn transf_trivial() -> AlgebroidSpec {
    let c = coords(&["x1", "x2"]);
    let action = vec![vec![Expr::zero(); 2]; 3];
    builders::transformation(c, action, &LieAlgebra::so3())
        .expect("catalog spec")
        .with_name("transf-trivial")
}

/// The affine group of the line acting simply transitively on ℝ²:
/// `e_1 ↦ ∂_1`, `e_2 ↦ exp(x1) ∂_2`.
pub fn transf_free() -> AlgebroidSpec {
    let c = coords(&["x1", "x2"]);
    let action = exprs(&c, &[&["1", "0"], &["0", "exp(x1)"]]);
    builders::transformation(c, action, &LieAlgebra::affine_line())
        .expect("catalog spec")
        .with_name("transf-free")
}

pub fn trivial_gauge_so3() -> AlgebroidSpec {
    builders::trivial_gauge(2, &LieAlgebra::so3()).with_name("trivial-gauge-so3")
}

/// The linear Poisson structure of so(3)* on ℝ³, `π^{ab} = ε_{abc} x_c`.
pub fn so3_bivector() -> (Vec<String>, Vec<Vec<Expr>>) {
    let c = coords(&["x1", "x2", "x3"]);
    let pi = exprs(
        &c,
        &[
            &["0", "x3", "neg(x2)"],
            &["neg(x3)", "0", "x1"],
            &["x2", "neg(x1)", "0"],
        ],
    );
    (c, pi)
}

pub fn cotangent_so3() -> AlgebroidSpec {
    let (c, pi) = so3_bivector();
    builders::cotangent_of_poisson(c, pi)
        .expect("catalog spec")
        .with_name("cotangent-so3")
}

/// Constant field `B = dx1 ∧ dx2` on ℝ².
pub fn magnetic2d() -> AlgebroidSpec {
    let b = vec![
        vec![Expr::zero(), Expr::one()],
        vec![Expr::constant(-1.0), Expr::zero()],
    ];
    builders::magnetic_extension(2, b)
        .expect("catalog spec")
        .with_name("magnetic2d")
}

/// `cotangent-so3` with `c^3_{12}` replaced by `1 + x1`: violates the axioms.
pub fn broken() -> AlgebroidSpec {
    let spec = cotangent_so3();
    let c = spec.coords().to_vec();
    let m = spec.m();
    let mut structure = Vec::with_capacity(m * m * m);
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                structure.push(spec.structure(k, i, j).clone());
            }
        }
    }
    let bumped = parse("1 + x1", &c).expect("literal");
    structure[(2 * m) * m + 1] = bumped.clone();
    structure[(2 * m + 1) * m] = bumped.neg();
    let anchor = (0..spec.n())
        .map(|a| (0..m).map(|i| spec.anchor(a, i).clone()).collect())
        .collect();
    AlgebroidSpec::from_parts("broken-so3", c, m, anchor, structure).expect("shape unchanged")
}

/// File stem and spec for every bundled, valid example.
pub fn all() -> Vec<(&'static str, AlgebroidSpec)> {
    vec![
        ("so3", so3()),
        ("heisenberg", heisenberg()),
        ("tangent2d", tangent2d()),
        ("dist2in3", dist2in3()),
        ("transf-trivial", transf_trivial()),
        ("transf-free", transf_free()),
        ("trivial-gauge-so3", trivial_gauge_so3()),
        ("cotangent-so3", cotangent_so3()),
        ("magnetic2d", magnetic2d()),
    ]
}

/// One `D ∈ Hom(TM, A)` test case.
#[derive(Debug, Clone)]
pub struct DerivationCase {
    pub label: String,
    pub spec: AlgebroidSpec,
    pub d: HomTMA,
    /// The anchor vanishes identically.
    pub anchor_zero: bool,
}

/// Twenty `D` fields on the bundled specs: twelve for which `D∘ρ` is a
/// derivation and eight for which it is not.
pub fn derivation_corpus() -> Vec<DerivationCase> {
    let hom = |spec: &AlgebroidSpec, rows: &[&[&str]]| HomTMA::new(exprs(spec.coords(), rows));
    let random = |spec: &AlgebroidSpec, seed: u64| {
        let mut r = sampling::rng(seed);
        HomTMA::new(
            (0..spec.m())
                .map(|_| {
                    (0..spec.n())
                        .map(|_| sampling::random_quadratic(&mut r, spec.n()))
                        .collect()
                })
                .collect(),
        )
    };
    let case = |label: &str, spec: AlgebroidSpec, d: HomTMA, anchor_zero: bool| DerivationCase {
        label: label.to_string(),
        spec,
        d,
        anchor_zero,
    };
    let zero = |spec: &AlgebroidSpec| HomTMA::zero(spec.m(), spec.n());
    let (t2, cs, mg, d23, so, hz, tt, tg, tf) = (
        tangent2d(),
        cotangent_so3(),
        magnetic2d(),
        dist2in3(),
        so3(),
        heisenberg(),
        transf_trivial(),
        trivial_gauge_so3(),
        transf_free(),
    );
    vec![
        case("tangent2d: D = 0", t2.clone(), zero(&t2), false),
        case("cotangent-so3: D = 0", cs.clone(), zero(&cs), false),
        case("magnetic2d: D = 0", mg.clone(), zero(&mg), false),
        case("dist2in3: D = 0", d23.clone(), zero(&d23), false),
        case(
            "so3: D = (1, o, -2)",
            so.clone(),
            hom(&so, &[&["1"], &["o"], &["neg(2)"]]),
            true,
        ),
        case(
            "so3: D = (o^2, 0, 3)",
            so.clone(),
            hom(&so, &[&["o^2"], &["0"], &["3"]]),
            true,
        ),
        case(
            "heisenberg: D = (1, 2, o)",
            hz.clone(),
            hom(&hz, &[&["1"], &["2"], &["o"]]),
            true,
        ),
        case(
            "transf-trivial: polynomial D",
            tt.clone(),
            hom(&tt, &[&["x1", "1"], &["0", "x2"], &["2", "x1*x2"]]),
            true,
        ),
        case("transf-trivial: random D", tt.clone(), random(&tt, 1), true),
        case(
            "magnetic2d: D = e3 ⊗ dx1",
            mg.clone(),
            hom(&mg, &[&["0", "0"], &["0", "0"], &["1", "0"]]),
            false,
        ),
        case(
            "magnetic2d: D = e3 ⊗ dx2",
            mg.clone(),
            hom(&mg, &[&["0", "0"], &["0", "0"], &["0", "1"]]),
            false,
        ),
        case(
            "magnetic2d: D = e3 ⊗ d(x1 x2)",
            mg.clone(),
            hom(&mg, &[&["0", "0"], &["0", "0"], &["x2", "x1"]]),
            false,
        ),
        case(
            "tangent2d: D = id",
            t2.clone(),
            hom(&t2, &[&["1", "0"], &["0", "1"]]),
            false,
        ),
        case(
            "tangent2d: D = e1 ⊗ dx2",
            t2.clone(),
            hom(&t2, &[&["0", "1"], &["0", "0"]]),
            false,
        ),
        case(
            "magnetic2d: D = e3 ⊗ x1 dx2",
            mg.clone(),
            hom(&mg, &[&["0", "0"], &["0", "0"], &["0", "x1"]]),
            false,
        ),
        case(
            "magnetic2d: D = e1 ⊗ dx1",
            mg.clone(),
            hom(&mg, &[&["1", "0"], &["0", "0"], &["0", "0"]]),
            false,
        ),
        case(
            "trivial-gauge-so3: random D",
            tg.clone(),
            random(&tg, 2),
            false,
        ),
        case("cotangent-so3: random D", cs.clone(), random(&cs, 3), false),
        case("dist2in3: random D", d23.clone(), random(&d23, 4), false),
        case("transf-free: random D", tf.clone(), random(&tf, 5), false),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::uniform_points;

    #[test]
    fn catalog_specs_validate() {
        for (name, spec) in all() {
            let pts = uniform_points(7, 25, spec.n(), -1.0, 1.0);
            let r = spec.validate(&pts, 1e-8);
            assert!(r.pass, "{name}: {r:?}");
        }
    }

    #[test]
    fn derivation_corpus_shape() {
        let corpus = derivation_corpus();
        assert_eq!(corpus.len(), 20);
        for c in &corpus {
            assert_eq!(c.d.rank(), c.spec.m(), "{}", c.label);
            assert_eq!(c.d.base_dim(), c.spec.n(), "{}", c.label);
            if c.anchor_zero {
                let x = vec![0.3; c.spec.n()];
                assert_eq!(c.spec.anchor_at(&x).unwrap().max_abs(), 0.0);
            }
        }
    }

    #[test]
    fn broken_spec_fails() {
        let spec = broken();
        let pts = uniform_points(7, 25, spec.n(), -1.0, 1.0);
        let r = spec.validate(&pts, 1e-8);
        assert!(!r.pass);
        assert!(r.jacobi > 0.1, "{r:?}");
    }

    #[test]
    fn cotangent_anchor_orientation_matters() {
        // ρ^a_i = π^{ai} (the transpose of the builder's convention) breaks the anchor morphism.
        let spec = cotangent_so3();
        let n = spec.n();
        let anchor: Vec<Vec<Expr>> = (0..n)
            .map(|a| (0..n).map(|i| spec.anchor(i, a).clone()).collect())
            .collect();
        let mut structure = Vec::new();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    structure.push(spec.structure(k, i, j).clone());
                }
            }
        }
        let flipped =
            AlgebroidSpec::from_parts("flipped", spec.coords().to_vec(), n, anchor, structure)
                .unwrap();
        let pts = uniform_points(3, 10, n, -1.0, 1.0);
        let r = flipped.validate(&pts, 1e-8);
        assert!(r.anchor_morphism > 1e-2, "{r:?}");
    }

    #[test]
    fn cotangent_so3_is_coadjoint_action_algebroid() {
        let spec = cotangent_so3();
        let g = LieAlgebra::so3();
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(
                        spec.structure(k, i, j).as_const(),
                        Some(g.constant(k, i, j))
                    );
                }
            }
        }
    }
}
