//! The Lie-Poisson structure on the dual bundle `A*`.
//!
//! Coordinates on `A*` are `(x^1..x^n, ξ_1..ξ_m)`; as expression variables the
//! base coordinates keep their indices `0..n` and `ξ_i` is variable `n + i`, so a
//! base function is already a function on `A*` (its pullback `p*f`).
//!
//! # Sign ledger
//!
//! | quantity | convention |
//! |---|---|
//! | bivector | `Π^{AB} = {z^A, z^B}`, `{F, G} = Σ ∂_A F Π^{AB} ∂_B G` |
//! | fibre–fibre block | `{ξ_i, ξ_j} = Σ_k c^k_{ij}(x) ξ_k` |
//! | fibre–base block | `{ξ_i, x^a} = ρ^a_i(x)`, hence `{l_u, p*f} = p*(ρ(u) f)` |
//! | base–base block | `{x^a, x^b} = 0` |
//! | Hamiltonian field | `X_F(G) = {F, G}`, i.e. `X_F^B = Σ_A ∂_A F Π^{AB}` |
//! | leaf form | `ω(X_F, X_G) = {F, G}` |
//!
//! With these, `X_{{F,G}} = [X_F, X_G]`, `X_{l_u}` is the linear field of `[u, ·]`
//! and `X_{p*f} = −ρ*(df)`. On `T*ℝⁿ` the leaf form is `Σ dp_a ∧ dx^a`.

use std::sync::OnceLock;

use crate::algebroid::{AlgebroidSpec, Section};
use crate::error::{Error, Result};
use crate::expr::{parse, Expr, ParseError};
use crate::fields;
use crate::linalg::{self, Mat};

/// A point `(x, ξ)` of `A*`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPoint {
    pub x: Vec<f64>,
    pub xi: Vec<f64>,
}

impl DualPoint {
    pub fn new(x: Vec<f64>, xi: Vec<f64>) -> Self {
        DualPoint { x, xi }
    }

    /// Splits a flat coordinate vector after the first `n` entries.
    pub fn from_flat(n: usize, z: &[f64]) -> Self {
        DualPoint::new(z[..n].to_vec(), z[n..].to_vec())
    }

    pub fn flat(&self) -> Vec<f64> {
        let mut z = self.x.clone();
        z.extend_from_slice(&self.xi);
        z
    }
}

/// A function on `A*` in the coordinates `(x, ξ)`.
pub type DualFunction = Expr;

/// Lie-Poisson bracket machinery for one algebroid.
#[derive(Debug)]
pub struct LiePoisson {
    spec: AlgebroidSpec,
    names: Vec<String>,
    /// Symbolic `Π^{AB}`, row-major `(n+m) × (n+m)`.
    bivector: Vec<Vec<Expr>>,
    jacobiator: OnceLock<Vec<Expr>>,
}

impl LiePoisson {
    pub fn new(spec: &AlgebroidSpec) -> Self {
        let (n, m) = (spec.n(), spec.m());
        let dim = n + m;
        let mut bivector = vec![vec![Expr::zero(); dim]; dim];
        for i in 0..m {
            for a in 0..n {
                let r = spec.anchor(a, i);
                bivector[n + i][a] = r.clone();
                bivector[a][n + i] = r.neg();
            }
            for j in 0..m {
                let terms: Vec<Expr> = (0..m)
                    .map(|k| spec.structure(k, i, j).mul(&Expr::var(n + k)))
                    .collect();
                bivector[n + i][n + j] = Expr::sum(&terms);
            }
        }
        let mut names = spec.coords().to_vec();
        for i in 1..=m {
            let mut name = format!("xi{i}");
            while names.contains(&name) {
                name.insert(0, '_');
            }
            names.push(name);
        }
        LiePoisson {
            spec: spec.clone(),
            names,
            bivector,
            jacobiator: OnceLock::new(),
        }
    }

    pub fn spec(&self) -> &AlgebroidSpec {
        &self.spec
    }

    /// `n + m`
    pub fn dim(&self) -> usize {
        self.spec.n() + self.spec.m()
    }

    /// Coordinate names on `A*`: the base names followed by `xi1..xim`.
    pub fn coordinate_names(&self) -> &[String] {
        &self.names
    }

    pub fn parse_function(&self, text: &str) -> Result<DualFunction, ParseError> {
        parse(text, &self.names)
    }

    /// Symbolic `Π^{AB}`.
    pub fn bivector(&self) -> &[Vec<Expr>] {
        &self.bivector
    }

    /// The coordinate function `ξ_i`.
    pub fn fiber_coordinate(&self, i: usize) -> DualFunction {
        Expr::var(self.spec.n() + i)
    }

    /// The coordinate function `x^a = p*x^a`.
    pub fn base_coordinate(&self, a: usize) -> DualFunction {
        Expr::var(a)
    }

    /// `l_u(x, ξ) = Σ u^i(x) ξ_i`
    pub fn linear_function(&self, u: &Section) -> DualFunction {
        let terms: Vec<Expr> = u
            .components
            .iter()
            .enumerate()
            .map(|(i, ui)| ui.mul(&self.fiber_coordinate(i)))
            .collect();
        Expr::sum(&terms)
    }

    pub fn check_point(&self, pt: &DualPoint) -> Result<()> {
        if pt.x.len() != self.spec.n() {
            return Err(Error::Dimension {
                what: "base point",
                expected: self.spec.n(),
                got: pt.x.len(),
            });
        }
        if pt.xi.len() != self.spec.m() {
            return Err(Error::Dimension {
                what: "fibre covector",
                expected: self.spec.m(),
                got: pt.xi.len(),
            });
        }
        Ok(())
    }

    pub fn bivector_at(&self, pt: &DualPoint) -> Result<Mat> {
        self.check_point(pt)?;
        self.bivector_at_flat(&pt.flat())
    }

    pub(crate) fn bivector_at_flat(&self, z: &[f64]) -> Result<Mat> {
        let dim = self.dim();
        let mut out = Mat::zeros(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                out[(a, b)] = self.bivector[a][b].eval(z)?;
            }
        }
        Ok(out)
    }

    /// `{F, G} = Σ c^k_{ij} ξ_k ∂_{ξ_i}F ∂_{ξ_j}G + Σ ρ^a_i (∂_{ξ_i}F ∂_a G − ∂_{ξ_i}G ∂_a F)`
    pub fn bracket(&self, f: &DualFunction, g: &DualFunction) -> DualFunction {
        let dim = self.dim();
        let df: Vec<Expr> = (0..dim).map(|a| f.diff(a)).collect();
        let dg: Vec<Expr> = (0..dim).map(|a| g.diff(a)).collect();
        let mut terms = Vec::new();
        for a in 0..dim {
            if df[a].is_zero() {
                continue;
            }
            for b in 0..dim {
                let p = &self.bivector[a][b];
                if p.is_zero() || dg[b].is_zero() {
                    continue;
                }
                terms.push(df[a].mul(p).mul(&dg[b]));
            }
        }
        Expr::sum(&terms)
    }

    /// Symbolic components of `X_F`.
    pub fn hamiltonian_field(&self, f: &DualFunction) -> Vec<Expr> {
        let dim = self.dim();
        let df: Vec<Expr> = (0..dim).map(|a| f.diff(a)).collect();
        (0..dim)
            .map(|b| {
                let terms: Vec<Expr> = (0..dim)
                    .filter(|&a| !df[a].is_zero() && !self.bivector[a][b].is_zero())
                    .map(|a| df[a].mul(&self.bivector[a][b]))
                    .collect();
                Expr::sum(&terms)
            })
            .collect()
    }

    /// `X_F` at `pt`, ordered `({F, x^a}, {F, ξ_j})`.
    pub fn hamiltonian_vf(&self, f: &DualFunction, pt: &DualPoint) -> Result<Vec<f64>> {
        self.check_point(pt)?;
        Ok(fields::eval_all(&self.hamiltonian_field(f), &pt.flat())?)
    }

    /// Cyclic sums `{{z^A,z^B},z^C} + …` for `A < B < C`, built on first use.
    pub fn jacobiator(&self) -> &[Expr] {
        self.jacobiator.get_or_init(|| {
            let dim = self.dim();
            let coord = Expr::var;
            let mut out = Vec::new();
            for a in 0..dim {
                for b in a + 1..dim {
                    for c in b + 1..dim {
                        let t1 = self.bracket(&self.bivector[a][b], &coord(c));
                        let t2 = self.bracket(&self.bivector[b][c], &coord(a));
                        let t3 = self.bracket(&self.bivector[c][a], &coord(b));
                        let s = t1.add(&t2).add(&t3);
                        if !s.is_zero() {
                            out.push(s);
                        }
                    }
                }
            }
            out
        })
    }

    /// Worst Jacobi defect over all coordinate-function triples at `pt`.
    pub fn jacobi_defect(&self, pt: &DualPoint) -> Result<f64> {
        self.check_point(pt)?;
        let z = pt.flat();
        self.jacobiator()
            .iter()
            .try_fold(0.0_f64, |acc, e| Ok(acc.max(e.eval(&z)?.abs())))
    }

    /// Largest `‖X_F‖` over `points`.
    pub fn casimir_defect(&self, f: &DualFunction, points: &[DualPoint]) -> Result<f64> {
        let field = self.hamiltonian_field(f);
        points.iter().try_fold(0.0_f64, |acc, pt| {
            self.check_point(pt)?;
            Ok(acc.max(linalg::norm(&fields::eval_all(&field, &pt.flat())?)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{builders, catalog};

    fn pt(x: &[f64], xi: &[f64]) -> DualPoint {
        DualPoint::new(x.to_vec(), xi.to_vec())
    }

    #[test]
    fn so3_bivector_block() {
        let lp = LiePoisson::new(&catalog::so3());
        let b = lp.bivector_at(&pt(&[0.0], &[1.0, 2.0, 3.0])).unwrap();
        let want = [[0.0, 3.0, -2.0], [-3.0, 0.0, 1.0], [2.0, -1.0, 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(b[(1 + i, 1 + j)], want[i][j]);
            }
        }
    }

    #[test]
    fn tangent_bivector_is_canonical() {
        let lp = LiePoisson::new(&builders::tangent(1));
        let b = lp.bivector_at(&pt(&[0.3], &[-2.0])).unwrap();
        assert_eq!(b, Mat::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]));
    }

    #[test]
    fn zero_anchor_at_zero_covector() {
        let lp = LiePoisson::new(&catalog::transf_trivial());
        let b = lp.bivector_at(&pt(&[0.4, -0.1], &[0.0; 3])).unwrap();
        assert_eq!(b.max_abs(), 0.0);
    }

    #[test]
    fn defining_brackets() {
        let so3 = LiePoisson::new(&catalog::so3());
        let br = so3.bracket(&so3.fiber_coordinate(0), &so3.fiber_coordinate(1));
        assert_eq!(br, so3.fiber_coordinate(2));

        let tan = LiePoisson::new(&builders::tangent(1));
        let br = tan.bracket(&tan.fiber_coordinate(0), &tan.base_coordinate(0));
        assert_eq!(br.as_const(), Some(1.0));

        let cot = LiePoisson::new(&catalog::cotangent_so3());
        let f = cot.parse_function("x1*x2").unwrap();
        let g = cot.parse_function("sin(x3)").unwrap();
        assert!(cot.bracket(&f, &g).is_zero());
    }

    #[test]
    fn pullback_field_kills_pullbacks() {
        let lp = LiePoisson::new(&builders::tangent(2));
        let f = lp.parse_function("x1^2*x2").unwrap();
        let x = lp
            .hamiltonian_vf(&f, &pt(&[0.5, -1.0], &[0.2, 0.7]))
            .unwrap();
        // base block vanishes, so X_{p*f}(p*g) = 0 for every g
        assert_eq!(&x[..2], &[0.0, 0.0]);
        assert_eq!(x[2], 2.0 * 0.5);
        assert_eq!(x[3], -0.25);
    }

    #[test]
    fn quadratic_casimir_of_so3() {
        let lp = LiePoisson::new(&catalog::so3());
        let f = lp.parse_function("(xi1^2 + xi2^2 + xi3^2)/2").unwrap();
        let pts = [pt(&[0.0], &[1.0, -2.0, 0.5]), pt(&[3.0], &[0.1, 0.2, 0.3])];
        assert_eq!(lp.casimir_defect(&f, &pts).unwrap(), 0.0);
    }

    #[test]
    fn base_coordinate_is_not_casimir_on_tangent() {
        let lp = LiePoisson::new(&builders::tangent(1));
        let d = lp
            .casimir_defect(&lp.base_coordinate(0), &[pt(&[0.0], &[0.0])])
            .unwrap();
        assert_eq!(d, 1.0);
    }

    #[test]
    fn base_functions_are_casimirs_for_trivial_action() {
        let lp = LiePoisson::new(&catalog::transf_trivial());
        let pts = [pt(&[0.3, 0.1], &[1.0, 2.0, 3.0])];
        assert_eq!(
            lp.casimir_defect(&lp.base_coordinate(0), &pts).unwrap(),
            0.0
        );
    }

    #[test]
    fn linear_function_field_projects_to_anchor() {
        let spec = catalog::transf_free();
        let lp = LiePoisson::new(&spec);
        let c = spec.coords();
        let u = Section::new(vec![parse("x2", c).unwrap(), parse("x1*x1", c).unwrap()]);
        let p = pt(&[0.4, -0.7], &[1.5, 0.5]);
        let x = lp.hamiltonian_vf(&lp.linear_function(&u), &p).unwrap();
        let rho_u = fields::eval_all(&spec.anchor_of(&u), &p.x).unwrap();
        assert!((x[0] - rho_u[0]).abs() < 1e-15 && (x[1] - rho_u[1]).abs() < 1e-15);
    }

    #[test]
    fn jacobi_defects() {
        let so3 = LiePoisson::new(&catalog::so3());
        assert_eq!(
            so3.jacobi_defect(&pt(&[0.2], &[0.3, -1.0, 2.0])).unwrap(),
            0.0
        );
        let cot = LiePoisson::new(&catalog::cotangent_so3());
        assert!(
            cot.jacobi_defect(&pt(&[0.2, 0.5, -0.3], &[0.3, -1.0, 2.0]))
                .unwrap()
                <= 1e-12
        );
    }

    #[test]
    fn dimension_errors() {
        let lp = LiePoisson::new(&catalog::so3());
        assert!(matches!(
            lp.bivector_at(&pt(&[0.0, 1.0], &[0.0; 3])),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn fiber_names_avoid_collisions() {
        let spec = AlgebroidSpec::from_parts(
            "clash",
            vec!["xi1".into()],
            1,
            vec![vec![Expr::zero()]],
            vec![Expr::zero()],
        )
        .unwrap();
        let lp = LiePoisson::new(&spec);
        assert_eq!(
            lp.coordinate_names(),
            &["xi1".to_string(), "_xi1".to_string()]
        );
    }
}
