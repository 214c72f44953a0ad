//! Symplectic-leaf geometry of the Lie-Poisson structure: leaf dimension,
//! tracing, isotropy algebras, splitting curvature and the leaf form.
//!
//! Signs follow the ledger in [`crate::lie_poisson`]. For a splitting `λ` the
//! curvature is `R_λ(∂_a, ∂_b) = −[λ∂_a, λ∂_b]_A`, so on a magnetic extension
//! with `λ = [id; 0]` it is `−B_{ab} e_{n+1}` and the leaf form through
//! `(x, p, s)` has matrix `[[−s·B, −I], [I, 0]]` in `(x, p)` blocks.

mod trace;

pub use trace::{integrate_flow, rk4_step, trace_leaf, LeafTrace, TraceConfig, Truncation};

use crate::algebroid::{AlgebroidSpec, Section};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::fields;
use crate::lie_poisson::{DualFunction, DualPoint, LiePoisson};
use crate::linalg::{self, Mat};

pub fn leaf_dimension(lp: &LiePoisson, pt: &DualPoint, tol: f64) -> Result<usize> {
    Ok(linalg::numerical_rank(&lp.bivector_at(pt)?, tol))
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct IsotropyAlgebra {
    /// Basis of `ker ρ(x)` in reduced row echelon form.
    pub basis: Vec<Vec<f64>>,
    /// `c^r_{pq}` at index `(r·k + p)·k + q`.
    pub structure_constants: Vec<f64>,
    pub closure_defect: f64,
}

impl IsotropyAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn constant(&self, r: usize, p: usize, q: usize) -> f64 {
        let k = self.dim();
        self.structure_constants[(r * k + p) * k + q]
    }
}

/// Reduced row echelon form of the rows of `rows`, dropping rows below `tol`.
fn rref(mut rows: Vec<Vec<f64>>, tol: f64) -> Vec<Vec<f64>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut lead = 0;
    for col in 0..width {
        if lead == rows.len() {
            break;
        }
        let pivot = (lead..rows.len())
            .max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()))
            .expect("non-empty range");
        if rows[pivot][col].abs() <= tol {
            continue;
        }
        rows.swap(lead, pivot);
        let p = rows[lead][col];
        rows[lead].iter_mut().for_each(|v| *v /= p);
        for r in 0..rows.len() {
            if r != lead {
                let f = rows[r][col];
                if f != 0.0 {
                    for c in 0..width {
                        rows[r][c] -= f * rows[lead][c];
                    }
                }
            }
        }
        lead += 1;
    }
    rows.truncate(lead);
    for row in &mut rows {
        for v in row.iter_mut() {
            if v.abs() <= tol {
                *v = 0.0;
            }
        }
    }
    rows
}

/// `ker ρ(x)` with the pointwise bracket `[u, v]^k = Σ u^i v^j c^k_{ij}(x)`.
pub fn isotropy_algebra(spec: &AlgebroidSpec, x: &[f64], tol: f64) -> Result<IsotropyAlgebra> {
    if x.len() != spec.n() {
        return Err(Error::Dimension {
            what: "base point",
            expected: spec.n(),
            got: x.len(),
        });
    }
    let m = spec.m();
    let basis = rref(linalg::kernel_basis(&spec.anchor_at(x)?, tol), tol);
    let k = basis.len();
    let mut c = vec![vec![vec![0.0; m]; m]; m];
    for (kk, ck) in c.iter_mut().enumerate() {
        for (i, row) in ck.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = spec.structure(kk, i, j).eval(x)?;
            }
        }
    }
    let b = Mat::from_columns(m, &basis);
    let mut structure_constants = vec![0.0; k * k * k];
    let mut closure_defect: f64 = 0.0;
    for p in 0..k {
        for q in 0..k {
            let w: Vec<f64> = (0..m)
                .map(|kk| {
                    let mut s = 0.0;
                    for i in 0..m {
                        for j in 0..m {
                            s += basis[p][i] * basis[q][j] * c[kk][i][j];
                        }
                    }
                    s
                })
                .collect();
            let sol = linalg::lstsq(&b, &w, linalg::DEFAULT_RANK_TOL);
            closure_defect = closure_defect.max(sol.residual);
            for r in 0..k {
                structure_constants[(r * k + p) * k + q] = sol.x[r];
            }
        }
    }
    Ok(IsotropyAlgebra {
        basis,
        structure_constants,
        closure_defect,
    })
}

/// A horizontal lift `λ(∂_a) = Σ_i λ^i_a e_i`, stored as `lambda[i][a]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Splitting {
    pub lambda: Vec<Vec<Expr>>,
}

impl Splitting {
    /// `λ = [id_n; 0]`, the natural lift when `e_1..e_n` are anchored to `∂_1..∂_n`.
    pub fn standard(spec: &AlgebroidSpec) -> Result<Self> {
        let (n, m) = (spec.n(), spec.m());
        if m < n {
            return Err(Error::Precondition(format!(
                "rank {m} is smaller than the base dimension {n}"
            )));
        }
        let lambda = (0..m)
            .map(|i| {
                (0..n)
                    .map(|a| if i == a { Expr::one() } else { Expr::zero() })
                    .collect()
            })
            .collect();
        Ok(Splitting { lambda })
    }

    pub fn lift(&self, a: usize) -> Section {
        Section::new(self.lambda.iter().map(|row| row[a].clone()).collect())
    }

    fn check(&self, spec: &AlgebroidSpec, x: &[f64]) -> Result<()> {
        let (n, m) = (spec.n(), spec.m());
        if self.lambda.len() != m || self.lambda.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition(format!("splitting must be {m}×{n}")));
        }
        let rho = spec.anchor_at(x)?;
        let mut lam = Mat::zeros(m, n);
        for i in 0..m {
            for a in 0..n {
                lam[(i, a)] = self.lambda[i][a].eval(x)?;
            }
        }
        let mut dev = rho.matmul(&lam);
        for a in 0..n {
            dev[(a, a)] -= 1.0;
        }
        let worst = dev.max_abs();
        if worst > 1e-9 {
            return Err(Error::Precondition(format!(
                "splitting is not a right inverse of the anchor (deviation {worst:.3e})"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Curvature {
    /// `R_λ(∂_a, ∂_b)` as a vector in `ℝᵐ`, at `values[a][b]`.
    pub values: Vec<Vec<Vec<f64>>>,
    /// Largest `‖ρ(x)·R_λ(∂_a, ∂_b)‖`.
    pub kernel_defect: f64,
}

/// `−v`, without producing `−0.0`.
fn negate(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        -v
    }
}

pub fn curvature_at(spec: &AlgebroidSpec, splitting: &Splitting, x: &[f64]) -> Result<Curvature> {
    if x.len() != spec.n() {
        return Err(Error::Dimension {
            what: "base point",
            expected: spec.n(),
            got: x.len(),
        });
    }
    splitting.check(spec, x)?;
    let (n, m) = (spec.n(), spec.m());
    let rho = spec.anchor_at(x)?;
    let lifts: Vec<Section> = (0..n).map(|a| splitting.lift(a)).collect();
    let mut values = vec![vec![vec![0.0; m]; n]; n];
    let mut kernel_defect: f64 = 0.0;
    for a in 0..n {
        for b in a + 1..n {
            let r: Vec<f64> = spec
                .bracket_sections(&lifts[a], &lifts[b])?
                .eval(x)?
                .into_iter()
                .map(negate)
                .collect();
            kernel_defect = kernel_defect.max(linalg::norm(&rho.mul_vec(&r)));
            values[b][a] = r.iter().copied().map(negate).collect();
            values[a][b] = r;
        }
    }
    Ok(Curvature {
        values,
        kernel_defect,
    })
}

/// Least-squares solver used to pull tangent vectors back through `Π`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Solver {
    #[default]
    Svd,
    PivotedQr,
}

fn solve(pi: &Mat, v: &[f64], tol: f64, solver: Solver) -> Result<Vec<f64>> {
    let sol = match solver {
        Solver::Svd => linalg::lstsq(pi, v, linalg::DEFAULT_RANK_TOL),
        Solver::PivotedQr => linalg::lstsq_pivoted_qr(pi, v, linalg::DEFAULT_RANK_TOL),
    };
    if sol.residual > tol {
        return Err(Error::NotTangent {
            residual: sol.residual,
        });
    }
    Ok(sol.x)
}

/// The leaf symplectic form at `pt` on two tangent vectors, `ω(X_F, X_G) = {F, G}`.
pub fn leaf_form_at(
    lp: &LiePoisson,
    pt: &DualPoint,
    v1: &[f64],
    v2: &[f64],
    tol: f64,
    solver: Solver,
) -> Result<f64> {
    let pi = lp.bivector_at(pt)?;
    for v in [v1, v2] {
        if v.len() != lp.dim() {
            return Err(Error::Dimension {
                what: "tangent vector",
                expected: lp.dim(),
                got: v.len(),
            });
        }
    }
    let e1 = solve(&pi, v1, tol, solver)?;
    let e2 = solve(&pi, v2, tol, solver)?;
    Ok(linalg::dot(&e1, &pi.mul_vec(&e2)))
}

/// Gram matrix `ω(v_i, v_j)` of the leaf form.
pub fn leaf_form_matrix(
    lp: &LiePoisson,
    pt: &DualPoint,
    vectors: &[Vec<f64>],
    tol: f64,
    solver: Solver,
) -> Result<Mat> {
    let k = vectors.len();
    let mut out = Mat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            out[(i, j)] = leaf_form_at(lp, pt, &vectors[i], &vectors[j], tol, solver)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MagneticCheck {
    pub max_deviation: f64,
    /// Leaf form on `∂_{x^1}..∂_{x^n}, ∂_{p_1}..∂_{p_n}`.
    pub form: Mat,
    /// `[[−s·B, −I], [I, 0]]`.
    pub expected: Mat,
}

/// Compares the leaf form of a magnetic extension through `(x, p, s)` with
/// `ω_can + s·⟨R_λ, e^{n+1}⟩` for the standard splitting.
pub fn magnetic_form_check(lp: &LiePoisson, pt: &DualPoint, tol: f64) -> Result<MagneticCheck> {
    let spec = lp.spec();
    let (n, m) = (spec.n(), spec.m());
    lp.check_point(pt)?;
    if m != n + 1 {
        return Err(Error::Precondition(format!(
            "magnetic extension needs rank n + 1, got {m}"
        )));
    }
    let splitting = Splitting::standard(spec)?;
    let rho = spec.anchor_at(&pt.x)?;
    for a in 0..n {
        if rho[(a, n)] != 0.0 {
            return Err(Error::Precondition(
                "the last generator must have zero anchor".into(),
            ));
        }
    }
    let curv = curvature_at(spec, &splitting, &pt.x)?;
    let s = pt.xi[n];

    let dim = lp.dim();
    let unit = |k: usize| {
        let mut v = vec![0.0; dim];
        v[k] = 1.0;
        v
    };
    let vectors: Vec<Vec<f64>> = (0..n)
        .map(unit)
        .chain((0..n).map(|a| unit(n + a)))
        .collect();
    let form = leaf_form_matrix(lp, pt, &vectors, tol, Solver::Svd)?;

    let mut expected = Mat::zeros(2 * n, 2 * n);
    for a in 0..n {
        expected[(a, n + a)] = -1.0;
        expected[(n + a, a)] = 1.0;
        for b in 0..n {
            // ⟨R_λ(∂_a, ∂_b), ξ⟩ restricted to the isotropy component
            expected[(a, b)] = s * curv.values[a][b][n];
        }
    }
    let mut max_deviation: f64 = 0.0;
    for i in 0..2 * n {
        for j in 0..2 * n {
            max_deviation = max_deviation.max((form[(i, j)] - expected[(i, j)]).abs());
        }
    }
    Ok(MagneticCheck {
        max_deviation,
        form,
        expected,
    })
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FiberCheck {
    pub max_spread: f64,
    pub spreads: Vec<f64>,
}

/// Spread `max − min` of each invariant along the trace.
pub fn fiber_bundle_check(trace: &LeafTrace, invariants: &[DualFunction]) -> Result<FiberCheck> {
    let mut spreads = Vec::with_capacity(invariants.len());
    for f in invariants {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in &trace.points {
            let v = f.eval(&p.flat())?;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        spreads.push(if trace.points.is_empty() {
            0.0
        } else {
            hi - lo
        });
    }
    Ok(FiberCheck {
        max_spread: spreads.iter().copied().fold(0.0, f64::max),
        spreads,
    })
}

/// Largest change of each function along the trace, relative to its start value.
pub fn drift(trace: &LeafTrace, f: &DualFunction) -> Result<f64> {
    let Some(first) = trace.points.first() else {
        return Ok(0.0);
    };
    let f0 = f.eval(&first.flat())?;
    trace.points.iter().try_fold(0.0_f64, |acc, p| {
        Ok(acc.max((f.eval(&p.flat())? - f0).abs()))
    })
}

/// On `A = T*M` for a Poisson bivector `π`, compares `X_{l_df}` with the
/// complete lift and `X_{p*f}` with the vertical lift of `X_f = π(df, ·)`.
/// `A* = TM` with fibre coordinates `v^a = ξ_a`.
pub fn tangent_lift_check(
    lp: &LiePoisson,
    pi: &[Vec<Expr>],
    f: &Expr,
    pts: &[DualPoint],
) -> Result<f64> {
    let spec = lp.spec();
    let n = spec.n();
    if spec.m() != n || pi.len() != n || pi.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition(
            "tangent lift needs A = T*M and an n×n bivector".into(),
        ));
    }
    if let Some(v) = f.max_var() {
        if v >= n {
            return Err(Error::Precondition(
                "f must be a function on the base".into(),
            ));
        }
    }
    let df: Vec<Expr> = (0..n).map(|a| f.diff(a)).collect();
    let xf: Vec<Expr> = (0..n)
        .map(|a| {
            let t: Vec<Expr> = (0..n).map(|b| pi[b][a].mul(&df[b])).collect();
            Expr::sum(&t)
        })
        .collect();
    let v = |b: usize| Expr::var(n + b);
    let mut complete = xf.clone();
    for xa in &xf {
        let t: Vec<Expr> = (0..n).map(|b| v(b).mul(&xa.diff(b))).collect();
        complete.push(Expr::sum(&t));
    }
    let mut vertical = vec![Expr::zero(); n];
    vertical.extend(xf.iter().cloned());

    let l_df = Expr::sum(&(0..n).map(|a| df[a].mul(&v(a))).collect::<Vec<_>>());
    let d1: Vec<Expr> = lp
        .hamiltonian_field(&l_df)
        .iter()
        .zip(&complete)
        .map(|(a, b)| a.sub(b))
        .collect();
    let d2: Vec<Expr> = lp
        .hamiltonian_field(f)
        .iter()
        .zip(&vertical)
        .map(|(a, b)| a.sub(b))
        .collect();
    pts.iter().try_fold(0.0_f64, |acc, p| {
        lp.check_point(p)?;
        let z = p.flat();
        let a = linalg::norm(&fields::eval_all(&d1, &z)?);
        let b = linalg::norm(&fields::eval_all(&d2, &z)?);
        Ok(acc.max(a).max(b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{builders, catalog};
    use crate::expr::parse;
    use crate::sampling::uniform_points;

    fn pt(x: &[f64], xi: &[f64]) -> DualPoint {
        DualPoint::new(x.to_vec(), xi.to_vec())
    }

    #[test]
    fn leaf_dimension_examples() {
        let so3 = LiePoisson::new(&catalog::so3());
        assert_eq!(
            leaf_dimension(&so3, &pt(&[0.0], &[0.1, 0.2, 0.3]), 1e-9).unwrap(),
            2
        );
        assert_eq!(
            leaf_dimension(&so3, &pt(&[0.0], &[0.0; 3]), 1e-9).unwrap(),
            0
        );
        let tan = LiePoisson::new(&builders::tangent(3));
        assert_eq!(
            leaf_dimension(&tan, &pt(&[1.0, 2.0, 3.0], &[0.0; 3]), 1e-9).unwrap(),
            6
        );
        let tg = LiePoisson::new(&catalog::trivial_gauge_so3());
        assert_eq!(
            leaf_dimension(&tg, &pt(&[0.2, 0.1], &[0.5, -0.1, 0.3, 0.4, 0.9]), 1e-9).unwrap(),
            6
        );
    }

    #[test]
    fn isotropy_examples() {
        let tg = catalog::trivial_gauge_so3();
        let iso = isotropy_algebra(&tg, &[0.3, -0.2], 1e-9).unwrap();
        assert_eq!(iso.dim(), 3);
        let so3 = builders::LieAlgebra::so3();
        for (r, b) in iso.basis.iter().enumerate() {
            assert_eq!(b.iter().position(|v| *v == 1.0), Some(2 + r));
        }
        for r in 0..3 {
            for p in 0..3 {
                for q in 0..3 {
                    assert!((iso.constant(r, p, q) - so3.constant(r, p, q)).abs() < 1e-12);
                }
            }
        }
        assert!(iso.closure_defect < 1e-12);

        assert_eq!(
            isotropy_algebra(&catalog::tangent2d(), &[0.1, 0.2], 1e-9)
                .unwrap()
                .dim(),
            0
        );

        let mag = isotropy_algebra(&catalog::magnetic2d(), &[0.1, 0.2], 1e-9).unwrap();
        assert_eq!(mag.basis, vec![vec![0.0, 0.0, 1.0]]);
        assert_eq!(mag.structure_constants, vec![0.0]);
        assert_eq!(mag.closure_defect, 0.0);
    }

    #[test]
    fn curvature_examples() {
        let tan = catalog::tangent2d();
        let c = curvature_at(&tan, &Splitting::standard(&tan).unwrap(), &[0.1, 0.2]).unwrap();
        assert!(c.values.iter().flatten().flatten().all(|v| *v == 0.0));

        let mag = catalog::magnetic2d();
        let c = curvature_at(&mag, &Splitting::standard(&mag).unwrap(), &[0.1, 0.2]).unwrap();
        assert_eq!(c.values[0][1], vec![0.0, 0.0, -1.0]);
        assert_eq!(c.values[1][0], vec![0.0, 0.0, 1.0]);
        assert_eq!(c.kernel_defect, 0.0);

        let tg = catalog::trivial_gauge_so3();
        let c = curvature_at(&tg, &Splitting::standard(&tg).unwrap(), &[0.1, 0.2]).unwrap();
        assert!(c.values.iter().flatten().flatten().all(|v| *v == 0.0));
    }

    #[test]
    fn curvature_rejects_bad_splitting() {
        let mag = catalog::magnetic2d();
        let mut s = Splitting::standard(&mag).unwrap();
        s.lambda[0][0] = Expr::constant(2.0);
        assert!(matches!(
            curvature_at(&mag, &s, &[0.0, 0.0]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn leaf_form_on_tangent_is_canonical() {
        let lp = LiePoisson::new(&builders::tangent(2));
        let p = pt(&[0.3, 0.1], &[-0.4, 0.7]);
        let e = |k: usize| {
            let mut v = vec![0.0; 4];
            v[k] = 1.0;
            v
        };
        let vs: Vec<Vec<f64>> = (0..4).map(e).collect();
        let w = leaf_form_matrix(&lp, &p, &vs, 1e-9, Solver::Svd).unwrap();
        let want = [
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert!((w[(i, j)] - want[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn leaf_form_on_sphere() {
        let lp = LiePoisson::new(&catalog::so3());
        let p = pt(&[0.0], &[0.0, 0.0, 1.0]);
        let w = leaf_form_at(
            &lp,
            &p,
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            1e-9,
            Solver::Svd,
        )
        .unwrap();
        assert!((w - 1.0).abs() < 1e-12);
        let self_pair = leaf_form_at(
            &lp,
            &p,
            &[0.0, 0.3, -0.2, 0.0],
            &[0.0, 0.3, -0.2, 0.0],
            1e-9,
            Solver::Svd,
        )
        .unwrap();
        assert!(self_pair.abs() < 1e-14);
        let err = leaf_form_at(
            &lp,
            &p,
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 1.0, 0.0, 0.0],
            1e-9,
            Solver::Svd,
        );
        assert!(matches!(err, Err(Error::NotTangent { .. })));
    }

    #[test]
    fn leaf_form_independent_of_solver() {
        let lp = LiePoisson::new(&catalog::trivial_gauge_so3());
        for z in uniform_points(11, 10, 7, -1.0, 1.0) {
            let p = DualPoint::from_flat(2, &z);
            let pi = lp.bivector_at(&p).unwrap();
            let v1 = pi.mul_vec(&[1.0, 0.5, -0.3, 0.2, 0.7, 0.1, -0.9]);
            let v2 = pi.mul_vec(&[0.2, -0.1, 0.8, 0.4, 0.3, -0.6, 0.5]);
            let a = leaf_form_at(&lp, &p, &v1, &v2, 1e-8, Solver::Svd).unwrap();
            let b = leaf_form_at(&lp, &p, &v1, &v2, 1e-8, Solver::PivotedQr).unwrap();
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
            let c = leaf_form_at(&lp, &p, &v2, &v1, 1e-8, Solver::Svd).unwrap();
            assert!((a + c).abs() < 1e-10);
        }
    }

    #[test]
    fn magnetic_form_examples() {
        let lp = LiePoisson::new(&catalog::magnetic2d());
        let r = magnetic_form_check(&lp, &pt(&[0.2, -0.4], &[0.3, 0.5, 1.0]), 1e-9).unwrap();
        assert!(r.max_deviation <= 1e-8, "{r:?}");
        assert_eq!(r.expected[(0, 1)], -1.0);
        let r = magnetic_form_check(&lp, &pt(&[0.2, -0.4], &[0.3, 0.5, 0.0]), 1e-9).unwrap();
        assert!(r.max_deviation <= 1e-10);
        assert_eq!(r.expected[(0, 1)], 0.0);

        let flat = builders::magnetic_extension(2, vec![vec![Expr::zero(); 2]; 2]).unwrap();
        let lp = LiePoisson::new(&flat);
        let r = magnetic_form_check(&lp, &pt(&[0.2, -0.4], &[0.3, 0.5, 2.0]), 1e-9).unwrap();
        assert!(r.max_deviation <= 1e-10);

        let so3 = LiePoisson::new(&catalog::so3());
        assert!(magnetic_form_check(&so3, &pt(&[0.0], &[1.0, 0.0, 0.0]), 1e-9).is_err());
    }

    #[test]
    fn fiber_check_trivial_gauge() {
        let lp = LiePoisson::new(&catalog::trivial_gauge_so3());
        let start = pt(&[0.0, 0.0], &[1.0, 0.0, 0.0, 0.0, 1.0]);
        let t = trace_leaf(
            &lp,
            &start,
            &TraceConfig {
                seed: 5,
                flow_count: 30,
                ..Default::default()
            },
        )
        .unwrap();
        let mu2 = lp.parse_function("xi3^2 + xi4^2 + xi5^2").unwrap();
        let r = fiber_bundle_check(&t, &[mu2]).unwrap();
        assert!(r.max_spread <= 1e-6, "{r:?}");
        assert_eq!(fiber_bundle_check(&t, &[]).unwrap().max_spread, 0.0);
    }

    #[test]
    fn tangent_lift_examples() {
        let spec = catalog::cotangent_so3();
        let (_, pi) = catalog::so3_bivector();
        let lp = LiePoisson::new(&spec);
        let pts: Vec<DualPoint> = uniform_points(2, 50, 6, -1.0, 1.0)
            .iter()
            .map(|z| DualPoint::from_flat(3, z))
            .collect();
        let f = parse("x3", spec.coords()).unwrap();
        assert!(tangent_lift_check(&lp, &pi, &f, &pts).unwrap() <= 1e-10);

        let c: Vec<String> = vec!["q".into(), "p".into()];
        let zero = vec![vec![Expr::zero(); 2]; 2];
        let lp0 =
            LiePoisson::new(&builders::cotangent_of_poisson(c.clone(), zero.clone()).unwrap());
        let f = parse("q*p", &c).unwrap();
        let pts2: Vec<DualPoint> = uniform_points(2, 10, 4, -1.0, 1.0)
            .iter()
            .map(|z| DualPoint::from_flat(2, z))
            .collect();
        assert_eq!(tangent_lift_check(&lp0, &zero, &f, &pts2).unwrap(), 0.0);

        let canon = vec![
            vec![Expr::zero(), Expr::one()],
            vec![Expr::constant(-1.0), Expr::zero()],
        ];
        let lpc =
            LiePoisson::new(&builders::cotangent_of_poisson(c.clone(), canon.clone()).unwrap());
        let q = parse("q", &c).unwrap();
        assert!(tangent_lift_check(&lpc, &canon, &q, &pts2).unwrap() <= 1e-12);

        // a mismatched bivector is detected
        let wrong = vec![
            vec![Expr::zero(), Expr::constant(2.0)],
            vec![Expr::constant(-2.0), Expr::zero()],
        ];
        assert!(tangent_lift_check(&lpc, &wrong, &q, &pts2).unwrap() > 0.5);
    }

    #[test]
    fn rref_canonicalizes_rotated_basis() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let r = rref(vec![vec![s, s, 0.0], vec![-s, s, 0.0]], 1e-12);
        assert_eq!(r.len(), 2);
        assert!((r[0][0] - 1.0).abs() < 1e-15 && r[0][1].abs() < 1e-15);
        assert!((r[1][1] - 1.0).abs() < 1e-15);
    }
}
