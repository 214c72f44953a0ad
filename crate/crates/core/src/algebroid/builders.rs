//! Constructors for the standard families of Lie algebroids.

use super::{AlgebroidSpec, SpecError};
use crate::expr::Expr;
use crate::sampling;

/// A finite-dimensional real Lie algebra given by structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    /// `constants[(k * dim + i) * dim + j] = c^k_{ij}`
    constants: Vec<f64>,
}

impl LieAlgebra {
    /// From the brackets `[e_i, e_j] = Σ c e_k` listed once per unordered pair (0-based).
    pub fn new(dim: usize, brackets: &[(usize, usize, usize, f64)]) -> Self {
        let mut constants = vec![0.0; dim * dim * dim];
        for &(i, j, k, c) in brackets {
            assert!(i < dim && j < dim && k < dim, "index out of range");
            constants[(k * dim + i) * dim + j] = c;
            constants[(k * dim + j) * dim + i] = -c;
        }
        LieAlgebra { dim, constants }
    }

    pub fn so3() -> Self {
        LieAlgebra::new(3, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)])
    }

    /// `[e_1, e_2] = e_3`
    pub fn heisenberg() -> Self {
        LieAlgebra::new(3, &[(0, 1, 2, 1.0)])
    }

    /// `[e_1, e_2] = e_2`
    pub fn affine_line() -> Self {
        LieAlgebra::new(2, &[(0, 1, 1, 1.0)])
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::new(dim, &[])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, k: usize, i: usize, j: usize) -> f64 {
        self.constants[(k * self.dim + i) * self.dim + j]
    }
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|a| format!("{prefix}{a}")).collect()
}

fn zero_structure(m: usize) -> Vec<Expr> {
    vec![Expr::zero(); m * m * m]
}

fn set(structure: &mut [Expr], m: usize, k: usize, i: usize, j: usize, c: Expr) {
    structure[(k * m + i) * m + j] = c;
}

fn lie_algebra_block(structure: &mut [Expr], m: usize, offset: usize, g: &LieAlgebra) {
    let d = g.dim();
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let c = g.constant(k, i, j);
                if c != 0.0 {
                    set(
                        structure,
                        m,
                        offset + k,
                        offset + i,
                        offset + j,
                        Expr::constant(c),
                    );
                }
            }
        }
    }
}

/// Checks `t[a][b] + t[b][a] = 0` at a few fixed sample points.
fn check_antisymmetric(what: &'static str, t: &[Vec<Expr>], n: usize) -> Result<(), SpecError> {
    if t.len() != n || t.iter().any(|r| r.len() != n) {
        return Err(SpecError::Shape(format!("{what} must be {n}×{n}")));
    }
    let points = sampling::uniform_points(0x5eed, 8, n, -1.0, 1.0);
    for a in 0..n {
        for b in a..n {
            let sym = t[a][b].add(&t[b][a]);
            for x in &points {
                if matches!(sym.eval(x), Ok(v) if v.abs() > 1e-12) {
                    return Err(SpecError::NotAntisymmetric { what, i: a, j: b });
                }
            }
        }
    }
    Ok(())
}

/// A Lie algebra as an algebroid over a point, emulated by one dummy
/// coordinate `o` that nothing depends on and a zero anchor.
pub fn from_lie_algebra(g: &LieAlgebra) -> AlgebroidSpec {
    let m = g.dim();
    let mut structure = zero_structure(m);
    lie_algebra_block(&mut structure, m, 0, g);
    AlgebroidSpec::from_parts(
        "lie-algebra",
        vec!["o".to_string()],
        m,
        vec![vec![Expr::zero(); m]],
        structure,
    )
    .expect("well-formed by construction")
}

/// `A = Tℝⁿ`: identity anchor, vanishing structure functions.
pub fn tangent(n: usize) -> AlgebroidSpec {
    let anchor = (0..n)
        .map(|a| {
            (0..n)
                .map(|i| Expr::constant(if a == i { 1.0 } else { 0.0 }))
                .collect()
        })
        .collect();
    AlgebroidSpec::from_parts(
        format!("tangent{n}d"),
        numbered("x", n),
        n,
        anchor,
        zero_structure(n),
    )
    .expect("well-formed by construction")
}

/// The algebroid of a regular involutive distribution spanned by `frame`.
///
/// `brackets` lists `(i, j, k, c)` with `[X_i, X_j] = Σ_k c X_k`; for a commuting
/// frame pass an empty slice. Involutivity is not checked here; `validate` will
/// surface a wrong bracket table as an anchor-morphism defect.
pub fn regular_distribution(
    coords: Vec<String>,
    frame: Vec<Vec<Expr>>,
    brackets: &[(usize, usize, usize, Expr)],
) -> Result<AlgebroidSpec, SpecError> {
    let n = coords.len();
    let m = frame.len();
    if frame.iter().any(|x| x.len() != n) {
        return Err(SpecError::Shape(format!(
            "frame fields must have {n} components"
        )));
    }
    let anchor = (0..n)
        .map(|a| frame.iter().map(|x| x[a].clone()).collect())
        .collect();
    let mut structure = zero_structure(m);
    for (i, j, k, c) in brackets {
        if *i >= m || *j >= m || *k >= m {
            return Err(SpecError::Shape("bracket index out of range".into()));
        }
        set(&mut structure, m, *k, *i, *j, c.clone());
        set(&mut structure, m, *k, *j, *i, c.neg());
    }
    AlgebroidSpec::from_parts("distribution", coords, m, anchor, structure)
}

/// Action algebroid `𝔤 ⋉ M` for an infinitesimal action `e_i ↦ X_i`.
pub fn transformation(
    coords: Vec<String>,
    action: Vec<Vec<Expr>>,
    g: &LieAlgebra,
) -> Result<AlgebroidSpec, SpecError> {
    let n = coords.len();
    let m = g.dim();
    if action.len() != m || action.iter().any(|x| x.len() != n) {
        return Err(SpecError::Shape(format!(
            "need {m} action fields with {n} components"
        )));
    }
    let anchor = (0..n)
        .map(|a| action.iter().map(|x| x[a].clone()).collect())
        .collect();
    let mut structure = zero_structure(m);
    lie_algebra_block(&mut structure, m, 0, g);
    AlgebroidSpec::from_parts("transformation", coords, m, anchor, structure)
}

/// Trivial gauge algebroid `Tℝⁿ ⊕ 𝔤` with anchor `[id 0]`.
pub fn trivial_gauge(n: usize, g: &LieAlgebra) -> AlgebroidSpec {
    let m = n + g.dim();
    let anchor = (0..n)
        .map(|a| {
            (0..m)
                .map(|i| Expr::constant(if a == i { 1.0 } else { 0.0 }))
                .collect()
        })
        .collect();
    let mut structure = zero_structure(m);
    lie_algebra_block(&mut structure, m, n, g);
    AlgebroidSpec::from_parts("trivial-gauge", numbered("x", n), m, anchor, structure)
        .expect("well-formed by construction")
}

/// Cotangent algebroid `T*_πM` of a Poisson bivector `pi[a][b] = π^{ab} = {x^a, x^b}`.
///
/// The frame is `e_i = dx^i`, with `ρ(dx^i) = {x^i, ·}` (so `ρ^a_i = π^{ia}` and
/// `ρ(df)` is the Hamiltonian field of `f`) and `[dx^i, dx^j] = d π^{ij}`.
pub fn cotangent_of_poisson(
    coords: Vec<String>,
    pi: Vec<Vec<Expr>>,
) -> Result<AlgebroidSpec, SpecError> {
    let n = coords.len();
    check_antisymmetric("Poisson bivector", &pi, n)?;
    let anchor = (0..n)
        .map(|a| (0..n).map(|i| pi[i][a].clone()).collect())
        .collect();
    let mut structure = zero_structure(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                set(&mut structure, n, k, i, j, pi[i][j].diff(k));
            }
        }
    }
    AlgebroidSpec::from_parts("cotangent", coords, n, anchor, structure)
}

/// Abelian extension `Tℝⁿ ⊕ ℝ` twisted by a 2-form: `ρ = [id; 0]`,
/// `[e_a, e_b] = B_{ab} e_{n+1}`. Jacobi holds iff `dB = 0`.
pub fn magnetic_extension(n: usize, b: Vec<Vec<Expr>>) -> Result<AlgebroidSpec, SpecError> {
    check_antisymmetric("magnetic 2-form", &b, n)?;
    let m = n + 1;
    let anchor = (0..n)
        .map(|a| {
            (0..m)
                .map(|i| Expr::constant(if a == i { 1.0 } else { 0.0 }))
                .collect()
        })
        .collect();
    let mut structure = zero_structure(m);
    for a in 0..n {
        for c in 0..n {
            set(&mut structure, m, n, a, c, b[a][c].clone());
        }
    }
    AlgebroidSpec::from_parts("magnetic", numbered("x", n), m, anchor, structure)
}
