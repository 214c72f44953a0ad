//! Coordinate calculus on symbolic vector fields and bivectors.

use crate::expr::{DomainError, Expr};

/// `X(f) = Σ X^a ∂_a f`.
pub fn apply(field: &[Expr], f: &Expr) -> Expr {
    let terms: Vec<Expr> = field
        .iter()
        .enumerate()
        .filter(|(_, xa)| !xa.is_zero())
        .map(|(a, xa)| xa.mul(&f.diff(a)))
        .collect();
    Expr::sum(&terms)
}

/// `[X, Y]^A = X(Y^A) − Y(X^A)`.
pub fn lie_bracket(x: &[Expr], y: &[Expr]) -> Vec<Expr> {
    assert_eq!(x.len(), y.len(), "vector fields on different charts");
    x.iter()
        .zip(y)
        .map(|(xa, ya)| apply(x, ya).sub(&apply(y, xa)))
        .collect()
}

/// `(L_X Π)^{AB} = X(Π^{AB}) − Π^{CB} ∂_C X^A − Π^{AC} ∂_C X^B`, row-major.
pub fn lie_derivative_bivector(x: &[Expr], pi: &[Vec<Expr>]) -> Vec<Vec<Expr>> {
    let dim = x.len();
    let dx: Vec<Vec<Expr>> = x
        .iter()
        .map(|xa| (0..dim).map(|c| xa.diff(c)).collect())
        .collect();
    (0..dim)
        .map(|a| {
            (0..dim)
                .map(|b| {
                    let mut acc = apply(x, &pi[a][b]);
                    for c in 0..dim {
                        acc = acc.sub(&pi[c][b].mul(&dx[a][c]));
                        acc = acc.sub(&pi[a][c].mul(&dx[b][c]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn eval_all(exprs: &[Expr], point: &[f64]) -> Result<Vec<f64>, DomainError> {
    exprs.iter().map(|e| e.eval(point)).collect()
}

/// `f·X`.
pub fn scale(field: &[Expr], f: &Expr) -> Vec<Expr> {
    field.iter().map(|c| f.mul(c)).collect()
}
