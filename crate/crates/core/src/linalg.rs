//! Small dense real matrices: numerical rank, kernels, span comparison and
//! least squares. Sizes here never exceed a few dozen rows, so everything goes
//! through a full SVD.

use nalgebra::{DMatrix, DVector};

/// Default relative tolerance for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Serialized as a list of rows.
impl serde::Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl Mat {
    /// Panics if `data.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(rows * cols, data.len(), "Mat::new: shape/data mismatch");
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::new(rows, cols, vec![0.0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Mat::new(rows.len(), cols, rows.concat())
    }

    /// Builds a `rows × k` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Self {
        let mut m = Mat::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Mat::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)];
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest entry of `|self + selfᵀ|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] + self[(j, i)]).abs());
            }
        }
        worst
    }

    fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Singular values in descending order.
pub fn singular_values(m: &Mat) -> Vec<f64> {
    if m.rows == 0 || m.cols == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.to_dmatrix().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `tol` times the largest one.
pub fn numerical_rank(m: &Mat, tol: f64) -> usize {
    assert!(tol > 0.0, "rank tolerance must be positive");
    let s = singular_values(m);
    let Some(&top) = s.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&v| v > tol * top).count()
}

/// Orthonormal basis of the numerical null space of `m` (vectors in ℝ^cols).
pub fn kernel_basis(m: &Mat, tol: f64) -> Vec<Vec<f64>> {
    assert!(tol > 0.0, "kernel tolerance must be positive");
    let n = m.cols;
    if n == 0 {
        return Vec::new();
    }
    // Pad with zero rows so the SVD returns the full right singular basis.
    let rows = m.rows.max(n);
    let mut a = DMatrix::<f64>::zeros(rows, n);
    for i in 0..m.rows {
        for j in 0..n {
            a[(i, j)] = m[(i, j)];
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let top = svd
        .singular_values
        .iter()
        .fold(0.0_f64, |acc, s| acc.max(*s));
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| top == 0.0 || **s <= tol * top)
        .map(|(k, _)| v_t.row(k).iter().copied().collect())
        .collect()
}

/// True iff the column spans of `a` and `b` coincide at tolerance `tol`.
pub fn span_equal(a: &Mat, b: &Mat, tol: f64) -> bool {
    assert_eq!(a.rows, b.rows, "span_equal needs a common ambient space");
    let ra = numerical_rank(a, tol);
    ra == numerical_rank(b, tol) && ra == numerical_rank(&a.hstack(b), tol)
}

/// Least-squares solution of `a·x = b`.
#[derive(Debug, Clone)]
pub struct LstsqSolution {
    pub x: Vec<f64>,
    /// ‖a·x − b‖
    pub residual: f64,
}

/// Minimum-norm least-squares solve through the SVD pseudo-inverse.
pub fn lstsq(a: &Mat, b: &[f64], tol: f64) -> LstsqSolution {
    assert_eq!(a.rows, b.len());
    let svd = a.to_dmatrix().svd(true, true);
    let top = svd
        .singular_values
        .iter()
        .fold(0.0_f64, |acc, s| acc.max(*s));
    let eps = (tol * top).max(f64::MIN_POSITIVE);
    let x: Vec<f64> = svd
        .solve(&DVector::from_column_slice(b), eps)
        .expect("u and v_t computed")
        .iter()
        .copied()
        .collect();
    let residual = residual(a, &x, b);
    LstsqSolution { x, residual }
}

/// Basic (not minimum-norm) least-squares solve via column-pivoted QR; for
/// rank-deficient systems it returns a different representative than [`lstsq`].
pub fn lstsq_pivoted_qr(a: &Mat, b: &[f64], tol: f64) -> LstsqSolution {
    assert_eq!(a.rows, b.len());
    let (rows, cols) = (a.rows, a.cols);
    let qr = a.to_dmatrix().col_piv_qr();
    let q = qr.q();
    let r = qr.r();
    let k = rows.min(cols);
    let top = (0..k).fold(0.0_f64, |m, i| m.max(r[(i, i)].abs()));
    let rank = (0..k)
        .take_while(|&i| top > 0.0 && r[(i, i)].abs() > tol * top)
        .count();
    let qtb = q.transpose() * DVector::from_column_slice(b);
    let mut z = DVector::<f64>::zeros(cols);
    for i in (0..rank).rev() {
        let mut acc = qtb[i];
        for j in i + 1..rank {
            acc -= r[(i, j)] * z[j];
        }
        z[i] = acc / r[(i, i)];
    }
    qr.p().inv_permute_rows(&mut z);
    let x: Vec<f64> = z.iter().copied().collect();
    let residual = residual(a, &x, b);
    LstsqSolution { x, residual }
}

fn residual(a: &Mat, x: &[f64], b: &[f64]) -> f64 {
    let ax = a.mul_vec(x);
    norm(&ax.iter().zip(b).map(|(p, q)| p - q).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(numerical_rank(&Mat::identity(3), 1e-9), 3);
        assert_eq!(numerical_rank(&Mat::zeros(3, 3), 1e-9), 0);
        let so3 = Mat::from_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ]);
        assert_eq!(numerical_rank(&so3, 1e-9), 2);
        assert_eq!(numerical_rank(&Mat::zeros(0, 4), 1e-9), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Mat::identity(3), 1e-9).is_empty());
        let k = kernel_basis(&Mat::zeros(2, 2), 1e-9);
        assert_eq!(k.len(), 2);
        assert!((dot(&k[0], &k[1])).abs() < 1e-14);
        assert!((norm(&k[0]) - 1.0).abs() < 1e-14);
        // zero anchor of a trivial action: n = 2 rows, m = 3 columns
        assert_eq!(kernel_basis(&Mat::zeros(2, 3), 1e-9).len(), 3);
    }

    #[test]
    fn kernel_of_wide_matrix() {
        let m = Mat::from_rows(&[vec![1.0, 0.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0, 0.0]]);
        let k = kernel_basis(&m, 1e-9);
        assert_eq!(k.len(), 3);
        for v in &k {
            assert!(norm(&m.mul_vec(v)) <= 10.0 * 1e-9 * m.frobenius_norm());
        }
    }

    #[test]
    fn span_examples() {
        let id = Mat::identity(2);
        assert!(span_equal(&id, &id, 1e-9));
        let e1 = Mat::from_columns(2, &[vec![1.0, 0.0]]);
        let e2 = Mat::from_columns(2, &[vec![0.0, 1.0]]);
        assert!(!span_equal(&e1, &e2, 1e-9));
        let a = Mat::from_columns(2, &[vec![1.0, 0.0], vec![1.0, 1.0]]);
        assert!(span_equal(&a, &id, 1e-9));
    }

    #[test]
    fn solvers_agree_on_range_but_not_representative() {
        // rank 2 in R^3, kernel along (1,1,1)
        let a = Mat::from_rows(&[
            vec![1.0, -1.0, 0.0],
            vec![0.0, 1.0, -1.0],
            vec![-1.0, 0.0, 1.0],
        ]);
        let b = a.mul_vec(&[2.0, 0.5, -1.0]);
        let s1 = lstsq(&a, &b, 1e-12);
        let s2 = lstsq_pivoted_qr(&a, &b, 1e-12);
        assert!(s1.residual < 1e-12 && s2.residual < 1e-12);
        let sum1: f64 = s1.x.iter().sum();
        assert!(
            sum1.abs() < 1e-12,
            "minimum-norm solution is orthogonal to the kernel"
        );
        let diff: Vec<f64> = s1.x.iter().zip(&s2.x).map(|(p, q)| p - q).collect();
        // representatives differ only along the kernel
        assert!((diff[0] - diff[1]).abs() < 1e-12 && (diff[1] - diff[2]).abs() < 1e-12);
    }

    #[test]
    fn pivoted_qr_full_rank() {
        let a = Mat::from_rows(&[vec![0.0, 2.0], vec![3.0, 1.0], vec![1.0, 0.0]]);
        let x = [1.5, -0.5];
        let b = a.mul_vec(&x);
        let s = lstsq_pivoted_qr(&a, &b, 1e-12);
        assert!((s.x[0] - 1.5).abs() < 1e-12 && (s.x[1] + 0.5).abs() < 1e-12);
    }
}
