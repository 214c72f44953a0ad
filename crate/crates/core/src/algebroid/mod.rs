//! Lie algebroids in a single coordinate chart.
//!
//! A spec stores the anchor `ρ^a_i(x)` (so `ρ(e_i) = Σ_a ρ^a_i ∂_a`) and the
//! structure functions `c^k_{ij}(x)` (so `[e_i, e_j] = Σ_k c^k_{ij} e_k`) as
//! symbolic fields over the base coordinates. Sections, one-forms and
//! `Hom(TM, A)` fields are symbolic too, which keeps every bracket exact.

pub mod builders;
pub mod catalog;
mod io;

use crate::expr::{DomainError, Expr};
use crate::fields;
use crate::linalg::{self, Mat};

pub use io::{SpecDocument, StructureEntry};

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{what} is not antisymmetric at ({i}, {j})")]
    NotAntisymmetric {
        what: &'static str,
        i: usize,
        j: usize,
    },
    #[error("{location}: {source}")]
    Expression {
        location: String,
        #[source]
        source: crate::expr::ParseError,
    },
    #[error("malformed spec: {0}")]
    Malformed(String),
    #[error("spec JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("reading spec: {0}")]
    Io(#[from] std::io::Error),
}

/// `(A, ρ, [·,·])` over a chart with coordinates `coords`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebroidSpec {
    name: String,
    coords: Vec<String>,
    rank: usize,
    /// `anchor[a][i] = ρ^a_i`
    anchor: Vec<Vec<Expr>>,
    /// `structure[(k * m + i) * m + j] = c^k_{ij}`
    structure: Vec<Expr>,
}

/// `u = Σ u^i e_i`
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub components: Vec<Expr>,
}

/// `γ = Σ γ_a dx^a`
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm {
    pub components: Vec<Expr>,
}

/// `D ∈ Γ(Hom(TM, A))` with `D(∂_a) = Σ_i D^i_a e_i`; `entries[i][a] = D^i_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomTMA {
    pub entries: Vec<Vec<Expr>>,
}

impl Section {
    pub fn new(components: Vec<Expr>) -> Self {
        Section { components }
    }

    pub fn zero(m: usize) -> Self {
        Section::new(vec![Expr::zero(); m])
    }

    /// The frame section `e_i`.
    pub fn basis(m: usize, i: usize) -> Self {
        let mut s = Section::zero(m);
        s.components[i] = Expr::one();
        s
    }

    pub fn scale(&self, f: &Expr) -> Section {
        Section::new(fields::scale(&self.components, f))
    }

    pub fn add(&self, other: &Section) -> Section {
        Section::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Section) -> Section {
        Section::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>, DomainError> {
        fields::eval_all(&self.components, x)
    }
}

impl OneForm {
    pub fn new(components: Vec<Expr>) -> Self {
        OneForm { components }
    }

    pub fn zero(n: usize) -> Self {
        OneForm::new(vec![Expr::zero(); n])
    }

    /// `df`
    pub fn exact(f: &Expr, n: usize) -> Self {
        OneForm::new((0..n).map(|a| f.diff(a)).collect())
    }

    /// `(dγ)_{ab} = ∂_a γ_b − ∂_b γ_a`
    pub fn exterior_derivative(&self) -> Vec<Vec<Expr>> {
        let n = self.components.len();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.components[b].diff(a).sub(&self.components[a].diff(b)))
                    .collect()
            })
            .collect()
    }

    /// `⟨γ, X⟩`
    pub fn pair(&self, x: &[Expr]) -> Expr {
        let terms: Vec<Expr> = self
            .components
            .iter()
            .zip(x)
            .map(|(g, v)| g.mul(v))
            .collect();
        Expr::sum(&terms)
    }
}

impl HomTMA {
    pub fn new(entries: Vec<Vec<Expr>>) -> Self {
        HomTMA { entries }
    }

    pub fn zero(m: usize, n: usize) -> Self {
        HomTMA::new(vec![vec![Expr::zero(); n]; m])
    }

    /// `dx^a ⊗ e_i`
    pub fn elementary(m: usize, n: usize, i: usize, a: usize) -> Self {
        let mut d = HomTMA::zero(m, n);
        d.entries[i][a] = Expr::one();
        d
    }

    /// `df ⊗ u`
    pub fn from_differential(f: &Expr, u: &Section, n: usize) -> Self {
        HomTMA::new(
            u.components
                .iter()
                .map(|ui| (0..n).map(|a| ui.mul(&f.diff(a))).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn base_dim(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// The section `D(X)` for a vector field `X`.
    pub fn apply(&self, x: &[Expr]) -> Section {
        Section::new(
            self.entries
                .iter()
                .map(|row| Expr::sum(&row.iter().zip(x).map(|(d, v)| d.mul(v)).collect::<Vec<_>>()))
                .collect(),
        )
    }

    /// The section `D(∂_a)`.
    pub fn column(&self, a: usize) -> Section {
        Section::new(self.entries.iter().map(|row| row[a].clone()).collect())
    }

    pub fn add(&self, other: &HomTMA) -> HomTMA {
        HomTMA::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.add(b)).collect())
                .collect(),
        )
    }

    pub fn sub(&self, other: &HomTMA) -> HomTMA {
        HomTMA::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.sub(b)).collect())
                .collect(),
        )
    }

    pub fn eval(&self, x: &[f64]) -> Result<Mat, DomainError> {
        let (m, n) = (self.rank(), self.base_dim());
        let mut out = Mat::zeros(m, n);
        for i in 0..m {
            for a in 0..n {
                out[(i, a)] = self.entries[i][a].eval(x)?;
            }
        }
        Ok(out)
    }
}

/// Worst defect per axiom over a sample.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ValidationReport {
    pub antisymmetry: f64,
    pub anchor_morphism: f64,
    pub jacobi: f64,
    /// Points at which some axiom could not be evaluated, with the reason.
    pub point_errors: Vec<(usize, String)>,
    pub tol: f64,
    pub pass: bool,
}

impl ValidationReport {
    pub fn max_defect(&self) -> f64 {
        self.antisymmetry.max(self.anchor_morphism).max(self.jacobi)
    }
}

/// Symbolic axiom defects; build once, evaluate anywhere.
#[derive(Debug, Clone)]
pub struct AxiomDefects {
    pub antisymmetry: Vec<Expr>,
    pub anchor_morphism: Vec<Expr>,
    pub jacobi: Vec<Expr>,
}

impl AlgebroidSpec {
    /// Assembles a spec from full anchor (`n × m`) and structure (`m³`, index `(k, i, j)`) tables.
    pub fn from_parts(
        name: impl Into<String>,
        coords: Vec<String>,
        rank: usize,
        anchor: Vec<Vec<Expr>>,
        structure: Vec<Expr>,
    ) -> Result<Self, SpecError> {
        let n = coords.len();
        if n == 0 {
            return Err(SpecError::Shape(
                "a chart needs at least one base coordinate (use a dummy coordinate for Lie algebras)"
                    .into(),
            ));
        }
        if rank == 0 {
            return Err(SpecError::Shape("bundle rank must be positive".into()));
        }
        if anchor.len() != n || anchor.iter().any(|row| row.len() != rank) {
            return Err(SpecError::Shape(format!("anchor must be {n}×{rank}")));
        }
        if structure.len() != rank * rank * rank {
            return Err(SpecError::Shape(format!(
                "structure must have {} entries",
                rank.pow(3)
            )));
        }
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].contains(c) {
                return Err(SpecError::Malformed(format!("duplicate coordinate `{c}`")));
            }
        }
        let too_far = anchor
            .iter()
            .flatten()
            .chain(&structure)
            .filter_map(Expr::max_var)
            .any(|v| v >= n);
        if too_far {
            return Err(SpecError::Shape(
                "expression refers to a coordinate outside the chart".into(),
            ));
        }
        Ok(AlgebroidSpec {
            name: name.into(),
            coords,
            rank,
            anchor,
            structure,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Base dimension `n`.
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// Bundle rank `m`.
    pub fn m(&self) -> usize {
        self.rank
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    /// `ρ^a_i`
    pub fn anchor(&self, a: usize, i: usize) -> &Expr {
        &self.anchor[a][i]
    }

    /// `c^k_{ij}`
    pub fn structure(&self, k: usize, i: usize, j: usize) -> &Expr {
        let m = self.rank;
        &self.structure[(k * m + i) * m + j]
    }

    /// `ρ(u)` as a vector field on the base.
    pub fn anchor_of(&self, u: &Section) -> Vec<Expr> {
        (0..self.n())
            .map(|a| {
                let terms: Vec<Expr> = (0..self.m())
                    .map(|i| self.anchor[a][i].mul(&u.components[i]))
                    .collect();
                Expr::sum(&terms)
            })
            .collect()
    }

    /// `ρ(e_i)`
    pub fn anchor_field(&self, i: usize) -> Vec<Expr> {
        (0..self.n()).map(|a| self.anchor[a][i].clone()).collect()
    }

    pub fn anchor_at(&self, x: &[f64]) -> Result<Mat, DomainError> {
        let mut out = Mat::zeros(self.n(), self.m());
        for a in 0..self.n() {
            for i in 0..self.m() {
                out[(a, i)] = self.anchor[a][i].eval(x)?;
            }
        }
        Ok(out)
    }

    fn check_section(&self, u: &Section) -> Result<(), SpecError> {
        if u.components.len() != self.m() {
            return Err(SpecError::Shape(format!(
                "section has {} components, bundle rank is {}",
                u.components.len(),
                self.m()
            )));
        }
        Ok(())
    }

    /// `[u, v]^k = Σ u^i v^j c^k_{ij} + ρ(u)(v^k) − ρ(v)(u^k)`
    pub fn bracket_sections(&self, u: &Section, v: &Section) -> Result<Section, SpecError> {
        self.check_section(u)?;
        self.check_section(v)?;
        Ok(self.bracket_unchecked(u, v))
    }

    pub(crate) fn bracket_unchecked(&self, u: &Section, v: &Section) -> Section {
        let m = self.m();
        let rho_u = self.anchor_of(u);
        let rho_v = self.anchor_of(v);
        let components = (0..m)
            .map(|k| {
                let mut terms = Vec::new();
                for i in 0..m {
                    if u.components[i].is_zero() {
                        continue;
                    }
                    for j in 0..m {
                        let c = self.structure(k, i, j);
                        if c.is_zero() || v.components[j].is_zero() {
                            continue;
                        }
                        terms.push(u.components[i].mul(&v.components[j]).mul(c));
                    }
                }
                terms.push(fields::apply(&rho_u, &v.components[k]));
                terms.push(fields::apply(&rho_v, &u.components[k]).neg());
                Expr::sum(&terms)
            })
            .collect();
        Section::new(components)
    }

    /// Symbolic axiom defects over the frame.
    pub fn axiom_defects(&self) -> AxiomDefects {
        let (n, m) = (self.n(), self.m());
        let mut antisymmetry = Vec::new();
        for k in 0..m {
            for i in 0..m {
                for j in i..m {
                    antisymmetry.push(self.structure(k, i, j).add(self.structure(k, j, i)));
                }
            }
        }
        let frame: Vec<Section> = (0..m).map(|i| Section::basis(m, i)).collect();
        let brackets: Vec<Vec<Section>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| self.bracket_unchecked(&frame[i], &frame[j]))
                    .collect()
            })
            .collect();
        let mut anchor_morphism = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let lhs = self.anchor_of(&brackets[i][j]);
                let rhs = fields::lie_bracket(&self.anchor_field(i), &self.anchor_field(j));
                for a in 0..n {
                    anchor_morphism.push(lhs[a].sub(&rhs[a]));
                }
            }
        }
        let mut jacobi = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let t1 = self.bracket_unchecked(&brackets[i][j], &frame[k]);
                    let t2 = self.bracket_unchecked(&brackets[j][k], &frame[i]);
                    let t3 = self.bracket_unchecked(&brackets[k][i], &frame[j]);
                    jacobi.extend(t1.add(&t2).add(&t3).components);
                }
            }
        }
        AxiomDefects {
            antisymmetry,
            anchor_morphism,
            jacobi,
        }
    }

    /// Sample-based check of antisymmetry, the anchor morphism property and Jacobi.
    pub fn validate(&self, points: &[Vec<f64>], tol: f64) -> ValidationReport {
        let defects = self.axiom_defects();
        let worst = |exprs: &[Expr], x: &[f64]| -> Result<f64, DomainError> {
            exprs
                .iter()
                .try_fold(0.0_f64, |acc, e| Ok(acc.max(e.eval(x)?.abs())))
        };
        let mut report = ValidationReport {
            antisymmetry: 0.0,
            anchor_morphism: 0.0,
            jacobi: 0.0,
            point_errors: Vec::new(),
            tol,
            pass: false,
        };
        for (idx, x) in points.iter().enumerate() {
            let sample = (|| {
                Ok::<_, DomainError>((
                    worst(&defects.antisymmetry, x)?,
                    worst(&defects.anchor_morphism, x)?,
                    worst(&defects.jacobi, x)?,
                ))
            })();
            match sample {
                Ok((a, r, j)) => {
                    report.antisymmetry = report.antisymmetry.max(a);
                    report.anchor_morphism = report.anchor_morphism.max(r);
                    report.jacobi = report.jacobi.max(j);
                }
                Err(e) => report.point_errors.push((idx, e.to_string())),
            }
        }
        report.pass = report.max_defect() <= tol;
        report
    }

    /// `Φ·Ψ = Φ + Ψ − Φ∘ρ∘Ψ` at `x`, with the flag `id_n + ρ(x)Φ(x)` invertible.
    pub fn hom_group_multiply(
        &self,
        phi: &HomTMA,
        psi: &HomTMA,
        x: &[f64],
    ) -> Result<(Mat, bool), SpecError> {
        for h in [phi, psi] {
            if h.rank() != self.m() || h.entries.iter().any(|r| r.len() != self.n()) {
                return Err(SpecError::Shape(format!(
                    "Hom(TM,A) must be {}×{}",
                    self.m(),
                    self.n()
                )));
            }
        }
        let eval_err = |e: DomainError| SpecError::Malformed(e.to_string());
        let p = phi.eval(x).map_err(eval_err)?;
        let q = psi.eval(x).map_err(eval_err)?;
        let rho = self.anchor_at(x).map_err(eval_err)?;
        let prq = p.matmul(&rho).matmul(&q);
        let mut product = Mat::zeros(self.m(), self.n());
        for i in 0..self.m() {
            for a in 0..self.n() {
                product[(i, a)] = p[(i, a)] + q[(i, a)] - prq[(i, a)];
            }
        }
        let mut gauge = rho.matmul(&p);
        for a in 0..self.n() {
            gauge[(a, a)] += 1.0;
        }
        let invertible = linalg::numerical_rank(&gauge, 1e-12) == self.n();
        Ok((product, invertible))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn so3_frame_bracket() {
        let spec = catalog::so3();
        let br = spec
            .bracket_sections(&Section::basis(3, 0), &Section::basis(3, 1))
            .unwrap();
        let v = br.eval(&[0.0]).unwrap();
        assert_eq!(v, vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn tangent_bracket_of_coordinate_fields() {
        let spec = builders::tangent(1);
        let u = Section::new(vec![Expr::one()]);
        let v = Section::new(vec![parse("x1", &["x1"]).unwrap()]);
        let br = spec.bracket_sections(&u, &v).unwrap();
        assert_eq!(br.components[0].as_const(), Some(1.0));
    }

    #[test]
    fn self_bracket_vanishes() {
        let spec = catalog::cotangent_so3();
        let c = spec.coords().to_vec();
        let u = Section::new(
            ["x1*x2", "sin(x3)", "x1^2 - x3"]
                .iter()
                .map(|s| parse(s, &c).unwrap())
                .collect(),
        );
        let br = spec.bracket_sections(&u, &u).unwrap();
        for x in [[0.3, -0.2, 0.9], [1.0, 2.0, -1.5]] {
            for v in br.eval(&x).unwrap() {
                assert!(v.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bracket_shape_mismatch() {
        let spec = catalog::so3();
        let err = spec
            .bracket_sections(&Section::basis(2, 0), &Section::basis(3, 0))
            .unwrap_err();
        assert!(matches!(err, SpecError::Shape(_)));
    }

    #[test]
    fn validate_so3_and_tangent() {
        let pts: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64 * 0.1 - 0.5]).collect();
        let r = catalog::so3().validate(&pts, 1e-12);
        assert!(r.pass);
        assert_eq!(r.max_defect(), 0.0);
        let pts2: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64 * 0.1, -0.3]).collect();
        let r = builders::tangent(2).validate(&pts2, 1e-12);
        assert!(r.pass && r.max_defect() <= 1e-12);
    }

    #[test]
    fn validate_reports_domain_errors_per_point() {
        let coords = vec!["x1".to_string()];
        let rho = vec![vec![
            parse("1/x1", &coords).unwrap(),
            parse("x1", &coords).unwrap(),
        ]];
        let spec = AlgebroidSpec::from_parts("inv", coords, 2, rho, vec![Expr::zero(); 8]).unwrap();
        let r = spec.validate(&[vec![1.0], vec![0.0], vec![2.0]], 1e-10);
        assert_eq!(r.point_errors.len(), 1);
        assert_eq!(r.point_errors[0].0, 1);
        // [x1^-1 ∂, x1 ∂] = 2/x1 ∂ while the structure functions vanish
        assert!(!r.pass);
    }

    #[test]
    fn hom_group_identity_and_product() {
        let spec = builders::tangent(1);
        let zero = HomTMA::zero(1, 1);
        let psi = HomTMA::new(vec![vec![parse("2*x1", &["x1"]).unwrap()]]);
        let (prod, ok) = spec.hom_group_multiply(&zero, &psi, &[1.5]).unwrap();
        assert!(close(prod[(0, 0)], 3.0) && ok);
        let (prod, _) = spec.hom_group_multiply(&psi, &zero, &[1.5]).unwrap();
        assert!(close(prod[(0, 0)], 3.0));
        let minus = HomTMA::new(vec![vec![Expr::constant(-1.0)]]);
        let (prod, ok) = spec.hom_group_multiply(&minus, &minus, &[0.2]).unwrap();
        assert!(close(prod[(0, 0)], -3.0));
        assert!(!ok);
    }
}
