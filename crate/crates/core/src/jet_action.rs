//! Infinitesimal affine coadjoint action of `𝒥A ⋉ T*M` on `A*`.
//!
//! A section `𝔡u + D + γ` acts on `A*` by the vector field
//!
//! ```text
//! ad(𝔡u + D + γ) = [u, ·]_A − ρ*(D) − ρ*(γ)
//! ```
//!
//! whose base part is `ρ(u)` and whose fibre part at `(x, ξ)` is
//! `ξ([u, e_j]) − Σ ξ_k D^k_a ρ^a_j − Σ γ_a ρ^a_j`. The bracket on sections of
//! `𝒥A ⋉ T*M` is assembled from the component rules
//!
//! ```text
//! [𝔡u, 𝔡v]   = 𝔡[u, v]
//! [𝔡u, D](X) = [u, D(X)] − D([ρ(u), X])
//! [D, D']    = −D∘ρ∘D' + D'∘ρ∘D
//! [𝔡u + D, γ] = L_{ρ(u)} γ + γ∘ρ∘D,   [γ, γ'] = 0
//! ```

use crate::algebroid::{AlgebroidSpec, HomTMA, OneForm, Section};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::fields;
use crate::lie_poisson::{DualPoint, LiePoisson};
use crate::linalg::{self, Mat};
use crate::sampling;

/// `𝔡u + D + γ`
#[derive(Debug, Clone, PartialEq)]
pub struct AffineJetSection {
    pub u: Section,
    pub d: HomTMA,
    pub gamma: OneForm,
}

impl AffineJetSection {
    pub fn new(u: Section, d: HomTMA, gamma: OneForm) -> Self {
        AffineJetSection { u, d, gamma }
    }

    pub fn zero(spec: &AlgebroidSpec) -> Self {
        AffineJetSection::new(
            Section::zero(spec.m()),
            HomTMA::zero(spec.m(), spec.n()),
            OneForm::zero(spec.n()),
        )
    }

    /// `𝔡u`
    pub fn jet(spec: &AlgebroidSpec, u: Section) -> Self {
        AffineJetSection {
            u,
            ..Self::zero(spec)
        }
    }

    pub fn hom(spec: &AlgebroidSpec, d: HomTMA) -> Self {
        AffineJetSection {
            d,
            ..Self::zero(spec)
        }
    }

    pub fn form(spec: &AlgebroidSpec, gamma: OneForm) -> Self {
        AffineJetSection {
            gamma,
            ..Self::zero(spec)
        }
    }

    /// Every component a random quadratic polynomial on the base.
    pub fn random(spec: &AlgebroidSpec, rng: &mut impl rand::Rng) -> Self {
        let (n, m) = (spec.n(), spec.m());
        let u = Section::new((0..m).map(|_| sampling::random_quadratic(rng, n)).collect());
        let d = HomTMA::new(
            (0..m)
                .map(|_| (0..n).map(|_| sampling::random_quadratic(rng, n)).collect())
                .collect(),
        );
        let gamma = OneForm::new((0..n).map(|_| sampling::random_quadratic(rng, n)).collect());
        AffineJetSection::new(u, d, gamma)
    }

    fn check(&self, spec: &AlgebroidSpec) -> Result<()> {
        let (n, m) = (spec.n(), spec.m());
        let bad = |what, expected, got| {
            Err(Error::Dimension {
                what,
                expected,
                got,
            })
        };
        if self.u.components.len() != m {
            return bad("section", m, self.u.components.len());
        }
        if self.d.rank() != m {
            return bad("Hom(TM,A) rows", m, self.d.rank());
        }
        if let Some(row) = self.d.entries.iter().find(|r| r.len() != n) {
            return bad("Hom(TM,A) columns", n, row.len());
        }
        if self.gamma.components.len() != n {
            return bad("one-form", n, self.gamma.components.len());
        }
        Ok(())
    }
}

/// `D∘ρ∘D'` as a `Hom(TM, A)` field.
fn compose_through_anchor(spec: &AlgebroidSpec, d: &HomTMA, d2: &HomTMA) -> HomTMA {
    let (n, m) = (spec.n(), spec.m());
    let rho_d2: Vec<Vec<Expr>> = (0..n)
        .map(|b| {
            (0..n)
                .map(|a| {
                    let t: Vec<Expr> = (0..m)
                        .map(|j| spec.anchor(b, j).mul(&d2.entries[j][a]))
                        .collect();
                    Expr::sum(&t)
                })
                .collect()
        })
        .collect();
    HomTMA::new(
        (0..m)
            .map(|i| {
                (0..n)
                    .map(|a| {
                        let t: Vec<Expr> =
                            (0..n).map(|b| d.entries[i][b].mul(&rho_d2[b][a])).collect();
                        Expr::sum(&t)
                    })
                    .collect()
            })
            .collect(),
    )
}

/// `[𝔡u, D]`: `∂_a ↦ [u, D(∂_a)] + Σ_b ∂_a(ρ(u)^b) D(∂_b)`.
fn jet_hom_bracket(spec: &AlgebroidSpec, u: &Section, d: &HomTMA) -> HomTMA {
    let (n, m) = (spec.n(), spec.m());
    let rho_u = spec.anchor_of(u);
    let columns: Vec<Section> = (0..n)
        .map(|a| {
            let mut col = spec.bracket_unchecked(u, &d.column(a));
            for (b, rb) in rho_u.iter().enumerate() {
                let coeff = rb.diff(a);
                if !coeff.is_zero() {
                    col = col.add(&d.column(b).scale(&coeff));
                }
            }
            col
        })
        .collect();
    HomTMA::new(
        (0..m)
            .map(|i| (0..n).map(|a| columns[a].components[i].clone()).collect())
            .collect(),
    )
}

/// `L_X γ`, components `X^b ∂_b γ_a + γ_b ∂_a X^b`.
pub fn lie_derivative_form(x: &[Expr], gamma: &OneForm) -> OneForm {
    let n = gamma.components.len();
    OneForm::new(
        (0..n)
            .map(|a| {
                let transport = fields::apply(x, &gamma.components[a]);
                let t: Vec<Expr> = (0..n)
                    .map(|b| gamma.components[b].mul(&x[b].diff(a)))
                    .collect();
                transport.add(&Expr::sum(&t))
            })
            .collect(),
    )
}

/// `(𝔡u + D) ▷ γ = L_{ρ(u)} γ + i_γ ρ(D)`.
pub fn act_on_form(spec: &AlgebroidSpec, u: &Section, d: &HomTMA, gamma: &OneForm) -> OneForm {
    let (n, m) = (spec.n(), spec.m());
    let lie = lie_derivative_form(&spec.anchor_of(u), gamma);
    OneForm::new(
        (0..n)
            .map(|a| {
                let mut t = Vec::new();
                for b in 0..n {
                    for i in 0..m {
                        t.push(
                            gamma.components[b]
                                .mul(spec.anchor(b, i))
                                .mul(&d.entries[i][a]),
                        );
                    }
                }
                lie.components[a].add(&Expr::sum(&t))
            })
            .collect(),
    )
}

/// `(𝔡u + D) ▷ X = [ρ(u), X] − ρ(D(X))`.
pub fn act_on_vector(spec: &AlgebroidSpec, u: &Section, d: &HomTMA, x: &[Expr]) -> Vec<Expr> {
    let bracket = fields::lie_bracket(&spec.anchor_of(u), x);
    let rho_dx = spec.anchor_of(&d.apply(x));
    bracket.iter().zip(&rho_dx).map(|(p, q)| p.sub(q)).collect()
}

/// Both `TM` and `T*M` actions evaluated at a base point.
pub fn tm_actions_at(
    spec: &AlgebroidSpec,
    u: &Section,
    d: &HomTMA,
    x_field: &[Expr],
    gamma: &OneForm,
    x: &[f64],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let v = fields::eval_all(&act_on_vector(spec, u, d, x_field), x)?;
    let g = fields::eval_all(&act_on_form(spec, u, d, gamma).components, x)?;
    Ok((v, g))
}

/// The bracket of `Γ(𝒥A ⋉ T*M)`.
pub fn jet_bracket(
    spec: &AlgebroidSpec,
    s1: &AffineJetSection,
    s2: &AffineJetSection,
) -> Result<AffineJetSection> {
    s1.check(spec)?;
    s2.check(spec)?;
    let u = spec.bracket_unchecked(&s1.u, &s2.u);
    let d = jet_hom_bracket(spec, &s1.u, &s2.d)
        .sub(&jet_hom_bracket(spec, &s2.u, &s1.d))
        .sub(&compose_through_anchor(spec, &s1.d, &s2.d))
        .add(&compose_through_anchor(spec, &s2.d, &s1.d));
    let g12 = act_on_form(spec, &s1.u, &s1.d, &s2.gamma);
    let g21 = act_on_form(spec, &s2.u, &s2.d, &s1.gamma);
    let gamma = OneForm::new(
        g12.components
            .iter()
            .zip(&g21.components)
            .map(|(a, b)| a.sub(b))
            .collect(),
    );
    Ok(AffineJetSection::new(u, d, gamma))
}

/// Symbolic fundamental vector field on `A*`.
pub fn fundamental_field(lp: &LiePoisson, s: &AffineJetSection) -> Result<Vec<Expr>> {
    let spec = lp.spec();
    s.check(spec)?;
    let (n, m) = (spec.n(), spec.m());
    let xi = |k: usize| lp.fiber_coordinate(k);
    let mut out = spec.anchor_of(&s.u);
    for j in 0..m {
        // ξ([u, e_j])
        let ad = spec.bracket_unchecked(&s.u, &Section::basis(m, j));
        let mut terms: Vec<Expr> = (0..m).map(|k| xi(k).mul(&ad.components[k])).collect();
        for a in 0..n {
            let r = spec.anchor(a, j);
            if r.is_zero() {
                continue;
            }
            for k in 0..m {
                terms.push(xi(k).mul(&s.d.entries[k][a]).mul(r).neg());
            }
            terms.push(s.gamma.components[a].mul(r).neg());
        }
        out.push(Expr::sum(&terms));
    }
    Ok(out)
}

pub fn fundamental_vf(lp: &LiePoisson, s: &AffineJetSection, pt: &DualPoint) -> Result<Vec<f64>> {
    lp.check_point(pt)?;
    Ok(fields::eval_all(&fundamental_field(lp, s)?, &pt.flat())?)
}

/// Worst `‖ad([s1, s2]) − [ad s1, ad s2]‖` over `pts`.
pub fn homomorphism_defect(
    lp: &LiePoisson,
    s1: &AffineJetSection,
    s2: &AffineJetSection,
    pts: &[DualPoint],
) -> Result<f64> {
    let f1 = fundamental_field(lp, s1)?;
    let f2 = fundamental_field(lp, s2)?;
    let f12 = fundamental_field(lp, &jet_bracket(lp.spec(), s1, s2)?)?;
    let lie = fields::lie_bracket(&f1, &f2);
    let diff: Vec<Expr> = f12.iter().zip(&lie).map(|(a, b)| a.sub(b)).collect();
    pts.iter().try_fold(0.0_f64, |acc, p| {
        lp.check_point(p)?;
        Ok(acc.max(linalg::norm(&fields::eval_all(&diff, &p.flat())?)))
    })
}

fn lie_derivative_defect(lp: &LiePoisson, field: &[Expr], pts: &[DualPoint]) -> Result<f64> {
    let lx = fields::lie_derivative_bivector(field, lp.bivector());
    let entries: Vec<&Expr> = lx.iter().flatten().filter(|e| !e.is_zero()).collect();
    pts.iter().try_fold(0.0_f64, |acc, p| {
        lp.check_point(p)?;
        let z = p.flat();
        entries
            .iter()
            .try_fold(acc, |acc, e| Ok(acc.max(e.eval(&z)?.abs())))
    })
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PoissonCriterionD {
    pub is_poisson: bool,
    pub lie_deriv_defect: f64,
    pub derivation_defect: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PoissonCriterionGamma {
    pub is_poisson: bool,
    pub lie_deriv_defect: f64,
    pub rho_d_gamma_defect: f64,
}

/// Whether `ad(D)` preserves the Lie-Poisson bivector, against whether `D∘ρ`
/// is a derivation of the section bracket.
///
/// The derivation defect combines the frame pairs `(e_i, e_j)` with the
/// Leibniz part of the pairs `(e_i, (x^a − x^a(p)) e_j)`, which at `p`
/// reduces to `ρ(D∘ρ(e_i))^a e_j`. A `C^∞`-linear map is a derivation only if
/// both vanish.
pub fn poisson_criterion_d(
    lp: &LiePoisson,
    d: &HomTMA,
    pts: &[DualPoint],
    tol: f64,
) -> Result<PoissonCriterionD> {
    let spec = lp.spec();
    let s = AffineJetSection::hom(spec, d.clone());
    s.check(spec)?;
    let field = fundamental_field(lp, &s)?;
    let lie_deriv_defect = lie_derivative_defect(lp, &field, pts)?;

    let m = spec.m();
    let frame: Vec<Section> = (0..m).map(|i| Section::basis(m, i)).collect();
    let endo = |v: &Section| d.apply(&spec.anchor_of(v));
    let images: Vec<Section> = frame.iter().map(endo).collect();
    let mut defects: Vec<Vec<Expr>> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let lhs = endo(&spec.bracket_unchecked(&frame[i], &frame[j]));
            let rhs = spec
                .bracket_unchecked(&images[i], &frame[j])
                .add(&spec.bracket_unchecked(&frame[i], &images[j]));
            defects.push(lhs.sub(&rhs).components);
        }
    }
    let leibniz: Vec<Vec<Expr>> = images.iter().map(|im| spec.anchor_of(im)).collect();
    let mut derivation_defect: f64 = 0.0;
    for p in pts {
        lp.check_point(p)?;
        for v in &defects {
            derivation_defect = derivation_defect.max(linalg::norm(&fields::eval_all(v, &p.x)?));
        }
        for v in &leibniz {
            for e in v {
                derivation_defect = derivation_defect.max(e.eval(&p.x)?.abs());
            }
        }
    }
    Ok(PoissonCriterionD {
        is_poisson: lie_deriv_defect <= tol,
        lie_deriv_defect,
        derivation_defect,
    })
}

/// Whether `ad(γ) = −ρ*(γ)` is Poisson, against `ρ*(dγ) = 0`.
pub fn poisson_criterion_gamma(
    lp: &LiePoisson,
    gamma: &OneForm,
    pts: &[DualPoint],
    tol: f64,
) -> Result<PoissonCriterionGamma> {
    let spec = lp.spec();
    let s = AffineJetSection::form(spec, gamma.clone());
    s.check(spec)?;
    let field = fundamental_field(lp, &s)?;
    let lie_deriv_defect = lie_derivative_defect(lp, &field, pts)?;

    let dg = gamma.exterior_derivative();
    let (n, m) = (spec.n(), spec.m());
    let mut pulled = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut t = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if dg[a][b].is_zero() {
                        continue;
                    }
                    t.push(spec.anchor(a, i).mul(spec.anchor(b, j)).mul(&dg[a][b]));
                }
            }
            pulled.push(Expr::sum(&t));
        }
    }
    let mut rho_d_gamma_defect: f64 = 0.0;
    for p in pts {
        lp.check_point(p)?;
        for e in &pulled {
            rho_d_gamma_defect = rho_d_gamma_defect.max(e.eval(&p.x)?.abs());
        }
    }
    Ok(PoissonCriterionGamma {
        is_poisson: lie_deriv_defect <= tol,
        lie_deriv_defect,
        rho_d_gamma_defect,
    })
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SpanEquality {
    pub ham_rank: usize,
    pub fund_rank: usize,
    pub bivector_rank: usize,
    pub equal: bool,
}

/// Hamiltonian fields of all coordinate functions at `pt`, as matrix columns.
pub fn hamiltonian_matrix(lp: &LiePoisson, pt: &DualPoint) -> Result<Mat> {
    let dim = lp.dim();
    let n = lp.spec().n();
    let mut cols = Vec::with_capacity(dim);
    for f in (0..lp.spec().m())
        .map(|i| lp.fiber_coordinate(i))
        .chain((0..n).map(|a| lp.base_coordinate(a)))
    {
        cols.push(lp.hamiltonian_vf(&f, pt)?);
    }
    Ok(Mat::from_columns(dim, &cols))
}

/// Fundamental fields of `e_i`, `dx^a ⊗ e_i` and `dx^a` at `pt`, as matrix columns.
pub fn fundamental_matrix(lp: &LiePoisson, pt: &DualPoint) -> Result<Mat> {
    let spec = lp.spec();
    let (n, m) = (spec.n(), spec.m());
    let mut gens = Vec::with_capacity(m + m * n + n);
    for i in 0..m {
        gens.push(AffineJetSection::jet(spec, Section::basis(m, i)));
    }
    for i in 0..m {
        for a in 0..n {
            gens.push(AffineJetSection::hom(spec, HomTMA::elementary(m, n, i, a)));
        }
    }
    for a in 0..n {
        let mut g = OneForm::zero(n);
        g.components[a] = Expr::one();
        gens.push(AffineJetSection::form(spec, g));
    }
    let cols = gens
        .iter()
        .map(|s| fundamental_vf(lp, s, pt))
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_columns(lp.dim(), &cols))
}

/// Whether the fundamental fields of the affine action span exactly the
/// Hamiltonian directions at `pt`.
pub fn span_equality_check(lp: &LiePoisson, pt: &DualPoint, tol: f64) -> Result<SpanEquality> {
    let ham = hamiltonian_matrix(lp, pt)?;
    let fund = fundamental_matrix(lp, pt)?;
    let ham_rank = linalg::numerical_rank(&ham, tol);
    let fund_rank = linalg::numerical_rank(&fund, tol);
    let bivector_rank = linalg::numerical_rank(&lp.bivector_at(pt)?, tol);
    let equal = linalg::span_equal(&ham, &fund, tol) && ham_rank == bivector_rank;
    Ok(SpanEquality {
        ham_rank,
        fund_rank,
        bivector_rank,
        equal,
    })
}
