use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::expr::{DomainError, Expr};
use crate::fields;
use crate::lie_poisson::{DualPoint, LiePoisson};
use crate::sampling;

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TraceConfig {
    pub seed: u64,
    pub step_size: f64,
    pub steps_per_flow: usize,
    pub flow_count: usize,
    /// `[lo, hi]` in every coordinate of `A*`.
    pub chart_box: (f64, f64),
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig {
            seed: 0,
            step_size: 1e-3,
            steps_per_flow: 100,
            flow_count: 100,
            chart_box: (-10.0, 10.0),
        }
    }
}

impl TraceConfig {
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
    pub fn validate(&self) -> Result<()> {
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return Err(Error::Precondition(format!(
                "step size must be positive, got {}",
                self.step_size
            )));
        }
        let (lo, hi) = self.chart_box;
        if !(lo < hi) {
            return Err(Error::Precondition(format!(
                "chart box [{lo}, {hi}] is empty"
            )));
        }
        Ok(())
    }

    pub fn contains(&self, z: &[f64]) -> bool {
        let (lo, hi) = self.chart_box;
        z.iter().all(|c| (lo..=hi).contains(c))
    }
}

/// Where a trace stopped early.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Truncation {
    pub flow: usize,
    pub step: usize,
    pub reason: String,
}

/// A sampled leaf: the start point followed by every RK4 step.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafTrace {
    pub points: Vec<DualPoint>,
    pub seed: u64,
    pub step_size: f64,
    pub steps_per_flow: usize,
    pub flow_count: usize,
    pub spec_name: String,
    pub spec_hash: String,
    /// The generator of each flow, as an index into `ξ_1..ξ_m, x^1..x^n` with a sign.
    pub generators: Vec<(usize, f64)>,
    pub truncation: Option<Truncation>,
}

impl LeafTrace {
    /// Number of RK4 steps actually taken.
    pub fn steps(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# spec-hash={}, seed={}, h={}, steps={}\n",
            self.spec_hash,
            self.seed,
            self.step_size,
            self.steps()
        );
        for p in &self.points {
            let row: Vec<String> = p.x.iter().chain(&p.xi).map(|v| format!("{v}")).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }
}

/// One classical Runge-Kutta step of `ż = field(z)`.
pub fn rk4_step(field: &[Expr], z: &[f64], h: f64) -> Result<Vec<f64>, DomainError> {
    let shift = |base: &[f64], k: &[f64], c: f64| -> Vec<f64> {
        base.iter().zip(k).map(|(b, k)| b + c * k).collect()
    };
    let k1 = fields::eval_all(field, z)?;
    let k2 = fields::eval_all(field, &shift(z, &k1, h / 2.0))?;
    let k3 = fields::eval_all(field, &shift(z, &k2, h / 2.0))?;
    let k4 = fields::eval_all(field, &shift(z, &k3, h))?;
    Ok((0..z.len())
        .map(|i| z[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}

/// Integrates the Hamiltonian flow of `hamiltonian` for `steps` steps and
/// returns every point including the start.
pub fn integrate_flow(
    lp: &LiePoisson,
    hamiltonian: &Expr,
    start: &DualPoint,
    h: f64,
    steps: usize,
) -> Result<Vec<DualPoint>> {
    lp.check_point(start)?;
    let field = lp.hamiltonian_field(hamiltonian);
    let n = lp.spec().n();
    let mut z = start.flat();
    let mut out = vec![start.clone()];
    for step in 0..steps {
        z = rk4_step(&field, &z, h)?;
        if !z.iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite { flow: 0, step });
        }
        out.push(DualPoint::from_flat(n, &z));
    }
    Ok(out)
}

/// Samples the leaf through `start` by Hamiltonian flows of randomly chosen
/// coordinate functions `±ξ_i`, `±x^a`.
pub fn trace_leaf(lp: &LiePoisson, start: &DualPoint, cfg: &TraceConfig) -> Result<LeafTrace> {
    lp.check_point(start)?;
    cfg.validate()?;
    let z0 = start.flat();
    if !cfg.contains(&z0) {
        return Err(Error::Precondition(
            "start point lies outside the chart box".into(),
        ));
    }
    let spec = lp.spec();
    let (n, m) = (spec.n(), spec.m());
    let fields: Vec<Vec<Expr>> = (0..m)
        .map(|i| lp.fiber_coordinate(i))
        .chain((0..n).map(|a| lp.base_coordinate(a)))
        .map(|f| lp.hamiltonian_field(&f))
        .collect();

    let mut rng = sampling::rng(cfg.seed);
    let mut trace = LeafTrace {
        points: vec![start.clone()],
        seed: cfg.seed,
        step_size: cfg.step_size,
        steps_per_flow: cfg.steps_per_flow,
        flow_count: cfg.flow_count,
        spec_name: spec.name().to_string(),
        spec_hash: spec.content_hash(),
        generators: Vec::with_capacity(cfg.flow_count),
        truncation: None,
    };
    let mut z = z0;
    'flows: for flow in 0..cfg.flow_count {
        let g = rng.gen_range(0..fields.len());
        let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        trace.generators.push((g, sign));
        for step in 0..cfg.steps_per_flow {
            let next = rk4_step(&fields[g], &z, sign * cfg.step_size)?;
            if !next.iter().all(|c| c.is_finite()) {
                return Err(Error::NonFinite { flow, step });
            }
            if !cfg.contains(&next) {
                trace.truncation = Some(Truncation {
                    flow,
                    step,
                    reason: "left the chart box".into(),
                });
                break 'flows;
            }
            trace.points.push(DualPoint::from_flat(n, &next));
            z = next;
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{builders, catalog};

    fn so3_trace(seed: u64) -> LeafTrace {
        let lp = LiePoisson::new(&catalog::so3());
        let start = DualPoint::new(vec![0.0], vec![0.0, 0.0, 1.0]);
        trace_leaf(
            &lp,
            &start,
            &TraceConfig {
                seed,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn so3_trace_stays_on_sphere() {
        let t = so3_trace(42);
        assert_eq!(t.steps(), 10_000);
        assert!(t.truncation.is_none());
        let worst = t
            .points
            .iter()
            .map(|p| (p.xi.iter().map(|v| v * v).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-6, "{worst}");
        assert!(t.points.iter().any(|p| (p.xi[2] - 1.0).abs() > 0.1));
    }

    #[test]
    fn same_seed_same_csv() {
        assert_eq!(so3_trace(7).to_csv(), so3_trace(7).to_csv());
        assert_ne!(so3_trace(7).to_csv(), so3_trace(8).to_csv());
        let csv = so3_trace(7).to_csv();
        assert!(csv.starts_with(&format!(
            "# spec-hash={}, seed=7, h=0.001, steps=10000\n",
            catalog::so3().content_hash()
        )));
        assert_eq!(csv.lines().count(), 10_002);
    }

    #[test]
    fn trivial_action_freezes_base() {
        let lp = LiePoisson::new(&catalog::transf_trivial());
        let start = DualPoint::new(vec![0.4, -0.3], vec![0.5, 0.1, 0.8]);
        let t = trace_leaf(
            &lp,
            &start,
            &TraceConfig {
                seed: 3,
                ..Default::default()
            },
        )
        .unwrap();
        for p in &t.points {
            assert_eq!(p.x, start.x);
        }
    }

    #[test]
    fn stationary_when_all_fields_vanish() {
        let lp = LiePoisson::new(&catalog::transf_trivial());
        let start = DualPoint::new(vec![0.4, -0.3], vec![0.0; 3]);
        let t = trace_leaf(
            &lp,
            &start,
            &TraceConfig {
                seed: 3,
                flow_count: 5,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(t.points.iter().all(|p| *p == start));
    }

    #[test]
    fn truncates_at_box() {
        let lp = LiePoisson::new(&builders::tangent(1));
        let start = DualPoint::new(vec![0.0], vec![0.0]);
        let cfg = TraceConfig {
            seed: 1,
            step_size: 0.1,
            chart_box: (-0.5, 0.5),
            ..Default::default()
        };
        let t = trace_leaf(&lp, &start, &cfg).unwrap();
        assert!(t.truncation.is_some());
        assert!(t.points.iter().all(|p| cfg.contains(&p.flat())));
    }

    #[test]
    fn config_errors() {
        let lp = LiePoisson::new(&catalog::so3());
        let start = DualPoint::new(vec![0.0], vec![0.0, 0.0, 20.0]);
        assert!(matches!(
            trace_leaf(&lp, &start, &TraceConfig::default()),
            Err(Error::Precondition(_))
        ));
        let bad = TraceConfig {
            step_size: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = TraceConfig {
            chart_box: (1.0, 1.0),
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn blow_up_is_reported() {
        // anchor exp(exp(x)) overflows quickly along the base flow
        let spec = builders::regular_distribution(
            vec!["x".into()],
            vec![vec![crate::expr::parse("exp(exp(x))", &["x"]).unwrap()]],
            &[],
        )
        .unwrap();
        let lp = LiePoisson::new(&spec);
        let start = DualPoint::new(vec![7.0], vec![1.0]);
        let cfg = TraceConfig {
            seed: 0,
            step_size: 0.5,
            chart_box: (-f64::MAX, f64::MAX),
            ..Default::default()
        };
        let err = trace_leaf(&lp, &start, &cfg).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }), "{err}");
    }
}
