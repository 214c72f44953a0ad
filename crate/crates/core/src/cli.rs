//! Batch front end behind the `algebroid-leaves` binary.
//!
//! Exit codes: 0 when every requested check passes, 2 when a check fails or a
//! trace blows up, 1 on malformed input.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::algebroid::{AlgebroidSpec, HomTMA, OneForm, Section};
use crate::error::Error;
use crate::expr::{parse, Expr};
use crate::jet_action::{self, AffineJetSection};
use crate::leaves::{self, Splitting, TraceConfig};
use crate::lie_poisson::{DualPoint, LiePoisson};
use crate::linalg;
use crate::report::CheckReport;
use crate::sampling;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    BracketTable,
    Bivector,
    LeafDim,
    TraceLeaf,
    CheckTheorem,
    CheckPropD,
    CheckPropGamma,
    Curvature,
    MagneticCheck,
    FiberCheck,
    TangentLiftCheck,
    ReportAll,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

/// Where sample points come from.
#[derive(Debug, Clone, PartialEq)]
pub enum PointSource {
    /// `count` seeded uniform points in the sample box.
    Random(usize),
    /// One point per line, comma or whitespace separated; `#` starts a comment.
    File(PathBuf),
}

impl FromStr for PointSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.strip_prefix("random:") {
            Some(n) => n
                .parse()
                .map(PointSource::Random)
                .map_err(|_| format!("bad point count `{n}`")),
            None => Ok(PointSource::File(PathBuf::from(s))),
        }
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let v = parse_floats(s)?;
    match v[..] {
        [lo, hi] if lo < hi => Ok((lo, hi)),
        [_, _] => Err(format!("empty range `{s}`")),
        _ => Err(format!("expected LO,HI, got `{s}`")),
    }
}

fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| format!("not a number: `{t}`")))
        .collect()
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "algebroid-leaves",
    version,
    about = "Lie-Poisson leaves of a Lie algebroid"
)]
pub struct RunConfig {
    /// Spec file (JSON).
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, value_enum)]
    pub cmd: Command,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// RK4 step size.
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    /// Total RK4 steps of a trace.
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    #[arg(long, default_value_t = 100)]
    pub steps_per_flow: usize,
    /// Chart box LO,HI for traces.
    #[arg(long = "box", default_value = "-10,10", value_parser = parse_range, allow_hyphen_values = true)]
    pub chart_box: (f64, f64),
    /// Box LO,HI for `random:N` points.
    #[arg(long, default_value = "-1,1", value_parser = parse_range, allow_hyphen_values = true)]
    pub sample_box: (f64, f64),
    /// JSON report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV path for trace points.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// PATH or random:N.
    #[arg(long, default_value = "random:100")]
    pub points: PointSource,
    /// Start point of a trace, x then ξ, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<String>,
    /// Hom(TM, A) as m rows of n expressions: "row;row", entries comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub hom: Option<String>,
    /// One-form components, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Splitting λ as m rows of n expressions; defaults to [id; 0].
    #[arg(long, allow_hyphen_values = true)]
    pub splitting: Option<String>,
    /// Functions on A* (base coordinates and xi1..xim), `;` separated.
    #[arg(long, allow_hyphen_values = true)]
    pub invariants: Option<String>,
    /// Base functions for tangent-lift-check, `;` separated.
    #[arg(long, allow_hyphen_values = true)]
    pub functions: Option<String>,
}

/// Malformed input, reported with exit code 1.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<crate::algebroid::SpecError> for InputError {
    fn from(e: crate::algebroid::SpecError) -> Self {
        InputError(e.to_string())
    }
}

impl From<crate::expr::DomainError> for InputError {
    fn from(e: crate::expr::DomainError) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                1
            } else {
                0
            }
        }
    }
}

pub fn run(cfg: &RunConfig) -> i32 {
    let report = match execute(cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let text = report.to_json();
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{text}"),
    }
    if report.pass {
        0
    } else {
        2
    }
}

/// Runs the configured command and returns its report; writes the trace CSV if asked.
pub fn execute(cfg: &RunConfig) -> CliResult<CheckReport> {
    check_config(cfg)?;
    let spec = AlgebroidSpec::load(&cfg.spec)
        .map_err(|e| InputError(format!("{}: {e}", cfg.spec.display())))?;
    let ctx = Ctx {
        lp: LiePoisson::new(&spec),
        spec,
        cfg,
    };
    match cfg.cmd {
        Command::Validate => ctx.validate(),
        Command::BracketTable => ctx.bracket_table(),
        Command::Bivector => ctx.bivector(),
        Command::LeafDim => ctx.leaf_dim(),
        Command::TraceLeaf => ctx.trace_leaf(),
        Command::CheckTheorem => ctx.check_theorem(),
        Command::CheckPropD => ctx.check_prop_d(),
        Command::CheckPropGamma => ctx.check_prop_gamma(),
        Command::Curvature => ctx.curvature(),
        Command::MagneticCheck => ctx.magnetic_check(),
        Command::FiberCheck => ctx.fiber_check(),
        Command::TangentLiftCheck => ctx.tangent_lift_check(),
        Command::ReportAll => ctx.report_all(),
    }
}

#[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
fn check_config(cfg: &RunConfig) -> CliResult<()> {
    if !(cfg.tol > 0.0) {
        return Err(InputError(format!(
            "--tol must be positive, got {}",
            cfg.tol
        )));
    }
    if !(cfg.h > 0.0 && cfg.h.is_finite()) {
        return Err(InputError(format!("--h must be positive, got {}", cfg.h)));
    }
    if cfg.steps_per_flow == 0 {
        return Err(InputError("--steps-per-flow must be positive".into()));
    }
    if !cfg.steps.is_multiple_of(cfg.steps_per_flow) {
        return Err(InputError(format!(
            "--steps {} is not a multiple of --steps-per-flow {}",
            cfg.steps, cfg.steps_per_flow
        )));
    }
    Ok(())
}

struct Ctx<'a> {
    spec: AlgebroidSpec,
    lp: LiePoisson,
    cfg: &'a RunConfig,
}

impl Ctx<'_> {
    fn report(&self, name: &str, extra: Value) -> CheckReport {
        let mut params = json!({
            "spec": self.spec.name(),
            "spec_hash": self.spec.content_hash(),
            "seed": self.cfg.seed,
            "tol": self.cfg.tol,
        });
        if let (Value::Object(p), Value::Object(e)) = (&mut params, extra) {
            p.extend(e);
        }
        CheckReport::new(name, params)
    }

    fn points_param(&self) -> Value {
        match &self.cfg.points {
            PointSource::Random(n) => json!(format!("random:{n}")),
            PointSource::File(p) => json!(p.display().to_string()),
        }
    }

    fn read_rows(&self, path: &PathBuf) -> CliResult<Vec<Vec<f64>>> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        let mut rows = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = parse_floats(line)
                .map_err(|e| InputError(format!("{}:{}: {e}", path.display(), no + 1)))?;
            rows.push(row);
        }
        Ok(rows)
    }

    fn dual_points(&self) -> CliResult<Vec<DualPoint>> {
        let (n, dim) = (self.spec.n(), self.lp.dim());
        let rows = match &self.cfg.points {
            PointSource::Random(count) => {
                let (lo, hi) = self.cfg.sample_box;
                sampling::uniform_points(self.cfg.seed, *count, dim, lo, hi)
            }
            PointSource::File(path) => self.read_rows(path)?,
        };
        rows.iter()
            .map(|r| {
                if r.len() != dim {
                    return Err(InputError(format!(
                        "point {r:?} needs {dim} coordinates (x then ξ)"
                    )));
                }
                Ok(DualPoint::from_flat(n, r))
            })
            .collect()
    }

    fn base_points(&self) -> CliResult<Vec<Vec<f64>>> {
        let (n, dim) = (self.spec.n(), self.lp.dim());
        match &self.cfg.points {
            PointSource::Random(count) => {
                let (lo, hi) = self.cfg.sample_box;
                Ok(sampling::uniform_points(self.cfg.seed, *count, n, lo, hi))
            }
            PointSource::File(path) => self
                .read_rows(path)?
                .into_iter()
                .map(|r| {
                    if r.len() != n && r.len() != dim {
                        return Err(InputError(format!(
                            "point {r:?} needs {n} or {dim} coordinates"
                        )));
                    }
                    Ok(r[..n].to_vec())
                })
                .collect(),
        }
    }

    fn start(&self) -> CliResult<DualPoint> {
        let text = self
            .cfg
            .start
            .as_ref()
            .ok_or_else(|| InputError("--start is required for this command".into()))?;
        let z = parse_floats(text).map_err(InputError)?;
        if z.len() != self.lp.dim() {
            return Err(InputError(format!(
                "--start needs {} coordinates (x then ξ), got {}",
                self.lp.dim(),
                z.len()
            )));
        }
        Ok(DualPoint::from_flat(self.spec.n(), &z))
    }

    fn base_exprs(&self, text: &str, what: &str) -> CliResult<Vec<Expr>> {
        text.split(',')
            .map(|s| {
                parse(s.trim(), self.spec.coords()).map_err(|e| InputError(format!("{what}: {e}")))
            })
            .collect()
    }

    fn matrix_exprs(&self, text: &str, what: &str) -> CliResult<Vec<Vec<Expr>>> {
        let (n, m) = (self.spec.n(), self.spec.m());
        let rows = text
            .split(';')
            .map(|r| self.base_exprs(r, what))
            .collect::<CliResult<Vec<_>>>()?;
        if rows.len() != m || rows.iter().any(|r| r.len() != n) {
            return Err(InputError(format!(
                "{what} must have {m} rows of {n} entries"
            )));
        }
        Ok(rows)
    }

    fn dual_functions(&self, text: &str, what: &str) -> CliResult<Vec<Expr>> {
        text.split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                self.lp
                    .parse_function(s.trim())
                    .map_err(|e| InputError(format!("{what}: {e}")))
            })
            .collect()
    }

    fn trace_config(&self) -> TraceConfig {
        TraceConfig {
            seed: self.cfg.seed,
            step_size: self.cfg.h,
            steps_per_flow: self.cfg.steps_per_flow,
            flow_count: self.cfg.steps / self.cfg.steps_per_flow,
            chart_box: self.cfg.chart_box,
        }
    }

    fn trace_params(&self) -> Value {
        json!({
            "h": self.cfg.h,
            "steps": self.cfg.steps,
            "steps_per_flow": self.cfg.steps_per_flow,
            "box": [self.cfg.chart_box.0, self.cfg.chart_box.1],
            "start": self.cfg.start,
        })
    }

    fn validate(&self) -> CliResult<CheckReport> {
        let mut r = self.report("validate", json!({ "points": self.points_param() }));
        let v = self.spec.validate(&self.base_points()?, self.cfg.tol);
        r.defect("antisymmetry", v.antisymmetry);
        r.defect("anchor_morphism", v.anchor_morphism);
        r.defect("jacobi", v.jacobi);
        for (idx, msg) in &v.point_errors {
            r.fail(format!("point {idx}: {msg}"));
        }
        let mut lp_jacobi: f64 = 0.0;
        for p in self.dual_points()? {
            match self.lp.jacobi_defect(&p) {
                Ok(d) => lp_jacobi = lp_jacobi.max(d),
                Err(e) => r.fail(format!("dual point {:?}: {e}", p.flat())),
            }
        }
        r.defect("lie_poisson_jacobi", lp_jacobi);
        if !v.pass || lp_jacobi > self.cfg.tol {
            r.fail("defects exceed tolerance");
        }
        Ok(r)
    }

    fn bracket_table(&self) -> CliResult<CheckReport> {
        let mut r = self.report("bracket-table", json!({}));
        let m = self.spec.m();
        let names = self.spec.coords();
        let show =
            |es: &[Expr]| -> Vec<String> { es.iter().map(|e| e.to_string_with(names)).collect() };
        let anchors: Vec<Value> = (0..m)
            .map(|i| json!({ "i": i + 1, "anchor": show(&self.spec.anchor_field(i)) }))
            .collect();
        let mut brackets = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let b = self
                    .spec
                    .bracket_sections(&Section::basis(m, i), &Section::basis(m, j))?;
                brackets.push(json!({ "i": i + 1, "j": j + 1, "bracket": show(&b.components) }));
            }
        }
        r.data = json!({ "coords": names, "anchors": anchors, "brackets": brackets });
        Ok(r)
    }

    fn bivector(&self) -> CliResult<CheckReport> {
        let mut r = self.report("bivector", json!({ "points": self.points_param() }));
        let names = self.lp.coordinate_names();
        let table: Vec<Vec<String>> = self
            .lp
            .bivector()
            .iter()
            .map(|row| row.iter().map(|e| e.to_string_with(names)).collect())
            .collect();
        let mut ranks = Vec::new();
        for p in self.dual_points()? {
            let pi = self.lp.bivector_at(&p)?;
            r.defect("antisymmetry", pi.antisymmetry_defect());
            ranks.push(linalg::numerical_rank(&pi, self.cfg.tol));
        }
        r.data = json!({ "coords": names, "bivector": table, "ranks": ranks });
        if r.defects.get("antisymmetry").copied().unwrap_or(0.0) > self.cfg.tol {
            r.fail("bivector is not antisymmetric");
        }
        Ok(r)
    }

    fn leaf_dim(&self) -> CliResult<CheckReport> {
        let mut r = self.report(
            "leaf-dim",
            json!({ "points": self.points_param(), "start": self.cfg.start }),
        );
        let pts = match self.cfg.start {
            Some(_) => vec![self.start()?],
            None => self.dual_points()?,
        };
        let dims = pts
            .iter()
            .map(|p| leaves::leaf_dimension(&self.lp, p, self.cfg.tol))
            .collect::<Result<Vec<_>, _>>()?;
        r.data = json!({ "dimensions": dims });
        Ok(r)
    }

    fn trace_leaf(&self) -> CliResult<CheckReport> {
        let mut r = self.report("trace-leaf", self.trace_params());
        let invariants = match &self.cfg.invariants {
            Some(t) => self.dual_functions(t, "--invariants")?,
            None => Vec::new(),
        };
        let start = self.start()?;
        let trace = match leaves::trace_leaf(&self.lp, &start, &self.trace_config()) {
            Ok(t) => t,
            Err(e @ Error::NonFinite { .. }) => {
                r.fail(format!("trace truncated: {e}"));
                return Ok(r);
            }
            Err(e) => return Err(e.into()),
        };
        if let Some(t) = &trace.truncation {
            r.note(format!(
                "trace truncated in flow {}, step {}: {}",
                t.flow, t.step, t.reason
            ));
        }
        for (i, f) in invariants.iter().enumerate() {
            r.defect(&format!("drift[{i}]"), leaves::drift(&trace, f)?);
        }
        if r.defects.values().any(|d| *d > self.cfg.tol) {
            r.fail("invariant drift exceeds tolerance");
        }
        r.data = json!({ "points": trace.points.len(), "steps": trace.steps() });
        if let Some(path) = &self.cfg.csv {
            std::fs::write(path, trace.to_csv())
                .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(r)
    }

    fn check_theorem(&self) -> CliResult<CheckReport> {
        let mut r = self.report("check-theorem", json!({ "points": self.points_param() }));
        let (mut ham, mut fund, mut unequal) = (Vec::new(), Vec::new(), 0usize);
        for p in self.dual_points()? {
            let s = jet_action::span_equality_check(&self.lp, &p, self.cfg.tol)?;
            if !s.equal {
                unequal += 1;
            }
            ham.push(s.ham_rank);
            fund.push(s.fund_rank);
        }
        r.defect("unequal_points", unequal as f64);
        if unequal > 0 {
            r.fail(format!("spans differ at {unequal} points"));
        }
        r.data = json!({ "ham_rank": ham, "fund_rank": fund });
        Ok(r)
    }

    fn hom_cases(&self) -> CliResult<Vec<(String, HomTMA)>> {
        let (n, m) = (self.spec.n(), self.spec.m());
        Ok(match &self.cfg.hom {
            Some(t) => vec![(t.clone(), HomTMA::new(self.matrix_exprs(t, "--hom")?))],
            None => (0..m)
                .flat_map(|i| (0..n).map(move |a| (i, a)))
                .map(|(i, a)| {
                    (
                        format!("dx{}⊗e{}", a + 1, i + 1),
                        HomTMA::elementary(m, n, i, a),
                    )
                })
                .collect(),
        })
    }

    fn check_prop_d(&self) -> CliResult<CheckReport> {
        let mut r = self.report(
            "check-prop-d",
            json!({ "points": self.points_param(), "hom": self.cfg.hom }),
        );
        let pts = self.dual_points()?;
        let tol = self.cfg.tol;
        let mut cases = Vec::new();
        let mut disagreements = 0usize;
        for (label, d) in self.hom_cases()? {
            let c = jet_action::poisson_criterion_d(&self.lp, &d, &pts, tol)?;
            r.defect("lie_deriv_defect", c.lie_deriv_defect);
            r.defect("derivation_defect", c.derivation_defect);
            if c.is_poisson != (c.derivation_defect <= tol) {
                disagreements += 1;
            }
            cases.push(json!({ "hom": label, "result": c }));
        }
        r.defect("disagreements", disagreements as f64);
        if disagreements > 0 {
            r.fail(format!(
                "{disagreements} cases where the two criteria disagree"
            ));
        }
        r.data = json!({ "cases": cases });
        Ok(r)
    }

    fn gamma_cases(&self) -> CliResult<Vec<(String, OneForm)>> {
        let n = self.spec.n();
        if let Some(t) = &self.cfg.gamma {
            let g = self.base_exprs(t, "--gamma")?;
            if g.len() != n {
                return Err(InputError(format!("--gamma needs {n} components")));
            }
            return Ok(vec![(t.clone(), OneForm::new(g))]);
        }
        let names = self.spec.coords();
        let mut out = Vec::new();
        for a in 0..n {
            for c in std::iter::once(None).chain((0..n).map(Some)) {
                let mut g = vec![Expr::zero(); n];
                g[a] = c.map_or(Expr::one(), Expr::var);
                let coeff = c.map_or(String::new(), |b| format!("{}·", names[b]));
                out.push((format!("{coeff}d{}", names[a]), OneForm::new(g)));
            }
        }
        Ok(out)
    }

    fn check_prop_gamma(&self) -> CliResult<CheckReport> {
        let mut r = self.report(
            "check-prop-gamma",
            json!({ "points": self.points_param(), "gamma": self.cfg.gamma }),
        );
        let pts = self.dual_points()?;
        let tol = self.cfg.tol;
        let mut cases = Vec::new();
        let mut disagreements = 0usize;
        for (label, g) in self.gamma_cases()? {
            let c = jet_action::poisson_criterion_gamma(&self.lp, &g, &pts, tol)?;
            r.defect("lie_deriv_defect", c.lie_deriv_defect);
            r.defect("rho_d_gamma_defect", c.rho_d_gamma_defect);
            if c.is_poisson != (c.rho_d_gamma_defect <= tol) {
                disagreements += 1;
            }
            cases.push(json!({ "gamma": label, "result": c }));
        }
        r.defect("disagreements", disagreements as f64);
        if disagreements > 0 {
            r.fail(format!(
                "{disagreements} cases where the two criteria disagree"
            ));
        }
        r.data = json!({ "cases": cases });
        Ok(r)
    }

    fn curvature(&self) -> CliResult<CheckReport> {
        let mut r = self.report(
            "curvature",
            json!({ "points": self.points_param(), "splitting": self.cfg.splitting }),
        );
        let splitting = match &self.cfg.splitting {
            Some(t) => Splitting {
                lambda: self.matrix_exprs(t, "--splitting")?,
            },
            None => Splitting::standard(&self.spec)?,
        };
        let mut first = Value::Null;
        for x in self.base_points()? {
            let c = leaves::curvature_at(&self.spec, &splitting, &x)?;
            r.defect("kernel_defect", c.kernel_defect);
            if first.is_null() {
                first = json!({ "x": x, "values": c.values });
            }
        }
        if r.defects.get("kernel_defect").copied().unwrap_or(0.0) > self.cfg.tol {
            r.fail("curvature is not ker ρ-valued");
        }
        r.data = json!({ "first_point": first });
        Ok(r)
    }

    fn magnetic_check(&self) -> CliResult<CheckReport> {
        let mut r = self.report(
            "magnetic-check",
            json!({ "points": self.points_param(), "start": self.cfg.start }),
        );
        let pts = match self.cfg.start {
            Some(_) => vec![self.start()?],
            None => self.dual_points()?,
        };
        for p in &pts {
            let c = leaves::magnetic_form_check(&self.lp, p, self.cfg.tol)?;
            r.defect("max_deviation", c.max_deviation);
        }
        if r.defects.get("max_deviation").copied().unwrap_or(0.0) > self.cfg.tol {
            r.fail("leaf form deviates from the magnetic formula");
        }
        Ok(r)
    }

    fn fiber_check(&self) -> CliResult<CheckReport> {
        let mut r = self.report("fiber-check", self.trace_params());
        let invariants = match &self.cfg.invariants {
            Some(t) => self.dual_functions(t, "--invariants")?,
            None => Vec::new(),
        };
        if invariants.is_empty() {
            r.note("no invariants given; spread is vacuously 0");
        }
        let start = self.start()?;
        let trace = match leaves::trace_leaf(&self.lp, &start, &self.trace_config()) {
            Ok(t) => t,
            Err(e @ Error::NonFinite { .. }) => {
                r.fail(format!("trace truncated: {e}"));
                return Ok(r);
            }
            Err(e) => return Err(e.into()),
        };
        let c = leaves::fiber_bundle_check(&trace, &invariants)?;
        r.defect("max_spread", c.max_spread);
        if c.max_spread > self.cfg.tol {
            r.fail("an invariant varies along the leaf");
        }
        r.data = json!({ "spreads": c.spreads, "steps": trace.steps() });
        Ok(r)
    }

    fn tangent_lift_check(&self) -> CliResult<CheckReport> {
        let mut r = self.report(
            "tangent-lift-check",
            json!({ "points": self.points_param(), "functions": self.cfg.functions }),
        );
        let n = self.spec.n();
        if self.spec.m() != n {
            return Err(InputError(
                "tangent-lift-check needs a cotangent algebroid (m = n)".into(),
            ));
        }
        // π^{ia} = ρ^a_i on the cotangent algebroid of π
        let pi: Vec<Vec<Expr>> = (0..n)
            .map(|i| (0..n).map(|a| self.spec.anchor(a, i).clone()).collect())
            .collect();
        let functions = match &self.cfg.functions {
            Some(t) => t
                .split(';')
                .map(|s| {
                    parse(s.trim(), self.spec.coords())
                        .map_err(|e| InputError(format!("--functions: {e}")))
                })
                .collect::<CliResult<Vec<_>>>()?,
            None => (0..n).map(Expr::var).collect(),
        };
        let pts = self.dual_points()?;
        for f in &functions {
            r.defect(
                "tangent_lift",
                leaves::tangent_lift_check(&self.lp, &pi, f, &pts)?,
            );
        }
        if r.defects.get("tangent_lift").copied().unwrap_or(0.0) > self.cfg.tol {
            r.fail("Hamiltonian fields differ from the tangent lifts");
        }
        Ok(r)
    }

    fn homomorphism(&self) -> CliResult<CheckReport> {
        let pairs = 20;
        let mut r = self.report(
            "homomorphism",
            json!({ "points": self.points_param(), "pairs": pairs }),
        );
        let pts = self.dual_points()?;
        let mut rng = sampling::rng(self.cfg.seed);
        for _ in 0..pairs {
            let s1 = AffineJetSection::random(&self.spec, &mut rng);
            let s2 = AffineJetSection::random(&self.spec, &mut rng);
            r.defect(
                "homomorphism",
                jet_action::homomorphism_defect(&self.lp, &s1, &s2, &pts)?,
            );
        }
        if r.defects["homomorphism"] > self.cfg.tol {
            r.fail("fundamental fields do not respect the bracket");
        }
        Ok(r)
    }

    fn report_all(&self) -> CliResult<CheckReport> {
        let mut r = self.report("report-all", json!({ "points": self.points_param() }));
        let subs = [
            self.validate()?,
            self.check_theorem()?,
            self.check_prop_d()?,
            self.check_prop_gamma()?,
            self.homomorphism()?,
        ];
        for s in &subs {
            for (k, v) in &s.defects {
                r.defect(&format!("{}.{k}", s.name), *v);
            }
            if !s.pass {
                r.fail(format!("{} failed", s.name));
            }
        }
        r.data = serde_json::to_value(&subs).expect("serializable");
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_source_parsing() {
        assert_eq!(
            "random:5".parse::<PointSource>().unwrap(),
            PointSource::Random(5)
        );
        assert_eq!(
            "pts.txt".parse::<PointSource>().unwrap(),
            PointSource::File(PathBuf::from("pts.txt"))
        );
        assert!("random:x".parse::<PointSource>().is_err());
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("-10,10").unwrap(), (-10.0, 10.0));
        assert!(parse_range("1,1").is_err());
        assert!(parse_range("1").is_err());
    }

    #[test]
    fn command_names_are_kebab_case() {
        assert_eq!(Command::CheckPropGamma.name(), "check-prop-gamma");
        assert_eq!(Command::ReportAll.name(), "report-all");
    }

    #[test]
    fn flags_parse() {
        let cfg = RunConfig::try_parse_from([
            "algebroid-leaves",
            "--spec",
            "s.spec",
            "--cmd",
            "trace-leaf",
            "--box",
            "-5,5",
            "--start",
            "-0.5,0,0,1",
            "--points",
            "random:7",
        ])
        .unwrap();
        assert_eq!(cfg.chart_box, (-5.0, 5.0));
        assert_eq!(cfg.points, PointSource::Random(7));
        assert_eq!(cfg.start.as_deref(), Some("-0.5,0,0,1"));
        assert_eq!(cfg.cmd, Command::TraceLeaf);
    }

    #[test]
    fn bad_flags_exit_one() {
        assert_eq!(main_with_args(["algebroid-leaves", "--cmd", "nope"]), 1);
    }
}
