//! Scalar-field expressions over named chart coordinates.
//!
//! Every coordinate function in this crate (anchor entries, structure functions,
//! section components, Hamiltonians on the dual bundle) is an [`Expr`]. Expressions
//! are immutable trees with reference-counted children, so cloning is cheap and
//! values can be shared across threads.
//!
//! Differentiation is exact and symbolic. The only rewriting performed is constant
//! folding in the smart constructors, which keeps derivative trees from filling up
//! with `0*x` and `1*x` nodes. Two expressions that differ structurally may still
//! be equal as functions; compare them by evaluation.
//!
//! ```
//! use algebroid_leaves::expr::parse;
//!
//! let f = parse("sin(x1)*x2", &["x1", "x2"]).unwrap();
//! let df = f.diff(0);
//! let v = df.eval(&[std::f64::consts::PI, 5.0]).unwrap();
//! assert!((v + 5.0).abs() < 1e-12);
//! ```

mod parse;
mod print;

use std::fmt;
use std::sync::Arc;

pub use parse::{parse, ParseError};

/// A node of the expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(f64),
    /// Coordinate by position in the owning chart.
    Var(usize),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Pow(Expr, i32),
    Neg(Expr),
    Sin(Expr),
    Cos(Expr),
    Exp(Expr),
    Log(Expr),
    Sqrt(Expr),
}

/// Immutable scalar expression over chart coordinates.
#[derive(Clone, PartialEq)]
pub struct Expr(Arc<Node>);

/// Alias used where an expression plays the role of a function on the base.
pub type ScalarField = Expr;

/// What went wrong while evaluating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainErrorKind {
    DivisionByZero,
    LogOfNonPositive,
    SqrtOfNegative,
    /// Variable index beyond the supplied point.
    MissingCoordinate,
}

impl fmt::Display for DomainErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DomainErrorKind::DivisionByZero => "division by zero",
            DomainErrorKind::LogOfNonPositive => "log of non-positive value",
            DomainErrorKind::SqrtOfNegative => "sqrt of negative value",
            DomainErrorKind::MissingCoordinate => "coordinate index out of range",
        };
        f.write_str(s)
    }
}

/// Evaluation failure, carrying the offending subexpression.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{kind} in `{subexpr}`")]
pub struct DomainError {
    pub kind: DomainErrorKind,
    pub subexpr: Expr,
}

impl Expr {
    fn from_node(node: Node) -> Self {
        Expr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn constant(c: f64) -> Self {
        Self::from_node(Node::Const(c))
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    pub fn var(index: usize) -> Self {
        Self::from_node(Node::Var(index))
    }

    pub fn as_const(&self) -> Option<f64> {
        match self.node() {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(0.0)
    }

    fn is_one(&self) -> bool {
        self.as_const() == Some(1.0)
    }

    pub fn add(&self, rhs: &Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a + b),
            (Some(0.0), _) => rhs.clone(),
            (_, Some(0.0)) => self.clone(),
            _ => Self::from_node(Node::Add(self.clone(), rhs.clone())),
        }
    }

    pub fn sub(&self, rhs: &Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a - b),
            (Some(0.0), _) => rhs.neg(),
            (_, Some(0.0)) => self.clone(),
            _ => Self::from_node(Node::Sub(self.clone(), rhs.clone())),
        }
    }

    pub fn mul(&self, rhs: &Expr) -> Expr {
        if self.is_zero() || rhs.is_zero() {
            return Expr::zero();
        }
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a * b),
            _ if self.is_one() => rhs.clone(),
            _ if rhs.is_one() => self.clone(),
            _ => Self::from_node(Node::Mul(self.clone(), rhs.clone())),
        }
    }

    pub fn div(&self, rhs: &Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) if b != 0.0 => Expr::constant(a / b),
            (Some(0.0), _) => Expr::zero(),
            _ if rhs.is_one() => self.clone(),
            _ => Self::from_node(Node::Div(self.clone(), rhs.clone())),
        }
    }

    pub fn powi(&self, k: i32) -> Expr {
        if k == 0 {
            return Expr::one();
        }
        if k == 1 {
            return self.clone();
        }
        match self.as_const() {
            Some(c) if !(c == 0.0 && k < 0) => Expr::constant(c.powi(k)),
            _ => Self::from_node(Node::Pow(self.clone(), k)),
        }
    }

    pub fn neg(&self) -> Expr {
        match self.as_const() {
            Some(c) => Expr::constant(-c),
            None => Self::from_node(Node::Neg(self.clone())),
        }
    }

    pub fn sin(&self) -> Expr {
        self.fold_or(f64::sin, Node::Sin)
    }

    pub fn cos(&self) -> Expr {
        self.fold_or(f64::cos, Node::Cos)
    }

    pub fn exp(&self) -> Expr {
        self.fold_or(f64::exp, Node::Exp)
    }

    pub fn ln(&self) -> Expr {
        match self.as_const() {
            Some(c) if c > 0.0 => Expr::constant(c.ln()),
            _ => Self::from_node(Node::Log(self.clone())),
        }
    }

    pub fn sqrt(&self) -> Expr {
        match self.as_const() {
            Some(c) if c >= 0.0 => Expr::constant(c.sqrt()),
            _ => Self::from_node(Node::Sqrt(self.clone())),
        }
    }

    fn fold_or(&self, f: fn(f64) -> f64, wrap: fn(Expr) -> Node) -> Expr {
        match self.as_const() {
            Some(c) => Expr::constant(f(c)),
            None => Self::from_node(wrap(self.clone())),
        }
    }

    /// Sum of a sequence, folding as it goes.
    pub fn sum<'a, I: IntoIterator<Item = &'a Expr>>(terms: I) -> Expr {
        terms.into_iter().fold(Expr::zero(), |acc, t| acc.add(t))
    }

    /// Recursive IEEE evaluation at `point`.
    pub fn eval(&self, point: &[f64]) -> Result<f64, DomainError> {
        let fail = |kind| DomainError {
            kind,
            subexpr: self.clone(),
        };
        Ok(match self.node() {
            Node::Const(c) => *c,
            Node::Var(i) => *point
                .get(*i)
                .ok_or_else(|| fail(DomainErrorKind::MissingCoordinate))?,
            Node::Add(a, b) => a.eval(point)? + b.eval(point)?,
            Node::Sub(a, b) => a.eval(point)? - b.eval(point)?,
            Node::Mul(a, b) => a.eval(point)? * b.eval(point)?,
            Node::Div(a, b) => {
                let den = b.eval(point)?;
                if den == 0.0 {
                    return Err(fail(DomainErrorKind::DivisionByZero));
                }
                a.eval(point)? / den
            }
            Node::Pow(a, k) => {
                let base = a.eval(point)?;
                if base == 0.0 && *k < 0 {
                    return Err(fail(DomainErrorKind::DivisionByZero));
                }
                base.powi(*k)
            }
            Node::Neg(a) => -a.eval(point)?,
            Node::Sin(a) => a.eval(point)?.sin(),
            Node::Cos(a) => a.eval(point)?.cos(),
            Node::Exp(a) => a.eval(point)?.exp(),
            Node::Log(a) => {
                let v = a.eval(point)?;
                if v <= 0.0 {
                    return Err(fail(DomainErrorKind::LogOfNonPositive));
                }
                v.ln()
            }
            Node::Sqrt(a) => {
                let v = a.eval(point)?;
                if v < 0.0 {
                    return Err(fail(DomainErrorKind::SqrtOfNegative));
                }
                v.sqrt()
            }
        })
    }

    /// Exact partial derivative with respect to coordinate `var`.
    pub fn diff(&self, var: usize) -> Expr {
        match self.node() {
            Node::Const(_) => Expr::zero(),
            Node::Var(i) => Expr::constant(if *i == var { 1.0 } else { 0.0 }),
            Node::Add(a, b) => a.diff(var).add(&b.diff(var)),
            Node::Sub(a, b) => a.diff(var).sub(&b.diff(var)),
            Node::Mul(a, b) => a.diff(var).mul(b).add(&a.mul(&b.diff(var))),
            Node::Div(a, b) => {
                // (a'b - ab') / b^2
                let num = a.diff(var).mul(b).sub(&a.mul(&b.diff(var)));
                num.div(&b.powi(2))
            }
            Node::Pow(a, k) => Expr::constant(*k as f64)
                .mul(&a.powi(k - 1))
                .mul(&a.diff(var)),
            Node::Neg(a) => a.diff(var).neg(),
            Node::Sin(a) => a.cos().mul(&a.diff(var)),
            Node::Cos(a) => a.sin().neg().mul(&a.diff(var)),
            Node::Exp(a) => self.mul(&a.diff(var)),
            Node::Log(a) => a.diff(var).div(a),
            Node::Sqrt(a) => a.diff(var).div(&Expr::constant(2.0).mul(self)),
        }
    }

    /// Whether the expression mentions coordinate `var`.
    pub fn depends_on(&self, var: usize) -> bool {
        match self.node() {
            Node::Const(_) => false,
            Node::Var(i) => *i == var,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.depends_on(var) || b.depends_on(var)
            }
            Node::Pow(a, _)
            | Node::Neg(a)
            | Node::Sin(a)
            | Node::Cos(a)
            | Node::Exp(a)
            | Node::Log(a)
            | Node::Sqrt(a) => a.depends_on(var),
        }
    }

    /// Largest coordinate index used, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self.node() {
            Node::Const(_) => None,
            Node::Var(i) => Some(*i),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.max_var().max(b.max_var())
            }
            Node::Pow(a, _)
            | Node::Neg(a)
            | Node::Sin(a)
            | Node::Cos(a)
            | Node::Exp(a)
            | Node::Log(a)
            | Node::Sqrt(a) => a.max_var(),
        }
    }

    /// Rewrites every `Var(i)` as `Var(map(i))`.
    pub fn remap_vars(&self, map: &impl Fn(usize) -> usize) -> Expr {
        let un = |a: &Expr, ctor: fn(&Expr) -> Expr| ctor(&a.remap_vars(map));
        match self.node() {
            Node::Const(_) => self.clone(),
            Node::Var(i) => Expr::var(map(*i)),
            Node::Add(a, b) => a.remap_vars(map).add(&b.remap_vars(map)),
            Node::Sub(a, b) => a.remap_vars(map).sub(&b.remap_vars(map)),
            Node::Mul(a, b) => a.remap_vars(map).mul(&b.remap_vars(map)),
            Node::Div(a, b) => a.remap_vars(map).div(&b.remap_vars(map)),
            Node::Pow(a, k) => a.remap_vars(map).powi(*k),
            Node::Neg(a) => un(a, Expr::neg),
            Node::Sin(a) => un(a, Expr::sin),
            Node::Cos(a) => un(a, Expr::cos),
            Node::Exp(a) => un(a, Expr::exp),
            Node::Log(a) => un(a, Expr::ln),
            Node::Sqrt(a) => un(a, Expr::sqrt),
        }
    }

    /// Renders with the given coordinate names; the output parses back to an equal tree.
    pub fn to_string_with(&self, names: &[impl AsRef<str>]) -> String {
        let names: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
        print::render(self, &|i| {
            names
                .get(i)
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("x{}", i + 1))
        })
    }
}

impl fmt::Display for Expr {
    /// Coordinates print as `x1, x2, ...` when no names are available.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::render(self, &|i| format!("x{}", i + 1)))
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl From<f64> for Expr {
    fn from(c: f64) -> Self {
        Expr::constant(c)
    }
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                Expr::$inner(self, rhs)
            }
        }
        impl std::ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$inner(&self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, mul);
impl_binop!(Div, div, div);

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

/// Central finite difference, used only as a test oracle.
pub fn central_difference(f: &Expr, var: usize, point: &[f64], h: f64) -> Result<f64, DomainError> {
    let mut p = point.to_vec();
    p[var] = point[var] + h;
    let up = f.eval(&p)?;
    p[var] = point[var] - h;
    let down = f.eval(&p)?;
    Ok((up - down) / (2.0 * h))
}
