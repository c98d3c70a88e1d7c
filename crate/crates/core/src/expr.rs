//! Integer and boolean expressions over state variables.
//!
//! [`Expr`] is the named tree produced by the parser and stored in the
//! model. Before evaluation it is compiled against a name scope into
//! index-based [`IntExpr`] / [`BoolExpr`] trees; compilation is also where
//! type checking happens.

use std::fmt;

use thiserror::Error;

/// Maximum nesting depth accepted for any expression tree.
pub const MAX_EXPR_DEPTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }

    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            CmpOp::Eq => lhs == rhs,
            CmpOp::Ne => lhs != rhs,
            CmpOp::Lt => lhs < rhs,
            CmpOp::Le => lhs <= rhs,
            CmpOp::Gt => lhs > rhs,
            CmpOp::Ge => lhs >= rhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExprType {
    Int,
    Bool,
}

impl fmt::Display for ExprType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprType::Int => f.write_str("integer"),
            ExprType::Bool => f.write_str("boolean"),
        }
    }
}

/// Untyped expression tree with names.
///
/// `Var` and `Cap` name either an operator slot or a state variable,
/// depending on where the expression appears.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(i64),
    Var(String),
    Cap(String),
    /// Sum over every state variable of the space.
    Sum,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
    Cmp(CmpOp, Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
}

// Small constructors used by tests and programmatic builders.
#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Int(v)
    }

    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    pub fn cap(name: impl Into<String>) -> Expr {
        Expr::Cap(name.into())
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn min(a: Expr, b: Expr) -> Expr {
        Expr::Min(Box::new(a), Box::new(b))
    }

    pub fn max(a: Expr, b: Expr) -> Expr {
        Expr::Max(Box::new(a), Box::new(b))
    }

    pub fn cmp(op: CmpOp, a: Expr, b: Expr) -> Expr {
        Expr::Cmp(op, Box::new(a), Box::new(b))
    }

    pub fn eq(a: Expr, b: Expr) -> Expr {
        Expr::cmp(CmpOp::Eq, a, b)
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(Box::new(a), Box::new(b))
    }

    pub fn not(a: Expr) -> Expr {
        Expr::Not(Box::new(a))
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Int(_) | Expr::Var(_) | Expr::Cap(_) | Expr::Sum => 1,
            Expr::Not(a) => 1 + a.depth(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Min(a, b)
            | Expr::Max(a, b)
            | Expr::Cmp(_, a, b)
            | Expr::And(a, b)
            | Expr::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Names referenced through `Var` or `Cap`, in first-seen order.
    pub fn references(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_refs(&mut out);
        out
    }

    fn collect_refs<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Var(n) | Expr::Cap(n) => {
                if !out.contains(&n.as_str()) {
                    out.push(n);
                }
            }
            Expr::Int(_) | Expr::Sum => {}
            Expr::Not(a) => a.collect_refs(out),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Min(a, b)
            | Expr::Max(a, b)
            | Expr::Cmp(_, a, b)
            | Expr::And(a, b)
            | Expr::Or(a, b) => {
                a.collect_refs(out);
                b.collect_refs(out);
            }
        }
    }

    /// Type of the expression, without resolving names.
    pub fn type_of(&self) -> Result<ExprType, ExprError> {
        match self {
            Expr::Int(_) | Expr::Var(_) | Expr::Cap(_) | Expr::Sum => Ok(ExprType::Int),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Min(a, b) | Expr::Max(a, b) => {
                expect(a, ExprType::Int)?;
                expect(b, ExprType::Int)?;
                Ok(ExprType::Int)
            }
            Expr::Cmp(_, a, b) => {
                expect(a, ExprType::Int)?;
                expect(b, ExprType::Int)?;
                Ok(ExprType::Bool)
            }
            Expr::And(a, b) | Expr::Or(a, b) => {
                expect(a, ExprType::Bool)?;
                expect(b, ExprType::Bool)?;
                Ok(ExprType::Bool)
            }
            Expr::Not(a) => {
                expect(a, ExprType::Bool)?;
                Ok(ExprType::Bool)
            }
        }
    }
}

fn expect(e: &Expr, want: ExprType) -> Result<(), ExprError> {
    let got = e.type_of()?;
    if got == want {
        Ok(())
    } else {
        Err(ExprError::Type {
            expected: want,
            found: got,
        })
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("expected {expected} expression, found {found}")]
    Type { expected: ExprType, found: ExprType },
    #[error("unknown identifier `{0}`")]
    Unknown(String),
    #[error("expression nesting exceeds {MAX_EXPR_DEPTH}")]
    TooDeep,
}

/// Resolves names to state-variable indices during compilation.
pub trait Scope {
    /// Index of the state variable the name refers to.
    fn resolve(&self, name: &str) -> Option<usize>;
}

impl<F: Fn(&str) -> Option<usize>> Scope for F {
    fn resolve(&self, name: &str) -> Option<usize> {
        self(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntExpr {
    Const(i64),
    Var(usize),
    Sum,
    Add(Box<IntExpr>, Box<IntExpr>),
    Sub(Box<IntExpr>, Box<IntExpr>),
    Min(Box<IntExpr>, Box<IntExpr>),
    Max(Box<IntExpr>, Box<IntExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoolExpr {
    Cmp(CmpOp, IntExpr, IntExpr),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Not(Box<BoolExpr>),
}

impl IntExpr {
    pub fn eval(&self, values: &[u32]) -> i64 {
        match self {
            IntExpr::Const(c) => *c,
            IntExpr::Var(i) => i64::from(values[*i]),
            IntExpr::Sum => values.iter().map(|v| i64::from(*v)).sum(),
            IntExpr::Add(a, b) => a.eval(values) + b.eval(values),
            IntExpr::Sub(a, b) => a.eval(values) - b.eval(values),
            IntExpr::Min(a, b) => a.eval(values).min(b.eval(values)),
            IntExpr::Max(a, b) => a.eval(values).max(b.eval(values)),
        }
    }
}

impl BoolExpr {
    pub fn eval(&self, values: &[u32]) -> bool {
        match self {
            BoolExpr::Cmp(op, a, b) => op.holds(a.eval(values), b.eval(values)),
            BoolExpr::And(a, b) => a.eval(values) && b.eval(values),
            BoolExpr::Or(a, b) => a.eval(values) || b.eval(values),
            BoolExpr::Not(a) => !a.eval(values),
        }
    }
}

/// Compiles `expr` as an integer expression.
///
/// `caps` supplies the capacity of each variable index so that `cap(x)`
/// folds to a constant.
pub fn compile_int(expr: &Expr, scope: &dyn Scope, caps: &[u32]) -> Result<IntExpr, ExprError> {
    if expr.depth() > MAX_EXPR_DEPTH {
        return Err(ExprError::TooDeep);
    }
    expect(expr, ExprType::Int)?;
    int_node(expr, scope, caps)
}

/// Compiles `expr` as a boolean expression.
pub fn compile_bool(expr: &Expr, scope: &dyn Scope, caps: &[u32]) -> Result<BoolExpr, ExprError> {
    if expr.depth() > MAX_EXPR_DEPTH {
        return Err(ExprError::TooDeep);
    }
    expect(expr, ExprType::Bool)?;
    bool_node(expr, scope, caps)
}

fn lookup(scope: &dyn Scope, name: &str) -> Result<usize, ExprError> {
    scope.resolve(name).ok_or_else(|| ExprError::Unknown(name.to_string()))
}

fn int_node(e: &Expr, scope: &dyn Scope, caps: &[u32]) -> Result<IntExpr, ExprError> {
    let bin = |a: &Expr, b: &Expr| -> Result<(Box<IntExpr>, Box<IntExpr>), ExprError> {
        Ok((Box::new(int_node(a, scope, caps)?), Box::new(int_node(b, scope, caps)?)))
    };
    Ok(match e {
        Expr::Int(v) => IntExpr::Const(*v),
        Expr::Var(n) => IntExpr::Var(lookup(scope, n)?),
        Expr::Cap(n) => IntExpr::Const(i64::from(caps[lookup(scope, n)?])),
        Expr::Sum => IntExpr::Sum,
        Expr::Add(a, b) => {
            let (a, b) = bin(a, b)?;
            IntExpr::Add(a, b)
        }
        Expr::Sub(a, b) => {
            let (a, b) = bin(a, b)?;
            IntExpr::Sub(a, b)
        }
        Expr::Min(a, b) => {
            let (a, b) = bin(a, b)?;
            IntExpr::Min(a, b)
        }
        Expr::Max(a, b) => {
            let (a, b) = bin(a, b)?;
            IntExpr::Max(a, b)
        }
        other => {
            return Err(ExprError::Type {
                expected: ExprType::Int,
                found: other.type_of()?,
            })
        }
    })
}

fn bool_node(e: &Expr, scope: &dyn Scope, caps: &[u32]) -> Result<BoolExpr, ExprError> {
    Ok(match e {
        Expr::Cmp(op, a, b) => BoolExpr::Cmp(*op, int_node(a, scope, caps)?, int_node(b, scope, caps)?),
        Expr::And(a, b) => BoolExpr::And(
            Box::new(bool_node(a, scope, caps)?),
            Box::new(bool_node(b, scope, caps)?),
        ),
        Expr::Or(a, b) => BoolExpr::Or(
            Box::new(bool_node(a, scope, caps)?),
            Box::new(bool_node(b, scope, caps)?),
        ),
        Expr::Not(a) => BoolExpr::Not(Box::new(bool_node(a, scope, caps)?)),
        other => {
            return Err(ExprError::Type {
                expected: ExprType::Bool,
                found: other.type_of()?,
            })
        }
    })
}
