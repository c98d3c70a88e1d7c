//! The `.pspace` specification language.
//!
//! ```text
//! space water_jugs {
//!   var j4 : 0..4 unit "quart";
//!   var j9 : 0..9;
//!   op fill(a) {
//!     pre: a < cap(a);
//!     eff: a := cap(a)
//!   }
//!   constraint no_undo;
//!   failure: j4 = 0 and j9 = 0;
//! }
//!
//! instance f_4_9_to_6 of water_jugs {
//!   init: j4 = 0, j9 = 0;
//!   goal: j4 = 6 or j9 = 6;
//! }
//! ```
//!
//! Grammar (EBNF):
//!
//! ```text
//! document   = space { instance } ;
//! space      = "space" id "{" { var | op | constraint | failure } "}" ;
//! var        = "var" id ":" int ".." int [ "unit" string ] ";" ;
//! op         = "op" id "(" [ id { "," id } ] ")" "{" "pre" ":" bexpr ";"
//!              [ "eff" ":" effect { ";" effect } [ ";" ] ] "}" [ ";" ] ;
//! effect     = id ":=" iexpr ;
//! constraint = "constraint" ( "no_undo" | "no_loop" ) ";" ;
//! failure    = "failure" ":" bexpr ";" ;
//! instance   = "instance" id "of" id "{" [ "init" ":" [ id "=" int { "," id "=" int } ] ";" ]
//!              [ "goal" ":" bexpr ";" ] "}" ;
//! bexpr      = and { "or" and } ;   and = not { "and" not } ;
//! not        = "not" not | cmp ;     cmp = iexpr [ cmpop iexpr ] ;
//! iexpr      = atom { ( "+" | "-" ) atom } ;
//! atom       = int | id | "cap" "(" id ")" | "sum" "(" ")"
//!            | ( "min" | "max" ) "(" iexpr "," iexpr ")" | "(" bexpr ")" ;
//! cmpop      = "=" | "!=" | "<" | "<=" | ">" | ">=" | "≠" | "≤" | "≥" ;
//! ```
//!
//! Ranges must start at 0. Variables missing from `init` start at 0.

mod lexer;
mod parser;
mod render;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::expr::Expr;
use crate::space::{ModelError, OperatorSchema, PathConstraint, ProblemInstance, ProblemSpace, StateVector, VarSpec};

pub use parser::parse;
pub use render::{render, render_expr};
pub use validate::{usable, validate, Finding, FindingKind, Severity, BRUTE_FORCE_LIMIT};

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    Syntax,
    UnknownIdentifier,
    Type,
    Bounds,
    Structure,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::UnknownIdentifier => "unknown identifier",
            DiagnosticKind::Type => "type error",
            DiagnosticKind::Bounds => "bounds error",
            DiagnosticKind::Structure => "structural error",
        })
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{span}: {kind}: {message}")]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub span: Span,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            span,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDecl {
    pub name: String,
    pub vars: Vec<VarSpec>,
    pub schemas: Vec<OperatorSchema>,
    pub constraints: BTreeSet<PathConstraint>,
    pub failure: Option<Expr>,
}

impl SpaceDecl {
    pub fn build(&self) -> Result<ProblemSpace, ModelError> {
        ProblemSpace::new(
            self.name.clone(),
            self.vars.clone(),
            self.schemas.clone(),
            self.constraints.clone(),
            self.failure.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDecl {
    pub label: String,
    pub space: String,
    /// One value per space variable, in declaration order.
    pub init: Vec<u32>,
    pub goal: Option<Expr>,
}

/// Where things were declared, for diagnostics. Keys look like
/// `var:j4`, `op:pour`, `failure`, `instance:f_4_9_to_6`, `goal:f_4_9_to_6`.
#[derive(Clone, Debug, Default)]
pub struct SourceSpans(pub BTreeMap<String, Span>);

impl SourceSpans {
    pub fn get(&self, key: &str) -> Option<Span> {
        self.0.get(key).copied()
    }
}

#[derive(Clone, Debug)]
pub struct SpecDocument {
    pub space: SpaceDecl,
    pub instances: Vec<InstanceDecl>,
    pub spans: SourceSpans,
}

// Spans are diagnostics metadata; two documents are equal when their
// structure is.
impl PartialEq for SpecDocument {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.instances == other.instances
    }
}

impl Eq for SpecDocument {}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("instance `{0}` has no goal")]
    NoGoal(String),
    #[error("no instance named `{0}`")]
    NoSuchInstance(String),
    #[error("document declares no instances")]
    NoInstances,
}

impl SpecDocument {
    pub fn new(space: SpaceDecl, instances: Vec<InstanceDecl>) -> Self {
        SpecDocument {
            space,
            instances,
            spans: SourceSpans::default(),
        }
    }

    pub fn build_space(&self) -> Result<Arc<ProblemSpace>, BuildError> {
        Ok(Arc::new(self.space.build()?))
    }

    fn build_one(&self, space: &Arc<ProblemSpace>, decl: &InstanceDecl) -> Result<ProblemInstance, BuildError> {
        let goal = decl
            .goal
            .clone()
            .ok_or_else(|| BuildError::NoGoal(decl.label.clone()))?;
        Ok(ProblemInstance::new(
            decl.label.clone(),
            Arc::clone(space),
            StateVector(decl.init.clone()),
            goal,
        )?)
    }

    /// All instances, sharing one built space.
    pub fn build_instances(&self) -> Result<Vec<ProblemInstance>, BuildError> {
        let space = self.build_space()?;
        self.instances.iter().map(|d| self.build_one(&space, d)).collect()
    }

    /// The named instance, or the first one when `label` is `None`.
    pub fn instance(&self, label: Option<&str>) -> Result<ProblemInstance, BuildError> {
        let decl = match label {
            Some(l) => self
                .instances
                .iter()
                .find(|i| i.label == l)
                .ok_or_else(|| BuildError::NoSuchInstance(l.to_string()))?,
            None => self.instances.first().ok_or(BuildError::NoInstances)?,
        };
        self.build_one(&self.build_space()?, decl)
    }
}
