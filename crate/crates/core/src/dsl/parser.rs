use std::collections::{BTreeSet, HashSet};

use super::lexer::{tokenize, Tok, Token};
use super::{Diagnostic, DiagnosticKind, InstanceDecl, SourceSpans, SpaceDecl, Span, SpecDocument};
use crate::expr::{CmpOp, Expr, ExprError, ExprType, MAX_EXPR_DEPTH};
use crate::space::{Effect, ModelError, OperatorSchema, PathConstraint, VarSpec};

/// Guards the recursive descent against pathological nesting before the
/// depth check proper runs on the finished tree.
const MAX_NESTING: usize = 2 * MAX_EXPR_DEPTH;

const RESERVED: &[&str] = &["and", "or", "not", "cap", "sum", "min", "max"];

/// Parses a `.pspace` document.
/// An expression, the names it mentions, and where it starts.
type ParsedExpr = (Expr, Vec<(String, Span)>, Span);

pub fn parse(src: &str) -> Result<SpecDocument, Diagnostic> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        nesting: 0,
        refs: Vec::new(),
        spans: SourceSpans::default(),
    };
    p.document()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    nesting: usize,
    /// Names referenced by the expression currently being parsed.
    refs: Vec<(String, Span)>,
    spans: SourceSpans,
}

fn diag(kind: DiagnosticKind, span: Span, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(kind, span, msg)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Diagnostic {
        diag(
            DiagnosticKind::Syntax,
            self.span(),
            format!("expected {wanted}, found {}", self.peek().describe()),
        )
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<Span, Diagnostic> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<Span, Diagnostic> {
        if self.is_keyword(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Span), Diagnostic> {
        match self.peek().clone() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                let span = self.bump().span;
                Ok((s, span))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn int(&mut self, what: &str) -> Result<(i64, Span), Diagnostic> {
        match *self.peek() {
            Tok::Int(v) => {
                let span = self.bump().span;
                Ok((v, span))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn document(&mut self) -> Result<SpecDocument, Diagnostic> {
        let space = self.space()?;
        let mut instances = Vec::new();
        let mut labels = HashSet::new();
        while *self.peek() != Tok::Eof {
            if self.is_keyword("space") {
                return Err(diag(
                    DiagnosticKind::Structure,
                    self.span(),
                    "a document declares exactly one space",
                ));
            }
            let (inst, span) = self.instance(&space)?;
            if !labels.insert(inst.label.clone()) {
                return Err(diag(
                    DiagnosticKind::Structure,
                    span,
                    format!("duplicate instance `{}`", inst.label),
                ));
            }
            instances.push(inst);
        }
        Ok(SpecDocument {
            space,
            instances,
            spans: std::mem::take(&mut self.spans),
        })
    }

    fn space(&mut self) -> Result<SpaceDecl, Diagnostic> {
        self.keyword("space")?;
        let (name, name_span) = self.ident("space name")?;
        self.spans.0.insert("space".into(), name_span);
        self.expect(Tok::LBrace, "`{`")?;

        let mut vars: Vec<VarSpec> = Vec::new();
        let mut schemas: Vec<OperatorSchema> = Vec::new();
        let mut constraints = BTreeSet::new();
        let mut failure: Option<ParsedExpr> = None;

        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Ident(kw) if kw == "var" => {
                    self.bump();
                    let var = self.var_decl(&vars)?;
                    vars.push(var);
                }
                Tok::Ident(kw) if kw == "op" => {
                    self.bump();
                    let schema = self.op_decl(&schemas)?;
                    schemas.push(schema);
                }
                Tok::Ident(kw) if kw == "constraint" => {
                    self.bump();
                    let span = self.span();
                    let (c, _) = self.ident("`no_undo` or `no_loop`")?;
                    let c = match c.as_str() {
                        "no_undo" => PathConstraint::NoUndo,
                        "no_loop" => PathConstraint::NoLoopOnPath,
                        other => {
                            return Err(diag(
                                DiagnosticKind::Syntax,
                                span,
                                format!("unknown path constraint `{other}`; expected `no_undo` or `no_loop`"),
                            ))
                        }
                    };
                    if !constraints.insert(c) {
                        return Err(diag(DiagnosticKind::Structure, span, "duplicate path constraint"));
                    }
                    self.expect(Tok::Semi, "`;`")?;
                }
                Tok::Ident(kw) if kw == "failure" => {
                    let span = self.bump().span;
                    if failure.is_some() {
                        return Err(diag(DiagnosticKind::Structure, span, "duplicate failure predicate"));
                    }
                    self.expect(Tok::Colon, "`:`")?;
                    let (e, refs, espan) = self.top_expr(ExprType::Bool)?;
                    self.spans.0.insert("failure".into(), espan);
                    failure = Some((e, refs, espan));
                    self.expect(Tok::Semi, "`;`")?;
                }
                _ => return Err(self.unexpected("`var`, `op`, `constraint`, `failure` or `}`")),
            }
        }

        if vars.is_empty() {
            return Err(diag(
                DiagnosticKind::Structure,
                name_span,
                "space declares no variables",
            ));
        }
        if schemas.is_empty() {
            return Err(diag(
                DiagnosticKind::Structure,
                name_span,
                "space declares no operators",
            ));
        }
        let failure = match failure {
            Some((e, refs, _)) => {
                resolve_refs(&refs, |n| vars.iter().any(|v| v.name == n), "state variable")?;
                Some(e)
            }
            None => None,
        };
        let decl = SpaceDecl {
            name,
            vars,
            schemas,
            constraints,
            failure,
        };
        decl.build().map_err(|e| self.model_error(e, name_span))?;
        Ok(decl)
    }

    fn model_error(&self, e: ModelError, fallback: Span) -> Diagnostic {
        let (kind, key) = match &e {
            ModelError::UndeclaredSlot { schema, .. } => (DiagnosticKind::UnknownIdentifier, format!("op:{schema}")),
            ModelError::DoubleAssignment { schema, .. } | ModelError::Arity { schema, .. } => {
                (DiagnosticKind::Structure, format!("op:{schema}"))
            }
            ModelError::Expr {
                source: ExprError::Type { .. },
                ..
            } => (DiagnosticKind::Type, String::new()),
            ModelError::Expr {
                source: ExprError::Unknown(_),
                ..
            } => (DiagnosticKind::UnknownIdentifier, String::new()),
            ModelError::Bounds { .. } | ModelError::Width { .. } => (DiagnosticKind::Bounds, String::new()),
            _ => (DiagnosticKind::Structure, String::new()),
        };
        diag(kind, self.spans.get(&key).unwrap_or(fallback), e.to_string())
    }

    fn var_decl(&mut self, existing: &[VarSpec]) -> Result<VarSpec, Diagnostic> {
        let (name, span) = self.ident("variable name")?;
        if existing.iter().any(|v| v.name == name) {
            return Err(diag(
                DiagnosticKind::Structure,
                span,
                format!("duplicate variable `{name}`"),
            ));
        }
        self.expect(Tok::Colon, "`:`")?;
        let (lo, lo_span) = self.int("lower bound `0`")?;
        if lo != 0 {
            return Err(diag(DiagnosticKind::Bounds, lo_span, "variable ranges must start at 0"));
        }
        self.expect(Tok::DotDot, "`..`")?;
        let (hi, hi_span) = self.int("capacity")?;
        let capacity = u32::try_from(hi).map_err(|_| {
            diag(
                DiagnosticKind::Bounds,
                hi_span,
                format!("capacity {hi} is out of range"),
            )
        })?;
        let mut var = VarSpec::new(name.clone(), capacity);
        if self.is_keyword("unit") {
            self.bump();
            match self.peek().clone() {
                Tok::Str(s) => {
                    self.bump();
                    var.unit = Some(s);
                }
                _ => return Err(self.unexpected("unit string")),
            }
        }
        self.expect(Tok::Semi, "`;`")?;
        self.spans.0.insert(format!("var:{name}"), span);
        Ok(var)
    }

    fn op_decl(&mut self, existing: &[OperatorSchema]) -> Result<OperatorSchema, Diagnostic> {
        let (name, span) = self.ident("operator name")?;
        if existing.iter().any(|s| s.name == name) {
            return Err(diag(
                DiagnosticKind::Structure,
                span,
                format!("duplicate operator `{name}`"),
            ));
        }
        self.spans.0.insert(format!("op:{name}"), span);
        self.expect(Tok::LParen, "`(`")?;
        let mut params: Vec<String> = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                let (p, pspan) = self.ident("slot name")?;
                if params.contains(&p) {
                    return Err(diag(DiagnosticKind::Structure, pspan, format!("duplicate slot `{p}`")));
                }
                params.push(p);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, "`)`")?;
        self.expect(Tok::LBrace, "`{`")?;
        let is_slot = |n: &str| params.iter().any(|p| p == n);

        self.keyword("pre")?;
        self.expect(Tok::Colon, "`:`")?;
        let (precondition, refs, _) = self.top_expr(ExprType::Bool)?;
        resolve_refs(&refs, is_slot, "slot")?;
        self.expect(Tok::Semi, "`;`")?;

        let mut effects: Vec<Effect> = Vec::new();
        if self.is_keyword("eff") {
            self.bump();
            self.expect(Tok::Colon, "`:`")?;
            loop {
                let (slot, sspan) = self.ident("slot name")?;
                if !is_slot(&slot) {
                    return Err(diag(
                        DiagnosticKind::UnknownIdentifier,
                        sspan,
                        format!("`{slot}` is not a slot of operator `{name}`"),
                    ));
                }
                if effects.iter().any(|e| e.slot == slot) {
                    return Err(diag(
                        DiagnosticKind::Structure,
                        sspan,
                        format!("slot `{slot}` is assigned more than once"),
                    ));
                }
                self.expect(Tok::Assign, "`:=`")?;
                let (value, refs, _) = self.top_expr(ExprType::Int)?;
                resolve_refs(&refs, is_slot, "slot")?;
                effects.push(Effect { slot, value });
                if !self.eat(&Tok::Semi) || *self.peek() == Tok::RBrace {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace, "`}`")?;
        self.eat(&Tok::Semi);
        Ok(OperatorSchema {
            name,
            params,
            precondition,
            effects,
        })
    }

    fn instance(&mut self, space: &SpaceDecl) -> Result<(InstanceDecl, Span), Diagnostic> {
        self.keyword("instance")?;
        let (label, span) = self.ident("instance name")?;
        self.keyword("of")?;
        let (of, of_span) = self.ident("space name")?;
        if of != space.name {
            return Err(diag(
                DiagnosticKind::UnknownIdentifier,
                of_span,
                format!("unknown space `{of}`"),
            ));
        }
        self.spans.0.insert(format!("instance:{label}"), span);
        self.expect(Tok::LBrace, "`{`")?;
        let mut init = vec![0u32; space.vars.len()];
        let mut seen_init = false;
        let mut goal = None;
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Ident(kw) if kw == "init" => {
                    let kspan = self.bump().span;
                    if seen_init {
                        return Err(diag(DiagnosticKind::Structure, kspan, "duplicate `init`"));
                    }
                    seen_init = true;
                    self.expect(Tok::Colon, "`:`")?;
                    let mut assigned = HashSet::new();
                    if *self.peek() != Tok::Semi {
                        loop {
                            let (var, vspan) = self.ident("variable name")?;
                            let idx = space.vars.iter().position(|v| v.name == var).ok_or_else(|| {
                                diag(
                                    DiagnosticKind::UnknownIdentifier,
                                    vspan,
                                    format!("unknown variable `{var}`"),
                                )
                            })?;
                            if !assigned.insert(idx) {
                                return Err(diag(
                                    DiagnosticKind::Structure,
                                    vspan,
                                    format!("`{var}` is initialised more than once"),
                                ));
                            }
                            self.expect(Tok::Eq, "`=`")?;
                            let (v, sp) = self.int("initial value")?;
                            let cap = space.vars[idx].capacity;
                            if v < 0 || v > i64::from(cap) {
                                return Err(diag(
                                    DiagnosticKind::Bounds,
                                    sp,
                                    format!("initial value {v} of `{var}` exceeds its capacity {cap}"),
                                ));
                            }
                            init[idx] = v as u32;
                            if !self.eat(&Tok::Comma) {
                                break;
                            }
                        }
                    }
                    self.expect(Tok::Semi, "`;`")?;
                }
                Tok::Ident(kw) if kw == "goal" => {
                    let kspan = self.bump().span;
                    if goal.is_some() {
                        return Err(diag(DiagnosticKind::Structure, kspan, "duplicate `goal`"));
                    }
                    self.expect(Tok::Colon, "`:`")?;
                    let (e, refs, espan) = self.top_expr(ExprType::Bool)?;
                    resolve_refs(&refs, |n| space.vars.iter().any(|v| v.name == n), "state variable")?;
                    self.spans.0.insert(format!("goal:{label}"), espan);
                    goal = Some(e);
                    self.expect(Tok::Semi, "`;`")?;
                }
                _ => return Err(self.unexpected("`init`, `goal` or `}`")),
            }
        }
        Ok((
            InstanceDecl {
                label,
                space: of,
                init,
                goal,
            },
            span,
        ))
    }

    /// Parses a full expression and checks its type and depth.
    fn top_expr(&mut self, want: ExprType) -> Result<ParsedExpr, Diagnostic> {
        self.refs.clear();
        let span = self.span();
        let e = self.or_expr()?;
        if e.depth() > MAX_EXPR_DEPTH {
            return Err(diag(
                DiagnosticKind::Structure,
                span,
                format!("expression nesting exceeds {MAX_EXPR_DEPTH}"),
            ));
        }
        check_type(&e, want, span)?;
        Ok((e, std::mem::take(&mut self.refs), span))
    }

    fn enter(&mut self) -> Result<(), Diagnostic> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            Err(diag(
                DiagnosticKind::Structure,
                self.span(),
                format!("expression nesting exceeds {MAX_EXPR_DEPTH}"),
            ))
        } else {
            Ok(())
        }
    }

    fn or_expr(&mut self) -> Result<Expr, Diagnostic> {
        self.enter()?;
        let mut lhs = self.and_expr()?;
        while self.is_keyword("or") {
            self.bump();
            lhs = Expr::or(lhs, self.and_expr()?);
        }
        self.nesting -= 1;
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.not_expr()?;
        while self.is_keyword("and") {
            self.bump();
            lhs = Expr::and(lhs, self.not_expr()?);
        }
        Ok(lhs)
    }

    fn not_expr(&mut self) -> Result<Expr, Diagnostic> {
        if self.is_keyword("not") {
            self.bump();
            self.enter()?;
            let inner = self.not_expr()?;
            self.nesting -= 1;
            return Ok(Expr::not(inner));
        }
        self.cmp_expr()
    }

    fn cmp_expr(&mut self) -> Result<Expr, Diagnostic> {
        let lhs = self.add_expr()?;
        let op = match self.peek() {
            Tok::Eq => CmpOp::Eq,
            Tok::Ne => CmpOp::Ne,
            Tok::Lt => CmpOp::Lt,
            Tok::Le => CmpOp::Le,
            Tok::Gt => CmpOp::Gt,
            Tok::Ge => CmpOp::Ge,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.add_expr()?;
        if matches!(self.peek(), Tok::Eq | Tok::Ne | Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge) {
            return Err(diag(
                DiagnosticKind::Syntax,
                self.span(),
                "comparisons do not chain; use `and`",
            ));
        }
        Ok(Expr::cmp(op, lhs, rhs))
    }

    fn add_expr(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.atom()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::add(lhs, self.atom()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::sub(lhs, self.atom()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, Diagnostic> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::Int(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.or_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "cap" => {
                        self.expect(Tok::LParen, "`(`")?;
                        let (n, nspan) = self.ident("variable or slot name")?;
                        self.refs.push((n.clone(), nspan));
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Expr::Cap(n))
                    }
                    "sum" => {
                        self.expect(Tok::LParen, "`(`")?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Expr::Sum)
                    }
                    "min" | "max" => {
                        self.expect(Tok::LParen, "`(`")?;
                        self.enter()?;
                        let a = self.or_expr()?;
                        self.expect(Tok::Comma, "`,`")?;
                        let b = self.or_expr()?;
                        self.nesting -= 1;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(if name == "min" {
                            Expr::min(a, b)
                        } else {
                            Expr::max(a, b)
                        })
                    }
                    "and" | "or" | "not" => Err(diag(
                        DiagnosticKind::Syntax,
                        span,
                        format!("expected an operand, found `{name}`"),
                    )),
                    _ => {
                        self.refs.push((name.clone(), span));
                        Ok(Expr::Var(name))
                    }
                }
            }
            _ => Err(self.unexpected("an operand")),
        }
    }
}

fn resolve_refs(refs: &[(String, Span)], known: impl Fn(&str) -> bool, what: &str) -> Result<(), Diagnostic> {
    for (name, span) in refs {
        if !known(name) {
            return Err(diag(
                DiagnosticKind::UnknownIdentifier,
                *span,
                format!("unknown {what} `{name}`"),
            ));
        }
    }
    Ok(())
}

fn check_type(e: &Expr, want: ExprType, span: Span) -> Result<(), Diagnostic> {
    let found = e
        .type_of()
        .map_err(|err| diag(DiagnosticKind::Type, span, err.to_string()))?;
    if found != want {
        return Err(diag(
            DiagnosticKind::Type,
            span,
            format!("expected {want} expression, found {found}"),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "space s {\n  var a : 0..4;\n  var b : 0..9 unit \"quart\";\n  op fill(x) {\n    pre: x < cap(x);\n    eff: x := cap(x)\n  }\n}\ninstance i of s {\n  init: a = 1;\n  goal: a = 2 or b = 6;\n}\n";

    #[test]
    fn parses_small_document() {
        let doc = parse(SMALL).unwrap();
        assert_eq!(doc.space.vars.len(), 2);
        assert_eq!(doc.space.vars[1].unit.as_deref(), Some("quart"));
        assert_eq!(doc.instances[0].init, vec![1, 0]);
        assert_eq!(
            doc.instances[0].goal,
            Some(Expr::or(
                Expr::eq(Expr::var("a"), Expr::int(2)),
                Expr::eq(Expr::var("b"), Expr::int(6))
            ))
        );
    }

    #[test]
    fn precedence() {
        let src = SMALL.replace("a = 2 or b = 6", "not a = 1 and b - 1 + a >= 2 or a = 0");
        let goal = parse(&src).unwrap().instances[0].goal.clone().unwrap();
        let lhs = Expr::and(
            Expr::not(Expr::eq(Expr::var("a"), Expr::int(1))),
            Expr::cmp(
                CmpOp::Ge,
                Expr::add(Expr::sub(Expr::var("b"), Expr::int(1)), Expr::var("a")),
                Expr::int(2),
            ),
        );
        assert_eq!(goal, Expr::or(lhs, Expr::eq(Expr::var("a"), Expr::int(0))));
    }

    fn err(src: &str) -> Diagnostic {
        parse(src).unwrap_err()
    }

    #[test]
    fn bounds_error_on_initial_value() {
        let d = err(&SMALL.replace("a = 1;", "a = 7;"));
        assert_eq!(d.kind, DiagnosticKind::Bounds);
        assert_eq!(d.span.line, 10);
    }

    #[test]
    fn unknown_identifier_located() {
        let d = err(&SMALL.replace("b = 6", "c = 6"));
        assert_eq!(d.kind, DiagnosticKind::UnknownIdentifier);
        assert_eq!((d.span.line, d.span.col), (11, 18));
    }

    #[test]
    fn type_error() {
        let d = err(&SMALL.replace("x := cap(x)", "x := x > 1"));
        assert_eq!(d.kind, DiagnosticKind::Type);
    }

    #[test]
    fn fractional_rejected() {
        let d = err(&SMALL.replace("0..9", "0..9.5"));
        assert_eq!(d.kind, DiagnosticKind::Bounds);
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(err("space").kind, DiagnosticKind::Syntax);
        assert_eq!(err(&SMALL.replace("pre:", "pre")).kind, DiagnosticKind::Syntax);
        assert_eq!(
            err(&SMALL.replace("a = 2 or", "a = 2 = 3 or")).kind,
            DiagnosticKind::Syntax
        );
        assert_eq!(err("").kind, DiagnosticKind::Syntax);
    }

    #[test]
    fn structural_errors() {
        assert_eq!(err(&SMALL.replace("var b", "var a")).kind, DiagnosticKind::Structure);
        let no_ops = "space s { var a : 0..1; }";
        assert_eq!(err(no_ops).kind, DiagnosticKind::Structure);
    }

    #[test]
    fn deep_nesting_is_a_diagnostic() {
        let deep = format!("{}a{}", "(".repeat(5000), ")".repeat(5000));
        let d = err(&SMALL.replace("a = 2 or b = 6", &format!("{deep} = 1")));
        assert_eq!(d.kind, DiagnosticKind::Structure);
        let long = vec!["a"; 100].join(" + ");
        let d = err(&SMALL.replace("a = 2 or b = 6", &format!("{long} = 1")));
        assert_eq!(d.kind, DiagnosticKind::Structure);
    }
}
