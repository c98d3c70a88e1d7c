use std::fmt::Write;

use super::SpecDocument;
use crate::expr::Expr;
use crate::space::PathConstraint;

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Or(..) => 1,
        Expr::And(..) => 2,
        Expr::Not(..) => 3,
        Expr::Cmp(..) => 4,
        Expr::Add(..) | Expr::Sub(..) => 5,
        _ => 6,
    }
}

fn child(out: &mut String, e: &Expr, min_prec: u8) {
    if prec(e) < min_prec {
        out.push('(');
        write_expr(out, e);
        out.push(')');
    } else {
        write_expr(out, e);
    }
}

fn write_expr(out: &mut String, e: &Expr) {
    match e {
        Expr::Int(v) => write!(out, "{v}").unwrap(),
        Expr::Var(n) => out.push_str(n),
        Expr::Cap(n) => write!(out, "cap({n})").unwrap(),
        Expr::Sum => out.push_str("sum()"),
        Expr::Min(a, b) | Expr::Max(a, b) => {
            out.push_str(if matches!(e, Expr::Min(..)) { "min(" } else { "max(" });
            write_expr(out, a);
            out.push_str(", ");
            write_expr(out, b);
            out.push(')');
        }
        Expr::Not(a) => {
            out.push_str("not ");
            child(out, a, 6);
        }
        Expr::Cmp(op, a, b) => {
            child(out, a, 5);
            write!(out, " {} ", op.symbol()).unwrap();
            child(out, b, 5);
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::And(a, b) | Expr::Or(a, b) => {
            let p = prec(e);
            let sym = match e {
                Expr::Add(..) => "+",
                Expr::Sub(..) => "-",
                Expr::And(..) => "and",
                _ => "or",
            };
            // Left-associative: only the right operand needs parentheses
            // at equal precedence.
            child(out, a, p);
            write!(out, " {sym} ").unwrap();
            child(out, b, p + 1);
        }
    }
}

/// Renders an expression with the minimum parentheses needed to reparse
/// to the same tree.
pub fn render_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e);
    out
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Canonical source text for a document.
pub fn render(doc: &SpecDocument) -> String {
    let sp = &doc.space;
    let mut out = String::new();
    writeln!(out, "space {} {{", sp.name).unwrap();
    for v in &sp.vars {
        write!(out, "  var {} : 0..{}", v.name, v.capacity).unwrap();
        if let Some(u) = &v.unit {
            write!(out, " unit {}", quote(u)).unwrap();
        }
        out.push_str(";\n");
    }
    for s in &sp.schemas {
        writeln!(out, "  op {}({}) {{", s.name, s.params.join(", ")).unwrap();
        writeln!(out, "    pre: {};", render_expr(&s.precondition)).unwrap();
        let effs: Vec<String> = s
            .effects
            .iter()
            .map(|e| format!("{} := {}", e.slot, render_expr(&e.value)))
            .collect();
        if !effs.is_empty() {
            writeln!(out, "    eff: {}", effs.join("; ")).unwrap();
        }
        out.push_str("  }\n");
    }
    for c in &sp.constraints {
        let name = match c {
            PathConstraint::NoUndo => "no_undo",
            PathConstraint::NoLoopOnPath => "no_loop",
        };
        writeln!(out, "  constraint {name};").unwrap();
    }
    if let Some(f) = &sp.failure {
        writeln!(out, "  failure: {};", render_expr(f)).unwrap();
    }
    out.push_str("}\n");
    for inst in &doc.instances {
        writeln!(out, "\ninstance {} of {} {{", inst.label, inst.space).unwrap();
        let init: Vec<String> = sp
            .vars
            .iter()
            .zip(&inst.init)
            .map(|(v, x)| format!("{} = {x}", v.name))
            .collect();
        writeln!(out, "  init: {};", init.join(", ")).unwrap();
        if let Some(g) = &inst.goal {
            writeln!(out, "  goal: {};", render_expr(g)).unwrap();
        }
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::CmpOp;

    #[test]
    fn minimal_parentheses() {
        let e = Expr::sub(Expr::var("a"), Expr::sub(Expr::cap("b"), Expr::var("b")));
        assert_eq!(render_expr(&Expr::max(Expr::int(0), e)), "max(0, a - (cap(b) - b))");
        let e = Expr::sub(Expr::sub(Expr::var("a"), Expr::var("b")), Expr::var("c"));
        assert_eq!(render_expr(&e), "a - b - c");
        let e = Expr::and(
            Expr::or(
                Expr::eq(Expr::var("a"), Expr::int(0)),
                Expr::eq(Expr::var("b"), Expr::int(0)),
            ),
            Expr::not(Expr::cmp(CmpOp::Lt, Expr::Sum, Expr::int(3))),
        );
        assert_eq!(render_expr(&e), "(a = 0 or b = 0) and not (sum() < 3)");
    }
}
