//! Canonical printer: one statement per line, `name(arg, arg)` calls, reduced
//! rational literals, comments dropped.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::One;

use super::ast::{Expr, ExprKind, Script, StmtKind};

pub fn format_literal(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_expr(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e);
    s
}

fn write_expr(out: &mut String, e: &Expr) {
    match &e.kind {
        ExprKind::Literal(q) => out.push_str(&format_literal(q)),
        ExprKind::Ident(name) => out.push_str(name),
        ExprKind::Call { name, args } => {
            out.push_str(name);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(out, a);
            }
            out.push(')');
        }
    }
}

pub fn format(script: &Script) -> String {
    let mut out = String::new();
    for stmt in &script.stmts {
        match &stmt.kind {
            StmtKind::Let { name, value, .. } => {
                let _ = writeln!(out, "let {name} = {};", format_expr(value));
            }
            StmtKind::Assert { lhs, rel, rhs } => {
                let _ = writeln!(
                    out,
                    "assert {} {} {};",
                    format_expr(lhs),
                    rel.as_str(),
                    format_expr(rhs)
                );
            }
            StmtKind::Emit { names } => {
                let list: Vec<&str> = names.iter().map(|(n, _)| n.as_str()).collect();
                let _ = writeln!(out, "emit {};", list.join(", "));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn normalizes_literals_and_spacing() {
        let s =
            parse("let  a=0.25 ;let b = mul( a ,  -6/4 );  # c\nassert b<0; emit a,b;").unwrap();
        assert_eq!(
            format(&s),
            "let a = 1/4;\nlet b = mul(a, -3/2);\nassert b < 0;\nemit a, b;\n"
        );
    }

    #[test]
    fn round_trip_preserves_structure_and_order() {
        let src = "let z = 3;  let a = hypotenuse(z,4);\n\n assert a == 5; emit a, z;";
        let s = parse(src).unwrap();
        let again = parse(&format(&s)).unwrap();
        assert!(again.structurally_eq(&s));
        assert_ne!(again, s, "positions differ after reformatting");
    }
}
