//! The `.sulva` construction-script language.
//!
//! ```text
//! program  := stmt* ;
//! stmt     := "let" IDENT "=" expr ";"
//!           | "assert" relation ";"
//!           | "emit" IDENT ("," IDENT)* ";" ;
//! relation := expr ("==" | "<" | ">") expr ;
//! expr     := literal | IDENT | NAME "(" [expr ("," expr)*] ")" ;
//! literal  := ["-"] NUMBER ["/" NUMBER] ;      NUMBER := digits ["." digits]
//! ```
//!
//! `#` starts a comment running to the end of the line. Literals are exact:
//! `0.25` is `1/4`. Callable names are listed in [`vocab`].

mod ast;
mod eval;
mod format;
mod lexer;
mod parser;
pub mod vocab;

use std::fmt;

use serde::Serialize;

pub use ast::{Expr, ExprKind, Pos, Relation, Script, Stmt, StmtKind};
pub use eval::{evaluate, AssertionResult, Construction, Evaluation, Value, ASSERTION_REPORT_BITS};
pub use format::{format, format_expr, format_literal};
pub use parser::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub line: u32,
    pub column: u32,
}

impl Diagnostic {
    pub fn error(pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            message: message.into(),
            line: pos.line,
            column: pos.column,
        }
    }

    pub fn warning(pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            ..Diagnostic::error(pos, message)
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {sev}: {}", self.line, self.column, self.message)
    }
}

/// Parses and evaluates `src`; parse diagnostics stop before evaluation.
pub fn run(src: &str) -> Result<Evaluation, Vec<Diagnostic>> {
    parse(src).map(|s| evaluate(&s))
}
