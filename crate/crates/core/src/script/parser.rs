//! Recursive-descent parser with statement-level error recovery, followed by a
//! name-resolution pass. Both passes report every problem they find.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ast::{Expr, ExprKind, Pos, Relation, Script, Stmt, StmtKind};
use super::lexer::{lex, Tok, Token};
use super::vocab;
use super::Diagnostic;

struct Parser {
    toks: Vec<Token>,
    i: usize,
    diags: Vec<Diagnostic>,
}

type PResult<T> = Result<T, ()>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.i]
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.i + 1).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if t.tok != Tok::Eof {
            self.i += 1;
        }
        t
    }

    fn fail<T>(&mut self, expected: &str) -> PResult<T> {
        let t = self.peek();
        let msg = format!("expected {expected}, found {}", t.tok.describe());
        self.diags.push(Diagnostic::error(t.pos, msg));
        Err(())
    }

    fn expect(&mut self, tok: Tok) -> PResult<Token> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            self.fail(&tok.describe())
        }
    }

    fn ident(&mut self) -> PResult<(String, Pos)> {
        match self.peek().tok.clone() {
            Tok::Ident(name) => {
                let pos = self.bump().pos;
                Ok((name, pos))
            }
            _ => self.fail("an identifier"),
        }
    }

    /// Skips to just past the next `;`, or to the next statement keyword.
    fn recover(&mut self) {
        loop {
            match self.peek().tok {
                Tok::Eof | Tok::Let | Tok::Assert | Tok::Emit => return,
                Tok::Semi => {
                    self.bump();
                    return;
                }
                _ => {
                    self.bump();
                }
            }
        }
    }

    fn program(&mut self) -> Script {
        let mut stmts = Vec::new();
        while self.peek().tok != Tok::Eof {
            let start = self.i;
            match self.stmt() {
                Ok(s) => stmts.push(s),
                Err(()) => {
                    if self.i == start {
                        self.bump();
                    }
                    self.recover();
                }
            }
        }
        Script { stmts }
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let pos = self.peek().pos;
        let kind = match self.peek().tok {
            Tok::Let => {
                self.bump();
                let (name, name_pos) = self.ident()?;
                self.expect(Tok::Assign)?;
                let value = self.expr()?;
                StmtKind::Let {
                    name,
                    name_pos,
                    value,
                }
            }
            Tok::Assert => {
                self.bump();
                let lhs = self.expr()?;
                let rel = match self.peek().tok {
                    Tok::EqEq => Relation::Eq,
                    Tok::Lt => Relation::Lt,
                    Tok::Gt => Relation::Gt,
                    _ => return self.fail("`==`, `<` or `>`"),
                };
                self.bump();
                let rhs = self.expr()?;
                StmtKind::Assert { lhs, rel, rhs }
            }
            Tok::Emit => {
                self.bump();
                let mut names = vec![self.ident()?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    names.push(self.ident()?);
                }
                StmtKind::Emit { names }
            }
            _ => return self.fail("`let`, `assert` or `emit`"),
        };
        self.expect(Tok::Semi)?;
        Ok(Stmt { kind, pos })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let pos = self.peek().pos;
        match self.peek().tok.clone() {
            Tok::Minus | Tok::Number(_) => {
                let q = self.literal()?;
                Ok(Expr {
                    kind: ExprKind::Literal(q),
                    pos,
                })
            }
            Tok::Ident(name) if *self.peek2() == Tok::LParen => {
                self.bump();
                self.bump();
                let mut args = Vec::new();
                if self.peek().tok != Tok::RParen {
                    args.push(self.expr()?);
                    while self.peek().tok == Tok::Comma {
                        self.bump();
                        args.push(self.expr()?);
                    }
                }
                self.expect(Tok::RParen)?;
                Ok(Expr {
                    kind: ExprKind::Call { name, args },
                    pos,
                })
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Ident(name),
                    pos,
                })
            }
            _ => self.fail("an expression"),
        }
    }

    fn number(&mut self) -> PResult<BigRational> {
        match self.peek().tok.clone() {
            Tok::Number(text) => {
                self.bump();
                Ok(parse_decimal(&text))
            }
            _ => self.fail("a number"),
        }
    }

    fn literal(&mut self) -> PResult<BigRational> {
        let negative = self.peek().tok == Tok::Minus;
        if negative {
            self.bump();
        }
        let mut q = self.number()?;
        if self.peek().tok == Tok::Slash {
            self.bump();
            let pos = self.peek().pos;
            let d = self.number()?;
            if d.is_zero() {
                self.diags
                    .push(Diagnostic::error(pos, "zero denominator in literal"));
                return Err(());
            }
            q /= d;
        }
        Ok(if negative { -q } else { q })
    }
}

/// Exact value of `ddd` or `ddd.ddd`.
fn parse_decimal(text: &str) -> BigRational {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("lexer yields digits");
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    BigRational::new(digits, scale)
}

/// Name resolution: unknown callees, arity, redefinitions and references to
/// names not bound by an earlier `let`.
fn check(script: &Script) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut defined: BTreeMap<&str, Pos> = BTreeMap::new();
    for stmt in &script.stmts {
        match &stmt.kind {
            StmtKind::Let { value, .. } => check_expr(value, &mut diags),
            StmtKind::Assert { lhs, rhs, .. } => {
                check_expr(lhs, &mut diags);
                check_expr(rhs, &mut diags);
            }
            StmtKind::Emit { .. } => {}
        }
        for (name, pos) in stmt.references() {
            if !defined.contains_key(name) {
                diags.push(Diagnostic::error(
                    pos,
                    format!("unresolved reference `{name}`"),
                ));
            }
        }
        if let StmtKind::Let { name, name_pos, .. } = &stmt.kind {
            if let Some(first) = defined.get(name.as_str()) {
                diags.push(Diagnostic::error(
                    *name_pos,
                    format!("redefinition of `{name}` (first bound at {first})"),
                ));
            } else {
                defined.insert(name, *name_pos);
            }
        }
    }
    diags
}

fn check_expr(e: &Expr, diags: &mut Vec<Diagnostic>) {
    if let ExprKind::Call { name, args } = &e.kind {
        match vocab::arities(name) {
            None => diags.push(Diagnostic::error(e.pos, format!("unknown name `{name}`"))),
            Some(ok) if !ok.contains(&args.len()) => {
                let want = ok
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(" or ");
                diags.push(Diagnostic::error(
                    e.pos,
                    format!("`{name}` takes {want} argument(s), found {}", args.len()),
                ));
            }
            Some(_) => {}
        }
        for a in args {
            check_expr(a, diags);
        }
    }
}

/// Parses and resolves `src`. Returns every diagnostic found, ordered by position.
pub fn parse(src: &str) -> Result<Script, Vec<Diagnostic>> {
    let (toks, mut diags) = lex(src);
    let mut p = Parser {
        toks,
        i: 0,
        diags: Vec::new(),
    };
    let script = p.program();
    diags.extend(p.diags);
    diags.extend(check(&script));
    if diags.is_empty() {
        Ok(script)
    } else {
        diags.sort_by_key(|d| (d.line, d.column));
        Err(diags)
    }
}
