use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

/// 1-based line and column (in characters) of a token in the source.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pos {
    pub line: u32,
    pub column: u32,
}

impl Pos {
    pub fn new(line: u32, column: u32) -> Self {
        Pos { line, column }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Literal(BigRational),
    Ident(String),
    Call { name: String, args: Vec<Expr> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Lt,
    Gt,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Eq => "==",
            Relation::Lt => "<",
            Relation::Gt => ">",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Let {
        name: String,
        name_pos: Pos,
        value: Expr,
    },
    Assert {
        lhs: Expr,
        rel: Relation,
        rhs: Expr,
    },
    Emit {
        names: Vec<(String, Pos)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

impl Expr {
    /// Every identifier referenced in the expression, in source order.
    pub fn references(&self) -> Vec<(&str, Pos)> {
        let mut out = Vec::new();
        self.collect_refs(&mut out);
        out
    }

    fn collect_refs<'a>(&'a self, out: &mut Vec<(&'a str, Pos)>) {
        match &self.kind {
            ExprKind::Literal(_) => {}
            ExprKind::Ident(name) => out.push((name, self.pos)),
            ExprKind::Call { args, .. } => args.iter().for_each(|a| a.collect_refs(out)),
        }
    }

    fn strip(&mut self) {
        self.pos = Pos::default();
        if let ExprKind::Call { args, .. } = &mut self.kind {
            args.iter_mut().for_each(Expr::strip);
        }
    }
}

impl Stmt {
    pub fn references(&self) -> Vec<(&str, Pos)> {
        match &self.kind {
            StmtKind::Let { value, .. } => value.references(),
            StmtKind::Assert { lhs, rhs, .. } => {
                let mut r = lhs.references();
                r.extend(rhs.references());
                r
            }
            StmtKind::Emit { names } => names.iter().map(|(n, p)| (n.as_str(), *p)).collect(),
        }
    }
}

impl Script {
    /// A copy with every position zeroed, for structural comparison.
    pub fn strip_positions(&self) -> Script {
        let mut s = self.clone();
        for stmt in &mut s.stmts {
            stmt.pos = Pos::default();
            match &mut stmt.kind {
                StmtKind::Let {
                    name_pos, value, ..
                } => {
                    *name_pos = Pos::default();
                    value.strip();
                }
                StmtKind::Assert { lhs, rhs, .. } => {
                    lhs.strip();
                    rhs.strip();
                }
                StmtKind::Emit { names } => names.iter_mut().for_each(|(_, p)| *p = Pos::default()),
            }
        }
        s
    }

    pub fn structurally_eq(&self, other: &Script) -> bool {
        self.strip_positions() == other.strip_positions()
    }
}
